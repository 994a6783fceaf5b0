//! Exhaustive decision of isometric embeddings `(Zʳ, G) → (Zᵈ, ±Id)`.
//!
//! Rows of the embedding matrix are placed one basis vector at a time.
//! Columns that every earlier row leaves at zero are interchangeable and
//! their signs are free, so they are kept as a suffix and a new row may only
//! spill into them as a nonincreasing run of positive entries. This is the
//! only symmetry that is broken; the search is otherwise complete.

use serde::{Deserialize, Serialize};

use crate::arith::isqrt;
use crate::bridge::DoubleTwist;
use crate::error::{Error, Result};
use crate::invariants::{goeritz_for, Definiteness, GramForm};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const MAX_DIAGONAL: i64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub node_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// `rows · (ε Id) · rowsᵀ` reproduces the target form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub rows: Vec<Vec<i64>>,
}

impl EmbeddingWitness {
    pub fn gram(&self, definiteness: Definiteness) -> Vec<Vec<i64>> {
        let s = definiteness.sign();
        self.rows
            .iter()
            .map(|a| self.rows.iter().map(|b| s * a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>()).collect())
            .collect()
    }

    pub fn realizes(&self, target: &GramForm) -> bool {
        self.gram(target.definiteness()) == target.entries()
    }
}

struct Search {
    gram: Vec<Vec<i64>>,
    dim: usize,
    rows: Vec<Vec<i64>>,
    /// `suffix[j][c]` is the squared norm of `rows[j][c..]`.
    suffix: Vec<Vec<i64>>,
    touched: usize,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        Ok(())
    }

    fn place(&mut self, i: usize) -> Result<bool> {
        if i == self.gram.len() {
            return Ok(true);
        }
        let mut row = vec![0i64; self.dim];
        let mut dots = vec![0i64; i];
        let norm = self.gram[i][i];
        self.prefix(i, 0, norm, &mut row, &mut dots)
    }

    /// Chooses the entries of row `i` on the touched columns `c..touched`.
    fn prefix(&mut self, i: usize, c: usize, rem: i64, row: &mut Vec<i64>, dots: &mut Vec<i64>) -> Result<bool> {
        if c == self.touched {
            if (0..i).any(|j| dots[j] != self.gram[i][j]) {
                return Ok(false);
            }
            return self.spill(i, rem, row);
        }
        let s = isqrt(rem as u64) as i64;
        for v in -s..=s {
            self.tick()?;
            let left = rem - v * v;
            let feasible = (0..i).all(|j| {
                let d = self.gram[i][j] - (dots[j] + v * self.rows[j][c]);
                (d as i128).pow(2) <= left as i128 * self.suffix[j][c + 1] as i128
            });
            if !feasible {
                continue;
            }
            for (d, r) in dots.iter_mut().zip(&self.rows[..i]) {
                *d += v * r[c];
            }
            row[c] = v;
            let found = self.prefix(i, c + 1, left, row, dots)?;
            for (d, r) in dots.iter_mut().zip(&self.rows[..i]) {
                *d -= v * r[c];
            }
            row[c] = 0;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Distributes the remaining norm over fresh columns as a nonincreasing
    /// run of positive entries, then moves on to the next row.
    fn spill(&mut self, i: usize, rem: i64, row: &mut Vec<i64>) -> Result<bool> {
        let start = self.touched;
        let mut parts = Vec::new();
        self.partitions(i, rem, i64::MAX, start, &mut parts, row)
    }

    fn partitions(
        &mut self,
        i: usize,
        rem: i64,
        cap: i64,
        start: usize,
        parts: &mut Vec<i64>,
        row: &mut Vec<i64>,
    ) -> Result<bool> {
        if rem == 0 {
            self.tick()?;
            for (k, &v) in parts.iter().enumerate() {
                row[start + k] = v;
            }
            let saved = self.touched;
            self.touched = start + parts.len();
            self.push_row(row.clone());
            let found = self.place(i + 1)?;
            if !found {
                self.rows.pop();
                self.suffix.pop();
                self.touched = saved;
            }
            for k in 0..parts.len() {
                row[start + k] = 0;
            }
            return Ok(found);
        }
        if start + parts.len() >= self.dim {
            return Ok(false);
        }
        let top = (isqrt(rem as u64) as i64).min(cap);
        for v in (1..=top).rev() {
            parts.push(v);
            let found = self.partitions(i, rem - v * v, v, start, parts, row)?;
            parts.pop();
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn push_row(&mut self, row: Vec<i64>) {
        let mut suffix = vec![0i64; self.dim + 1];
        for c in (0..self.dim).rev() {
            suffix[c] = suffix[c + 1] + row[c] * row[c];
        }
        self.rows.push(row);
        self.suffix.push(suffix);
    }
}

/// Decides whether `target` embeds isometrically in `ε·Id` of rank
/// `codomain_rank`, where `ε` is the target's declared definiteness.
pub fn embed_gram(target: &GramForm, codomain_rank: usize) -> Result<Option<EmbeddingWitness>> {
    embed_gram_with(target, codomain_rank, &OracleConfig::default())
}

pub fn embed_gram_with(
    target: &GramForm,
    codomain_rank: usize,
    config: &OracleConfig,
) -> Result<Option<EmbeddingWitness>> {
    if codomain_rank < target.rank() {
        return Err(Error::InvalidInput(format!(
            "codomain rank {codomain_rank} is below the form rank {}",
            target.rank()
        )));
    }
    if !target.definiteness_is_consistent() {
        return Err(Error::InvalidInput("target form is not definite".into()));
    }
    let positive = match target.definiteness() {
        Definiteness::Positive => target.clone(),
        Definiteness::Negative => target.negated(),
    };
    if (0..positive.rank()).any(|i| positive.get(i, i) > MAX_DIAGONAL) {
        return Err(Error::InvalidInput(format!("diagonal entries above {MAX_DIAGONAL} are out of range")));
    }
    let mut search = Search {
        gram: positive.entries().to_vec(),
        dim: codomain_rank,
        rows: Vec::new(),
        suffix: Vec::new(),
        touched: 0,
        nodes: 0,
        budget: config.node_budget,
    };
    if !search.place(0)? {
        return Ok(None);
    }
    let witness = EmbeddingWitness { rows: search.rows };
    assert!(witness.realizes(target), "oracle produced an invalid witness");
    Ok(Some(witness))
}

/// The four embedding questions attached to the values of `σ + 4·Arf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JkCase {
    /// `G₊ ⊕ [det]` into the identity of rank `rank(G₊) + 1`.
    One,
    /// `G₋ ⊕ [−det]` into `−Id` of rank `rank(G₋) + 1`.
    Two,
    /// `G_ε ⊕ [ε·det]` into `ε·Id` of rank `rank(G_ε) + 1`, either sign.
    Three,
    /// `G_ε` alone into `ε·Id` of rank `rank(G_ε) + 2`.
    Four,
}

impl JkCase {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            4 => Ok(Self::Four),
            _ => Err(Error::InvalidInput(format!("case must be 1..=4, got {i}"))),
        }
    }
}

/// The form and codomain rank a case prescribes for the parameterization `k`.
pub fn jk_problem(k: DoubleTwist, case: JkCase, eps: Definiteness) -> Result<(GramForm, usize)> {
    match (case, eps) {
        (JkCase::One, Definiteness::Negative) | (JkCase::Two, Definiteness::Positive) => {
            return Err(Error::InvalidInput(format!("case {case:?} fixes the sign; got {eps:?}")));
        }
        _ => {}
    }
    let goeritz = goeritz_for(k, eps)?;
    let det = (k.m as i128 * k.n as i128 + 1).unsigned_abs() as i64;
    Ok(match case {
        JkCase::Four => {
            let r = goeritz.rank();
            (goeritz, r + 2)
        }
        _ => {
            let form = goeritz.direct_sum(eps.sign() * det);
            let r = form.rank();
            (form, r)
        }
    })
}

pub fn jk_embedding_exists(k: DoubleTwist, case: JkCase, eps: Definiteness, config: &OracleConfig) -> Result<bool> {
    let (form, dim) = jk_problem(k, case, eps)?;
    Ok(embed_gram_with(&form, dim, config)?.is_some())
}

/// Weighted path: `k` vertices of weight −2, one of −3, then `ell` of −2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathGraphSpec {
    pub k: usize,
    pub ell: usize,
}

impl PathGraphSpec {
    pub fn form(&self) -> GramForm {
        let mut diag = vec![-2; self.k];
        diag.push(-3);
        diag.extend(std::iter::repeat_n(-2, self.ell));
        GramForm::path(&diag, 1, Definiteness::Negative).expect("path forms are symmetric")
    }

    /// Rank of the codomain in the embedding question: one more than the form.
    pub fn codomain_rank(&self) -> usize {
        self.k + self.ell + 2
    }
}

/// Checks on one instance that an embedding of `G ⊕ [ε·ℓ]` forces one of
/// `G ⊕ [ε·ℓ·j²]` at the same codomain rank.
pub fn scaled_charge_monotonicity_check(g: &GramForm, ell: i64, j: i64, config: &OracleConfig) -> Result<bool> {
    let eps = g.definiteness().sign();
    let dim = g.rank() + 1;
    let base = embed_gram_with(&g.direct_sum(eps * ell), dim, config)?;
    if base.is_none() {
        return Ok(true);
    }
    let scaled = embed_gram_with(&g.direct_sum(eps * ell * j * j), dim, config)?;
    Ok(scaled.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    const POS: Definiteness = Definiteness::Positive;
    const NEG: Definiteness = Definiteness::Negative;

    fn exists(form: &GramForm, dim: usize) -> bool {
        embed_gram(form, dim).unwrap().is_some()
    }

    #[test]
    fn path_graph_examples() {
        let spec = PathGraphSpec { k: 2, ell: 0 };
        assert!(exists(&spec.form(), spec.codomain_rank()));
        let spec = PathGraphSpec { k: 4, ell: 0 };
        assert!(!exists(&spec.form(), spec.codomain_rank()));
    }

    #[test]
    fn goeritz_plus_determinant_example() {
        let form = goeritz_for(DoubleTwist::new(3, 2), POS).unwrap().direct_sum(7);
        assert!(!exists(&form, 3));
    }

    #[test]
    fn jk_examples() {
        let cfg = OracleConfig::default();
        assert!(jk_embedding_exists(DoubleTwist::new(3, 2), JkCase::Two, NEG, &cfg).unwrap());
        assert!(jk_embedding_exists(DoubleTwist::new(2, 2), JkCase::Four, POS, &cfg).unwrap());
        for eps in [POS, NEG] {
            assert!(!jk_embedding_exists(DoubleTwist::new(22, 62), JkCase::Four, eps, &cfg).unwrap());
        }
        assert!(jk_problem(DoubleTwist::new(3, 2), JkCase::One, NEG).is_err());
    }

    #[test]
    fn monotonicity_examples() {
        let cfg = OracleConfig::default();
        let g = goeritz_for(DoubleTwist::new(2, 2), POS).unwrap();
        assert!(scaled_charge_monotonicity_check(&g, 5, 2, &cfg).unwrap());
        let g = goeritz_for(DoubleTwist::new(3, 4), POS).unwrap();
        assert!(scaled_charge_monotonicity_check(&g, 13, 2, &cfg).unwrap());
        // (3,2): no base embedding, so the implication holds vacuously.
        let g = goeritz_for(DoubleTwist::new(3, 2), POS).unwrap();
        assert!(embed_gram(&g.direct_sum(7), 3).unwrap().is_none());
        assert!(scaled_charge_monotonicity_check(&g, 7, 3, &cfg).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let spec = PathGraphSpec { k: 5, ell: 4 };
        let err = embed_gram_with(&spec.form(), spec.codomain_rank(), &OracleConfig { node_budget: 10 });
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn identity_and_small_forms() {
        let id = GramForm::path(&[1, 1, 1], 0, POS).unwrap();
        assert!(exists(&id, 3));
        assert!(exists(&id.direct_sum(1), 4));
        assert!(!exists(&id.direct_sum(2), 4));
        // [[2,1],[1,2]] is the A2 root lattice: it needs three coordinates.
        let a2 = GramForm::path(&[2, 2], 1, POS).unwrap();
        assert!(!exists(&a2, 2));
        assert!(exists(&a2, 3));
        assert!(embed_gram(&a2, 1).is_err());
    }

    #[test]
    fn chain_rows_normalize_to_differences() {
        // Norm-2 rows of a chain always come out as ±f_a ± f_b, with
        // consecutive rows sharing exactly one coordinate.
        for (k, ell) in [(2, 0), (3, 0), (2, 4), (4, 2), (5, 2)] {
            let spec = PathGraphSpec { k, ell };
            let w = embed_gram(&spec.form(), spec.codomain_rank()).unwrap().unwrap();
            let chain: Vec<&Vec<i64>> = w.rows[..k].iter().collect();
            for row in &chain {
                let support: Vec<i64> = row.iter().copied().filter(|&v| v != 0).collect();
                assert_eq!(support.len(), 2);
                assert!(support.iter().all(|v| v.abs() == 1));
            }
            for pair in chain.windows(2) {
                let shared = (0..w.rows[0].len()).filter(|&c| pair[0][c] != 0 && pair[1][c] != 0).count();
                assert_eq!(shared, 1);
            }
        }
    }
}

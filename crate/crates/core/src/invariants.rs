//! Classical invariants of `C(m, n)` and its definite Goeritz forms.
//!
//! The parameterized formulas below assume `m > 0` and `n` even. They are
//! stated for the given parameterization: mirroring negates the signature,
//! so `σ + 4·Arf (mod 8)` is only a knot invariant at the values 0 and 4.

use serde::{Deserialize, Serialize};

use crate::bridge::{Canonical, DoubleTwist, TwistKind};
use crate::error::{Error, Result};

pub fn signature(k: DoubleTwist) -> i64 {
    let DoubleTwist { m, n } = k;
    debug_assert!(m > 0 && n % 2 == 0, "signature formula needs m > 0, n even");
    match (m % 2 != 0, n > 0) {
        (true, true) => n,
        (false, true) => 0,
        (true, false) => n + 2,
        (false, false) => 2,
    }
}

pub fn arf(k: DoubleTwist) -> u8 {
    let DoubleTwist { m, n } = k;
    debug_assert!(m > 0 && n % 2 == 0, "Arf formula needs m > 0, n even");
    let v = if m % 2 == 0 {
        (m as i128 * n as i128) / 4
    } else {
        (n as i128 * (2 * m as i128 + n as i128)) / 8
    };
    v.rem_euclid(2) as u8
}

/// Reduces `v` mod 8 into `{−2, 0, 2, 4}` (odd values keep their residue).
pub fn normalize_mod8(v: i64) -> i64 {
    match v.rem_euclid(8) {
        6 => -2,
        r => r,
    }
}

pub fn sigma_plus_4arf_mod8(k: DoubleTwist) -> i64 {
    normalize_mod8(signature(k) + 4 * arf(k) as i64)
}

/// Crosscap number `γ₃`: 0 for the unknot, 1 for `(2, k)` torus knots.
pub fn crosscap3(c: &Canonical) -> u8 {
    match c.kind {
        TwistKind::Unknot => 0,
        TwistKind::Torus => 1,
        TwistKind::Generic => {
            let (m, n) = (c.m(), c.n());
            if m % 2 != 0 || m == 2 || n.abs() == 2 {
                2
            } else {
                3
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSheet {
    pub signature: i64,
    pub arf: u8,
    pub sigma4arf_mod8: i64,
    pub crosscap3: u8,
}

impl InvariantSheet {
    pub fn of(c: &Canonical) -> Self {
        if c.kind == TwistKind::Unknot {
            return Self { signature: 0, arf: 0, sigma4arf_mod8: 0, crosscap3: 0 };
        }
        Self {
            signature: signature(c.knot),
            arf: arf(c.knot),
            sigma4arf_mod8: sigma_plus_4arf_mod8(c.knot),
            crosscap3: crosscap3(c),
        }
    }
}

/// Sign of a definite form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Definiteness {
    Positive,
    Negative,
}

impl Definiteness {
    pub fn from_sign(sign: i8) -> Result<Self> {
        match sign {
            1 => Ok(Self::Positive),
            -1 => Ok(Self::Negative),
            s => Err(Error::InvalidInput(format!("definiteness sign must be ±1, got {s}"))),
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Self::Positive => 1,
            Self::Negative => -1,
        }
    }
}

/// A symmetric integer matrix with a claimed definiteness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramForm {
    entries: Vec<Vec<i64>>,
    definiteness: Definiteness,
}

impl GramForm {
    pub fn new(entries: Vec<Vec<i64>>, definiteness: Definiteness) -> Result<Self> {
        let r = entries.len();
        if r == 0 {
            return Err(Error::InvalidInput("empty Gram matrix".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != r {
                return Err(Error::InvalidInput(format!("row {i} has length {}, expected {r}", row.len())));
            }
            for j in 0..i {
                if row[j] != entries[j][i] {
                    return Err(Error::InvalidInput(format!("entry ({i},{j}) breaks symmetry")));
                }
            }
        }
        Ok(Self { entries, definiteness })
    }

    /// The path form with the given diagonal and every off-diagonal link
    /// set to `link`.
    pub fn path(diagonal: &[i64], link: i64, definiteness: Definiteness) -> Result<Self> {
        let r = diagonal.len();
        let mut entries = vec![vec![0; r]; r];
        for i in 0..r {
            entries[i][i] = diagonal[i];
            if i + 1 < r {
                entries[i][i + 1] = link;
                entries[i + 1][i] = link;
            }
        }
        Self::new(entries, definiteness)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn definiteness(&self) -> Definiteness {
        self.definiteness
    }

    /// `self ⊕ [value]`.
    pub fn direct_sum(&self, value: i64) -> Self {
        let r = self.rank();
        let mut entries: Vec<Vec<i64>> = self
            .entries
            .iter()
            .map(|row| row.iter().copied().chain(std::iter::once(0)).collect())
            .collect();
        let mut last = vec![0; r + 1];
        last[r] = value;
        entries.push(last);
        Self { entries, definiteness: self.definiteness }
    }

    /// `−self`, with the opposite definiteness.
    pub fn negated(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|row| row.iter().map(|v| -v).collect()).collect(),
            definiteness: match self.definiteness {
                Definiteness::Positive => Definiteness::Negative,
                Definiteness::Negative => Definiteness::Positive,
            },
        }
    }

    /// Leading principal minors `d₁, …, d_r`, by fraction-free elimination.
    /// Elimination stops at the first vanishing minor; later entries are 0.
    pub fn leading_minors(&self) -> Vec<i128> {
        let r = self.rank();
        let mut a: Vec<Vec<i128>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|&v| v as i128).collect())
            .collect();
        let mut minors = vec![0i128; r];
        let mut prev = 1i128;
        for k in 0..r {
            minors[k] = a[k][k];
            if a[k][k] == 0 {
                break;
            }
            for i in k + 1..r {
                for j in k + 1..r {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        minors
    }

    pub fn determinant(&self) -> i128 {
        // Definite forms never hit a zero pivot, so the last minor is exact.
        *self.leading_minors().last().expect("rank ≥ 1")
    }

    /// Whether the leading minors have the signs the declared definiteness
    /// demands (all positive, or alternating starting negative).
    pub fn definiteness_is_consistent(&self) -> bool {
        self.leading_minors().iter().enumerate().all(|(i, &d)| match self.definiteness {
            Definiteness::Positive => d > 0,
            Definiteness::Negative => if i % 2 == 0 { d < 0 } else { d > 0 },
        })
    }
}

/// Goeritz form of the alternating diagram for the parameterization
/// `(m, n)`, `m > 1`, `n` even and nonzero. For `n > 0` these are
/// `G±` of `C(m, n)`; for `n < 0` they are `Γ±` of the diagram
/// `C(m − 1, 1, −n − 1)`. `n = −2` is allowed here, where `Γ₋` coincides
/// with `G₋` of `C(m − 1, 2)`.
pub fn goeritz_for(k: DoubleTwist, definiteness: Definiteness) -> Result<GramForm> {
    let DoubleTwist { m, n } = k;
    if m < 2 || n == 0 || n % 2 != 0 {
        return Err(Error::InvalidInput(format!("Goeritz forms need m > 1 and n even nonzero, got {k}")));
    }
    if m > 10_000 || n.abs() > 10_000 {
        return Err(Error::InvalidInput(format!("{k} is too large to build a Goeritz matrix")));
    }
    let chain = |len: i64, two: i64| vec![two; len as usize];
    match (n > 0, definiteness) {
        (true, Definiteness::Positive) => {
            let mut diag = chain(n - 1, 2);
            diag.push(m + 1);
            GramForm::path(&diag, -1, definiteness)
        }
        (true, Definiteness::Negative) => {
            let mut diag = chain(m - 1, -2);
            diag.push(-(n + 1));
            GramForm::path(&diag, 1, definiteness)
        }
        (false, Definiteness::Positive) => {
            GramForm::new(vec![vec![m, -1], vec![-1, -n]], definiteness)
        }
        (false, Definiteness::Negative) => {
            let mut diag = chain(m - 2, -2);
            diag.push(-3);
            diag.extend(chain(-n - 2, -2));
            GramForm::path(&diag, 1, definiteness)
        }
    }
}

/// Goeritz form of a canonical knot; the flype has already removed `n = −2`.
pub fn goeritz(c: &Canonical, definiteness: Definiteness) -> Result<GramForm> {
    if !c.is_generic() || !c.knot.is_standard() {
        return Err(Error::InvalidInput(format!(
            "Goeritz forms are built for canonical knots with m > 1, got {}",
            c.knot
        )));
    }
    goeritz_for(c.knot, definiteness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::{canonicalize, determinant};

    fn dt(m: i64, n: i64) -> DoubleTwist {
        DoubleTwist::new(m, n)
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(dt(3, 8)), 8);
        assert_eq!(signature(dt(2, 4)), 0);
        assert_eq!(signature(dt(5, -6)), -4);
    }

    #[test]
    fn arf_examples() {
        assert_eq!(arf(dt(2, 4)), 0);
        assert_eq!(arf(dt(5, 2)), 1);
        assert_eq!(arf(dt(3, 8)), 0);
    }

    #[test]
    fn sigma_arf_examples() {
        assert_eq!(sigma_plus_4arf_mod8(dt(5, 2)), -2);
        assert_eq!(sigma_plus_4arf_mod8(dt(2, 2)), 4);
        assert_eq!(sigma_plus_4arf_mod8(dt(3, -6)), 4);
    }

    #[test]
    fn crosscap_examples() {
        let c = |m, n| crosscap3(&canonicalize(dt(m, n)).unwrap());
        assert_eq!(c(2, 8), 2);
        assert_eq!(c(6, 6), 3);
        assert_eq!(c(7, -6), 2);
        assert_eq!(c(1, -2), 0);
        assert_eq!(c(1, 6), 1);
    }

    #[test]
    fn goeritz_examples() {
        let g = |m, n, d| goeritz_for(dt(m, n), d).unwrap().entries().to_vec();
        assert_eq!(g(3, 2, Definiteness::Positive), vec![vec![2, -1], vec![-1, 4]]);
        assert_eq!(g(5, -6, Definiteness::Positive), vec![vec![5, -1], vec![-1, 6]]);
        assert_eq!(
            g(3, 2, Definiteness::Negative),
            vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -3]]
        );
        assert_eq!(goeritz_for(dt(4, -6), Definiteness::Negative).unwrap().rank(), 7);
    }

    #[test]
    fn goeritz_rejects_noncanonical() {
        let c = canonicalize(dt(1, 4)).unwrap();
        assert!(goeritz(&c, Definiteness::Positive).is_err());
        assert!(goeritz_for(dt(3, 3), Definiteness::Positive).is_err());
    }

    #[test]
    fn goeritz_determinants_and_signs_on_grid() {
        for m in 2..=12 {
            for n in (-12..=12i64).step_by(2).filter(|n| n.abs() >= 2) {
                let c = canonicalize(dt(m, n)).unwrap();
                for d in [Definiteness::Positive, Definiteness::Negative] {
                    let form = goeritz_for(dt(m, n), d).unwrap();
                    assert_eq!(form.determinant().abs(), determinant(&c) as i128, "C({m},{n}) {d:?}");
                    assert!(form.definiteness_is_consistent(), "C({m},{n}) {d:?}");
                }
            }
        }
    }

    #[test]
    fn leading_minors_match_cofactor_expansion() {
        fn det(a: &[Vec<i64>]) -> i128 {
            if a.len() == 1 {
                return a[0][0] as i128;
            }
            (0..a.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> = a[1..]
                        .iter()
                        .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * a[0][j] as i128 * det(&minor)
                })
                .sum()
        }
        let form = goeritz_for(dt(5, -6), Definiteness::Negative).unwrap().direct_sum(-29);
        let minors = form.leading_minors();
        for k in 1..=form.rank() {
            let sub: Vec<Vec<i64>> = form.entries()[..k].iter().map(|r| r[..k].to_vec()).collect();
            assert_eq!(minors[k - 1], det(&sub));
        }
    }
}

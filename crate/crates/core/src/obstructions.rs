//! Lower bounds on `γ₄`.
//!
//! Every standard parameterization `(m, n)` of a knot comes with an
//! alternating diagram, so each one yields its own instance of the
//! lattice obstructions; a rule fires for the knot if it fires for any of
//! them. The Diophantine reductions in [`crate::diophantine`] stand in
//! for the embedding questions, which [`crate::lattice`] can decide
//! directly on small cases.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_quadratic_residue};
use crate::bridge::{canonicalize, parameterizations, Canonical, DoubleTwist, TwistKind};
use crate::diophantine::{condition_a, condition_b, condition_c, condition_d, solve_quad};
use crate::error::Result;
use crate::invariants::sigma_plus_4arf_mod8;
use crate::surgery::is_slice_double_twist;

/// Stable identifiers for the rules that can appear as evidence.
pub mod rule {
    pub const SLICE: &str = "slice-classification";
    pub const NOT_SLICE: &str = "not-slice";
    pub const YASUHARA: &str = "yasuhara-sigma-arf";
    pub const JK_PLUS: &str = "jk-goeritz-plus";
    pub const JK_MINUS: &str = "jk-goeritz-minus";
    pub const JK_BOTH: &str = "jk-both-signs";
    pub const JK_RANK_PLUS_TWO: &str = "jk-rank-plus-two";
    pub const MURAKAMI_YASUHARA: &str = "murakami-yasuhara";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub rule: String,
    pub detail: String,
}

impl Evidence {
    pub fn new(rule: &str, detail: impl Into<String>) -> Self {
        Self { rule: rule.to_string(), detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub bound: u8,
    pub evidence: Vec<Evidence>,
    /// The Murakami–Yasuhara obstruction fired. It is a locally flat
    /// statement, so it is kept apart from the smooth evidence as well.
    pub my_flag: bool,
}

/// The four conditions the embedding obstructions reduce to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::A => "(a)",
            Condition::B => "(b)",
            Condition::C => "(c)",
            Condition::D => "(d)",
        };
        f.write_str(s)
    }
}

/// What a single parameterization needs in order to force `γ₄ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellRule {
    /// `σ + 4·Arf ≡ 4 (mod 8)`.
    Always,
    /// All listed conditions must hold.
    AllOf(Vec<Condition>),
}

impl fmt::Display for CellRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellRule::Always => f.write_str("always"),
            CellRule::AllOf(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                f.write_str(&parts.join(" and "))
            }
        }
    }
}

/// Derives the cell rule from `σ + 4·Arf` and the sign of `n`.
///
/// `−2` asks for the positive Goeritz form, `2` for the negative one and
/// `0` for both. For `n > 0` the positive and negative forms reduce to
/// conditions (a) and (b); for `n < 0` to (c) and (d).
pub fn cell_rule(k: DoubleTwist) -> CellRule {
    let (plus, minus) = if k.n > 0 { (Condition::A, Condition::B) } else { (Condition::C, Condition::D) };
    match sigma_plus_4arf_mod8(k) {
        4 => CellRule::Always,
        -2 => CellRule::AllOf(vec![plus]),
        2 => CellRule::AllOf(vec![minus]),
        0 => CellRule::AllOf(vec![plus, minus]),
        v => unreachable!("σ + 4·Arf is even, got {v}"),
    }
}

pub fn condition_holds(cond: Condition, k: DoubleTwist) -> Result<bool> {
    let DoubleTwist { m, n } = k;
    match cond {
        Condition::A => condition_a(m, n),
        Condition::B => condition_b(m, n),
        Condition::C => condition_c(m, -n),
        Condition::D => Ok(condition_d(m, n)),
    }
}

fn jk_rule_id(rule: &CellRule, n_positive: bool) -> &'static str {
    match rule {
        CellRule::Always => rule::YASUHARA,
        CellRule::AllOf(cs) if cs.len() == 2 => rule::JK_BOTH,
        CellRule::AllOf(cs) => match (cs[0], n_positive) {
            (Condition::A | Condition::C, _) => rule::JK_PLUS,
            _ => rule::JK_MINUS,
        },
    }
}

/// Applies the dispatcher to one parameterization with `m > 1` and `n`
/// even and nonzero.
pub fn ge2_for(k: DoubleTwist) -> Result<Option<Evidence>> {
    let rule = cell_rule(k);
    let fired = match &rule {
        CellRule::Always => true,
        CellRule::AllOf(cs) => {
            let mut all = true;
            for &c in cs {
                if !condition_holds(c, k)? {
                    all = false;
                    break;
                }
            }
            all
        }
    };
    Ok(fired.then(|| {
        let s4a = sigma_plus_4arf_mod8(k);
        let detail = match rule {
            CellRule::Always => format!("{k}: σ+4Arf ≡ 4 (mod 8)"),
            ref r => format!("{k}: σ+4Arf ≡ {s4a} (mod 8) and {r} hold"),
        };
        Evidence::new(jk_rule_id(&rule, k.n > 0), detail)
    }))
}

/// Parameterizations the obstructions are evaluated on: the standard ones
/// together with `(m + 1, −2)` for every `(m, 2)`.
pub fn obstruction_parameterizations(c: &Canonical) -> Vec<DoubleTwist> {
    if !c.is_generic() {
        return Vec::new();
    }
    let mut out = parameterizations(c);
    let extra: Vec<DoubleTwist> =
        out.iter().filter(|k| k.n == 2).map(|k| DoubleTwist::new(k.m + 1, -2)).collect();
    out.extend(extra);
    out
}

/// The `γ₄ ≥ 2` dispatcher over every parameterization of a generic knot.
/// Returns the first firing parameterization's evidence.
pub fn ge2_verdict(k: DoubleTwist) -> Result<Option<Evidence>> {
    let c = canonicalize(k)?;
    for p in obstruction_parameterizations(&c) {
        if let Some(ev) = ge2_for(p)? {
            return Ok(Some(ev));
        }
    }
    Ok(None)
}

/// `γ₄ ≥ 3` for `n > 0`, `m ≡ n ≡ 2 (mod 4)` when neither
/// `m = n·x² + 2x + y² + z²` nor `n = m·x² + 2x + y² + z²` is solvable.
pub fn ge3_for(k: DoubleTwist) -> Result<bool> {
    let DoubleTwist { m, n } = k;
    if n <= 0 || m < 2 || m % 4 != 2 || n % 4 != 2 {
        return Ok(false);
    }
    Ok(solve_quad(m, n, 2)?.is_none() && solve_quad(n, m, 2)?.is_none())
}

pub fn ge3_verdict(k: DoubleTwist) -> Result<bool> {
    let c = canonicalize(k)?;
    for p in obstruction_parameterizations(&c) {
        if ge3_for(p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The squarefree-coprime factorizations `D = κ·j²`, `gcd(κ, j) = 1`,
/// listed by `κ`. Each prime power `p^e` of `D` either goes into `κ`
/// whole or, when `e` is even, into `j²`.
pub fn coprime_kappas(d: u64) -> Vec<u64> {
    let mut kappas = vec![1u64];
    for (p, e) in factorize(d) {
        let pe = p.pow(e);
        let mut next = Vec::with_capacity(kappas.len() * 2);
        for &k in &kappas {
            next.push(k * pe);
            if e % 2 == 0 {
                next.push(k);
            }
        }
        kappas = next;
    }
    kappas.sort_unstable();
    kappas.dedup();
    kappas
}

/// The Murakami–Yasuhara obstruction for the canonical parameters: fires
/// iff for every `κ` in [`coprime_kappas`] of `|mn + 1|`, neither `m` nor
/// `−m` is a square mod `κ`.
pub fn murakami_yasuhara_ge2(k: DoubleTwist) -> Result<bool> {
    let c = canonicalize(k)?;
    if !c.is_generic() {
        return Ok(false);
    }
    let m = c.m();
    let d = c.determinant().unsigned_abs();
    Ok(coprime_kappas(d)
        .into_iter()
        .all(|kappa| kappa != 1 && !is_quadratic_residue(m, kappa) && !is_quadratic_residue(-m, kappa)))
}

pub fn lower_bound(k: DoubleTwist) -> Result<Verdict> {
    let c = canonicalize(k)?;
    lower_bound_canonical(&c)
}

pub fn lower_bound_canonical(c: &Canonical) -> Result<Verdict> {
    if is_slice_double_twist(c.knot)? {
        return Ok(Verdict {
            bound: 0,
            evidence: vec![Evidence::new(rule::SLICE, format!("{} is slice", c.knot))],
            my_flag: false,
        });
    }
    let mut evidence = vec![Evidence::new(rule::NOT_SLICE, format!("{} is not slice", c.knot))];
    let mut bound = 1;
    if c.kind == TwistKind::Torus {
        return Ok(Verdict { bound, evidence, my_flag: false });
    }
    if let Some(ev) = ge2_verdict(c.knot)? {
        evidence.push(ev);
        bound = 2;
    }
    let my_flag = murakami_yasuhara_ge2(c.knot)?;
    if my_flag {
        evidence.push(Evidence::new(
            rule::MURAKAMI_YASUHARA,
            format!("±{} is a non-residue for every admissible κ of {}", c.m(), c.determinant()),
        ));
        bound = 2;
    }
    for p in obstruction_parameterizations(c) {
        if ge3_for(p)? {
            evidence.push(Evidence::new(
                rule::JK_RANK_PLUS_TWO,
                format!("{p}: no solution of m = nx²+2x+y²+z² or n = mx²+2x+y²+z²"),
            ));
            bound = 3;
            break;
        }
    }
    Ok(Verdict { bound, evidence, my_flag })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dt(m: i64, n: i64) -> DoubleTwist {
        DoubleTwist::new(m, n)
    }

    #[test]
    fn dispatcher_examples() {
        let ev = ge2_verdict(dt(2, 6)).unwrap().unwrap();
        assert_eq!(ev.rule, rule::YASUHARA);
        assert!(ge2_for(dt(3, 8)).unwrap().is_none());
        assert!(ge2_for(dt(4, -10)).unwrap().is_none());
        assert!(ge2_verdict(dt(4, -10)).unwrap().is_none());
    }

    #[test]
    fn printed_cell_table() {
        use Condition::*;
        let ab = CellRule::AllOf(vec![A, B]);
        let printed = |mr: i64, nr: i64, pos: bool| -> CellRule {
            match (pos, nr, mr) {
                (true, 0, _) => ab.clone(),
                (true, 2, 0) => ab.clone(),
                (true, 2, 1) => CellRule::AllOf(vec![A]),
                (true, 2, 2) => CellRule::Always,
                (true, 2, 3) => CellRule::AllOf(vec![B]),
                (false, 0, _) => CellRule::AllOf(vec![D]),
                (false, 2, 0) => CellRule::AllOf(vec![D]),
                (false, 2, 1) => CellRule::AllOf(vec![C, D]),
                (false, 2, 2) => CellRule::AllOf(vec![C]),
                (false, 2, 3) => CellRule::Always,
                _ => unreachable!(),
            }
        };
        for m in 2..=21i64 {
            for n in (-20..=20i64).step_by(2).filter(|n| n.abs() >= 2) {
                let want = printed(m % 4, n.rem_euclid(4), n > 0);
                assert_eq!(cell_rule(dt(m, n)), want, "cell of ({m},{n})");
            }
        }
    }

    #[test]
    fn ge3_examples() {
        assert!(ge3_verdict(dt(22, 62)).unwrap());
        assert!(ge3_verdict(dt(30, 70)).unwrap());
        assert!(!ge3_verdict(dt(2, 6)).unwrap());
        assert!(!ge3_verdict(dt(10, 14)).unwrap());
    }

    #[test]
    fn kappas() {
        assert_eq!(coprime_kappas(9), vec![1, 9]);
        assert_eq!(coprime_kappas(5), vec![5]);
        assert_eq!(coprime_kappas(72), vec![8, 72]);
        assert_eq!(coprime_kappas(225), vec![1, 9, 25, 225]);
    }

    #[test]
    fn murakami_yasuhara_examples() {
        assert!(!murakami_yasuhara_ge2(dt(5, 14)).unwrap());
        assert!(murakami_yasuhara_ge2(dt(2, 2)).unwrap());
        assert!(!murakami_yasuhara_ge2(dt(4, 2)).unwrap());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(dt(4, 2)).unwrap().bound, 0);
        assert_eq!(lower_bound(dt(12, 2)).unwrap().bound, 1);
        let v = lower_bound(dt(22, 62)).unwrap();
        assert_eq!(v.bound, 3);
        assert!(v.evidence.iter().any(|e| e.rule == rule::JK_RANK_PLUS_TWO));
        assert_eq!(lower_bound(dt(1, 6)).unwrap().bound, 1);
        assert_eq!(lower_bound(dt(3, -2)).unwrap().bound, 2);
    }
}

//! Fraction calculus for 2-bridge knots and links.
//!
//! A 2-bridge link `K_{p/q}` is classified by a reduced fraction. Mirror
//! images are identified throughout, so two fractions describe the same
//! knot when `p` agrees and `q' ≡ ±q` or `q'q ≡ ±1 (mod p)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{checked_add, checked_mul, mod_inverse, narrow};
use crate::error::{Error, Result};

/// A normalized fraction `p/q` with `p ≥ 0` and `0 ≤ q < p`.
///
/// `p = 1` (with `q = 0`) is the unknot and `p = 0` (again `q = 0`) the
/// two-component unlink. Odd `p` is a knot, even `p` a 2-component link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoBridgeFraction {
    p: i64,
    q: i64,
}

impl TwoBridgeFraction {
    /// Normalizes the rational value `num/den`, where `den = 0` is the
    /// point at infinity `1/0` (the unknot).
    pub fn new(num: i64, den: i64) -> Result<Self> {
        Self::from_wide(num as i128, den as i128)
    }

    fn from_wide(num: i128, den: i128) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(Error::InvalidInput("0/0 is not a fraction".into()));
        }
        let g = gcd_wide(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if num < 0 {
            num = -num;
            den = -den;
        }
        let p = narrow(num, "fraction numerator")?;
        let q = if p <= 1 { 0 } else { narrow(den.rem_euclid(num), "fraction")? };
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_knot(&self) -> bool {
        self.p % 2 == 1
    }

    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }

    pub fn is_unlink(&self) -> bool {
        self.p == 0
    }

    /// The fractions `p/q`, `p/q'`, `p/(p−q)` and `p/(p−q')` naming the same
    /// link, where `q'` is the inverse of `q` mod `p`.
    pub fn orbit(&self) -> BTreeSet<TwoBridgeFraction> {
        let mut out = BTreeSet::new();
        out.insert(*self);
        if self.p < 2 {
            return out;
        }
        let inv = mod_inverse(self.q, self.p).expect("normalized fractions are reduced");
        for q in [self.q, inv, self.p - self.q, self.p - inv] {
            out.insert(Self { p: self.p, q: q.rem_euclid(self.p) });
        }
        out
    }

    /// The smallest member of [`orbit`](Self::orbit); equal for equivalent knots.
    pub fn canonical(&self) -> TwoBridgeFraction {
        *self.orbit().iter().next().expect("orbit is never empty")
    }

    pub fn equivalent(&self, other: &TwoBridgeFraction) -> bool {
        knots_equivalent(self, other)
    }
}

impl fmt::Display for TwoBridgeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

fn gcd_wide(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn knots_equivalent(a: &TwoBridgeFraction, b: &TwoBridgeFraction) -> bool {
    if a.p != b.p {
        return false;
    }
    let p = a.p as i128;
    if p < 2 {
        return true;
    }
    let (q1, q2) = (a.q as i128, b.q as i128);
    (q1 - q2) % p == 0
        || (q1 + q2) % p == 0
        || (q1 * q2 - 1) % p == 0
        || (q1 * q2 + 1) % p == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `a₁ + 1/(a₂ + 1/(… + 1/aₖ))`
    Additive,
    /// `b₁ − 1/(b₂ − 1/(… − 1/bₖ))` with every `bᵢ ≥ 2`
    Subtractive,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub terms: Vec<i64>,
    pub convention: Convention,
}

impl ContinuedFraction {
    pub fn additive(terms: Vec<i64>) -> Self {
        Self { terms, convention: Convention::Additive }
    }

    pub fn subtractive(terms: Vec<i64>) -> Result<Self> {
        if let Some(bad) = terms.iter().find(|&&b| b < 2) {
            return Err(Error::InvalidInput(format!(
                "subtractive continued fraction term {bad} is below 2"
            )));
        }
        Ok(Self { terms, convention: Convention::Subtractive })
    }

    pub fn value(&self) -> Result<TwoBridgeFraction> {
        let sign: i128 = match self.convention {
            Convention::Additive => 1,
            Convention::Subtractive => -1,
        };
        fold_tail(&self.terms, sign)
    }
}

/// Evaluates a continued fraction from its tail, carrying `(num, den)` so
/// that a zero tail becomes `1/0 = ∞` instead of a division by zero.
fn fold_tail(terms: &[i64], sign: i128) -> Result<TwoBridgeFraction> {
    let (&last, rest) = terms
        .split_last()
        .ok_or_else(|| Error::InvalidInput("empty continued fraction".into()))?;
    let (mut num, mut den) = (last as i128, 1i128);
    for &a in rest.iter().rev() {
        let next = (a as i128)
            .checked_mul(num)
            .and_then(|v| v.checked_add(sign * den))
            .ok_or(Error::Range("continued fraction"))?;
        (num, den) = (next, num);
    }
    TwoBridgeFraction::from_wide(num, den)
}

/// Exact value of the additive continued fraction `[a₁, …, aₖ]`.
pub fn cf_value(terms: &[i64]) -> Result<TwoBridgeFraction> {
    fold_tail(terms, 1)
}

/// The unique expansion `p/q = [b₁, …, bₖ]⁻` with all `bᵢ ≥ 2`.
pub fn subtractive_cf(f: &TwoBridgeFraction) -> Result<ContinuedFraction> {
    if f.p <= 1 || f.q < 1 {
        return Err(Error::InvalidInput(format!(
            "subtractive expansion needs p > q ≥ 1, got {f}"
        )));
    }
    let (mut p, mut q) = (f.p, f.q);
    let mut terms = Vec::new();
    loop {
        let b = (p + q - 1) / q;
        terms.push(b);
        let r = b * q - p;
        if r == 0 {
            break;
        }
        (p, q) = (q, r);
    }
    ContinuedFraction::subtractive(terms)
}

/// Parameters of the double twist diagram `C(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoubleTwist {
    pub m: i64,
    pub n: i64,
}

impl DoubleTwist {
    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    /// `m` and `n` are integers with `m > 1` and `n` even, `n ∉ {0, −2}`:
    /// the parameterizations the obstructions and families are stated for.
    pub fn is_standard(&self) -> bool {
        self.m > 1 && self.n % 2 == 0 && self.n != 0 && self.n != -2
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.n, self.m)
    }
}

impl fmt::Display for DoubleTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{})", self.m, self.n)
    }
}

pub fn classifying_fraction(m: i64, n: i64) -> Result<TwoBridgeFraction> {
    let mn = checked_mul(m, n, "m·n")?;
    TwoBridgeFraction::new(checked_add(mn, 1, "m·n + 1")?, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistKind {
    Unknot,
    /// `C(1, n)`, the `(2, 1−n)` torus knot.
    Torus,
    Generic,
}

/// A double twist knot in canonical position.
///
/// For [`TwistKind::Generic`] the parameters satisfy `m > 1`, `n` even,
/// `n ∉ {0, −2}`, and `m ≥ n` whenever both are positive and even. Torus
/// knots are `(1, n)` and the unknot is represented by `(0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Canonical {
    pub knot: DoubleTwist,
    pub kind: TwistKind,
}

impl Canonical {
    pub fn m(&self) -> i64 {
        self.knot.m
    }

    pub fn n(&self) -> i64 {
        self.knot.n
    }

    pub fn is_generic(&self) -> bool {
        self.kind == TwistKind::Generic
    }

    pub fn fraction(&self) -> TwoBridgeFraction {
        classifying_fraction(self.m(), self.n()).expect("canonical parameters were range checked")
    }

    pub fn determinant(&self) -> i64 {
        determinant(self)
    }
}

pub const UNKNOT: DoubleTwist = DoubleTwist::new(0, 0);

pub fn canonicalize(k: DoubleTwist) -> Result<Canonical> {
    let DoubleTwist { mut m, mut n } = k;
    let mn = checked_mul(m, n, "m·n")?;
    checked_add(mn, 1, "m·n + 1")?;
    if mn == 0 || mn == -2 {
        return Ok(Canonical { knot: UNKNOT, kind: TwistKind::Unknot });
    }
    if m % 2 != 0 && n % 2 != 0 {
        return Err(Error::NotAKnot { m, n });
    }
    if n % 2 != 0 {
        (m, n) = (n, m);
    }
    if m < 0 {
        m = m.checked_neg().ok_or(Error::Range("negation"))?;
        n = n.checked_neg().ok_or(Error::Range("negation"))?;
    }
    if n == -2 {
        (m, n) = (m - 1, 2);
    }
    if m % 2 == 0 && n > m {
        (m, n) = (n, m);
    }
    let kind = if m == 1 { TwistKind::Torus } else { TwistKind::Generic };
    Ok(Canonical { knot: DoubleTwist::new(m, n), kind })
}

/// Every standard parameterization `(m, n)` of the same knot reachable by
/// exchanging the boxes, mirroring, and flipping the clasp
/// `C(m, −2) = C(m − 1, 2)`. The canonical pair comes first.
pub fn parameterizations(c: &Canonical) -> Vec<DoubleTwist> {
    if !c.is_generic() {
        return vec![c.knot];
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([c.knot]);
    while let Some(k) = queue.pop_front() {
        if !seen.insert(k) || seen.len() > 64 {
            continue;
        }
        let DoubleTwist { m, n } = k;
        let mut next = vec![DoubleTwist::new(n, m), DoubleTwist::new(-m, -n)];
        if n == -2 {
            next.push(DoubleTwist::new(m - 1, 2));
        }
        if n == 2 {
            next.push(DoubleTwist::new(m + 1, -2));
        }
        queue.extend(next.into_iter().filter(|k| !seen.contains(k)));
    }
    let mut out = vec![c.knot];
    out.extend(seen.into_iter().filter(|k| k.is_standard() && *k != c.knot));
    out
}

/// `|mn + 1|`; 1 for the unknot.
pub fn determinant(c: &Canonical) -> i64 {
    (c.m() * c.n() + 1).abs()
}

/// Crossing number of the reduced alternating diagram.
pub fn crossing_number(c: &Canonical) -> i64 {
    match c.kind {
        TwistKind::Unknot => 0,
        TwistKind::Torus => (c.n() + 1).abs(),
        TwistKind::Generic if c.n() > 0 => c.m() + c.n(),
        TwistKind::Generic => c.m() - c.n() - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(p: i64, q: i64) -> TwoBridgeFraction {
        TwoBridgeFraction::new(p, q).unwrap()
    }

    #[test]
    fn classifying_fraction_examples() {
        assert_eq!(classifying_fraction(5, -6).unwrap(), frac(29, 6));
        assert!(classifying_fraction(5, -6).unwrap().equivalent(&frac(29, 23)));
        assert_eq!(classifying_fraction(2, 4).unwrap(), frac(9, 4));
        let u = classifying_fraction(1, -2).unwrap();
        assert!(u.is_unknot());
        assert_eq!((u.p(), u.q()), (1, 0));
    }

    #[test]
    fn overflow_is_a_range_error() {
        assert!(matches!(classifying_fraction(i64::MAX, 4), Err(Error::Range(_))));
        assert!(matches!(cf_value(&[i64::MAX, 2, i64::MAX]), Err(Error::Range(_))));
    }

    #[test]
    fn cf_value_examples() {
        assert_eq!(cf_value(&[5, -4, 1, -2]).unwrap(), frac(9, 2));
        assert_eq!(cf_value(&[3, 3, -1, 5]).unwrap(), frac(25, 7));
        let unlink = cf_value(&[2, 1, -1, 3]).unwrap();
        assert!(unlink.is_unlink());
        // zero tails go through infinity
        assert_eq!(cf_value(&[3, 0, 1, 3]).unwrap(), frac(13, 3));
        assert!(cf_value(&[0]).unwrap().is_unlink());
        assert!(cf_value(&[4, 0]).unwrap().is_unknot());
        assert!(cf_value(&[]).is_err());
    }

    #[test]
    fn subtractive_examples() {
        assert_eq!(subtractive_cf(&frac(25, 18)).unwrap().terms, vec![2, 2, 3, 4]);
        assert_eq!(subtractive_cf(&frac(9, 4)).unwrap().terms, vec![3, 2, 2, 2]);
        assert_eq!(subtractive_cf(&frac(3, 1)).unwrap().terms, vec![3]);
        assert!(subtractive_cf(&frac(1, 0)).is_err());
        assert!(ContinuedFraction::subtractive(vec![3, 1]).is_err());
    }

    #[test]
    fn orbit_examples() {
        let set = |v: &[(i64, i64)]| v.iter().map(|&(p, q)| frac(p, q)).collect::<BTreeSet<_>>();
        assert_eq!(frac(9, 2).orbit(), set(&[(9, 2), (9, 5), (9, 7), (9, 4)]));
        assert_eq!(frac(5, 2).orbit(), set(&[(5, 2), (5, 3)]));
        assert_eq!(frac(25, 7).orbit(), set(&[(25, 7), (25, 18)]));
    }

    #[test]
    fn equivalence_examples() {
        assert!(knots_equivalent(&frac(9, 2), &frac(9, 4)));
        assert!(knots_equivalent(&frac(29, 6), &frac(29, 23)));
        assert!(!knots_equivalent(&frac(5, 2), &frac(5, 1)));
    }

    #[test]
    fn canonicalize_examples() {
        let c = |m, n| canonicalize(DoubleTwist::new(m, n)).unwrap().knot;
        assert_eq!(c(5, -2), DoubleTwist::new(4, 2));
        assert_eq!(c(-3, -8), DoubleTwist::new(3, 8));
        assert_eq!(c(2, 7), DoubleTwist::new(7, 2));
        assert_eq!(c(2, 4), DoubleTwist::new(4, 2));
        assert_eq!(canonicalize(DoubleTwist::new(1, -2)).unwrap().kind, TwistKind::Unknot);
        assert_eq!(canonicalize(DoubleTwist::new(2, -2)).unwrap().kind, TwistKind::Torus);
        assert_eq!(canonicalize(DoubleTwist::new(-1, 4)).unwrap().knot, DoubleTwist::new(1, -4));
        assert!(matches!(
            canonicalize(DoubleTwist::new(3, 5)),
            Err(Error::NotAKnot { m: 3, n: 5 })
        ));
    }

    #[test]
    fn determinant_and_crossings() {
        let c = |m, n| canonicalize(DoubleTwist::new(m, n)).unwrap();
        assert_eq!(determinant(&c(5, 14)), 71);
        assert_eq!(determinant(&c(2, 4)), 9);
        assert_eq!(determinant(&c(5, -6)), 29);
        assert_eq!(crossing_number(&c(3, 4)), 7);
        assert_eq!(crossing_number(&c(5, -6)), 10);
        assert_eq!(crossing_number(&c(12, 2)), 14);
        assert_eq!(crossing_number(&c(1, -4)), 3);
        assert_eq!(crossing_number(&c(1, 2)), 3);
    }

    #[test]
    fn parameterizations_cover_flypes_and_swaps() {
        let ps = |m, n| parameterizations(&canonicalize(DoubleTwist::new(m, n)).unwrap());
        assert_eq!(ps(5, 2), vec![DoubleTwist::new(5, 2), DoubleTwist::new(2, -6)]);
        assert_eq!(ps(4, -10), vec![DoubleTwist::new(4, -10), DoubleTwist::new(10, -4)]);
        assert_eq!(ps(12, 2), vec![DoubleTwist::new(12, 2), DoubleTwist::new(2, 12)]);
        assert_eq!(ps(5, -6), vec![DoubleTwist::new(5, -6)]);
        for m in 2..30 {
            for n in (-30..=30).step_by(2) {
                let Ok(c) = canonicalize(DoubleTwist::new(m, n)) else { continue };
                for k in parameterizations(&c) {
                    assert!(classifying_fraction(k.m, k.n).unwrap().equivalent(&c.fraction()));
                }
            }
        }
    }
}

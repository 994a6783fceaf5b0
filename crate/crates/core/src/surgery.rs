//! Upper bounds on `γ₄`: slice detection, band moves and the known
//! families with `γ₄ ≤ 1` and `γ₄ = 2`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::is_square;
use crate::bridge::{
    canonicalize, cf_value, classifying_fraction, parameterizations, subtractive_cf, Canonical, DoubleTwist,
    TwistKind, TwoBridgeFraction,
};
use crate::error::Result;
use crate::invariants::crosscap3;
use crate::obstructions::{obstruction_parameterizations, Evidence};

/// Stable identifiers for upper-bound evidence.
pub mod rule {
    pub const SLICE: &str = "slice-classification";
    pub const CROSSCAP: &str = "crosscap-number";
    pub const FAMILY_GAMMA1: &str = "family-gamma1";
    pub const FAMILY_GAMMA2: &str = "family-gamma2";
    pub const EQUAL_TWISTS: &str = "equal-twists";
    pub const BAND_ONE: &str = "band-move";
    pub const BAND_TWO: &str = "band-moves-2";
}

/// How far beyond the source's parameters a depth-2 intermediate knot may
/// reach before it is skipped.
pub const INTERMEDIATE_SLACK: i64 = 4;

/// Slice classification of double twist knots: `C(m, n)` with `m > 1`,
/// `n` even and nonzero is slice iff `|m − n| = 2` or `(m, n) = (5, −2)`.
pub fn is_slice_double_twist(k: DoubleTwist) -> Result<bool> {
    let c = canonicalize(k)?;
    Ok(is_slice_canonical(&c))
}

pub fn is_slice_canonical(c: &Canonical) -> bool {
    match c.kind {
        TwistKind::Unknot => true,
        TwistKind::Torus => false,
        TwistKind::Generic => obstruction_parameterizations(c)
            .iter()
            .any(|p| (p.m - p.n).abs() == 2 || (p.m, p.n) == (5, -2)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceStatus {
    Slice,
    NotSlice,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceVerdict {
    pub status: SliceStatus,
    pub certificate: String,
}

impl SliceVerdict {
    fn new(status: SliceStatus, certificate: impl Into<String>) -> Self {
        Self { status, certificate: certificate.into() }
    }

    pub fn is_slice(&self) -> bool {
        self.status == SliceStatus::Slice
    }
}

/// Reads `f` as a double twist knot `C((p∓1)/r, ±r)` for some orbit
/// member `r` dividing `p ∓ 1`.
pub fn recognize_double_twist(f: &TwoBridgeFraction) -> Option<Canonical> {
    if !f.is_knot() {
        return None;
    }
    if f.is_unknot() {
        return canonicalize(DoubleTwist::new(0, 0)).ok();
    }
    let p = f.p();
    for member in f.orbit() {
        let r = member.q();
        if r == 0 {
            continue;
        }
        if (p - 1) % r == 0 {
            return canonicalize(DoubleTwist::new((p - 1) / r, r)).ok();
        }
        if (p + 1) % r == 0 {
            return canonicalize(DoubleTwist::new((p + 1) / r, -r)).ok();
        }
    }
    None
}

fn matches_pattern(terms: &[i64], head: &[i64], tail_twos: usize) -> bool {
    terms.len() == head.len() + tail_twos
        && terms[..head.len()] == *head
        && terms[head.len()..].iter().all(|&t| t == 2)
}

/// `[c + 1, 2^{[c+1]}]⁻` for some `c ≥ 1`.
fn is_square_family(terms: &[i64]) -> bool {
    let c = terms[0] - 1;
    c >= 1 && matches_pattern(terms, &[c + 1], (c + 1) as usize)
}

/// `[m + 1, 2, 2, 3, 2^{[m−1]}]⁻` for some `m ≥ 1`.
fn is_curated_family(terms: &[i64]) -> bool {
    let m = terms[0] - 1;
    m >= 1 && matches_pattern(terms, &[m + 1, 2, 2, 3], (m - 1) as usize)
}

fn format_terms(terms: &[i64]) -> String {
    let parts: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    format!("[{}]⁻", parts.join(","))
}

/// Three-valued slice test for a 2-bridge knot or link.
///
/// `NotSlice` is only returned for a non-square determinant. Slice
/// certificates come from the double twist classification, the family
/// `[c+1, 2^{[c+1]}]⁻`, and a short curated list.
pub fn slice_fraction_check(f: &TwoBridgeFraction) -> SliceVerdict {
    use SliceStatus::*;
    if f.is_unlink() {
        return SliceVerdict::new(Slice, "unlink");
    }
    if f.is_unknot() {
        return SliceVerdict::new(Slice, "unknot");
    }
    if !is_square(f.p()) {
        return SliceVerdict::new(NotSlice, format!("determinant {} is not a square", f.p()));
    }
    if !f.is_knot() {
        return SliceVerdict::new(Unknown, format!("{f} is a 2-component link"));
    }
    if let Some(c) = recognize_double_twist(f) {
        if is_slice_canonical(&c) {
            return SliceVerdict::new(Slice, format!("{f} = {} with |m−n| = 2", c.knot));
        }
    }
    if f.canonical() == TwoBridgeFraction::new(25, 7).expect("literal") {
        return SliceVerdict::new(Slice, format!("{f} is the slice knot 8_9 = K(25/7)"));
    }
    for member in f.orbit() {
        let Ok(cf) = subtractive_cf(&member) else { continue };
        if is_square_family(&cf.terms) {
            return SliceVerdict::new(Slice, format!("{member} = {}", format_terms(&cf.terms)));
        }
        if is_curated_family(&cf.terms) {
            return SliceVerdict::new(Slice, format!("{member} = {}", format_terms(&cf.terms)));
        }
    }
    SliceVerdict::new(Unknown, format!("{f} has square determinant but no slice certificate"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistBox {
    M,
    N,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MoveKind {
    /// Splits the `n` box as `C(m, k, ε, n − k)`.
    Horizontal { k: i64, eps: i64 },
    /// Adds or removes four half-twists in one box.
    Kearney { target: TwistBox, delta: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandMove {
    pub kind: MoveKind,
    pub source: DoubleTwist,
}

impl fmt::Display for BandMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let DoubleTwist { m, n } = self.source;
        match self.kind {
            MoveKind::Horizontal { k, eps } => write!(f, "C({m},{n}) → C({m},{k},{eps},{})", n - k),
            MoveKind::Kearney { target: TwistBox::M, delta } => write!(f, "C({m},{n}) → C({},{n})", m + delta),
            MoveKind::Kearney { target: TwistBox::N, delta } => write!(f, "C({m},{n}) → C({m},{})", n + delta),
        }
    }
}

pub fn apply_band_move(mv: &BandMove) -> Result<TwoBridgeFraction> {
    let DoubleTwist { m, n } = mv.source;
    match mv.kind {
        MoveKind::Horizontal { k, eps } => cf_value(&[m, k, eps, n - k]),
        MoveKind::Kearney { target: TwistBox::M, delta } => classifying_fraction(m + delta, n),
        MoveKind::Kearney { target: TwistBox::N, delta } => classifying_fraction(m, n + delta),
    }
}

/// Every move tried from `c`, in search order: horizontal moves on both
/// orderings of each parameterization by increasing `|k|` (then `k ≥ 0`,
/// then `ε = +1`), followed by Kearney moves.
pub fn candidate_moves(c: &Canonical) -> Vec<BandMove> {
    let mut sources = Vec::new();
    for p in parameterizations(c) {
        for s in [p, p.swapped()] {
            if !sources.contains(&s) {
                sources.push(s);
            }
        }
    }
    let mut moves = Vec::new();
    for &source in &sources {
        let reach = source.n.abs() + 2;
        for mag in 0..=reach {
            let ks: &[i64] = if mag == 0 { &[0] } else { &[mag, -mag] };
            for &k in ks {
                for eps in [1, -1] {
                    moves.push(BandMove { kind: MoveKind::Horizontal { k, eps }, source });
                }
            }
        }
    }
    for &source in &sources {
        for target in [TwistBox::M, TwistBox::N] {
            for delta in [-4, 4] {
                moves.push(BandMove { kind: MoveKind::Kearney { target, delta }, source });
            }
        }
    }
    moves
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandCertificate {
    pub moves: Vec<BandMove>,
    pub result: TwoBridgeFraction,
    pub verdict: SliceVerdict,
}

impl fmt::Display for BandCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moves.iter().map(|m| m.to_string()).collect();
        write!(f, "{}; result {} ({})", parts.join(", then "), self.result, self.verdict.certificate)
    }
}

fn depth1_cache() -> &'static Mutex<HashMap<DoubleTwist, Option<BandCertificate>>> {
    static CACHE: OnceLock<Mutex<HashMap<DoubleTwist, Option<BandCertificate>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn depth1_uncached(c: &Canonical) -> Result<Option<BandCertificate>> {
    for mv in candidate_moves(c) {
        let f = apply_band_move(&mv)?;
        // Only the unlink is accepted among link results.
        if !(f.is_unlink() || f.is_knot()) || !is_square(f.p()) {
            continue;
        }
        let verdict = slice_fraction_check(&f);
        if verdict.is_slice() {
            return Ok(Some(BandCertificate { moves: vec![mv], result: f, verdict }));
        }
    }
    Ok(None)
}

fn depth1(c: &Canonical) -> Result<Option<BandCertificate>> {
    if let Some(hit) = depth1_cache().lock().expect("cache poisoned").get(&c.knot) {
        return Ok(hit.clone());
    }
    let found = depth1_uncached(c)?;
    depth1_cache().lock().expect("cache poisoned").insert(c.knot, found.clone());
    Ok(found)
}

fn depth2(c: &Canonical) -> Result<Option<BandCertificate>> {
    let cap = c.m().abs().max(c.n().abs()) + INTERMEDIATE_SLACK;
    for mv in candidate_moves(c) {
        let f = apply_band_move(&mv)?;
        if !f.is_knot() || f.is_unknot() {
            continue;
        }
        let Some(mid) = recognize_double_twist(&f) else { continue };
        if !mid.is_generic() || mid.m().abs() > cap || mid.n().abs() > cap {
            continue;
        }
        if let Some(tail) = depth1(&mid)? {
            let mut moves = vec![mv];
            moves.extend(tail.moves);
            return Ok(Some(BandCertificate { moves, result: tail.result, verdict: tail.verdict }));
        }
    }
    Ok(None)
}

/// Searches for band moves from `k` to a slice knot. Returns 1 with a
/// single-move certificate or 2 with a two-move certificate whose
/// intermediate is a knot.
pub fn band_search_upper(k: DoubleTwist, depth: u8) -> Result<Option<(u8, BandCertificate)>> {
    let c = canonicalize(k)?;
    if !c.is_generic() {
        return Ok(None);
    }
    if let Some(cert) = depth1(&c)? {
        return Ok(Some((1, cert)));
    }
    if depth >= 2 {
        if let Some(cert) = depth2(&c)? {
            return Ok(Some((2, cert)));
        }
    }
    Ok(None)
}

/// The `γ₄ = 1` case (2–5) a generic pair falls under, ignoring exceptions.
pub fn gamma1_case(p: DoubleTwist) -> Option<u8> {
    let DoubleTwist { m, n } = p;
    if [(2, -6), (2, -10), (3, 8), (5, -6), (6, -6)].contains(&(m, n)) {
        return Some(2);
    }
    if m == 4 {
        return Some(3);
    }
    if n.abs() == 4 {
        return Some(4);
    }
    if [1, 3, 6, 7].contains(&(m - n).abs()) {
        return Some(5);
    }
    None
}

/// The `γ₄ = 1` families: (1) torus knots `C(1, n)`, (2) five sporadic
/// knots, (3) `C(4, n)`, (4) `C(m, ±4)`, (5) `|m − n| ∈ {1, 3, 6, 7}`.
/// Slice knots never match; they account for every listed exception.
pub fn family_gamma1(k: DoubleTwist) -> Result<Option<u8>> {
    let c = canonicalize(k)?;
    Ok(family_gamma1_canonical(&c))
}

pub fn family_gamma1_canonical(c: &Canonical) -> Option<u8> {
    match c.kind {
        TwistKind::Unknot => None,
        TwistKind::Torus => Some(1),
        TwistKind::Generic if is_slice_canonical(c) => None,
        TwistKind::Generic => obstruction_parameterizations(c).into_iter().find_map(gamma1_case),
    }
}

/// Every `γ₄ = 2` case the raw pair `(m, n)` satisfies, ascending.
pub fn gamma2_cases(p: DoubleTwist) -> Vec<u8> {
    let DoubleTwist { m, n } = p;
    let (m4, n4) = (m.rem_euclid(4), n.rem_euclid(4));
    let sq = is_square;
    let cases = [
        m == 2 && n > 0 && n4 == 2,
        n == 2 && m4 == 2,
        m4 == 3 && n < 0 && n4 == 2,
        m == n && m4 == 0 && !sq(m),
        m % 2 != 0 && n4 == 0 && n < 0 && n != -4,
        m == 8 && n < 0 && n != -4,
        n == -8 && m % 2 == 0 && m != 4,
        m4 == 1 && !sq(m) && n4 == 2 && n > m + 2,
        m4 == 3 && n > 0 && n4 == 2 && m > n + 2,
        n == m + 10 && m > 2 && m % 2 == 0 && !sq(m) && !sq(n),
        m >= 13 && m4 == 1 && n == m - 5 && !sq(m) && !sq(n),
        m >= 7 && m4 == 3 && n == m + 5 && !sq(n),
        m == 2 && n <= -18 && (-n - 18) % 100 == 0,
        n == -10 && m >= 13 && (m - 13) % 36 == 0,
    ];
    (1..=14u8).zip(cases).filter(|&(_, hit)| hit).map(|(i, _)| i).collect()
}

/// The fourteen `γ₄ = 2` families; returns the lowest matching case over
/// every parameterization.
pub fn family_gamma2(k: DoubleTwist) -> Result<Option<u8>> {
    let c = canonicalize(k)?;
    Ok(family_gamma2_canonical(&c))
}

pub fn family_gamma2_canonical(c: &Canonical) -> Option<u8> {
    if !c.is_generic() {
        return None;
    }
    obstruction_parameterizations(c).into_iter().filter_map(|p| gamma2_cases(p).first().copied()).min()
}

/// Two horizontal moves `C(m, m) → C(m + 1, m) → C(m + 2, m)` for any
/// `m ≥ 3` (necessarily even here).
fn equal_twists(c: &Canonical) -> Option<DoubleTwist> {
    obstruction_parameterizations(c).into_iter().find(|p| p.m == p.n && p.m >= 3)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperVerdict {
    pub bound: u8,
    pub evidence: Vec<Evidence>,
}

pub fn upper_bound(k: DoubleTwist) -> Result<UpperVerdict> {
    let c = canonicalize(k)?;
    upper_bound_canonical(&c, 0)
}

/// Upper bound, skipping searches that cannot go below `floor` (a known
/// lower bound). The bound is the same for every `floor` at or below the
/// true lower bound.
pub fn upper_bound_canonical(c: &Canonical, floor: u8) -> Result<UpperVerdict> {
    if is_slice_canonical(c) {
        return Ok(UpperVerdict { bound: 0, evidence: vec![Evidence::new(rule::SLICE, format!("{} is slice", c.knot))] });
    }
    let g3 = crosscap3(c);
    let mut bound = g3;
    let mut evidence = vec![Evidence::new(rule::CROSSCAP, format!("γ₃ = {g3}"))];
    if bound > 1 && floor <= 1 {
        if let Some(case) = family_gamma1_canonical(c) {
            bound = 1;
            evidence.push(Evidence::new(rule::FAMILY_GAMMA1, format!("γ₄ = 1 family, case {case}")));
        } else if let Some((_, cert)) = band_search_upper(c.knot, 1)? {
            bound = 1;
            evidence.push(Evidence::new(rule::BAND_ONE, cert.to_string()));
        }
    }
    if bound > 2 && floor <= 2 {
        if let Some(case) = family_gamma2_canonical(c) {
            bound = 2;
            evidence.push(Evidence::new(rule::FAMILY_GAMMA2, format!("γ₄ = 2 family, case {case}")));
        } else if let Some(p) = equal_twists(c) {
            bound = 2;
            evidence.push(Evidence::new(
                rule::EQUAL_TWISTS,
                format!("{p} → C({},{}) → C({},{}) (slice)", p.m + 1, p.n, p.m + 2, p.n),
            ));
        } else if let Some((d, cert)) = band_search_upper(c.knot, 2)? {
            bound = d;
            let id = if d == 1 { rule::BAND_ONE } else { rule::BAND_TWO };
            evidence.push(Evidence::new(id, cert.to_string()));
        }
    }
    Ok(UpperVerdict { bound, evidence })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dt(m: i64, n: i64) -> DoubleTwist {
        DoubleTwist::new(m, n)
    }

    fn frac(p: i64, q: i64) -> TwoBridgeFraction {
        TwoBridgeFraction::new(p, q).unwrap()
    }

    fn horizontal(m: i64, n: i64, k: i64, eps: i64) -> TwoBridgeFraction {
        apply_band_move(&BandMove { kind: MoveKind::Horizontal { k, eps }, source: dt(m, n) }).unwrap()
    }

    #[test]
    fn slice_classification_examples() {
        assert!(is_slice_double_twist(dt(4, 2)).unwrap());
        assert!(is_slice_double_twist(dt(5, -2)).unwrap());
        assert!(!is_slice_double_twist(dt(5, 2)).unwrap());
        assert!(is_slice_double_twist(dt(1, -2)).unwrap());
    }

    #[test]
    fn slice_fraction_examples() {
        assert_eq!(slice_fraction_check(&frac(9, 2)).status, SliceStatus::Slice);
        assert_eq!(slice_fraction_check(&frac(25, 7)).status, SliceStatus::Slice);
        assert_eq!(slice_fraction_check(&frac(11, 3)).status, SliceStatus::NotSlice);
        assert_eq!(slice_fraction_check(&frac(0, 1)).status, SliceStatus::Slice);
    }

    #[test]
    fn band_move_examples() {
        assert!(knots_eq(horizontal(5, -6, -4, 1), frac(9, 2)));
        assert!(horizontal(2, 4, 1, -1).is_unlink());
        assert_eq!(horizontal(3, 3, 0, 1), frac(13, 3));
        assert!(knots_eq(horizontal(6, -6, -2, 1), frac(9, 2)));
        assert!(knots_eq(horizontal(3, 8, 3, -1), frac(25, 7)));
    }

    fn knots_eq(a: TwoBridgeFraction, b: TwoBridgeFraction) -> bool {
        a.equivalent(&b)
    }

    #[test]
    fn equal_distance_moves() {
        for m in 2..=10 {
            let to_slice = classifying_fraction(m + 2, m).unwrap();
            assert!(knots_eq(horizontal(m, m + 6, m + 4, -1), to_slice), "m={m}");
            let f = horizontal(m, m + 7, 5, -1);
            let member = f.orbit().into_iter().any(|g| {
                subtractive_cf(&g).map(|cf| is_curated_family(&cf.terms) && cf.terms[0] == m + 1).unwrap_or(false)
            });
            assert!(member, "m={m}: {f}");
        }
    }

    #[test]
    fn further_move_reaches_unlink() {
        for m in 2..=12 {
            assert!(cf_value(&[m, 2, -1, 3, -1, m + 2]).unwrap().is_unlink(), "m={m}");
        }
    }

    #[test]
    fn band_search_examples() {
        assert_eq!(band_search_upper(dt(6, -6), 1).unwrap().unwrap().0, 1);
        assert_eq!(band_search_upper(dt(6, 6), 2).unwrap().unwrap().0, 2);
        assert_eq!(band_search_upper(dt(8, -6), 2).unwrap().unwrap().0, 2);
    }

    #[test]
    fn family_examples() {
        assert_eq!(family_gamma1(dt(9, 2)).unwrap(), Some(5));
        assert_eq!(family_gamma1(dt(4, -10)).unwrap(), Some(3));
        assert_eq!(family_gamma1(dt(6, 4)).unwrap(), None);
        assert_eq!(family_gamma2(dt(2, 18)).unwrap(), Some(1));
        assert_eq!(family_gamma2(dt(13, -10)).unwrap(), Some(14));
        assert_eq!(family_gamma2(dt(12, 12)).unwrap(), Some(4));
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound(dt(22, 62)).unwrap().bound, 3);
        assert_eq!(upper_bound(dt(12, 2)).unwrap().bound, 2);
        for m in 2..=30 {
            for n in [4, -4] {
                let c = canonicalize(dt(m, n)).unwrap();
                let want = if is_slice_canonical(&c) { 0 } else { 1 };
                assert_eq!(upper_bound(dt(m, n)).unwrap().bound, want, "({m},{n})");
            }
        }
    }

    #[test]
    fn certified_slice_fractions_have_square_determinant() {
        for p in (1..400).step_by(2) {
            for q in 0..p {
                let Ok(f) = TwoBridgeFraction::new(p, q) else { continue };
                if f.p() != p {
                    continue;
                }
                if slice_fraction_check(&f).is_slice() {
                    assert!(is_square(f.p()), "{f}");
                }
            }
        }
    }
}

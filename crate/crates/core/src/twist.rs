//! Twist knots `C(m, 2)` with `γ₄ = 2` from residue obstructions.
//!
//! For `t > 1` and `1 < j < t`, if `2j` is not attained by
//! `x² + x + 2y²` modulo `t` then condition (a) holds for every
//! `C(4j + 4tk, 2)`; the form `x² + x + 2y² + 2y` plays the same role for
//! `C(1 + 4j + 4tk, 2)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diophantine::ResidueForm;
use crate::error::{Error, Result};

pub const MAX_MODULUS: u64 = 1_000_000;
pub const MAX_SEARCH: u64 = 100_000;
/// Range of `t` searched for [`twist_gamma2_member`].
pub const STORED_T_MAX: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// `x² + x + 2y²`, for `m ≡ 0 (mod 4)`.
    A,
    /// `x² + x + 2y² + 2y`, for `m ≡ 1 (mod 4)`.
    B,
}

impl Variant {
    pub fn form(self) -> ResidueForm {
        match self {
            Variant::A => ResidueForm::TwistA,
            Variant::B => ResidueForm::TwistB,
        }
    }

    /// `m mod 4` of the twist knots the variant speaks about.
    pub fn offset(self) -> i64 {
        match self {
            Variant::A => 0,
            Variant::B => 1,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::A => "A",
            Variant::B => "B",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Variant::A),
            "B" | "b" => Ok(Variant::B),
            other => Err(Error::InvalidInput(format!("variant must be A or B, got `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistFamilyResult {
    pub t: u64,
    pub variant: Variant,
    pub j_set: Vec<u64>,
}

/// Residues attained by the variant's form over all `x, y mod t`.
pub fn value_set(t: u64, variant: Variant) -> Result<Vec<bool>> {
    if t == 0 || t > MAX_MODULUS {
        return Err(Error::InvalidInput(format!("t must be in 1..={MAX_MODULUS}, got {t}")));
    }
    Ok(variant.form().value_table(t))
}

fn j_set_from(t: u64, values: &[bool]) -> Vec<u64> {
    (2..t).filter(|&j| !values[(2 * j % t) as usize]).collect()
}

/// `{ j : 1 < j < t, 2j mod t not attained }`.
pub fn j_set(t: u64, variant: Variant) -> Result<Vec<u64>> {
    if t < 3 {
        return Err(Error::InvalidInput(format!("j_set needs t ≥ 3, got {t}")));
    }
    Ok(j_set_from(t, &value_set(t, variant)?))
}

/// All `t ≤ t_max` with a nonempty j-set that are not multiples of a
/// smaller such `t`, ascending.
pub fn primitive_t_search(t_max: u64, variant: Variant) -> Result<Vec<TwistFamilyResult>> {
    if t_max > MAX_SEARCH {
        return Err(Error::InvalidInput(format!("t_max must be at most {MAX_SEARCH}, got {t_max}")));
    }
    let nonempty: Vec<(u64, Vec<u64>)> = (3..=t_max)
        .into_par_iter()
        .map(|t| (t, j_set_from(t, &variant.form().value_table(t))))
        .filter(|(_, js)| !js.is_empty())
        .collect();
    let mut primitive: Vec<TwistFamilyResult> = Vec::new();
    for (t, j_set) in nonempty {
        if primitive.iter().all(|r| t % r.t != 0) {
            primitive.push(TwistFamilyResult { t, variant, j_set });
        }
    }
    Ok(primitive)
}

fn stored(variant: Variant) -> &'static [TwistFamilyResult] {
    static A: OnceLock<Vec<TwistFamilyResult>> = OnceLock::new();
    static B: OnceLock<Vec<TwistFamilyResult>> = OnceLock::new();
    let cell = match variant {
        Variant::A => &A,
        Variant::B => &B,
    };
    cell.get_or_init(|| primitive_t_search(STORED_T_MAX, variant).expect("stored range is valid"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCertificate {
    pub t: u64,
    pub j: u64,
    pub variant: Variant,
}

/// Finds `(t, j)` with `m = 4j + 4tk` (variant A) or `m = 1 + 4j + 4tk`
/// (variant B), `k ≥ 0`, among the primitive `t ≤ 1000`.
pub fn twist_gamma2_member(m: i64) -> Option<TwistCertificate> {
    for variant in [Variant::A, Variant::B] {
        let base = m - variant.offset();
        if base <= 0 || base % 4 != 0 {
            continue;
        }
        for r in stored(variant) {
            for &j in &r.j_set {
                let rest = base - 4 * j as i64;
                if rest >= 0 && rest % (4 * r.t as i64) == 0 {
                    return Some(TwistCertificate { t: r.t, j, variant });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn missing(t: u64, v: Variant) -> Vec<u64> {
        let vs = value_set(t, v).unwrap();
        (0..t).filter(|&r| !vs[r as usize]).collect()
    }

    #[test]
    fn value_set_examples() {
        assert_eq!(missing(25, Variant::A), vec![1, 11, 16, 21]);
        assert_eq!(missing(25, Variant::B), vec![3, 8, 13, 23]);
        assert_eq!(value_set(2, Variant::A).unwrap(), vec![true, false]);
    }

    #[test]
    fn value_set_matches_pair_enumeration() {
        for t in 1..60u64 {
            for v in [Variant::A, Variant::B] {
                let mut brute = vec![false; t as usize];
                for x in 0..t as i64 {
                    for y in 0..t as i64 {
                        brute[v.form().evaluate(x, y).rem_euclid(t as i128) as usize] = true;
                    }
                }
                assert_eq!(value_set(t, v).unwrap(), brute, "t={t} {v}");
            }
        }
    }

    #[test]
    fn j_set_examples() {
        assert_eq!(j_set(25, Variant::A).unwrap(), vec![8, 13, 18, 23]);
        assert_eq!(j_set(49, Variant::B).unwrap(), vec![4, 11, 25, 32, 39, 46]);
        assert!(j_set(24, Variant::A).unwrap().is_empty());
    }

    #[test]
    fn small_searches_are_empty() {
        assert!(primitive_t_search(24, Variant::A).unwrap().is_empty());
        assert!(primitive_t_search(20, Variant::B).unwrap().is_empty());
    }

    #[test]
    fn members() {
        assert_eq!(twist_gamma2_member(32), Some(TwistCertificate { t: 25, j: 8, variant: Variant::A }));
        assert_eq!(twist_gamma2_member(17), Some(TwistCertificate { t: 25, j: 4, variant: Variant::B }));
        assert_eq!(twist_gamma2_member(8), None);
    }
}

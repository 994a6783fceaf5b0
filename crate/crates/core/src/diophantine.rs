//! Exact solvers for the Diophantine conditions that embedding questions
//! about Goeritz forms reduce to.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_square, isqrt, two_squares};
use crate::error::{Error, Result};

/// A solution of `r = s·x² + 2x + Σ yᵢ²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadSolution {
    pub x: i64,
    pub squares: Vec<i64>,
}

impl QuadSolution {
    pub fn evaluate(&self, s: i64) -> i128 {
        let x = self.x as i128;
        s as i128 * x * x + 2 * x + self.squares.iter().map(|&y| (y as i128).pow(2)).sum::<i128>()
    }
}

/// Largest `|x|` with `s·x² − 2|x| ≤ r`, i.e. `⌊(1 + √(1 + s·r)) / s⌋`.
pub fn x_search_bound(r: i64, s: i64) -> Result<i64> {
    let disc = (s as i128)
        .checked_mul(r as i128)
        .and_then(|v| v.checked_add(1))
        .filter(|&v| v <= u64::MAX as i128)
        .ok_or(Error::Range("search bound"))?;
    Ok(((1 + isqrt(disc as u64) as i128) / s as i128) as i64)
}

/// Solves `r = s·x² + 2x + y₁² [+ y₂²]`, scanning `x` by increasing `|x|`
/// (positive first).
pub fn solve_quad(r: i64, s: i64, extra_squares: usize) -> Result<Option<QuadSolution>> {
    if r < 1 || s < 1 {
        return Err(Error::InvalidInput(format!("solve_quad needs r, s ≥ 1, got r={r}, s={s}")));
    }
    if !(1..=2).contains(&extra_squares) {
        return Err(Error::InvalidInput(format!("extra_squares must be 1 or 2, got {extra_squares}")));
    }
    let bound = x_search_bound(r, s)?;
    for mag in 0..=bound {
        for x in [mag, -mag] {
            if mag == 0 && x != 0 {
                continue;
            }
            let used = s as i128 * (x as i128).pow(2) + 2 * x as i128;
            let residual = r as i128 - used;
            if residual < 0 {
                continue;
            }
            let residual = residual as i64;
            let squares = match extra_squares {
                1 => is_square(residual).then(|| vec![isqrt(residual as u64) as i64]),
                _ => two_squares(residual).map(|(a, b)| vec![a, b]),
            };
            if let Some(squares) = squares {
                return Ok(Some(QuadSolution { x, squares }));
            }
        }
    }
    Ok(None)
}

/// No solution of `m = n·x² + 2x + y²`.
pub fn condition_a(m: i64, n: i64) -> Result<bool> {
    Ok(solve_quad(m, n, 1)?.is_none())
}

/// No solution of `n = m·x² + 2x + y²`.
pub fn condition_b(m: i64, n: i64) -> Result<bool> {
    Ok(solve_quad(n, m, 1)?.is_none())
}

/// Two integer vectors of `Z³` with prescribed norms and inner product −1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSystemSolution {
    pub row1: [i64; 3],
    pub row2: [i64; 3],
}

/// Representations `n = a² + b² + c²` with `a ≥ b ≥ c ≥ 0`.
pub fn three_square_reps(n: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    if n < 0 {
        return out;
    }
    let top = isqrt(n as u64) as i64;
    for a in (0..=top).rev() {
        let ra = n - a * a;
        for b in (0..=a.min(isqrt(ra as u64) as i64)).rev() {
            let rb = ra - b * b;
            if is_square(rb) {
                let c = isqrt(rb as u64) as i64;
                if c <= b {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// All coordinate permutations and sign changes of `v`, without repeats.
pub fn signed_permutations(v: [i64; 3]) -> Vec<[i64; 3]> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for p in PERMS {
        for signs in 0..8u8 {
            let w = [0, 1, 2].map(|i| {
                let s = if signs >> i & 1 == 1 { -1 } else { 1 };
                s * v[p[i]]
            });
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// Searches for `‖row1‖² = m`, `‖row2‖² = n_abs`, `row1·row2 = −1`.
///
/// The signed permutation group acts on both rows at once, so `row1` can be
/// taken sorted and nonnegative while `row2` ranges over everything.
pub fn solve_triple_system(m: i64, n_abs: i64) -> Option<TripleSystemSolution> {
    let second: Vec<[i64; 3]> = three_square_reps(n_abs)
        .into_iter()
        .flat_map(signed_permutations)
        .collect();
    for row1 in three_square_reps(m) {
        for &row2 in &second {
            if (0..3).map(|i| row1[i] * row2[i]).sum::<i64>() == -1 {
                return Some(TripleSystemSolution { row1, row2 });
            }
        }
    }
    None
}

/// No solution of the three-squares inner-product system.
pub fn condition_c(m: i64, n_abs: i64) -> Result<bool> {
    if m < 2 || n_abs < 2 {
        return Err(Error::InvalidInput(format!("condition (c) needs m > 1, |n| ≥ 2, got ({m}, {n_abs})")));
    }
    Ok(solve_triple_system(m, n_abs).is_none())
}

/// `m ≠ 4`, `n ≠ −4` and `(m, n) ≠ (5, −2)`.
pub fn condition_d(m: i64, n: i64) -> bool {
    m != 4 && n != -4 && (m, n) != (5, -2)
}

/// Quadratic forms `g(x) + h(y)` that are checked by residue enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResidueForm {
    /// `x² + (x+1)² + z²`
    ConsecutiveSquares,
    /// `x² + (3x+1)² + y²`
    TripledSquares,
    /// `x² + x + 2y²`
    TwistA,
    /// `x² + x + 2y² + 2y`
    TwistB,
}

impl ResidueForm {
    pub const ALL: [ResidueForm; 4] =
        [Self::ConsecutiveSquares, Self::TripledSquares, Self::TwistA, Self::TwistB];

    pub fn id(self) -> &'static str {
        match self {
            Self::ConsecutiveSquares => "consecutive",
            Self::TripledSquares => "tripled",
            Self::TwistA => "twist-a",
            Self::TwistB => "twist-b",
        }
    }

    /// The form split as `g(x) + h(y)`.
    fn parts(self, x: i128) -> (i128, i128) {
        match self {
            Self::ConsecutiveSquares => (x * x + (x + 1) * (x + 1), x * x),
            Self::TripledSquares => (x * x + (3 * x + 1) * (3 * x + 1), x * x),
            Self::TwistA => (x * x + x, 2 * x * x),
            Self::TwistB => (x * x + x, 2 * x * x + 2 * x),
        }
    }

    pub fn evaluate(self, x: i64, y: i64) -> i128 {
        self.parts(x as i128).0 + self.parts(y as i128).1
    }

    /// Residues mod `modulus` attained by the form, as a dense table.
    pub fn value_table(self, modulus: u64) -> Vec<bool> {
        let t = modulus as usize;
        let mut g_seen = vec![false; t];
        let mut h_seen = vec![false; t];
        for x in 0..modulus {
            let (g, h) = self.parts(x as i128);
            g_seen[g.rem_euclid(modulus as i128) as usize] = true;
            h_seen[h.rem_euclid(modulus as i128) as usize] = true;
        }
        let hs: Vec<usize> = (0..t).filter(|&i| h_seen[i]).collect();
        let mut out = vec![false; t];
        let mut covered = 0usize;
        for g in (0..t).filter(|&i| g_seen[i]) {
            for &h in &hs {
                let v = (g + h) % t;
                if !out[v] {
                    out[v] = true;
                    covered += 1;
                }
            }
            if covered == t {
                break;
            }
        }
        out
    }
}

impl fmt::Display for ResidueForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ResidueForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::UnknownForm(s.to_string()))
    }
}

/// Whether `form ≡ target (mod modulus)` has no solution at all.
pub fn modular_unsolvable(form: ResidueForm, target: i64, modulus: u64) -> Result<bool> {
    if modulus == 0 || modulus > 1_000_000 {
        return Err(Error::InvalidInput(format!("modulus must be in 1..=10⁶, got {modulus}")));
    }
    let table = form.value_table(modulus);
    Ok(!table[target.rem_euclid(modulus as i64) as usize])
}

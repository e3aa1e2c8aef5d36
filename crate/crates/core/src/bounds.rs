//! Closed-form thresholds for completion and decomposition.
//!
//! All results hold only for `n` beyond an unspecified `n_0`; the functions
//! here evaluate the formulas for any `n` and [`BoundReport`] keeps the
//! regime flag separate.

use std::fmt;

use serde::Serialize;

use crate::design::{binom2, is_k_admissible};
use crate::error::{Error, Result};

/// An integer or half-integer, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }

    /// Strict `value > self`.
    pub fn exceeded_by(self, value: i64) -> bool {
        2 * value > self.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}.5", self.0.div_euclid(2)),
        }
    }
}

/// `4ℓ = k² − k − 2`.
pub fn four_ell(k: usize) -> i64 {
    let k = k as i64;
    k * k - k - 2
}

/// Largest block count for which every partial design is completable:
/// `(n−1)/(k−1) − k + 1`.
pub fn evans_block_bound(n: usize, k: usize) -> Result<i64> {
    if k < 3 || n < k || !is_k_admissible(n, k) {
        return Err(Error::NotAdmissible { n, k });
    }
    Ok(((n - 1) / (k - 1)) as i64 - k as i64 + 1)
}

/// Edge threshold for `n ≡ 1 mod (k−1)`:
/// `C(n,2) − ((n−1)/(k−1) − ℓ)·C(k,2)` with `ℓ·C(k,2) = (k−2)(k−1)k(k+1)/8`.
pub fn thm2_edge_bound(n: usize, k: usize) -> Result<i64> {
    if k < 3 || n == 0 || !(n - 1).is_multiple_of(k - 1) {
        return Err(Error::Congruence { n, k });
    }
    let kk = k as i64;
    let ell_term = (kk - 2) * (kk - 1) * kk * (kk + 1) / 8;
    Ok(binom2(n) as i64 - ((n - 1) / (k - 1)) as i64 * binom2(k) as i64 + ell_term)
}

/// Complement-side budget `(n−1)/(k−1) − ℓ` in units of `C(k,2)` edges, as
/// a fraction over 4.
pub fn thm2_complement_blocks(n: usize, k: usize) -> Result<(i64, i64)> {
    if k < 3 || n == 0 || !(n - 1).is_multiple_of(k - 1) {
        return Err(Error::Congruence { n, k });
    }
    Ok((4 * ((n - 1) / (k - 1)) as i64 - four_ell(k), 4))
}

/// Edge threshold for arbitrary order: `C(n,2) − n + (k+1)/2` for `k ≥ 4`,
/// `C(n,2) − n` for `k = 3`.
pub fn thm3_edge_bound(n: usize, k: usize) -> Result<HalfInt> {
    if k < 3 || n < k {
        return Err(Error::InvalidParameters(format!("need n >= k >= 3, got n={n}, k={k}")));
    }
    let base = 2 * (binom2(n) as i64 - n as i64);
    Ok(if k == 3 { HalfInt(base) } else { HalfInt(base + k as i64 + 1) })
}

/// The `k = 3` complement threshold `e(n)`.
pub fn e_of_n(n: usize) -> Result<i64> {
    if n < 7 {
        return Err(Error::InvalidParameters(format!("e(n) needs n >= 7, got {n}")));
    }
    let m = n as i64;
    Ok(match n % 6 {
        1 | 3 => (3 * m - 9) / 2,
        5 => (3 * m - 7) / 2,
        2 | 4 => m + 2,
        _ => m,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub admissible: bool,
    pub evans_block_bound: Option<i64>,
    pub thm2_edge_bound: Option<i64>,
    /// `[numerator, denominator]` of `(n−1)/(k−1) − ℓ`.
    pub thm2_complement_blocks: Option<[i64; 2]>,
    /// Doubled, so half-integers stay exact.
    pub thm3_edge_bound_doubled: Option<i64>,
    pub e_of_n: Option<i64>,
    /// Whether `n ≥ n_0`; always `None` because `n_0` is not known.
    pub in_proven_regime: Option<bool>,
}

impl BoundReport {
    pub fn new(n: usize, k: usize) -> Self {
        BoundReport {
            n,
            k,
            admissible: k >= 2 && n >= 1 && is_k_admissible(n, k),
            evans_block_bound: evans_block_bound(n, k).ok(),
            thm2_edge_bound: thm2_edge_bound(n, k).ok(),
            thm2_complement_blocks: thm2_complement_blocks(n, k).ok().map(|(a, b)| [a, b]),
            thm3_edge_bound_doubled: thm3_edge_bound(n, k).ok().map(HalfInt::doubled),
            e_of_n: if k == 3 { e_of_n(n).ok() } else { None },
            in_proven_regime: None,
        }
    }
}

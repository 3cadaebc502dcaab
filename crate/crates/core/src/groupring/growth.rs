use num::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

use super::matrix::GroupRingMatrix;

/// A square matrix type carrying the ℓ¹ matrix norm `n · max |a_ij|₁`.
pub trait NormedMatrix: Clone {
    fn shape(&self) -> (usize, usize);
    fn matmul(&self, other: &Self) -> Self;
    fn l1_norm_f64(&self) -> f64;
    /// Total number of stored terms, used to cap materialisation.
    fn term_count(&self) -> usize;
}

impl NormedMatrix for GroupRingMatrix {
    fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    fn matmul(&self, other: &Self) -> Self {
        self.mul(other).expect("square matrices of equal size")
    }

    fn l1_norm_f64(&self) -> f64 {
        self.l1_norm().to_f64().unwrap_or(f64::INFINITY)
    }

    fn term_count(&self) -> usize {
        GroupRingMatrix::term_count(self)
    }
}

/// Upper bounds `(‖A^k‖₁)^{1/k}` for `k = 1..=k_max`.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthBounds {
    pub k_max: u64,
    /// `(k, ‖A^k‖₁)` for the materialised powers `k = 1, 2, 4, …`.
    pub power_norms: Vec<(u64, f64)>,
    /// Entry `k-1` bounds `(‖A^k‖₁)^{1/k}` from above.
    pub bounds: Vec<f64>,
    /// Running minimum of `bounds`; every entry bounds `h(A)` from above.
    pub running_min: Vec<f64>,
}

impl GrowthBounds {
    /// Best upper bound for `h(A)`.
    pub fn upper(&self) -> f64 {
        *self.running_min.last().expect("k_max >= 1")
    }
}

/// Default cap on the number of stored terms of a materialised power.
pub const DEFAULT_TERM_BUDGET: usize = 4_000;

/// Growth-rate upper bounds by repeated squaring.
pub fn growth_rate_upper<M: NormedMatrix>(a: &M, k_max: u64) -> Result<GrowthBounds> {
    growth_rate_upper_with_budget(a, k_max, DEFAULT_TERM_BUDGET)
}

/// As [`growth_rate_upper`]. Powers `A^{2^j}` are materialised only while the
/// current power holds at most `term_budget` terms; beyond that the
/// submultiplicative bound `‖A^{2^{j+1}}‖ ≤ ‖A^{2^j}‖²` is used, so every
/// reported value remains a valid upper bound.
pub fn growth_rate_upper_with_budget<M: NormedMatrix>(a: &M, k_max: u64, term_budget: usize) -> Result<GrowthBounds> {
    let (r, c) = a.shape();
    if r != c {
        return Err(Error::Dimension(format!("growth rate needs a square matrix, got {r}x{c}")));
    }
    if k_max == 0 {
        return Err(Error::arg("k_max must be at least 1"));
    }

    // log ‖A^{2^j}‖ for every j with 2^j <= k_max
    let mut log_pow2 = Vec::new();
    let mut power_norms = Vec::new();
    let mut cur = a.clone();
    let mut materialised = true;
    let mut k = 1u64;
    while k <= k_max {
        let ln = if materialised {
            let n = cur.l1_norm_f64();
            power_norms.push((k, n));
            n.ln()
        } else {
            2.0 * log_pow2.last().copied().unwrap_or(f64::NEG_INFINITY)
        };
        log_pow2.push(ln);
        if k.checked_mul(2).is_none_or(|k2| k2 > k_max) {
            break;
        }
        if materialised {
            if cur.term_count() > term_budget {
                materialised = false;
            } else {
                cur = cur.matmul(&cur);
            }
        }
        k *= 2;
    }

    let mut bounds = Vec::with_capacity(k_max as usize);
    let mut running_min = Vec::with_capacity(k_max as usize);
    let mut best = f64::INFINITY;
    for k in 1..=k_max {
        let mut ln = 0.0;
        for (j, lj) in log_pow2.iter().enumerate() {
            if (k >> j) & 1 == 1 {
                ln += lj;
            }
        }
        let b = (ln / k as f64).exp();
        best = best.min(b);
        bounds.push(b);
        running_min.push(best);
    }

    Ok(GrowthBounds { k_max, power_norms, bounds, running_min })
}

//! Mahler measures and Fuglede–Kadison determinants over free abelian groups.
//!
//! For `G = Z^k` the regular determinant of a square matrix over `R[G]` is the
//! Mahler measure of its ordinary determinant. One-variable measures are
//! computed from root moduli (Jensen's formula); several variables use a
//! tensor trapezoidal rule on the torus.

mod fk;
mod jensen;
mod quadrature;

use serde::Serialize;

pub(crate) use fk::PreparedDet;
pub use fk::{fk_det_abelian, fk_det_abelian_with, fk_det_poly, induce_index_d, FkOptions};
pub use jensen::{mahler_jensen, mahler_jensen_scaled, reduce_to_one_variable, OneVarReduction};
pub use quadrature::{mahler_quadrature, mahler_quadrature_real, mahler_quadrature_with, MAX_GRID_POINTS};

/// How a Mahler measure was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MahlerMethod {
    Jensen,
    Quadrature,
}

/// A Mahler measure with an error estimate.
///
/// For [`MahlerMethod::Jensen`] the error is an accumulated bound from
/// certified root radii (zero when every root modulus is exact). For
/// [`MahlerMethod::Quadrature`] it is a heuristic Richardson estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MahlerValue {
    pub value: f64,
    pub err: f64,
    pub method: MahlerMethod,
    /// Grid points skipped because `|p|` underflowed.
    pub skipped: usize,
    pub low_confidence: bool,
}

impl MahlerValue {
    pub fn exact(value: f64) -> Self {
        MahlerValue { value, err: 0.0, method: MahlerMethod::Jensen, skipped: 0, low_confidence: false }
    }

    pub fn zero() -> Self {
        Self::exact(0.0)
    }

    /// Product, with first-order error propagation.
    pub fn mul(&self, o: &MahlerValue) -> MahlerValue {
        MahlerValue {
            value: self.value * o.value,
            err: self.err * o.value + o.err * self.value + self.err * o.err,
            method: combine(self.method, o.method),
            skipped: self.skipped + o.skipped,
            low_confidence: self.low_confidence || o.low_confidence,
        }
    }

    /// Quotient; `None` when the divisor vanishes.
    pub fn div(&self, o: &MahlerValue) -> Option<MahlerValue> {
        if o.value == 0.0 {
            return None;
        }
        let value = self.value / o.value;
        let rel_o = if o.err >= o.value { f64::INFINITY } else { o.err / (o.value - o.err) };
        let rel_s = if self.value == 0.0 { 0.0 } else { self.err / self.value };
        let err = if self.err == 0.0 && o.err == 0.0 {
            0.0
        } else if self.value == 0.0 {
            self.err / (o.value - o.err).max(0.0)
        } else {
            value * ((1.0 + rel_s) * (1.0 + rel_o) - 1.0)
        };
        Some(MahlerValue {
            value,
            err,
            method: combine(self.method, o.method),
            skipped: self.skipped + o.skipped,
            low_confidence: self.low_confidence || o.low_confidence,
        })
    }

    pub fn powi(&self, k: i32) -> MahlerValue {
        let mut out = MahlerValue::exact(1.0);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(self);
        }
        if k < 0 {
            MahlerValue::exact(1.0).div(&out).unwrap_or_else(|| MahlerValue::exact(f64::INFINITY))
        } else {
            out
        }
    }
}

fn combine(a: MahlerMethod, b: MahlerMethod) -> MahlerMethod {
    if a == MahlerMethod::Quadrature || b == MahlerMethod::Quadrature {
        MahlerMethod::Quadrature
    } else {
        MahlerMethod::Jensen
    }
}

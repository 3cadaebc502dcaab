//! Torsion functions `R⁺ → [0, ∞)`: exact max-monomial forms
//! `C · t^r · ∏ max(c_i, t)^{e_i}`, sampled forms, and their degrees.

mod degree;
mod maxmono;
mod sampled;

pub use degree::{DegreeReport, ExtReal};
pub use maxmono::{equivalent, Factor, MaxMonomialFn, PosReal, Symmetry};
pub use sampled::{log_grid, sample, sample_at, SampleRow, SampledDegree, SampledFn};

use crate::Exponent;

pub(crate) fn exponent_to_f64(e: Exponent) -> f64 {
    *e.numer() as f64 / *e.denom() as f64
}

/// `"3"`, `"-1"`, `"1/2"`.
pub fn exponent_string(e: Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

pub(crate) fn parse_exponent(s: &str) -> Option<Exponent> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: i64 = b.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Exponent::new(a.trim().parse().ok()?, d))
        }
        None => Some(Exponent::from_integer(s.parse().ok()?)),
    }
}

/// `x^e` for `x > 0`, using integer powers when `e` is an integer.
pub(crate) fn pow_exp(x: f64, e: Exponent) -> f64 {
    if e.is_integer() {
        if let Ok(k) = i32::try_from(*e.numer()) {
            return x.powi(k);
        }
    }
    x.powf(exponent_to_f64(e))
}

use crate::error::{Error, Result};

use super::poly::LaurentPoly;

/// `max ψ·(α − β)` over pairs of support points.
pub fn newton_width(p: &LaurentPoly, psi: &[f64]) -> Result<f64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if psi.len() != p.nvars() {
        return Err(Error::Dimension("psi length".into()));
    }
    let vals = p.terms().map(|(e, _)| e.iter().zip(psi).map(|(&a, &b)| a as f64 * b).sum::<f64>());
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
    Ok(hi - lo)
}

/// `(min, max)` of `ψ·α` over the support.
pub fn newton_range(p: &LaurentPoly, psi: &[i64]) -> Result<(i64, i64)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if psi.len() != p.nvars() {
        return Err(Error::Dimension("psi length".into()));
    }
    let vals = p.terms().map(|(e, _)| e.iter().zip(psi).map(|(a, b)| a * b).sum::<i64>());
    Ok(vals.fold((i64::MAX, i64::MIN), |(l, h), v| (l.min(v), h.max(v))))
}

/// Integer version of [`newton_width`].
pub fn newton_width_int(p: &LaurentPoly, psi: &[i64]) -> Result<i64> {
    let (lo, hi) = newton_range(p, psi)?;
    Ok(hi - lo)
}

use num::{Integer, ToPrimitive};

use crate::error::{Error, Result};
use crate::laurent::{one_var_roots, LaurentPoly, RootData};

use super::MahlerValue;

/// `m(p)` for a one-variable polynomial by Jensen's formula,
/// `|C| · ∏ max(1, |a_i|)`. The zero polynomial has measure zero.
pub fn mahler_jensen(p: &LaurentPoly) -> Result<MahlerValue> {
    if p.nvars() != 1 {
        return Err(Error::Dimension(format!("Jensen needs one variable, got {}", p.nvars())));
    }
    if p.is_zero() {
        return Ok(MahlerValue::zero());
    }
    let roots = one_var_roots(p)?;
    Ok(mahler_jensen_scaled(&roots, 1.0))
}

/// `m(p(s·z)) = |C| · s^m · ∏ max(s, |a_i|)` from precomputed root data.
pub fn mahler_jensen_scaled(roots: &RootData, s: f64) -> MahlerValue {
    let c = roots.lead.to_f64().unwrap_or(f64::NAN).abs();
    let mut value = c * s.powi(roots.shift as i32);
    if roots.shift.unsigned_abs() > i32::MAX as u64 {
        value = c * (roots.shift as f64 * s.ln()).exp();
    }
    let mut rel = 0.0;
    for r in &roots.roots {
        let f = if r.modulus > s { r.modulus } else { s };
        value *= f.powi(r.multiplicity as i32);
        if r.err > 0.0 && r.modulus + r.err > s {
            let lo = (r.modulus - r.err).max(s);
            rel += r.multiplicity as f64 * r.err / lo;
        }
    }
    if !value.is_finite() {
        // fall back to logarithms when the direct product overflows
        let mut lv = c.ln() + roots.shift as f64 * s.ln();
        for r in &roots.roots {
            lv += r.multiplicity as f64 * r.modulus.max(s).ln();
        }
        value = lv.exp();
    }
    let err = if rel == 0.0 { 0.0 } else { value * rel.exp_m1() };
    MahlerValue { value, err, method: super::MahlerMethod::Jensen, skipped: 0, low_confidence: false }
}

/// A polynomial whose support lies on a line: `p = z^base · q(z^dir)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneVarReduction {
    pub base: Vec<i64>,
    /// Primitive direction, or all zeros for a monomial.
    pub dir: Vec<i64>,
    pub q: LaurentPoly,
}

/// Writes `p` as `z^base · q(z^dir)` with `dir` primitive, when the support
/// of `p` is contained in a line. Then `m(p) = m(q)`.
pub fn reduce_to_one_variable(p: &LaurentPoly) -> Option<OneVarReduction> {
    let (base, _) = p.terms().next()?;
    let base = base.clone();
    let k = p.nvars();
    let diffs: Vec<Vec<i64>> = p.terms().map(|(e, _)| e.iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
    let Some(first) = diffs.iter().find(|d| d.iter().any(|&x| x != 0)) else {
        let mut q = LaurentPoly::zero(1);
        q.add_term(vec![0], p.terms().next().unwrap().1.clone());
        return Some(OneVarReduction { base, dir: vec![0; k], q });
    };
    let g = first.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let dir: Vec<i64> = first.iter().map(|x| x / g).collect();
    let piv = dir.iter().position(|&x| x != 0).expect("nonzero direction");
    let mut q = LaurentPoly::zero(1);
    for (d, (_, c)) in diffs.iter().zip(p.terms()) {
        let m = d[piv] / dir[piv];
        if d[piv] % dir[piv] != 0 || d.iter().zip(&dir).any(|(a, b)| *a != m * b) {
            return None;
        }
        q.add_term(vec![m], c.clone());
    }
    Some(OneVarReduction { base, dir, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    #[test]
    fn examples() {
        let m = |c: &[i64]| mahler_jensen(&LaurentPoly::from_coeffs(c, 0)).unwrap();
        assert_eq!(m(&[-1, 1]).value, 1.0);
        assert_eq!(m(&[1, -3]).value, 3.0);
        assert_eq!(m(&[1, -3]).err, 0.0);
        assert_eq!(m(&[2, -5, 2]).value, 4.0);
        assert_eq!(mahler_jensen(&LaurentPoly::zero(1)).unwrap().value, 0.0);
        let g = m(&[1, -3, 1]);
        assert!((g.value - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!(g.err < 1e-12);
    }

    #[test]
    fn scaled() {
        let r = one_var_roots(&LaurentPoly::from_coeffs(&[1, -1], 0)).unwrap();
        for t in [0.1, 0.5, 1.0, 2.0, 10.0] {
            let v = mahler_jensen_scaled(&r, t);
            assert_eq!(v.value, f64::max(1.0, t));
            assert_eq!(v.err, 0.0);
        }
    }

    #[test]
    fn line_reduction() {
        let x = LaurentPoly::var(2, 0);
        let y = LaurentPoly::var(2, 1);
        let one = LaurentPoly::one(2);
        // x^2 y (1 - 3 x y^-2)
        let p = &(&x.pow(2) * &y)
            * &(&one - &(&x * &LaurentPoly::monomial(vec![0, -2], BigRational::from_integer(3.into()))));
        let r = reduce_to_one_variable(&p).unwrap();
        assert_eq!(r.q.num_terms(), 2);
        assert_eq!(mahler_jensen(&r.q).unwrap().value, 3.0);
        assert!(reduce_to_one_variable(&(&(&one + &x) + &y)).is_none());
    }
}

use crate::error::{Error, Result};
use crate::laurent::{kappa_scale, one_var_roots, LaurentMatrix, LaurentPoly, RootData};
use crate::parallel::Exec;

use super::jensen::{mahler_jensen_scaled, reduce_to_one_variable};
use super::quadrature::mahler_quadrature_real;
use super::MahlerValue;

/// Numerical settings for determinant evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FkOptions {
    /// Quadrature points per torus dimension (a power of two).
    pub quad_points: usize,
    pub exec: Exec,
}

impl Default for FkOptions {
    fn default() -> Self {
        FkOptions { quad_points: 1024, exec: Exec::Parallel }
    }
}

/// A determinant prepared for repeated evaluation of `t ↦ m(κ(ψ,t)(D))`.
#[derive(Clone, Debug)]
pub(crate) enum PreparedDet {
    Zero,
    /// `D = z^base q(z^dir)`: `m = t^{ψ·base} · m(q(t^{ψ·dir} w))`.
    OneVar {
        base_psi: i64,
        dir_psi: i64,
        roots: RootData,
    },
    Multi {
        poly: LaurentPoly,
        psi: Vec<i64>,
    },
}

impl PreparedDet {
    pub(crate) fn new(d: &LaurentPoly, psi: &[i64]) -> Result<Self> {
        if psi.len() != d.nvars() {
            return Err(Error::Dimension(format!("psi has length {} for {} variables", psi.len(), d.nvars())));
        }
        if d.is_zero() {
            return Ok(PreparedDet::Zero);
        }
        if let Some(red) = reduce_to_one_variable(d) {
            let dot = |v: &[i64]| v.iter().zip(psi).map(|(a, b)| a * b).sum::<i64>();
            return Ok(PreparedDet::OneVar {
                base_psi: dot(&red.base),
                dir_psi: dot(&red.dir),
                roots: one_var_roots(&red.q)?,
            });
        }
        Ok(PreparedDet::Multi { poly: d.clone(), psi: psi.to_vec() })
    }

    pub(crate) fn eval(&self, t: f64, opts: &FkOptions) -> Result<MahlerValue> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::arg(format!("t must be positive and finite, got {t}")));
        }
        match self {
            PreparedDet::Zero => Ok(MahlerValue::zero()),
            PreparedDet::OneVar { base_psi, dir_psi, roots } => {
                let s = pow_t(t, *dir_psi);
                let mut v = mahler_jensen_scaled(roots, s);
                let f = pow_t(t, *base_psi);
                v.value *= f;
                v.err *= f;
                Ok(v)
            }
            PreparedDet::Multi { poly, psi } => {
                let scaled = kappa_scale(poly, psi, t)?;
                mahler_quadrature_real(&scaled, opts.quad_points, opts.exec)
            }
        }
    }
}

fn pow_t(t: f64, k: i64) -> f64 {
    match i32::try_from(k) {
        Ok(k) if k.abs() <= 64 => t.powi(k),
        _ => (k as f64 * t.ln()).exp(),
    }
}

/// `m(κ(ψ,t)(D))` for a precomputed determinant `D`.
pub fn fk_det_poly(d: &LaurentPoly, psi: &[i64], t: f64, opts: &FkOptions) -> Result<MahlerValue> {
    PreparedDet::new(d, psi)?.eval(t, opts)
}

/// Regular Fuglede–Kadison determinant of `κ(ψ,t)(M)` over `Z^k`:
/// the Mahler measure of the exact determinant. A vanishing determinant
/// gives zero.
pub fn fk_det_abelian(m: &LaurentMatrix, psi: &[i64], t: f64) -> Result<MahlerValue> {
    fk_det_abelian_with(m, psi, t, &FkOptions::default())
}

pub fn fk_det_abelian_with(m: &LaurentMatrix, psi: &[i64], t: f64, opts: &FkOptions) -> Result<MahlerValue> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    let d = m.det()?;
    fk_det_poly(&d, psi, t, opts)
}

/// Multiplication by `p` on `Q[z^{±1}]` viewed as a free module of rank `d`
/// over `Q[w^{±1}]`, `w = z^d`, with basis `1, z, …, z^{d−1}`. Column `j`
/// holds the coordinates of `p·z^j`.
pub fn induce_index_d(p: &LaurentPoly, d: usize) -> Result<LaurentMatrix> {
    if p.nvars() != 1 {
        return Err(Error::Dimension("induce_index_d needs a one-variable polynomial".into()));
    }
    if d < 2 {
        return Err(Error::arg(format!("index must be at least 2, got {d}")));
    }
    let di = d as i64;
    let mut m = LaurentMatrix::zeros(d, d, 1);
    for j in 0..d {
        for (e, c) in p.terms() {
            let k = e[0] + j as i64;
            let (q, r) = (k.div_euclid(di), k.rem_euclid(di) as usize);
            let mut v = m.get(r, j).clone();
            v.add_term(vec![q], c.clone());
            m.set(r, j, v);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mahler::mahler_jensen;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c, 0)
    }

    #[test]
    fn one_minus_z() {
        let m = LaurentMatrix::from_rows(vec![vec![p(&[1, -1])]], 1).unwrap();
        for t in [0.1, 0.5, 1.0, 2.0, 10.0] {
            let v = fk_det_abelian(&m, &[1], t).unwrap();
            assert_eq!(v.value, t.max(1.0));
            assert_eq!(v.err, 0.0);
        }
    }

    #[test]
    fn two_by_two() {
        // [[1, -z], [1, -1]], determinant z - 1
        let m = LaurentMatrix::from_rows(vec![vec![p(&[1]), p(&[0, -1])], vec![p(&[1]), p(&[-1])]], 1).unwrap();
        assert_eq!(fk_det_abelian(&m, &[1], 3.0).unwrap().value, 3.0);
        assert_eq!(fk_det_abelian(&m, &[1], 0.25).unwrap().value, 1.0);
        let id = LaurentMatrix::identity(3, 2);
        assert_eq!(fk_det_abelian(&id, &[1, 2], 7.0).unwrap().value, 1.0);
    }

    #[test]
    fn zero_det() {
        let m = LaurentMatrix::from_rows(vec![vec![p(&[1, 1]), p(&[1, 1])], vec![p(&[2]), p(&[2])]], 1).unwrap();
        assert_eq!(fk_det_abelian(&m, &[1], 2.0).unwrap().value, 0.0);
    }

    #[test]
    fn induction() {
        let m = induce_index_d(&LaurentPoly::var(1, 0), 2).unwrap();
        assert!(m.get(0, 0).is_zero());
        assert_eq!(m.get(0, 1), &LaurentPoly::var(1, 0));
        assert!(m.get(1, 0).is_one());
        assert!(m.get(1, 1).is_zero());
        let q = p(&[1, -3]);
        let d = induce_index_d(&q, 3).unwrap().det().unwrap();
        assert_eq!(mahler_jensen(&d).unwrap().value, 27.0);
        let d = induce_index_d(&p(&[1, -1]), 2).unwrap().det().unwrap();
        assert_eq!(mahler_jensen(&d).unwrap().value, 1.0);
    }

    #[test]
    fn multivariable_uses_quadrature() {
        let one = LaurentPoly::one(2);
        let s = &(&one + &LaurentPoly::var(2, 0)) + &LaurentPoly::var(2, 1);
        let m = LaurentMatrix::from_rows(vec![vec![s]], 2).unwrap();
        let v = fk_det_abelian_with(&m, &[0, 0], 1.0, &FkOptions { quad_points: 512, exec: Exec::Sequential }).unwrap();
        assert_eq!(v.method, crate::mahler::MahlerMethod::Quadrature);
        assert!((v.value - 1.38135).abs() < 5e-3);
    }
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fox::Presentation;
use crate::laurent::{newton_width_int, LaurentPoly};

use super::knot::FoxSetup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormEntry {
    pub psi: Vec<i64>,
    /// Width of the Newton polytope of the determinant in direction `ψ`.
    pub width: i64,
    /// `|ψ·γ(g_i)|` for the deleted generator (0 for a bare polynomial).
    pub correction: i64,
    pub degree: i64,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormReport {
    pub vanishes: bool,
    pub entries: Vec<NormEntry>,
    /// `d(2ψ) = 2 d(ψ)` and `d(−ψ) = d(ψ)` for every direction, widths and degrees.
    pub homogeneous: bool,
    /// `d(ψ₁+ψ₂) ≤ d(ψ₁) + d(ψ₂)` for every pair, widths and degrees.
    pub triangle: bool,
    pub statement: Option<String>,
}

fn degree_fn<'a>(d: &'a LaurentPoly, correction: &[i64]) -> impl Fn(&[i64]) -> Result<(i64, i64, i64)> + 'a {
    let corr = correction.to_vec();
    move |psi: &[i64]| {
        let w = newton_width_int(d, psi)?;
        let c = if corr.is_empty() { 0 } else { corr.iter().zip(psi).map(|(a, b)| a * b).sum::<i64>().abs() };
        Ok((w, c, w - c))
    }
}

fn build(d: &LaurentPoly, correction: &[i64], dirs: &[Vec<i64>]) -> Result<NormReport> {
    for psi in dirs {
        if psi.len() != d.nvars() {
            return Err(Error::Dimension(format!("direction of length {} for {} variables", psi.len(), d.nvars())));
        }
    }
    if d.is_zero() {
        return Ok(NormReport {
            vanishes: true,
            entries: Vec::new(),
            homogeneous: true,
            triangle: true,
            statement: Some("no lower bound (torsion vanishes)".into()),
        });
    }
    let f = degree_fn(d, correction);
    let mut entries = Vec::with_capacity(dirs.len());
    let mut homogeneous = true;
    for psi in dirs {
        let (width, correction, degree) = f(psi)?;
        let twice: Vec<i64> = psi.iter().map(|x| 2 * x).collect();
        let neg: Vec<i64> = psi.iter().map(|x| -x).collect();
        let (w2, _, d2) = f(&twice)?;
        let (wn, _, dn) = f(&neg)?;
        homogeneous &= w2 == 2 * width && d2 == 2 * degree && wn == width && dn == degree;
        entries.push(NormEntry {
            psi: psi.clone(),
            width,
            correction,
            degree,
            statement: format!("x_N({psi:?}) >= {degree}"),
        });
    }
    let mut triangle = true;
    for a in &entries {
        for b in &entries {
            let sum: Vec<i64> = a.psi.iter().zip(&b.psi).map(|(x, y)| x + y).collect();
            let (w, _, dg) = f(&sum)?;
            triangle &= w <= a.width + b.width && dg <= a.degree + b.degree;
        }
    }
    Ok(NormReport { vanishes: false, entries, homogeneous, triangle, statement: None })
}

/// Directional widths of a polynomial's Newton polytope.
pub fn alexander_norm_from_poly(d: &LaurentPoly, dirs: &[Vec<i64>]) -> Result<NormReport> {
    build(d, &[], dirs)
}

/// Degrees `width_ψ(det A_i) − |ψ·γ(g_i)|` of the abelian torsion, each a
/// lower bound for the Thurston norm of `ψ`.
pub fn alexander_norm_report(p: &Presentation, dirs: &[Vec<i64>]) -> Result<NormReport> {
    let setup = FoxSetup::new(p)?;
    build(&setup.det, &setup.deleted_image, dirs)
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fox::Presentation;
use crate::laurent::{newton_range, one_var_roots};
use crate::mahler::{reduce_to_one_variable, FkOptions, MahlerValue, PreparedDet};
use crate::parallel::Exec;
use crate::torsionfn::{sample, MaxMonomialFn, PosReal, SampledFn};
use crate::Exponent;

use super::knot::{fn_from_roots, FoxSetup};

/// Exact degrees from the Newton polytope of the determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCertificate {
    pub deg0: i64,
    pub deg_inf: i64,
    pub deg: i64,
}

/// Where a handle came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub presentation: String,
    pub psi: Vec<i64>,
    pub deleted_generator: String,
    pub deleted_image: Vec<i64>,
    pub coefficient_system: String,
}

/// `t ↦ m(κ(ψ,t)(det A_i)) / max(1, t^{ψ·γ(g_i)})`.
#[derive(Clone, Debug)]
pub struct TorsionSampler {
    det: PreparedDet,
    correction: i64,
    pub opts: FkOptions,
}

impl TorsionSampler {
    pub fn eval(&self, t: f64) -> Result<MahlerValue> {
        let v = self.det.eval(t, &self.opts)?;
        let c = (self.correction as f64 * t.ln()).exp().max(1.0);
        Ok(MahlerValue { value: v.value / c, err: v.err / c, ..v })
    }
}

/// Torsion function for an abelian coefficient system of any rank: an exact
/// form when the determinant has one-dimensional support, a sampler always.
#[derive(Clone, Debug)]
pub struct TorsionHandle {
    pub exact: Option<MaxMonomialFn>,
    pub sampler: Option<TorsionSampler>,
    pub certificate: Option<DegreeCertificate>,
    pub provenance: Provenance,
}

impl TorsionHandle {
    pub fn with_options(mut self, opts: FkOptions) -> Self {
        if let Some(s) = &mut self.sampler {
            s.opts = opts;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.exact.as_ref().is_some_and(MaxMonomialFn::is_zero)
    }

    /// Exact value when available, otherwise the sampler's.
    pub fn eval(&self, t: f64) -> Result<MahlerValue> {
        if let Some(f) = &self.exact {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::arg(format!("t must be positive and finite, got {t}")));
            }
            return Ok(MahlerValue::exact(f.eval(t)));
        }
        self.sampler.as_ref().expect("a handle has an exact form or a sampler").eval(t)
    }

    pub fn sample(&self, tmin: f64, tmax: f64, n: usize, exec: Exec) -> Result<SampledFn> {
        sample(|t| self.eval(t).map(|v| (v.value, v.err)), tmin, tmax, n, exec)
    }

    /// Largest `|sampled − exact| − err` relative to the exact value over 16
    /// log-spaced probes in `[1/16, 16]`; `None` without both parts.
    pub fn check_consistency(&self) -> Result<Option<f64>> {
        let (Some(f), Some(s)) = (&self.exact, &self.sampler) else {
            return Ok(None);
        };
        let mut worst: f64 = 0.0;
        for i in 0..16 {
            let t = (-(16f64.ln()) + 2.0 * 16f64.ln() * i as f64 / 15.0).exp();
            let v = s.eval(t)?;
            let e = f.eval(t);
            let dev = ((v.value - e).abs() - v.err).max(0.0);
            worst = worst.max(if e == 0.0 { dev } else { dev / e });
        }
        Ok(Some(worst))
    }
}

/// Exact form of `t ↦ m(κ(ψ,t)(d))` when the support of `d` is on a line.
fn exact_line(d: &crate::laurent::LaurentPoly, psi: &[i64]) -> Result<Option<MaxMonomialFn>> {
    let Some(red) = reduce_to_one_variable(d) else {
        return Ok(None);
    };
    let dot = |v: &[i64]| v.iter().zip(psi).map(|(a, b)| a * b).sum::<i64>();
    let (base, dir) = (dot(&red.base), dot(&red.dir));
    let h = fn_from_roots(&one_var_roots(&red.q)?);
    let g = match dir {
        0 => MaxMonomialFn::constant(value_at_one(&h)),
        d if d > 0 => h.reparam_power(Exponent::from_integer(d))?,
        d => h.invert_variable().reparam_power(Exponent::from_integer(-d))?,
    };
    Ok(Some(g.multiply(&MaxMonomialFn::t_pow(Exponent::from_integer(base)))))
}

/// `f(1)`, exact when every ingredient is.
fn value_at_one(f: &MaxMonomialFn) -> PosReal {
    let mut v = f.leading_constant().clone();
    for fac in f.factors() {
        if fac.c.value > 1.0 {
            v = v.mul(&fac.c.pow(fac.e));
        }
    }
    v
}

/// Torsion handle for `γ` the homomorphism attached to `P` (meridional if
/// none) and a class `ψ` on its image.
pub fn tau_multivar(p: &Presentation, psi: &[i64]) -> Result<TorsionHandle> {
    let setup = FoxSetup::new(p)?;
    if psi.len() != setup.phi.rank() {
        return Err(Error::Dimension(format!(
            "psi has length {} for a homomorphism of rank {}",
            psi.len(),
            setup.phi.rank()
        )));
    }
    let correction: i64 = setup.deleted_image.iter().zip(psi).map(|(a, b)| a * b).sum();
    let provenance = Provenance {
        presentation: p.to_json(),
        psi: psi.to_vec(),
        deleted_generator: setup.deleted_name().to_string(),
        deleted_image: setup.deleted_image.clone(),
        coefficient_system: format!("abelian, Z^{} via the attached homomorphism", setup.phi.rank()),
    };
    let sampler = TorsionSampler { det: PreparedDet::new(&setup.det, psi)?, correction, opts: FkOptions::default() };
    if setup.det.is_zero() {
        return Ok(TorsionHandle {
            exact: Some(MaxMonomialFn::zero()),
            sampler: Some(sampler),
            certificate: None,
            provenance,
        });
    }
    let (lo, hi) = newton_range(&setup.det, psi)?;
    let certificate = DegreeCertificate {
        deg0: lo + (-correction).max(0),
        deg_inf: hi - correction.max(0),
        deg: hi - lo - correction.abs(),
    };
    let corr_fn = MaxMonomialFn::max_one_t_to(Exponent::from_integer(correction)).powi(-1)?;
    let exact = exact_line(&setup.det, psi)?.map(|f| f.multiply(&corr_fn));
    Ok(TorsionHandle { exact, sampler: Some(sampler), certificate: Some(certificate), provenance })
}

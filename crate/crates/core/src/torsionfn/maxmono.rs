use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::fmt_rational;
use crate::Exponent;

use super::degree::{DegreeReport, ExtReal};
use super::{exponent_string, exponent_to_f64, parse_exponent, pow_exp};

/// Relative tolerance (on logarithms) for comparing inexact positive reals.
pub const LOG_TOL: f64 = 1e-9;

/// A positive real with an optional exact rational value.
#[derive(Clone, Debug, PartialEq)]
pub struct PosReal {
    pub value: f64,
    pub exact: Option<BigRational>,
}

impl PosReal {
    pub fn exact(q: BigRational) -> Self {
        assert!(q.is_positive(), "PosReal must be positive");
        PosReal { value: q.to_f64().unwrap_or(f64::NAN), exact: Some(q) }
    }

    pub fn int(n: i64) -> Self {
        Self::exact(BigRational::from_integer(n.into()))
    }

    pub fn approx(value: f64) -> Self {
        assert!(value > 0.0, "PosReal must be positive, got {value}");
        PosReal { value, exact: None }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn ln(&self) -> f64 {
        self.value.ln()
    }

    /// Equal exactly when both sides are exact, otherwise within [`LOG_TOL`]
    /// on logarithms.
    pub fn approx_eq(&self, o: &PosReal) -> bool {
        match (&self.exact, &o.exact) {
            (Some(a), Some(b)) => a == b,
            _ => (self.ln() - o.ln()).abs() <= LOG_TOL,
        }
    }

    pub fn is_one(&self) -> bool {
        self.approx_eq(&PosReal::one())
    }

    pub fn mul(&self, o: &PosReal) -> PosReal {
        PosReal {
            value: self.value * o.value,
            exact: match (&self.exact, &o.exact) {
                (Some(a), Some(b)) => Some(a * b),
                _ => None,
            },
        }
    }

    pub fn recip(&self) -> PosReal {
        PosReal { value: 1.0 / self.value, exact: self.exact.as_ref().map(|q| q.recip()) }
    }

    /// `self^e`, exact when the root extraction is exact.
    pub fn pow(&self, e: Exponent) -> PosReal {
        let value = pow_exp(self.value, e);
        let exact = self.exact.as_ref().and_then(|q| rational_pow(q, e));
        PosReal { value: exact.as_ref().and_then(|q| q.to_f64()).unwrap_or(value), exact }
    }

    fn display(&self) -> String {
        match &self.exact {
            Some(q) => fmt_rational(q),
            None => format!("{}", self.value),
        }
    }
}

fn exact_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(n);
    (num::pow::pow(r.clone(), n as usize) == *x).then_some(r)
}

/// `q^{a/b}` if it is rational.
fn rational_pow(q: &BigRational, e: Exponent) -> Option<BigRational> {
    let (a, b) = (*e.numer(), *e.denom());
    if a.unsigned_abs() > 4096 || b > 64 {
        return None;
    }
    let b = b as u32;
    let n = exact_root(q.numer(), b)?;
    let d = exact_root(q.denom(), b)?;
    let root = BigRational::new(n, d);
    let p = num::pow::pow(root, a.unsigned_abs() as usize);
    Some(if a < 0 { p.recip() } else { p })
}

/// One factor `max(c, t)^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub c: PosReal,
    pub e: Exponent,
}

/// The function `t ↦ C · t^r · ∏ max(c_i, t)^{e_i}` (or the zero function).
///
/// Factors are kept sorted by breakpoint, with equal breakpoints merged and
/// zero exponents dropped, so the representation of a function is unique.
/// `low_shadow` optionally records the exact value of the limit constant
/// `C · ∏ c_i^{e_i}` at `t → 0` when the breakpoints themselves are inexact
/// (e.g. a product of root moduli known from the polynomial coefficients).
#[derive(Clone, Debug, PartialEq)]
pub struct MaxMonomialFn {
    zero: bool,
    c: PosReal,
    r: Exponent,
    factors: Vec<Factor>,
    low_shadow: Option<BigRational>,
}

/// Result of [`MaxMonomialFn::symmetry_exponent`]: `f(1/t) = t^k f(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub k: Exponent,
}

impl Symmetry {
    /// Whether `k ≡ x (mod 2)`; `None` when `k` is not an integer.
    pub fn parity_matches(&self, x: i64) -> Option<bool> {
        self.k.is_integer().then(|| (self.k.numer() - x).rem_euclid(2) == 0)
    }
}

impl MaxMonomialFn {
    pub fn zero() -> Self {
        MaxMonomialFn { zero: true, c: PosReal::one(), r: Exponent::zero(), factors: Vec::new(), low_shadow: None }
    }

    pub fn one() -> Self {
        Self::constant(PosReal::one())
    }

    pub fn constant(c: PosReal) -> Self {
        Self::new(c, Exponent::zero(), Vec::new())
    }

    pub fn new(c: PosReal, r: Exponent, factors: Vec<Factor>) -> Self {
        MaxMonomialFn { zero: false, c, r, factors, low_shadow: None }.canonical()
    }

    /// `t^r`.
    pub fn t_pow(r: Exponent) -> Self {
        Self::new(PosReal::one(), r, Vec::new())
    }

    /// `max(c, t)^e`.
    pub fn max_pow(c: PosReal, e: Exponent) -> Self {
        Self::new(PosReal::one(), Exponent::zero(), vec![Factor { c, e }])
    }

    /// `max(1, t)^e`.
    pub fn max_one_pow(e: Exponent) -> Self {
        Self::max_pow(PosReal::one(), e)
    }

    /// `max(1, t^a)`, i.e. `max(1,t)^a` for `a ≥ 0` and `t^a · max(1,t)^{−a}` for `a < 0`.
    pub fn max_one_t_to(a: Exponent) -> Self {
        if a >= Exponent::zero() {
            Self::max_one_pow(a)
        } else {
            Self::new(PosReal::one(), a, vec![Factor { c: PosReal::one(), e: -a }])
        }
    }

    /// Records the exact limit constant at `t → 0`.
    pub fn with_low_shadow(mut self, q: BigRational) -> Self {
        if !self.zero {
            self.low_shadow = Some(q);
        }
        self
    }

    fn canonical(mut self) -> Self {
        if self.zero {
            return MaxMonomialFn::zero();
        }
        self.factors.sort_by(|a, b| a.c.value.total_cmp(&b.c.value));
        let mut merged: Vec<Factor> = Vec::with_capacity(self.factors.len());
        for f in self.factors.drain(..) {
            match merged.last_mut() {
                Some(last) if last.c.approx_eq(&f.c) => {
                    last.e += f.e;
                    if last.c.exact.is_none() {
                        last.c.exact = f.c.exact;
                    }
                }
                _ => merged.push(f),
            }
        }
        merged.retain(|f| !f.e.is_zero());
        self.factors = merged;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn leading_constant(&self) -> &PosReal {
        &self.c
    }

    pub fn t_exponent(&self) -> Exponent {
        self.r
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Exact `C · ∏ c_i^{e_i}` when known.
    pub fn low_const_exact(&self) -> Option<BigRational> {
        if self.zero {
            return None;
        }
        if let Some(q) = &self.low_shadow {
            return Some(q.clone());
        }
        let mut acc = self.c.exact.clone()?;
        for f in &self.factors {
            acc *= f.c.pow(f.e).exact?;
        }
        Some(acc)
    }

    /// `C · ∏ c_i^{e_i}`, the limit of `f(t)/t^{deg_0}` at `t → 0`.
    pub fn low_const(&self) -> PosReal {
        if let Some(q) = self.low_const_exact() {
            return PosReal::exact(q);
        }
        let l = self.c.ln() + self.factors.iter().map(|f| exponent_to_f64(f.e) * f.c.ln()).sum::<f64>();
        PosReal::approx(l.exp())
    }

    pub fn eval(&self, t: f64) -> f64 {
        if self.zero {
            return 0.0;
        }
        let mut v = self.c.value * pow_exp(t, self.r);
        for f in &self.factors {
            v *= pow_exp(f.c.value.max(t), f.e);
        }
        if v.is_finite() && v > 0.0 {
            return v;
        }
        let l = self.c.ln()
            + exponent_to_f64(self.r) * t.ln()
            + self.factors.iter().map(|f| exponent_to_f64(f.e) * f.c.value.max(t).ln()).sum::<f64>();
        l.exp()
    }

    /// `Σ e_i`, or `None` for the zero function.
    pub fn degree_exact(&self) -> Option<Exponent> {
        (!self.zero).then(|| self.factors.iter().map(|f| f.e).sum())
    }

    pub fn degree(&self) -> DegreeReport {
        if self.zero {
            return DegreeReport::zero();
        }
        let sum: Exponent = self.factors.iter().map(|f| f.e).sum();
        DegreeReport {
            deg0: ExtReal::Finite(exponent_to_f64(self.r)),
            deg_inf: ExtReal::Finite(exponent_to_f64(self.r + sum)),
            deg: ExtReal::Finite(exponent_to_f64(sum)),
            monomial_in_limit: true,
            monic: self.is_monic(),
        }
    }

    /// `C = 1` and `C · ∏ c_i^{e_i} = 1`.
    pub fn is_monic(&self) -> bool {
        !self.zero && self.c.is_one() && self.low_const().is_one()
    }

    /// `k` with `f(1/t) = t^k f(t)` for all `t`, if it exists.
    pub fn symmetry_exponent(&self) -> Option<Symmetry> {
        if self.zero {
            return None;
        }
        for f in &self.factors {
            let inv = f.c.recip();
            if !self.factors.iter().any(|g| g.e == f.e && g.c.approx_eq(&inv)) {
                return None;
            }
        }
        let sum: Exponent = self.factors.iter().map(|f| f.e).sum();
        Some(Symmetry { k: -Exponent::from_integer(2) * self.r - sum })
    }

    pub fn multiply(&self, g: &MaxMonomialFn) -> MaxMonomialFn {
        if self.zero || g.zero {
            return MaxMonomialFn::zero();
        }
        let mut factors = self.factors.clone();
        factors.extend(g.factors.iter().cloned());
        let low = match (self.low_const_exact(), g.low_const_exact()) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        let mut out = MaxMonomialFn::new(self.c.mul(&g.c), self.r + g.r, factors);
        if out.low_const_exact().is_none() {
            out.low_shadow = low;
        }
        out
    }

    /// `t ↦ f(t^ρ)` for rational `ρ > 0`, using `max(c, t^ρ)^e = max(c^{1/ρ}, t)^{ρe}`.
    pub fn reparam_power(&self, rho: Exponent) -> Result<MaxMonomialFn> {
        if rho <= Exponent::zero() {
            return Err(Error::arg(format!("reparametrisation power must be positive, got {rho}")));
        }
        if self.zero {
            return Ok(MaxMonomialFn::zero());
        }
        let inv = rho.recip();
        let factors = self.factors.iter().map(|f| Factor { c: f.c.pow(inv), e: f.e * rho }).collect();
        let mut out = MaxMonomialFn::new(self.c.clone(), self.r * rho, factors);
        if out.low_const_exact().is_none() {
            out.low_shadow = self.low_const_exact();
        }
        Ok(out)
    }

    /// `t ↦ f(1/t)`.
    pub fn invert_variable(&self) -> MaxMonomialFn {
        if self.zero {
            return MaxMonomialFn::zero();
        }
        let sum: Exponent = self.factors.iter().map(|f| f.e).sum();
        let factors = self.factors.iter().map(|f| Factor { c: f.c.recip(), e: f.e }).collect();
        let mut out = MaxMonomialFn::new(self.low_const(), -self.r - sum, factors);
        if out.low_const_exact().is_none() {
            out.low_shadow = self.c.exact.clone();
        }
        out
    }

    /// `f^d`.
    pub fn powi(&self, d: i64) -> Result<MaxMonomialFn> {
        if self.zero {
            return if d > 0 {
                Ok(MaxMonomialFn::zero())
            } else {
                Err(Error::arg("non-positive power of the zero function"))
            };
        }
        let e = Exponent::from_integer(d);
        let factors = self.factors.iter().map(|f| Factor { c: f.c.clone(), e: f.e * e }).collect();
        let mut out = MaxMonomialFn::new(self.c.pow(e), self.r * e, factors);
        if out.low_const_exact().is_none() {
            out.low_shadow = self.low_const_exact().map(|q| {
                let p = num::pow::pow(q, d.unsigned_abs() as usize);
                if d < 0 {
                    p.recip()
                } else {
                    p
                }
            });
        }
        Ok(out)
    }

    pub fn equivalent(&self, g: &MaxMonomialFn) -> bool {
        equivalent(self, g)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_struct()).expect("serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_struct()).expect("serializes")
    }

    fn to_json_struct(&self) -> FnJson {
        FnJson {
            zero: self.zero,
            c: self.c.value,
            c_exact: self.c.exact.as_ref().map(fmt_rational),
            r: exponent_string(self.r),
            factors: self
                .factors
                .iter()
                .map(|f| FactorJson {
                    c: f.c.value,
                    c_exact: f.c.exact.as_ref().map(fmt_rational),
                    e: exponent_string(f.e),
                })
                .collect(),
            low_const_exact: self.low_shadow.as_ref().map(fmt_rational),
            display: self.to_string(),
        }
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let raw: FnJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::parse("torsion function JSON", e.to_string()))?;
        Self::from_json_struct(raw)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FnJson =
            serde_json::from_str(text).map_err(|e| Error::parse("torsion function JSON", e.to_string()))?;
        Self::from_json_struct(raw)
    }

    fn from_json_struct(raw: FnJson) -> Result<Self> {
        if raw.zero {
            return Ok(MaxMonomialFn::zero());
        }
        let bad = |m: &str| Error::parse("torsion function JSON", m.to_string());
        let rat = |s: &Option<String>| -> Result<Option<BigRational>> {
            s.as_ref().map(|s| BigRational::from_str(s).map_err(|_| bad("bad rational"))).transpose()
        };
        let pos = |value: f64, exact: Option<BigRational>| -> Result<PosReal> {
            if !(value > 0.0) {
                return Err(bad("constants must be positive"));
            }
            Ok(PosReal { value, exact })
        };
        let factors = raw
            .factors
            .iter()
            .map(|f| {
                Ok(Factor {
                    c: pos(f.c, rat(&f.c_exact)?)?,
                    e: parse_exponent(&f.e).ok_or_else(|| bad("bad exponent"))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MaxMonomialFn {
            zero: false,
            c: pos(raw.c, rat(&raw.c_exact)?)?,
            r: parse_exponent(&raw.r).ok_or_else(|| bad("bad exponent"))?,
            factors,
            low_shadow: rat(&raw.low_const_exact)?,
        })
    }
}

/// `f ≐ g`: equal up to a factor `t^r`.
pub fn equivalent(f: &MaxMonomialFn, g: &MaxMonomialFn) -> bool {
    if f.zero || g.zero {
        return f.zero && g.zero;
    }
    f.c.approx_eq(&g.c)
        && f.factors.len() == g.factors.len()
        && f.factors.iter().zip(&g.factors).all(|(a, b)| a.e == b.e && a.c.approx_eq(&b.c))
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    c: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c_exact: Option<String>,
    e: String,
}

#[derive(Serialize, Deserialize)]
struct FnJson {
    zero: bool,
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "C_exact", default, skip_serializing_if = "Option::is_none")]
    c_exact: Option<String>,
    r: String,
    factors: Vec<FactorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    low_const_exact: Option<String>,
    #[serde(default)]
    display: String,
}

fn exp_display(e: Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({})", exponent_string(e))
    }
}

impl fmt::Display for MaxMonomialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if !(self.c.exact.as_ref().is_some_and(One::is_one) || (self.c.exact.is_none() && self.c.value == 1.0)) {
            parts.push(self.c.display());
        }
        if !self.r.is_zero() {
            parts.push(format!("t^{}", exp_display(self.r)));
        }
        for fac in &self.factors {
            parts.push(format!("max({},t)^{}", fac.c.display(), exp_display(fac.e)));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(n: i64) -> Exponent {
        Exponent::from_integer(n)
    }

    fn golden() -> MaxMonomialFn {
        let s5 = 5f64.sqrt();
        MaxMonomialFn::new(
            PosReal::one(),
            ex(0),
            vec![
                Factor { c: PosReal::approx((3.0 + s5) / 2.0), e: ex(1) },
                Factor { c: PosReal::approx((3.0 - s5) / 2.0), e: ex(1) },
                Factor { c: PosReal::one(), e: ex(-1) },
            ],
        )
        .with_low_shadow(BigRational::one())
    }

    #[test]
    fn equivalence_examples() {
        let m = MaxMonomialFn::max_one_pow(ex(1));
        assert!(m.multiply(&MaxMonomialFn::t_pow(ex(1))).equivalent(&m));
        assert!(!m.equivalent(&MaxMonomialFn::max_one_pow(ex(2))));
        let g = golden();
        assert!(g.multiply(&MaxMonomialFn::t_pow(ex(3))).equivalent(&g));
        assert!(MaxMonomialFn::zero().equivalent(&MaxMonomialFn::zero()));
        assert!(!MaxMonomialFn::zero().equivalent(&MaxMonomialFn::one()));
    }

    #[test]
    fn degrees() {
        assert_eq!(MaxMonomialFn::max_one_pow(ex(5)).degree().deg, ExtReal::Finite(5.0));
        assert_eq!(golden().degree().deg, ExtReal::Finite(1.0));
        let z = MaxMonomialFn::zero().degree();
        assert_eq!((z.deg0, z.deg_inf, z.deg), (ExtReal::PosInf, ExtReal::NegInf, ExtReal::NegInf));
    }

    #[test]
    fn monicity() {
        assert!(MaxMonomialFn::max_one_pow(ex(3)).is_monic());
        assert!(!MaxMonomialFn::constant(PosReal::int(2)).multiply(&MaxMonomialFn::max_one_pow(ex(1))).is_monic());
        assert!(golden().is_monic());
    }

    #[test]
    fn symmetry() {
        assert_eq!(MaxMonomialFn::max_one_pow(ex(1)).symmetry_exponent().unwrap().k, ex(-1));
        assert_eq!(MaxMonomialFn::max_one_pow(ex(-1)).symmetry_exponent().unwrap().k, ex(1));
        assert!(MaxMonomialFn::max_pow(PosReal::int(2), ex(1)).symmetry_exponent().is_none());
        let s = golden().symmetry_exponent().unwrap();
        assert_eq!(s.k, ex(-1));
        assert_eq!(s.parity_matches(1), Some(true));
    }

    #[test]
    fn products() {
        let m = MaxMonomialFn::max_one_pow(ex(1));
        assert_eq!(m.multiply(&m), MaxMonomialFn::max_one_pow(ex(2)));
        assert!(m.multiply(&MaxMonomialFn::zero()).is_zero());
        let a = MaxMonomialFn::max_pow(PosReal::int(2), ex(1));
        let b = MaxMonomialFn::max_pow(PosReal::int(2), ex(-1));
        assert_eq!(a.multiply(&b), MaxMonomialFn::one());
    }

    #[test]
    fn reparam() {
        let m = MaxMonomialFn::max_one_pow(ex(1));
        assert_eq!(m.reparam_power(ex(2)).unwrap(), MaxMonomialFn::max_one_pow(ex(2)));
        let f = MaxMonomialFn::max_pow(PosReal::int(4), ex(1));
        let g = f.reparam_power(Exponent::new(1, 2)).unwrap();
        assert_eq!(g, MaxMonomialFn::max_pow(PosReal::int(16), Exponent::new(1, 2)));
        assert_eq!(f.reparam_power(ex(1)).unwrap(), f);
        assert!(f.reparam_power(ex(0)).is_err());
    }

    #[test]
    fn inversion_and_powers() {
        let f = MaxMonomialFn::new(PosReal::int(3), ex(2), vec![Factor { c: PosReal::int(5), e: ex(2) }]);
        let g = f.invert_variable();
        for t in [0.1, 0.7, 3.0, 11.0] {
            assert!((g.eval(t) - f.eval(1.0 / t)).abs() < 1e-12 * g.eval(t));
        }
        assert_eq!(g.invert_variable(), f);
        let h = f.powi(3).unwrap();
        assert!((h.eval(2.0) - f.eval(2.0).powi(3)).abs() < 1e-9 * h.eval(2.0));
        assert_eq!(MaxMonomialFn::max_one_t_to(ex(-2)).eval(0.5), 4.0);
        assert_eq!(MaxMonomialFn::max_one_t_to(ex(-2)).eval(3.0), 1.0);
    }

    #[test]
    fn display_and_json() {
        assert_eq!(MaxMonomialFn::max_one_pow(ex(1)).to_string(), "max(1,t)^1");
        assert_eq!(MaxMonomialFn::max_one_pow(ex(-1)).to_string(), "max(1,t)^-1");
        assert_eq!(MaxMonomialFn::one().to_string(), "1");
        let f = MaxMonomialFn::new(
            PosReal::int(2),
            Exponent::new(1, 2),
            vec![Factor { c: PosReal::int(16), e: Exponent::new(1, 2) }],
        );
        assert_eq!(f.to_string(), "2 * t^(1/2) * max(16,t)^(1/2)");
        for f in [f, golden(), MaxMonomialFn::zero()] {
            assert_eq!(MaxMonomialFn::from_json(&f.to_json()).unwrap(), f);
        }
    }

    #[test]
    fn evaluation() {
        let m = MaxMonomialFn::max_one_pow(ex(1));
        assert_eq!([0.5, 1.0, 2.0].map(|t| m.eval(t)), [1.0, 1.0, 2.0]);
        assert_eq!(MaxMonomialFn::max_one_pow(ex(-1)).eval(10.0), 0.1);
        assert!((golden().eval(10.0) - 10.0).abs() < 1e-12);
    }
}

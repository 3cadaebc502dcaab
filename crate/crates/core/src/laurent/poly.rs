use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groupring::{GroupRingElem, HomToZk};

/// Largest admissible absolute exponent.
pub const MAX_EXPONENT: i64 = 1_000_000;

/// Exact Laurent polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    /// `c · z^exps`.
    pub fn monomial(exps: Vec<i64>, c: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable `z_i` of a ring in `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    /// Builds a polynomial from integer terms.
    pub fn from_int_terms(nvars: usize, terms: &[(Vec<i64>, i64)]) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e.clone(), BigRational::from_integer((*c).into()));
        }
        p
    }

    /// One-variable polynomial `Σ coeffs[i] z^{i + shift}`.
    pub fn from_coeffs(coeffs: &[i64], shift: i64) -> Self {
        let mut p = Self::zero(1);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![i as i64 + shift], BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// A single term (a unit of the Laurent ring, up to the coefficient).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &BigRational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, exps: &[i64]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: BigRational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    /// Errors if some exponent exceeds [`MAX_EXPONENT`] in absolute value.
    pub fn check_exponents(&self) -> Result<()> {
        for e in self.terms.keys() {
            if let Some(&x) = e.iter().find(|x| x.abs() > MAX_EXPONENT) {
                return Err(Error::ExponentOverflow(x));
            }
        }
        Ok(())
    }

    /// Leading term in lexicographic order.
    pub fn leading(&self) -> Option<(&Vec<i64>, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn min_exponent(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn max_exponent(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Componentwise minimum exponent over the support.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        if self.is_zero() {
            return None;
        }
        Some((0..self.nvars).map(|i| self.min_exponent(i).expect("nonzero")).collect())
    }

    /// Variables whose exponent is not constant over the support.
    pub fn effective_variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] != self.terms.keys().next().expect("nonempty")[i]))
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Multiplication by `z^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Sum of absolute coefficient values.
    pub fn l1_norm(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).fold(BigRational::zero(), |a, b| a + b)
    }

    /// Exact quotient `self / d` if `d` divides `self`, otherwise `None`.
    ///
    /// Division in lexicographic order; every quotient exponent must lie in the
    /// box `[min(self) - min(d), max(self) - max(d)]`, which bounds the loop.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let lo: Vec<i64> =
            (0..self.nvars).map(|i| self.min_exponent(i).unwrap() - d.min_exponent(i).unwrap()).collect();
        let hi: Vec<i64> =
            (0..self.nvars).map(|i| self.max_exponent(i).unwrap() - d.max_exponent(i).unwrap()).collect();
        let (de, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((re, rc)) = r.leading() {
            let qe: Vec<i64> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            if qe.iter().enumerate().any(|(i, &x)| x < lo[i] || x > hi[i]) {
                return None;
            }
            let qc = rc / &dc;
            let term = LaurentPoly::monomial(qe, qc);
            r = &r - &(&term * d);
            q = &q + &term;
        }
        Some(q)
    }

    /// One-variable data: `(trailing exponent, coefficients from z^trailing up)`.
    pub fn dense_one_var(&self) -> Option<(i64, Vec<BigRational>)> {
        if self.nvars != 1 || self.is_zero() {
            return None;
        }
        let lo = self.min_exponent(0)?;
        let hi = self.max_exponent(0)?;
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e[0] - lo) as usize] = c.clone();
        }
        Some((lo, v))
    }

    /// Evaluate at a real point of `(R^×)^k`.
    pub fn eval_f64(&self, z: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                c.to_f64().unwrap_or(f64::NAN) * e.iter().zip(z).map(|(&k, &x)| x.powi(k as i32)).product::<f64>()
            })
            .sum()
    }

    /// Embeds into a ring with more variables by `z_i ↦ z_{map[i]}`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] += x;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Substitution `z_i ↦ ∏_j z_j^{m[i][j]}` (a monomial change of variables).
    pub fn monomial_substitute(&self, nvars: usize, m: &[Vec<i64>]) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                for (j, &y) in m[i].iter().enumerate() {
                    ne[j] += x * y;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Normalises a one-variable polynomial to trailing exponent `0` and a
    /// positive leading coefficient.
    pub fn normalize_one_var(&self) -> Self {
        if self.nvars != 1 || self.is_zero() {
            return self.clone();
        }
        let lo = self.min_exponent(0).unwrap();
        let mut p = self.shift(&[-lo]);
        if p.leading().unwrap().1.is_negative() {
            p = -&p;
        }
        p
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if !a.is_one() || is_const {
                factors.push(fmt_rational(&a));
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], x)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Default variable names: `z` for one variable, `z1, …, zk` otherwise.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars == 1 {
        vec!["z".into()]
    } else {
        (1..=nvars).map(|i| format!("z{i}")).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.nvars)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(u, v)| u + v).collect(), x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

/// Image of a group-ring element under `w ↦ z^{h(w)}`.
pub fn abelianize(e: &GroupRingElem, h: &HomToZk) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::zero(h.rank());
    for (w, c) in e.terms() {
        p.add_term(h.apply(w), c.clone());
    }
    p.check_exponents()?;
    Ok(p)
}

/// A Laurent polynomial with real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RealLaurentPoly {
    pub nvars: usize,
    pub terms: Vec<(Vec<i64>, f64)>,
}

impl RealLaurentPoly {
    /// Drops the exactness of `p`.
    pub fn from_exact(p: &LaurentPoly) -> Self {
        RealLaurentPoly {
            nvars: p.nvars,
            terms: p.terms.iter().map(|(e, c)| (e.clone(), c.to_f64().unwrap_or(f64::NAN))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(_, c)| *c == 0.0)
    }
}

/// `c·z^α ↦ c·t^{ψ·α}·z^α`.
pub fn kappa_scale(p: &LaurentPoly, psi: &[i64], t: f64) -> Result<RealLaurentPoly> {
    if psi.len() != p.nvars {
        return Err(Error::Dimension(format!(
            "psi has length {} for a polynomial in {} variables",
            psi.len(),
            p.nvars
        )));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::arg(format!("t must be positive and finite, got {t}")));
    }
    let lt = t.ln();
    let terms = p
        .terms
        .iter()
        .map(|(e, c)| {
            let d: i64 = e.iter().zip(psi).map(|(a, b)| a * b).sum();
            let s = match i32::try_from(d) {
                Ok(k) if k.abs() <= 64 => t.powi(k),
                _ => (d as f64 * lt).exp(),
            };
            (e.clone(), c.to_f64().unwrap_or(f64::NAN) * s)
        })
        .collect();
    Ok(RealLaurentPoly { nvars: p.nvars, terms })
}

/// Exact `κ` for rational `t`.
pub fn kappa_scale_exact(p: &LaurentPoly, psi: &[i64], t: &BigRational) -> Result<LaurentPoly> {
    if psi.len() != p.nvars {
        return Err(Error::Dimension("psi length".into()));
    }
    if !t.is_positive() {
        return Err(Error::arg("t must be positive"));
    }
    let mut out = LaurentPoly::zero(p.nvars);
    for (e, c) in &p.terms {
        let d: i64 = e.iter().zip(psi).map(|(a, b)| a * b).sum();
        let s = rational_powi(t, d);
        out.add_term(e.clone(), c * s);
    }
    Ok(out)
}

pub(crate) fn rational_powi(t: &BigRational, d: i64) -> BigRational {
    let base = if d < 0 { t.recip() } else { t.clone() };
    num::pow::pow(base, d.unsigned_abs() as usize)
}

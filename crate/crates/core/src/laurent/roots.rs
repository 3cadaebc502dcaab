use num::complex::Complex64;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::poly::LaurentPoly;

/// How a root modulus was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootSource {
    /// Exact rational root.
    Rational,
    /// Root of a cyclotomic factor; modulus exactly one.
    Cyclotomic,
    /// Numerical root of a squarefree factor, with a certified radius.
    Numeric,
}

/// A group of roots sharing one modulus.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootModulus {
    pub modulus: f64,
    /// Certified bound on `|modulus − true modulus|`.
    pub err: f64,
    /// Number of roots, counted with multiplicity, in this group.
    pub multiplicity: usize,
    /// Exact modulus when known.
    #[serde(skip)]
    pub exact: Option<BigRational>,
    pub source: RootSource,
}

/// `p(z) = C · z^m · ∏ (z − a_i)`, reported through the moduli `|a_i|`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootData {
    pub lead: BigRational,
    pub shift: i64,
    pub degree: usize,
    pub roots: Vec<RootModulus>,
    /// `∏ |a_i| = |trailing / leading|`, exactly.
    pub exact_product: BigRational,
}

impl RootData {
    pub fn product_f64(&self) -> f64 {
        self.roots.iter().map(|r| r.modulus.ln() * r.multiplicity as f64).sum::<f64>().exp()
    }

    pub fn max_err(&self) -> f64 {
        self.roots.iter().map(|r| r.err).fold(0.0, f64::max)
    }
}

/// Root moduli of a nonzero one-variable Laurent polynomial.
///
/// Rational roots and cyclotomic factors are split off exactly; the rest is
/// made squarefree (Yun) and solved by Aberth–Ehrlich iteration with Newton
/// polishing. Each numerical root carries an inclusion radius
/// `d · |s(z)| / (|a_d| · ∏|z − z_j|)` with a rounding allowance.
pub fn one_var_roots(p: &LaurentPoly) -> Result<RootData> {
    if p.nvars() != 1 {
        return Err(Error::Dimension(format!("one_var_roots needs one variable, got {}", p.nvars())));
    }
    let (shift, coeffs) = p.dense_one_var().ok_or(Error::ZeroPolynomial)?;
    let lead = coeffs.last().expect("nonzero").clone();
    let exact_product = (&coeffs[0] / &lead).abs();
    let degree = coeffs.len() - 1;

    let mut rest = primitive_integer(&coeffs);
    let mut roots = Vec::new();

    if degree >= 1 {
        for (r, k) in rational_roots(&mut rest) {
            roots.push(RootModulus {
                modulus: r.abs().to_f64().unwrap_or(f64::NAN),
                err: 0.0,
                multiplicity: k,
                exact: Some(r.abs()),
                source: RootSource::Rational,
            });
        }
    }
    if rest.len() > 2 {
        let removed = split_cyclotomic(&mut rest);
        if removed > 0 {
            roots.push(RootModulus {
                modulus: 1.0,
                err: 0.0,
                multiplicity: removed,
                exact: Some(BigRational::one()),
                source: RootSource::Cyclotomic,
            });
        }
    }
    if rest.len() > 1 {
        let q = QPoly(rest.iter().map(|c| BigRational::from_integer(c.clone())).collect());
        for (s, mult) in yun(&q) {
            if s.degree() == 0 {
                continue;
            }
            roots.extend(numeric_roots(&s, mult));
        }
    }

    let total: usize = roots.iter().map(|r| r.multiplicity).sum();
    debug_assert_eq!(total, degree);
    roots.sort_by(|a, b| a.modulus.total_cmp(&b.modulus));
    Ok(RootData { lead, shift, degree, roots, exact_product })
}

/// Integer polynomial with the same roots and coprime coefficients.
fn primitive_integer(c: &[BigRational]) -> Vec<BigInt> {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&n| n <= DIVISOR_LIMIT)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// `e^n · p(d/e)` for `p` of degree `n`.
fn eval_scaled(p: &[BigInt], d: &BigInt, e: &BigInt) -> BigInt {
    let n = p.len() - 1;
    let mut acc = BigInt::zero();
    let mut epow = BigInt::one();
    let mut terms = vec![BigInt::zero(); p.len()];
    for i in (0..=n).rev() {
        terms[i] = epow.clone();
        epow *= e;
    }
    let mut dpow = BigInt::one();
    for (i, c) in p.iter().enumerate() {
        acc += c * &dpow * &terms[i];
        dpow *= d;
    }
    acc
}

/// Exact division of `p` by `e z − d`.
fn divide_linear(p: &[BigInt], d: &BigInt, e: &BigInt) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut r: Vec<BigInt> = p.to_vec();
    for i in (1..=n).rev() {
        let c = &r[i] / e;
        r[i - 1] += &c * d;
        r[i] = BigInt::zero();
        q[i - 1] = c;
    }
    q
}

/// Removes all rational roots from `p`, returning them with multiplicity.
fn rational_roots(p: &mut Vec<BigInt>) -> Vec<(BigRational, usize)> {
    let mut out = Vec::new();
    if p.len() < 2 {
        return out;
    }
    let (Some(ds), Some(es)) = (divisors(&p[0]), divisors(p.last().unwrap())) else {
        return out;
    };
    for &e in &es {
        for &d in &ds {
            if d.gcd(&e) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                if p.len() < 2 {
                    return out;
                }
                let dn = BigInt::from(d) * sign;
                let en = BigInt::from(e);
                let mut k = 0;
                while p.len() >= 2 && eval_scaled(p, &dn, &en).is_zero() {
                    *p = divide_linear(p, &dn, &en);
                    k += 1;
                }
                if k > 0 {
                    out.push((BigRational::new(dn, en), k));
                }
            }
        }
    }
    out
}

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i32 {
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Φ_n(z) = ∏_{d|n} (z^d − 1)^{μ(n/d)}`, coefficients from the constant term.
pub(crate) fn cyclotomic(n: u64) -> Vec<BigInt> {
    let divs: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for &d in &divs {
        let f = {
            let mut v = vec![BigInt::zero(); d as usize + 1];
            v[0] = BigInt::from(-1);
            v[d as usize] = BigInt::one();
            v
        };
        match mobius(n / d) {
            1 => num = int_mul(&num, &f),
            -1 => den = int_mul(&den, &f),
            _ => {}
        }
    }
    int_div_monic(&num, &den).expect("cyclotomic division is exact")
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient by a monic polynomial, or `None` if the remainder is nonzero.
fn int_div_monic(a: &[BigInt], m: &[BigInt]) -> Option<Vec<BigInt>> {
    let dm = m.len() - 1;
    if a.len() < m.len() {
        return if a.iter().all(Zero::is_zero) { Some(vec![BigInt::zero()]) } else { None };
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dm];
    for i in (0..q.len()).rev() {
        let c = r[i + dm].clone();
        if !c.is_zero() {
            for (j, mj) in m.iter().enumerate() {
                r[i + j] -= &c * mj;
            }
        }
        q[i] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(q)
    } else {
        None
    }
}

fn horner_c(p: &[f64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Divides out every cyclotomic factor `Φ_n`, `n ≥ 3`; returns the number of
/// roots removed.
fn split_cyclotomic(p: &mut Vec<BigInt>) -> usize {
    let mut removed = 0;
    let deg = (p.len() - 1) as u64;
    let nmax = (2 * deg * deg + 2).min(50_000);
    let mut n = 3;
    while n <= nmax && p.len() > 2 {
        let phi = totient(n);
        if phi <= (p.len() - 1) as u64 {
            let fl: Vec<f64> = p.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
            let scale: f64 = fl.iter().map(|c| c.abs()).sum();
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU / n as f64);
            let candidate = !scale.is_finite() || horner_c(&fl, w).norm() <= 1e-6 * scale;
            if candidate {
                let f = cyclotomic(n);
                while p.len() > f.len() - 1 {
                    match int_div_monic(p, &f) {
                        Some(q) => {
                            *p = q;
                            removed += phi as usize;
                        }
                        None => break,
                    }
                }
            }
        }
        n += 1;
    }
    removed
}

/// Dense polynomial over `Q`, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn trim(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        if self.0.is_empty() {
            self.0.push(BigRational::zero());
        }
        self
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn derivative(&self) -> QPoly {
        if self.0.len() <= 1 {
            return QPoly(vec![BigRational::zero()]);
        }
        QPoly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect()).trim()
    }

    fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        QPoly((0..n).map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z)).collect()).trim()
    }

    fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree();
        if self.degree() < dd || self.is_zero() {
            return (QPoly(vec![BigRational::zero()]), self.clone());
        }
        let lc = d.0[dd].clone();
        let mut r = self.0.clone();
        let mut q = vec![BigRational::zero(); self.degree() - dd + 1];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd.max(1));
        (QPoly(q).trim(), QPoly(r).trim())
    }

    fn monic(&self) -> QPoly {
        let lc = self.0.last().unwrap().clone();
        QPoly(self.0.iter().map(|c| c / &lc).collect())
    }

    fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn div(&self, d: &QPoly) -> QPoly {
        self.divrem(d).0
    }
}

/// Squarefree decomposition `f = c · ∏ a_i^i`.
fn yun(f: &QPoly) -> Vec<(QPoly, usize)> {
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div(&a0);
    let mut c = fp.div(&a0);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        b = b.div(&a);
        c = d.div(&a);
        d = c.sub(&b.derivative());
        if a.degree() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Initial approximations on circles given by the Newton polygon of
/// `(k, log|c_k|)`.
fn initial_guesses(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let pts: Vec<(usize, f64)> =
        c.iter().enumerate().filter(|(_, x)| **x != 0.0).map(|(k, x)| (k, x.abs().ln())).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut z = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let m = j - i;
        let r = ((li - lj) / m as f64).exp();
        for k in 0..m {
            let ang = std::f64::consts::TAU * (k as f64 / m as f64 + i as f64 / n as f64) + 0.4;
            z.push(Complex64::from_polar(r, ang));
        }
    }
    z
}

fn aberth(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let dc: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, x)| k as f64 * x).collect();
    let mut z = initial_guesses(c);
    let mut done = vec![false; n];
    for _ in 0..2000 {
        if done.iter().all(|&d| d) {
            break;
        }
        for k in 0..n {
            if done[k] {
                continue;
            }
            let pv = horner_c(c, z[k]);
            if pv.norm() == 0.0 {
                done[k] = true;
                continue;
            }
            let ratio = pv / horner_c(&dc, z[k]);
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                done[k] = true;
                continue;
            }
            z[k] -= w;
            if w.norm() <= 1e-15 * z[k].norm().max(f64::MIN_POSITIVE) {
                done[k] = true;
            }
        }
    }
    // Newton polishing, kept only when the residual decreases
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let pv = horner_c(c, *zk);
            let dv = horner_c(&dc, *zk);
            if dv.norm() == 0.0 {
                break;
            }
            let cand = *zk - pv / dv;
            if horner_c(c, cand).norm() < pv.norm() {
                *zk = cand;
            } else {
                break;
            }
        }
    }
    z
}

fn numeric_roots(s: &QPoly, mult: usize) -> Vec<RootModulus> {
    let d = s.degree();
    if d == 1 {
        let r = (-&s.0[0] / &s.0[1]).abs();
        return vec![RootModulus {
            modulus: r.to_f64().unwrap_or(f64::NAN),
            err: 0.0,
            multiplicity: mult,
            exact: Some(r),
            source: RootSource::Rational,
        }];
    }
    let maxc = s.0.iter().map(|c| c.abs()).max().expect("nonempty");
    let c: Vec<f64> = s.0.iter().map(|x| (x / &maxc).to_f64().unwrap_or(0.0)).collect();
    let z = aberth(&c);
    let u = f64::EPSILON / 2.0;
    let lead = c[d].abs();
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        let zj = z[j];
        let az = zj.norm();
        let resid = horner_c(&c, zj).norm();
        let absval: f64 = c.iter().rev().fold(0.0, |acc, x| acc * az + x.abs());
        let rounding = 4.0 * (d as f64 + 2.0) * u * absval;
        let sep: f64 = (0..d).filter(|&k| k != j).map(|k| (zj - z[k]).norm()).product();
        let radius = d as f64 * (resid + rounding) / (lead * sep);
        out.push(RootModulus {
            modulus: az,
            err: radius + 2.0 * u * az,
            multiplicity: mult,
            exact: None,
            source: RootSource::Numeric,
        });
    }
    out
}

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RealLaurentPoly};
use crate::parallel::{map_indexed, pairwise_sum, Exec};

use super::{MahlerMethod, MahlerValue};

/// Largest admissible total grid size `N^k`.
pub const MAX_GRID_POINTS: u64 = 1 << 28;

const CHUNK: usize = 4096;
const TINY: f64 = 1e-300;

/// `m(p)` by the trapezoidal rule on the `k`-torus with `n` points per
/// dimension, run in parallel.
pub fn mahler_quadrature(p: &LaurentPoly, n: usize) -> Result<MahlerValue> {
    mahler_quadrature_with(p, n, Exec::Parallel)
}

pub fn mahler_quadrature_with(p: &LaurentPoly, n: usize, exec: Exec) -> Result<MahlerValue> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    mahler_quadrature_real(&RealLaurentPoly::from_exact(p), n, exec)
}

/// `N` roots of unity with the quadrant points snapped to exact values.
fn unit_roots(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            if (4 * j) % n == 0 {
                match 4 * j / n {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                }
            } else {
                Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64)
            }
        })
        .collect()
}

#[derive(Clone, Copy, Default)]
struct Partial {
    sum: f64,
    count: usize,
    sum_half: f64,
    count_half: usize,
    skipped: usize,
}

/// Quadrature on a real-coefficient polynomial.
///
/// Variables whose exponent is constant over the support only contribute a
/// unimodular factor and are dropped. The error estimate compares the `N`
/// grid with its `N/2` subgrid (points with all indices even).
pub fn mahler_quadrature_real(p: &RealLaurentPoly, n: usize, exec: Exec) -> Result<MahlerValue> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::arg(format!("points per dimension must be a power of two >= 2, got {n}")));
    }
    let terms: Vec<&(Vec<i64>, f64)> = p.terms.iter().filter(|(_, c)| *c != 0.0).collect();
    if terms.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let dims: Vec<usize> = (0..p.nvars).filter(|&i| terms.iter().any(|(e, _)| e[i] != terms[0].0[i])).collect();
    let k = dims.len();
    if k == 0 {
        let v: f64 = terms.iter().map(|(_, c)| c).sum();
        return Ok(MahlerValue {
            value: v.abs(),
            err: 0.0,
            method: MahlerMethod::Quadrature,
            skipped: 0,
            low_confidence: false,
        });
    }
    let total = (n as u64)
        .checked_pow(k as u32)
        .filter(|&t| t <= MAX_GRID_POINTS)
        .ok_or_else(|| Error::arg(format!("grid of {n}^{k} points exceeds the limit of {MAX_GRID_POINTS}")))?
        as usize;

    let nn = n as i64;
    let mono: Vec<(Vec<usize>, f64)> =
        terms.iter().map(|(e, c)| (dims.iter().map(|&d| e[d].rem_euclid(nn) as usize).collect(), *c)).collect();
    let table = unit_roots(n);
    let nchunks = total.div_ceil(CHUNK);

    let partials = map_indexed(nchunks, exec, |ci| {
        let mut part = Partial::default();
        let mut idx = vec![0usize; k];
        let start = ci * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut rest = start;
        for slot in idx.iter_mut() {
            *slot = rest % n;
            rest /= n;
        }
        for _ in start..end {
            let mut s = Complex64::new(0.0, 0.0);
            for (a, c) in &mono {
                let mut ph = 0usize;
                for (ad, id) in a.iter().zip(&idx) {
                    ph += ad * id;
                }
                s += table[ph % n] * *c;
            }
            let absval = s.norm();
            let even = idx.iter().all(|i| i % 2 == 0);
            if absval < TINY {
                part.skipped += 1;
            } else {
                let l = absval.ln();
                part.sum += l;
                part.count += 1;
                if even {
                    part.sum_half += l;
                    part.count_half += 1;
                }
            }
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot < n {
                    break;
                }
                *slot = 0;
            }
        }
        part
    });

    let sum = pairwise_sum(&partials.iter().map(|q| q.sum).collect::<Vec<_>>());
    let sum_half = pairwise_sum(&partials.iter().map(|q| q.sum_half).collect::<Vec<_>>());
    let count: usize = partials.iter().map(|q| q.count).sum();
    let count_half: usize = partials.iter().map(|q| q.count_half).sum();
    let skipped: usize = partials.iter().map(|q| q.skipped).sum();
    if count == 0 {
        return Ok(MahlerValue {
            value: 0.0,
            err: 0.0,
            method: MahlerMethod::Quadrature,
            skipped,
            low_confidence: true,
        });
    }
    let l_n = sum / count as f64;
    let l_half = if count_half > 0 { sum_half / count_half as f64 } else { l_n };
    let value = l_n.exp();
    let err = value * (l_n - l_half).abs().exp_m1();
    Ok(MahlerValue {
        value,
        err,
        method: MahlerMethod::Quadrature,
        skipped,
        low_confidence: skipped as f64 > 1e-3 * total as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly_auto;
    use crate::mahler::mahler_jensen;

    fn q(text: &str, n: usize) -> MahlerValue {
        mahler_quadrature(&parse_poly_auto(text).unwrap().0, n).unwrap()
    }

    #[test]
    fn unit() {
        let v = q("z", 16);
        assert_eq!(v.value, 1.0);
        assert_eq!(v.err, 0.0);
    }

    #[test]
    fn log_singularity() {
        let v = q("z - 1", 1 << 14);
        assert!((v.value - 1.0).abs() < 1e-3);
        assert_eq!(v.skipped, 1);
        assert!(!v.low_confidence);
    }

    #[test]
    fn smyth_value() {
        // 1 + x + y, checked against a finer grid
        let coarse = q("1 + x + y", 1 << 10);
        let fine = q("1 + x + y", 1 << 12);
        assert!((coarse.value - fine.value).abs() < 5e-3);
        assert!((coarse.value - 1.38135).abs() < 5e-3);
    }

    #[test]
    fn agrees_with_jensen() {
        let (p, _) = parse_poly_auto("2*z^3 - 7*z + 1").unwrap();
        let a = mahler_quadrature(&p, 1 << 12).unwrap().value;
        let b = mahler_jensen(&p).unwrap().value;
        assert!((a.ln() - b.ln()).abs() < 1e-9);
    }

    #[test]
    fn sequential_and_parallel_bitwise() {
        let (p, _) = parse_poly_auto("1 + x + y - 3*x*y^2").unwrap();
        let a = mahler_quadrature_with(&p, 256, Exec::Sequential).unwrap();
        let b = mahler_quadrature_with(&p, 256, Exec::Parallel).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.err.to_bits(), b.err.to_bits());
    }

    #[test]
    fn rejects_bad_grids() {
        let (p, _) = parse_poly_auto("1 + x + y").unwrap();
        assert!(mahler_quadrature(&p, 100).is_err());
        let (p, _) = parse_poly_auto("1 + a + b + c + d").unwrap();
        assert!(mahler_quadrature(&p, 1024).is_err());
    }
}

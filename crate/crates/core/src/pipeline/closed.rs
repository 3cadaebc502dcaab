use num::{BigRational, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fox::{mapping_torus_matrices, monodromy_jacobian, torus_presentation, FreeGroupEndo};
use crate::groupring::{growth_rate_upper, GrowthBounds, HomToZk, Word};
use crate::laurent::{abelianize_matrix, one_var_roots, LaurentMatrix, LaurentPoly};
use crate::mahler::{fk_det_poly, FkOptions};
use crate::torsionfn::MaxMonomialFn;
use crate::Exponent;

use super::complexes::prepare_three_term;

/// `max(1, t)^{(p−1)(q−1)−1}`.
pub fn tau_torus_knot(p: i64, q: i64) -> Result<MaxMonomialFn> {
    torus_presentation(p, q)?;
    Ok(MaxMonomialFn::max_one_pow(Exponent::from_integer((p - 1) * (q - 1) - 1)))
}

/// `max(1, t)^x` for a graph manifold with Thurston norm `x`.
pub fn tau_graph_manifold(x: Exponent) -> Result<MaxMonomialFn> {
    if x < Exponent::zero() {
        return Err(Error::arg(format!("Thurston norm must be nonnegative, got {x}")));
    }
    Ok(MaxMonomialFn::max_one_pow(x))
}

/// Product over the pieces of a decomposition.
pub fn jsj_product(parts: &[MaxMonomialFn]) -> MaxMonomialFn {
    parts.iter().fold(MaxMonomialFn::one(), |acc, f| acc.multiply(f))
}

fn augmented(m: &crate::groupring::GroupRingMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let s: BigRational = m.get(i, j).terms().map(|(_, c)| c.clone()).sum();
                    s.to_integer().to_i64().expect("integer Fox derivatives")
                })
                .collect()
        })
        .collect()
}

fn int_matrix(rows: &[Vec<i64>], nvars: usize) -> LaurentMatrix {
    let n = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    LaurentMatrix::from_fn(n, c, nvars, |i, j| LaurentPoly::from_int(nvars, rows[i][j]))
}

/// `z · M` over one variable.
fn z_times(rows: &[Vec<i64>]) -> LaurentMatrix {
    let c = rows.first().map_or(0, Vec::len);
    LaurentMatrix::from_fn(rows.len(), c, 1, |i, j| LaurentPoly::from_int_terms(1, &[(vec![1], rows[i][j])]))
}

/// Largest modulus of an eigenvalue of an integer matrix.
pub fn spectral_radius(rows: &[Vec<i64>]) -> Result<f64> {
    let n = rows.len();
    let lam = LaurentMatrix::from_fn(n, n, 1, |i, j| {
        let mut p = LaurentPoly::from_int(1, -rows[i][j]);
        if i == j {
            p = &p + &LaurentPoly::var(1, 0);
        }
        p
    });
    let roots = one_var_roots(&lam.det()?)?;
    Ok(roots.roots.iter().map(|r| r.modulus).fold(0.0, f64::max))
}

#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    pub t: f64,
    pub value: f64,
    pub err: f64,
    pub expected: f64,
    pub ok: bool,
}

/// Breakpoint certificate for a fibered class with monodromy `f`.
#[derive(Clone, Debug, Serialize)]
pub struct FiberedCertificate {
    /// `−χ(Σ)`, as supplied.
    pub x: i64,
    /// Upper bound on the entropy; `≥ 1`.
    pub t_upper: f64,
    /// Power at which the best bound was attained.
    pub k_used: u64,
    /// Spectral radius of the abelianized monodromy, a lower bound.
    pub lower_bound: f64,
    pub representative: String,
    pub unverified_region: String,
    pub growth: GrowthBounds,
    /// Abelian torsion of the mapping torus at `1/(2T)` and `2T`.
    pub probes: Vec<Probe>,
}

/// Entropy window for the fibered class of the mapping torus of `f` on a
/// fiber with Euler characteristic `chi`.
///
/// `T_upper` is the best Fekete bound `(‖(μA)^k‖₁)^{1/k}`, `k ≤ k_max`, for
/// `A` the monodromy Jacobian pushed to `Z[⟨μ⟩]` by the fibration class.
pub fn tau_fibered(f: &FreeGroupEndo, chi: i64, k_max: u64) -> Result<FiberedCertificate> {
    if k_max < 1 {
        return Err(Error::arg("k_max must be at least 1"));
    }
    if chi > 0 {
        return Err(Error::arg(format!("fiber Euler characteristic must be <= 0, got {chi}")));
    }
    let n = f.rank();
    if n == 0 {
        return Err(Error::arg("monodromy on the trivial group"));
    }
    let a_int = augmented(&monodromy_jacobian(f));
    let growth = growth_rate_upper(&z_times(&a_int), k_max)?;
    let (k_idx, best) =
        growth
            .bounds
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) });
    let t_upper = best.max(1.0);
    let lower_bound = spectral_radius(&a_int)?;
    let abs_det =
        int_matrix(&a_int, 0).det()?.terms().next().map_or(0.0, |(_, c)| c.abs().to_f64().unwrap_or(f64::NAN));

    // abelian torsion of the mapping torus, γ: fiber ↦ 0, μ ↦ 1
    let cx = mapping_torus_matrices(f, "mu")?;
    let mu = cx.mu;
    let relators: Vec<Word> = (0..n)
        .map(|i| {
            Word::generator(mu).mul(&Word::generator(i as u32)).mul(&Word::power(mu, -1)).mul(&f.images()[i].inverse())
        })
        .collect();
    let mut images = vec![vec![0]; n];
    images.push(vec![1]);
    let gamma = HomToZk::new(1, images, &relators)?;
    let c = abelianize_matrix(&cx.b3, &gamma)?;
    let b = abelianize_matrix(&cx.b2, &gamma)?;
    let a = abelianize_matrix(&cx.b1, &gamma)?;
    let ratio = prepare_three_term(&c, &b, &a, &[0], &[n], &[1])?;
    let opts = FkOptions::default();
    let probes = [(0.5 / t_upper, 1.0), (2.0 * t_upper, f64::NAN)]
        .into_iter()
        .map(|(t, e)| {
            let v = ratio.eval(t, &opts)?;
            let expected = if e.is_nan() { abs_det * t.powi(n as i32 - 2) } else { e };
            Ok(Probe {
                t,
                value: v.value,
                err: v.err,
                expected,
                ok: (v.value - expected).abs() <= 1e-9 * expected.max(1e-300) + v.err,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let x = -chi;
    Ok(FiberedCertificate {
        x,
        t_upper,
        k_used: k_idx as u64 + 1,
        lower_bound,
        representative: format!("1 on (0, {:.6}), t^{x} on ({t_upper:.6}, inf)", 1.0 / t_upper),
        unverified_region: format!(
            "on [{:.6}, {t_upper:.6}] the torsion is not determined (conjecturally continuous and convex)",
            1.0 / t_upper
        ),
        growth,
        probes,
    })
}

fn int_inverse(rows: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = rows.len();
    let q = |x: i64| BigRational::from_integer(x.into());
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v: Vec<BigRational> = r.iter().map(|&x| q(x)).collect();
            v.extend((0..n).map(|j| q((i == j) as i64)));
            v
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..2 * n {
                    let v = &m[c][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
    }
    m.iter()
        .map(|r| r[n..].iter().map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten()).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Low,
    Middle,
    High,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasicCaseRow {
    pub t: f64,
    pub f: f64,
    pub err: f64,
    pub region: Region,
    /// Agreement with `1` (low) or `t^n` (high); `None` in the middle.
    pub ok: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasicCaseReport {
    pub n: usize,
    pub t_hat: f64,
    pub tol: f64,
    pub rows: Vec<BasicCaseRow>,
    pub low_ok: bool,
    pub high_ok: bool,
}

/// Relative tolerance of [`basiccase_check`].
pub const BASICCASE_TOL: f64 = 1e-9;

/// Evaluates `f(t) = m(det(P − t z Q))` on `t_grid` and checks `f = 1` below
/// `1/T̂` and `f = t^n` above `T̂`, for `T̂` the growth bound of `z Q P^{-1}`.
pub fn basiccase_check(p: &[Vec<i64>], q: &[Vec<i64>], t_grid: &[f64], k_max: u64) -> Result<BasicCaseReport> {
    let n = p.len();
    let square = |m: &[Vec<i64>]| m.iter().all(|r| r.len() == n);
    if n == 0 || q.len() != n || !square(p) || !square(q) {
        return Err(Error::Dimension("P and Q must be square of the same size".into()));
    }
    for m in [p, q] {
        let d = int_matrix(m, 0).det()?;
        let unit = d.terms().next().is_some_and(|(_, c)| c.abs().is_one());
        if !unit {
            return Err(Error::NotUnimodular);
        }
    }
    let p_inv = int_inverse(p).ok_or(Error::NotUnimodular)?;
    let qp: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| q[i][k] * p_inv[k][j]).sum()).collect()).collect();
    let t_hat = growth_rate_upper(&z_times(&qp), k_max)?.upper();

    let pencil = LaurentMatrix::from_fn(n, n, 1, |i, j| {
        LaurentPoly::from_int_terms(1, &[(vec![0], p[i][j]), (vec![1], -q[i][j])])
    });
    let det = pencil.det()?;
    let opts = FkOptions::default();
    let mut rows = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let v = fk_det_poly(&det, &[1], t, &opts)?;
        let (region, expected) = if t * t_hat < 1.0 {
            (Region::Low, Some(1.0))
        } else if t > t_hat {
            (Region::High, Some(t.powi(n as i32)))
        } else {
            (Region::Middle, None)
        };
        rows.push(BasicCaseRow {
            t,
            f: v.value,
            err: v.err,
            region,
            ok: expected.map(|e| (v.value - e).abs() <= BASICCASE_TOL * e),
        });
    }
    let all = |r: Region| rows.iter().filter(|x| x.region == r).all(|x| x.ok == Some(true));
    Ok(BasicCaseReport { n, t_hat, tol: BASICCASE_TOL, low_ok: all(Region::Low), high_ok: all(Region::High), rows })
}

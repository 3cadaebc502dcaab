use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::{map_indexed, Exec};

use super::degree::ExtReal;
use super::maxmono::MaxMonomialFn;

/// One sample `(t, f(t) ± err)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub t: f64,
    pub value: f64,
    pub err: f64,
}

/// A torsion function known only through samples.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SampledFn {
    pub rows: Vec<SampleRow>,
}

/// Degrees estimated by log-log least squares on the two end quartiles.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledDegree {
    pub deg0: ExtReal,
    pub deg0_se: f64,
    pub deg_inf: ExtReal,
    pub deg_inf_se: f64,
    pub deg: ExtReal,
    pub deg_se: f64,
}

/// `n` log-spaced points from `tmin` to `tmax`, endpoints exact.
pub fn log_grid(tmin: f64, tmax: f64, n: usize) -> Result<Vec<f64>> {
    if !(tmin > 0.0 && tmax > tmin && tmin.is_finite() && tmax.is_finite()) {
        return Err(Error::arg(format!("need 0 < tmin < tmax, got {tmin}, {tmax}")));
    }
    if n < 2 {
        return Err(Error::arg("need at least two sample points"));
    }
    let (a, b) = (tmin.ln(), tmax.ln());
    Ok((0..n)
        .map(|i| match i {
            0 => tmin,
            i if i == n - 1 => tmax,
            i => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect())
}

/// Samples `f` on a log-spaced grid. `f` returns `(value, err)`.
pub fn sample<F>(f: F, tmin: f64, tmax: f64, n: usize, exec: Exec) -> Result<SampledFn>
where
    F: Fn(f64) -> Result<(f64, f64)> + Sync + Send,
{
    sample_at(&log_grid(tmin, tmax, n)?, f, exec)
}

/// Samples `f` at the given points.
pub fn sample_at<F>(ts: &[f64], f: F, exec: Exec) -> Result<SampledFn>
where
    F: Fn(f64) -> Result<(f64, f64)> + Sync + Send,
{
    let rows = map_indexed(ts.len(), exec, |i| f(ts[i]).map(|(value, err)| SampleRow { t: ts[i], value, err }));
    Ok(SampledFn { rows: rows.into_iter().collect::<Result<_>>()? })
}

fn fit_slope(rows: &[SampleRow]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| r.value > 0.0 && r.value.is_finite()).map(|r| (r.t.ln(), r.value.ln())).collect();
    let n = pts.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let se = if n > 2 {
        let rss: f64 = pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
        (rss / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Some((slope, se))
}

impl SampledFn {
    pub fn from_rows(rows: Vec<SampleRow>) -> Self {
        SampledFn { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.rows.iter().all(|r| r.value == 0.0)
    }

    pub fn degree(&self) -> SampledDegree {
        let n = self.rows.len();
        let w = (n / 4).max(2).min(n);
        let lo = fit_slope(&self.rows[..w]);
        let hi = fit_slope(&self.rows[n - w..]);
        if self.is_identically_zero() {
            return SampledDegree {
                deg0: ExtReal::PosInf,
                deg0_se: 0.0,
                deg_inf: ExtReal::NegInf,
                deg_inf_se: 0.0,
                deg: ExtReal::NegInf,
                deg_se: 0.0,
            };
        }
        let nan = (f64::NAN, f64::NAN);
        let (d0, s0) = lo.unwrap_or(nan);
        let (di, si) = hi.unwrap_or(nan);
        SampledDegree {
            deg0: ExtReal::Finite(d0),
            deg0_se: s0,
            deg_inf: ExtReal::Finite(di),
            deg_inf_se: si,
            deg: ExtReal::Finite(di - d0),
            deg_se: s0.hypot(si),
        }
    }

    /// Largest relative deviation `|v − f(t)| / f(t)` from an exact form.
    pub fn max_rel_deviation(&self, f: &MaxMonomialFn) -> f64 {
        self.rows
            .iter()
            .map(|r| {
                let e = f.eval(r.t);
                if e == 0.0 {
                    if r.value == 0.0 {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    (r.value - e).abs() / e
                }
            })
            .fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,value,err\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{}\n", r.t, r.value, r.err));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "t,value,err" => {}
            _ => return Err(Error::parse("sample CSV", "missing header t,value,err")),
        }
        let rows = lines
            .map(|l| {
                let f: Vec<f64> = l
                    .split(',')
                    .map(|x| x.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::parse("sample CSV", e.to_string()))?;
                match f[..] {
                    [t, value, err] => Ok(SampleRow { t, value, err }),
                    _ => Err(Error::parse("sample CSV", format!("expected 3 fields: {l}"))),
                }
            })
            .collect::<Result<_>>()?;
        Ok(SampledFn { rows })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse("sample JSON", e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exponent;

    #[test]
    fn grid_endpoints() {
        let g = log_grid(1e-3, 1e3, 121).unwrap();
        assert_eq!((g[0], g[120], g.len()), (1e-3, 1e3, 121));
        assert!((g[60] - 1.0).abs() < 1e-12);
        assert!(log_grid(1.0, 1.0, 5).is_err());
        assert!(log_grid(0.0, 1.0, 5).is_err());
        assert!(log_grid(1.0, 2.0, 1).is_err());
    }

    #[test]
    fn degree_of_max_monomial() {
        let f = MaxMonomialFn::max_one_pow(Exponent::from_integer(3));
        let s = sample(|t| Ok((f.eval(t), 0.0)), 1e-3, 1e3, 121, Exec::Sequential).unwrap();
        let d = s.degree();
        assert!(d.deg0.finite().unwrap().abs() < 1e-9);
        assert!((d.deg.finite().unwrap() - 3.0).abs() < 1e-9);
        assert_eq!(s.max_rel_deviation(&f), 0.0);
    }

    #[test]
    fn zero_function() {
        let s = sample(|_| Ok((0.0, 0.0)), 0.1, 10.0, 9, Exec::Sequential).unwrap();
        assert_eq!(s.degree().deg, ExtReal::NegInf);
    }

    #[test]
    fn csv_and_json_round_trip() {
        let s = sample(|t| Ok((t.sqrt() + 1.0 / 3.0, 1e-17)), 0.1, 10.0, 7, Exec::Parallel).unwrap();
        assert_eq!(SampledFn::from_csv(&s.to_csv()).unwrap(), s);
        assert_eq!(SampledFn::from_json(&s.to_json()).unwrap(), s);
        assert!(SampledFn::from_csv("a,b\n1,2").is_err());
    }
}

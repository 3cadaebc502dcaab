#![allow(dead_code)]

use std::collections::BTreeMap;

use l2alex_core::fox::PdCode;

pub fn trefoil() -> PdCode {
    PdCode::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])
}

pub fn figure_eight() -> PdCode {
    PdCode::new(vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])
}

pub fn five_two() -> PdCode {
    PdCode::new(vec![[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]])
}

/// Dense-ish integer Laurent polynomial in one variable: exponent -> coefficient.
pub type P = BTreeMap<i64, i64>;

pub fn p_add(a: &P, b: &P) -> P {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn p_mul(a: &P, b: &P) -> P {
    let mut out = P::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn p_neg(a: &P) -> P {
    a.iter().map(|(e, c)| (*e, -c)).collect()
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<P>]) -> P {
    let n = m.len();
    if n == 0 {
        return P::from([(0, 1)]);
    }
    let mut acc = P::new();
    for j in 0..n {
        if m[0][j].is_empty() {
            continue;
        }
        let minor: Vec<Vec<P>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = p_mul(&m[0][j], &cofactor_det(&minor));
        acc = if j % 2 == 0 { p_add(&acc, &term) } else { p_add(&acc, &p_neg(&term)) };
    }
    acc
}

/// Shift to trailing exponent 0 with positive leading coefficient; returns
/// ascending coefficients.
pub fn normalize(p: &P) -> Vec<i64> {
    let Some((&lo, _)) = p.iter().next() else {
        return vec![];
    };
    let hi = *p.keys().last().unwrap();
    let sign = if p[&hi] < 0 { -1 } else { 1 };
    (lo..=hi).map(|e| sign * p.get(&e).copied().unwrap_or(0)).collect()
}

/// Alexander polynomial from a PD code by the classical crossing matrix:
/// row `(1−z)` at the over-arc, `z` / `−1` at the incoming / outgoing
/// under-arcs (swapped for negative crossings); last row and first column
/// deleted.
pub fn alexander_oracle(pd: &PdCode) -> Vec<i64> {
    let n = pd.crossings.len();
    let m = 2 * n;
    // arcs: edges j and l of a crossing lie on the same over-arc
    let mut arc: Vec<usize> = (0..m).collect();
    loop {
        let mut changed = false;
        for &[_, j, _, l] in &pd.crossings {
            let (a, b) = (arc[j as usize - 1], arc[l as usize - 1]);
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                for x in arc.iter_mut() {
                    if *x == hi {
                        *x = lo;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut ids: Vec<usize> = arc.clone();
    ids.sort();
    ids.dedup();
    let idx = |e: u32| ids.binary_search(&arc[e as usize - 1]).unwrap();
    let mut rows = Vec::new();
    for &[i, j, k, l] in &pd.crossings {
        let positive = j as i64 - l as i64 == 1 || l as i64 - j as i64 > 1;
        let mut row = vec![P::new(); ids.len()];
        let mut put = |a: usize, p: P| row[a] = p_add(&row[a], &p);
        put(idx(j), P::from([(0, 1), (1, -1)]));
        let (zi, mo) = if positive { (idx(i), idx(k)) } else { (idx(k), idx(i)) };
        put(zi, P::from([(1, 1)]));
        put(mo, P::from([(0, -1)]));
        rows.push(row);
    }
    rows.pop();
    let minor: Vec<Vec<P>> = rows.iter().map(|r| r[1..].to_vec()).collect();
    normalize(&cofactor_det(&minor))
}

/// Real roots of `a z^2 + b z + c` with positive discriminant.
pub fn quadratic_moduli(a: f64, b: f64, c: f64) -> (f64, f64) {
    let d = (b * b - 4.0 * a * c).sqrt();
    let (r1, r2) = ((-b - d) / (2.0 * a), (-b + d) / (2.0 * a));
    (r1.abs().min(r2.abs()), r1.abs().max(r2.abs()))
}

use crate::error::{Error, Result};
use crate::laurent::LaurentMatrix;
use crate::mahler::{FkOptions, MahlerValue, PreparedDet};

/// `t ↦ ∏ m(num_i) / ∏ m(den_j)` with every determinant computed once.
#[derive(Clone, Debug)]
pub struct PreparedRatio {
    num: Vec<PreparedDet>,
    den: Vec<PreparedDet>,
}

impl PreparedRatio {
    fn new(num: &[&LaurentMatrix], den: &[&LaurentMatrix], psi: &[i64]) -> Result<Self> {
        let prep = |ms: &[&LaurentMatrix]| -> Result<Vec<PreparedDet>> {
            ms.iter().map(|m| PreparedDet::new(&m.det()?, psi)).collect()
        };
        Ok(PreparedRatio { num: prep(num)?, den: prep(den)? })
    }

    pub fn eval(&self, t: f64, opts: &FkOptions) -> Result<MahlerValue> {
        let mut v = MahlerValue::exact(1.0);
        for d in &self.num {
            v = v.mul(&d.eval(t, opts)?);
        }
        for d in &self.den {
            v = v
                .div(&d.eval(t, opts)?)
                .ok_or_else(|| Error::arg(format!("denominator determinant vanishes at t = {t}")))?;
        }
        Ok(v)
    }
}

fn check_selection(idx: &[usize], bound: usize, size: usize, which: &'static str) -> Result<()> {
    if idx.len() != size {
        return Err(Error::Dimension(format!("selection {which} has {} indices, expected {size}", idx.len())));
    }
    let mut seen = vec![false; bound];
    for &i in idx {
        if i >= bound || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Dimension(format!("selection {which} has a bad or repeated index {i}")));
        }
    }
    Ok(())
}

fn check_nvars(ms: &[&LaurentMatrix], psi: &[i64]) -> Result<()> {
    for m in ms {
        if m.nvars() != psi.len() {
            return Err(Error::Dimension(format!(
                "matrix over {} variables with psi of length {}",
                m.nvars(),
                psi.len()
            )));
        }
    }
    Ok(())
}

/// Two-term complex in row-vector convention: `B` is `k × (k+l)` (top
/// boundary), `A` is `(k+l) × l` (bottom boundary).
/// With `A(L)` the rows of `A` in `L` and `B(L)` the matrix `B` with the
/// columns in `L` deleted, the torsion is `m(B(L)) / m(A(L))`.
pub fn prepare_two_term(a: &LaurentMatrix, b: &LaurentMatrix, l: &[usize], psi: &[i64]) -> Result<PreparedRatio> {
    check_nvars(&[a, b], psi)?;
    let (kl, ll) = (a.rows(), a.cols());
    if b.cols() != kl || b.rows() + ll != kl {
        return Err(Error::Dimension(format!(
            "two-term complex with A {}x{} and B {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    check_selection(l, kl, ll, "L")?;
    let al = a.select_rows(l);
    if al.det()?.is_zero() {
        return Err(Error::SingularSelection {
            which: "L",
            msg: format!("det A(L) = 0 for L = {l:?}; choose a different L"),
        });
    }
    let bl = b.delete(&[], l);
    PreparedRatio::new(&[&bl], &[&al], psi)
}

pub fn tau_two_term(a: &LaurentMatrix, b: &LaurentMatrix, l: &[usize], psi: &[i64], t: f64) -> Result<MahlerValue> {
    tau_two_term_with(a, b, l, psi, t, &FkOptions::default())
}

pub fn tau_two_term_with(
    a: &LaurentMatrix,
    b: &LaurentMatrix,
    l: &[usize],
    psi: &[i64],
    t: f64,
    opts: &FkOptions,
) -> Result<MahlerValue> {
    prepare_two_term(a, b, l, psi)?.eval(t, opts)
}

/// First `L` in lexicographic order with `det A(L) ≠ 0`.
pub fn find_two_term_selection(a: &LaurentMatrix) -> Result<Vec<usize>> {
    for l in combinations(a.rows(), a.cols()) {
        if !a.select_rows(&l).det()?.is_zero() {
            return Ok(l);
        }
    }
    Err(Error::SingularSelection { which: "L", msg: "every row selection of A is singular".into() })
}

/// Three-term complex with boundaries `C` (`c3 × c2`), `B` (`c2 × c1`),
/// `A` (`c1 × c0`). `J` indexes the basis of the second module and `L` that of
/// the third: `C(J)` keeps the columns of `C` in `J`, `A(L)` the rows of `A`
/// in `L`, and `B(J,L)` deletes rows `J` and columns `L` of `B`. The torsion
/// is `m(B(J,L)) / (m(A(L)) · m(C(J)))`.
pub fn prepare_three_term(
    c: &LaurentMatrix,
    b: &LaurentMatrix,
    a: &LaurentMatrix,
    j: &[usize],
    l: &[usize],
    psi: &[i64],
) -> Result<PreparedRatio> {
    check_nvars(&[a, b, c], psi)?;
    if c.cols() != b.rows() || b.cols() != a.rows() || b.rows() - c.rows() != a.rows() - a.cols() {
        return Err(Error::Dimension(format!(
            "three-term complex with C {}x{}, B {}x{}, A {}x{}",
            c.rows(),
            c.cols(),
            b.rows(),
            b.cols(),
            a.rows(),
            a.cols()
        )));
    }
    check_selection(j, b.rows(), c.rows(), "J")?;
    check_selection(l, a.rows(), a.cols(), "L")?;
    let cj = c.select_cols(j);
    if cj.det()?.is_zero() {
        return Err(Error::SingularSelection {
            which: "J",
            msg: format!("det C(J) = 0 for J = {j:?}; choose a different J"),
        });
    }
    let al = a.select_rows(l);
    if al.det()?.is_zero() {
        return Err(Error::SingularSelection {
            which: "L",
            msg: format!("det A(L) = 0 for L = {l:?}; choose a different L"),
        });
    }
    let bjl = b.delete(j, l);
    PreparedRatio::new(&[&bjl], &[&al, &cj], psi)
}

pub fn tau_three_term(
    c: &LaurentMatrix,
    b: &LaurentMatrix,
    a: &LaurentMatrix,
    j: &[usize],
    l: &[usize],
    psi: &[i64],
    t: f64,
) -> Result<MahlerValue> {
    prepare_three_term(c, b, a, j, l, psi)?.eval(t, &FkOptions::default())
}

/// First `J` and first `L` (lexicographic) with nonsingular `C(J)`, `A(L)`.
pub fn find_three_term_selection(c: &LaurentMatrix, a: &LaurentMatrix) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut j = None;
    for cand in combinations(c.cols(), c.rows()) {
        if !c.select_cols(&cand).det()?.is_zero() {
            j = Some(cand);
            break;
        }
    }
    let j = j.ok_or_else(|| Error::SingularSelection {
        which: "J",
        msg: "every column selection of C is singular".into(),
    })?;
    Ok((j, find_two_term_selection(a)?))
}

/// `r`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (r <= n).then(|| (0..r).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = r;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - r + i {
                next[i] += 1;
                for k in i + 1..r {
                    next[k] = next[k - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn m(rows: &[&[&str]], names: &[&str]) -> LaurentMatrix {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rows = rows.iter().map(|r| r.iter().map(|s| parse_poly(s, &names).unwrap()).collect()).collect();
        LaurentMatrix::from_rows(rows, names.len()).unwrap()
    }

    #[test]
    fn combinations_in_order() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn torus_two_term_is_one() {
        // T^2: one 2-cell, cells x, y, one 0-cell; γ(x) = γ(y) = z.
        let b = m(&[&["1 - z", "z - 1"]], &["z"]);
        let a = m(&[&["z - 1"], &["z - 1"]], &["z"]);
        for t in [0.3, 1.0, 2.5] {
            let v = tau_two_term(&a, &b, &[0], &[1], t).unwrap();
            assert_eq!(v.value, 1.0);
            assert_eq!(v.err, 0.0);
        }
        assert_eq!(find_two_term_selection(&a).unwrap(), vec![0]);
    }

    #[test]
    fn empty_top_boundary() {
        let a = m(&[&["1 - 2*z"]], &["z"]);
        let b = LaurentMatrix::zeros(0, 1, 1);
        let v = tau_two_term(&a, &b, &[0], &[1], 1.0).unwrap();
        assert_eq!(v.value, 0.5);
    }

    #[test]
    fn singular_selection_is_signalled() {
        let a = m(&[&["0"], &["z - 1"]], &["z"]);
        let b = m(&[&["1", "1"]], &["z"]);
        assert!(matches!(tau_two_term(&a, &b, &[0], &[1], 1.0), Err(Error::SingularSelection { which: "L", .. })));
        assert_eq!(find_two_term_selection(&a).unwrap(), vec![1]);
        assert!(tau_two_term(&a, &b, &[1], &[1], 1.0).is_ok());
        assert!(tau_two_term(&a, &b, &[2], &[1], 1.0).is_err());
    }

    #[test]
    fn three_term_identity_block() {
        // B(J,L) = identity: the value is 1 / (m(A(L)) m(C(J))).
        let c = m(&[&["1 - 3*z", "0"]], &["z"]);
        let b = m(&[&["0", "0"], &["1", "0"]], &["z"]);
        let a = m(&[&["0"], &["2 - z"]], &["z"]);
        let v = tau_three_term(&c, &b, &a, &[0], &[1], &[1], 1.0).unwrap();
        assert!((v.value - 1.0 / 6.0).abs() < 1e-15);
        assert!(matches!(
            tau_three_term(&c, &b, &a, &[1], &[1], &[1], 1.0),
            Err(Error::SingularSelection { which: "J", .. })
        ));
        assert!(matches!(
            tau_three_term(&c, &b, &a, &[0], &[0], &[1], 1.0),
            Err(Error::SingularSelection { which: "L", .. })
        ));
        assert_eq!(find_three_term_selection(&c, &a).unwrap(), (vec![0], vec![1]));
    }
}

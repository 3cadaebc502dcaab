use num::{BigRational, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groupring::{GroupRingMatrix, HomToZk, NormedMatrix};

use super::poly::{abelianize, LaurentPoly};

/// Dense matrix of Laurent polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        LaurentMatrix { rows, cols, nvars, entries: vec![LaurentPoly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(nvars));
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> LaurentPoly>(rows: usize, cols: usize, nvars: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.nvars(), nvars, "entry ({i},{j}) has the wrong number of variables");
                entries.push(e);
            }
        }
        LaurentMatrix { rows, cols, nvars, entries }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>, nvars: usize) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        if rows.iter().flatten().any(|p| p.nvars() != nvars) {
            return Err(Error::Dimension("entries have inconsistent numbers of variables".into()));
        }
        Ok(LaurentMatrix { rows: r, cols: c, nvars, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        assert_eq!(v.nvars(), self.nvars);
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn map<F: FnMut(&LaurentPoly) -> LaurentPoly>(&self, mut f: F) -> Self {
        let entries: Vec<LaurentPoly> = self.entries.iter().map(&mut f).collect();
        let nvars = entries.first().map_or(self.nvars, LaurentPoly::nvars);
        LaurentMatrix { rows: self.rows, cols: self.cols, nvars, entries }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.nvars, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, self.nvars, |i, j| {
            let mut acc = LaurentPoly::zero(self.nvars);
            for k in 0..self.cols {
                if !self.get(i, k).is_zero() && !other.get(k, j).is_zero() {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
            }
            acc
        }))
    }

    /// Rows at `rows` and columns at `cols` removed.
    pub fn delete(&self, rows: &[usize], cols: &[usize]) -> Self {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !rows.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !cols.contains(j)).collect();
        self.submatrix(&keep_r, &keep_c)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), self.nvars, |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        self.submatrix(rows, &(0..self.cols).collect::<Vec<_>>())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), cols)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(r, c, self.nvars, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                LaurentPoly::zero(self.nvars)
            }
        })
    }

    /// Exact determinant.
    ///
    /// Each row is first multiplied by a monomial so that all exponents are
    /// nonnegative; the units are recorded and restored at the end. The
    /// remaining polynomial matrix is reduced by fraction-free elimination
    /// with exact division.
    pub fn det(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let k = self.nvars;
        if n == 0 {
            return Ok(LaurentPoly::one(k));
        }
        let mut m = self.clone();
        let mut unit = vec![0i64; k];
        for i in 0..n {
            let mut lo: Option<Vec<i64>> = None;
            for j in 0..n {
                if let Some(e) = m.get(i, j).min_exponents() {
                    lo = Some(match lo {
                        None => e,
                        Some(l) => l.iter().zip(&e).map(|(a, b)| *a.min(b)).collect(),
                    });
                }
            }
            let Some(lo) = lo else {
                return Ok(LaurentPoly::zero(k));
            };
            let neg: Vec<i64> = lo.iter().map(|x| -x).collect();
            for j in 0..n {
                let v = m.get(i, j).shift(&neg);
                m.set(i, j, v);
            }
            for (u, l) in unit.iter_mut().zip(&lo) {
                *u += l;
            }
        }

        let mut negate = false;
        let mut prev = LaurentPoly::one(k);
        for c in 0..n {
            let pivot = (c..n).filter(|&r| !m.get(r, c).is_zero()).min_by_key(|&r| m.get(r, c).num_terms());
            let Some(p) = pivot else {
                return Ok(LaurentPoly::zero(k));
            };
            if p != c {
                m.swap_rows(p, c);
                negate = !negate;
            }
            let piv = m.get(c, c).clone();
            for i in c + 1..n {
                let a = m.get(i, c).clone();
                for j in c + 1..n {
                    let num = &(&piv * m.get(i, j)) - &(&a * m.get(c, j));
                    let v = num.div_exact(&prev).expect("fraction-free elimination divides exactly");
                    m.set(i, j, v);
                }
                m.set(i, c, LaurentPoly::zero(k));
            }
            prev = piv;
        }
        let mut d = m.get(n - 1, n - 1).shift(&unit);
        if negate {
            d = -&d;
        }
        d.check_exponents()?;
        Ok(d)
    }

    /// Largest ℓ¹ norm of an entry times the number of rows.
    pub fn l1_norm(&self) -> BigRational {
        let max =
            self.entries.iter().map(LaurentPoly::l1_norm).fold(BigRational::zero(), |m, x| if x > m { x } else { m });
        max * BigRational::from_integer(self.rows.into())
    }

    pub fn display(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&format!("[{}]\n", row.join(", ")));
        }
        out
    }
}

impl NormedMatrix for LaurentMatrix {
    fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn matmul(&self, other: &Self) -> Self {
        self.mul(other).expect("compatible shapes")
    }

    fn l1_norm_f64(&self) -> f64 {
        self.l1_norm().to_f64().unwrap_or(f64::INFINITY)
    }

    fn term_count(&self) -> usize {
        self.entries.iter().map(LaurentPoly::num_terms).sum()
    }
}

/// Entrywise image under `w ↦ z^{h(w)}`.
pub fn abelianize_matrix(m: &GroupRingMatrix, h: &HomToZk) -> Result<LaurentMatrix> {
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for e in m.entries() {
        entries.push(abelianize(e, h)?);
    }
    Ok(LaurentMatrix { rows: m.rows(), cols: m.cols(), nvars: h.rank(), entries })
}

use num::{BigRational, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::element::{ring_mul, GroupRingElem};
use super::word::Alphabet;

/// Dense matrix over the group ring, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElem>,
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GroupRingMatrix { rows, cols, entries: vec![GroupRingElem::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElem::one());
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> GroupRingElem>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        GroupRingMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<GroupRingElem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(GroupRingMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GroupRingElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[GroupRingElem] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = GroupRingElem::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = &acc + &ring_mul(a, b);
            }
            acc
        }))
    }

    /// `‖A‖₁ = n · max |a_ij|₁` with `n` the number of rows.
    pub fn l1_norm(&self) -> BigRational {
        let max =
            self.entries.iter().map(GroupRingElem::l1_norm).fold(BigRational::zero(), |m, x| if x > m { x } else { m });
        max * BigRational::from_integer(self.rows.into())
    }

    pub fn term_count(&self) -> usize {
        self.entries.iter().map(GroupRingElem::num_terms).sum()
    }

    /// Rows removed at `rows`, columns removed at `cols`.
    pub fn delete(&self, rows: &[usize], cols: &[usize]) -> Self {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !rows.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !cols.contains(j)).collect();
        Self::from_fn(keep_r.len(), keep_c.len(), |i, j| self.get(keep_r[i], keep_c[j]).clone())
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).display(alphabet)).collect();
            out.push_str(&format!("[{}]\n", row.join(", ")));
        }
        out
    }

    /// Largest absolute coefficient over all entries, as `f64`.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|e| e.terms().map(|(_, c)| c.abs()))
            .fold(0.0, |m: f64, c| m.max(c.to_f64().unwrap_or(f64::INFINITY)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submultiplicative_small() {
        let a = Alphabet::new(&["x", "y"]).unwrap();
        let e = |s: &str| GroupRingElem::from_word(a.parse_word(s).unwrap());
        let m = GroupRingMatrix::from_rows(vec![vec![e("x"), &e("1") - &e("y")], vec![&e("x y") + &e("y"), e("y^-1")]])
            .unwrap();
        let p = m.mul(&m).unwrap();
        assert!(p.l1_norm() <= m.l1_norm() * m.l1_norm());
    }

    #[test]
    fn identity_mul() {
        let id = GroupRingMatrix::identity(3);
        assert_eq!(id.mul(&id).unwrap(), id);
        assert_eq!(id.l1_norm(), BigRational::from_integer(3.into()));
        assert!(GroupRingMatrix::zeros(2, 3).mul(&GroupRingMatrix::zeros(2, 3)).is_err());
    }
}

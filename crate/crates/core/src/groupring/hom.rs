use crate::error::{Error, Result};

use super::word::{Gen, Word};

/// A homomorphism from a free group to `Z^k`, given on generators, which
/// descends to the presented group: every relator maps to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomToZk {
    rank: usize,
    images: Vec<Vec<i64>>,
}

impl HomToZk {
    /// Builds the homomorphism and checks that each relator lies in its kernel.
    pub fn new(rank: usize, images: Vec<Vec<i64>>, relators: &[Word]) -> Result<Self> {
        if let Some(bad) = images.iter().position(|v| v.len() != rank) {
            return Err(Error::BadHomomorphism(format!(
                "image of generator {bad} has length {} instead of {rank}",
                images[bad].len()
            )));
        }
        let h = HomToZk { rank, images };
        for (j, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g as usize >= h.images.len() {
                    return Err(Error::BadHomomorphism(format!("relator {j} uses generator {g} with no image")));
                }
            }
            if h.apply(r).iter().any(|&x| x != 0) {
                return Err(Error::BadHomomorphism(format!("relator {j} does not map to zero")));
            }
        }
        Ok(h)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_generators(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, g: Gen) -> &[i64] {
        &self.images[g as usize]
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &(g, e) in w.syllables() {
            for (acc, x) in v.iter_mut().zip(&self.images[g as usize]) {
                *acc += e * x;
            }
        }
        v
    }

    /// Composes with a linear functional `ψ : Z^k → Z`.
    pub fn pair(&self, psi: &[i64], g: Gen) -> i64 {
        self.image(g).iter().zip(psi).map(|(a, b)| a * b).sum()
    }
}

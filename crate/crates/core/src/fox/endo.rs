use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupring::{Alphabet, Gen, GroupRingElem, GroupRingMatrix, Word};

use super::calculus::fox_derivative;

/// An endomorphism of the free group `F_n`, given by the images of the
/// generators.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeGroupEndo {
    alphabet: Alphabet,
    images: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct EndoJson {
    generators: Vec<String>,
    images: Vec<String>,
}

impl FreeGroupEndo {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::Dimension(format!("{} images for {} generators", images.len(), alphabet.len())));
        }
        if let Some(g) = images.iter().filter_map(Word::max_generator).max() {
            if g as usize >= alphabet.len() {
                return Err(Error::arg(format!("image uses generator {g} outside the alphabet")));
            }
        }
        Ok(FreeGroupEndo { alphabet, images })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (0..alphabet.len() as Gen).map(Word::generator).collect();
        FreeGroupEndo { alphabet, images }
    }

    /// Reads `{"generators": ["x","y"], "images": ["x y", "y x y"]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: EndoJson = serde_json::from_str(text).map_err(|e| Error::parse("endomorphism JSON", e.to_string()))?;
        let alphabet = Alphabet::new(&raw.generators)?;
        let images = raw.images.iter().map(|w| alphabet.parse_word(w)).collect::<Result<Vec<_>>>()?;
        FreeGroupEndo::new(alphabet, images)
    }

    pub fn to_json(&self) -> String {
        let raw = EndoJson {
            generators: self.alphabet.names().to_vec(),
            images: self.images.iter().map(|w| w.display(&self.alphabet).to_string()).collect(),
        };
        serde_json::to_string(&raw).expect("endomorphism serializes")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeGroupEndo) -> Result<FreeGroupEndo> {
        if self.rank() != other.rank() {
            return Err(Error::Dimension("endomorphisms of different ranks".into()));
        }
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        Ok(FreeGroupEndo { alphabet: self.alphabet.clone(), images })
    }

    /// `f^m` for `m ≥ 1`.
    pub fn power(&self, m: u32) -> Result<FreeGroupEndo> {
        if m == 0 {
            return Ok(FreeGroupEndo::identity(self.alphabet.clone()));
        }
        let mut out = self.clone();
        for _ in 1..m {
            out = self.compose(&out)?;
        }
        Ok(out)
    }
}

/// Entry `(i, j)` is `∂f(g_i)/∂g_j`.
pub fn monodromy_jacobian(f: &FreeGroupEndo) -> GroupRingMatrix {
    let n = f.rank();
    GroupRingMatrix::from_fn(n, n, |i, j| fox_derivative(&f.images[i], j as Gen))
}

/// Cellular chain complex of the mapping torus over `F_n ⋊ ⟨μ⟩`, with cells
/// ordered `{Σ×I}`, `{Σ, g_1×I, …, g_n×I}`, `{g_1, …, g_n, p×I}`, `{p}`.
///
/// Entries that the standard CW structure does not pin down in terms of `f`
/// alone are filled with zeros and listed in `placeholders`; torsion
/// evaluation never reads them.
#[derive(Clone, Debug)]
pub struct MappingTorusComplex {
    /// The fiber generators followed by `μ`.
    pub alphabet: Alphabet,
    pub mu: Gen,
    /// `1 × (1+n)`.
    pub b3: GroupRingMatrix,
    /// `(1+n) × (n+1)`.
    pub b2: GroupRingMatrix,
    /// `(n+1) × 1`.
    pub b1: GroupRingMatrix,
    /// `(matrix, row, col)` of each zero-filled placeholder entry.
    pub placeholders: Vec<(&'static str, usize, usize)>,
}

impl MappingTorusComplex {
    pub fn note(&self) -> &'static str {
        "placeholder entries are zero-filled and not used by torsion evaluation"
    }
}

/// Boundary matrices of the mapping torus of `f` with stable letter `mu`.
pub fn mapping_torus_matrices(f: &FreeGroupEndo, mu: &str) -> Result<MappingTorusComplex> {
    let n = f.rank();
    let mut alphabet = f.alphabet.clone();
    let mu_gen = alphabet.push(mu)?;
    let mu_e = GroupRingElem::from_word(Word::generator(mu_gen));
    let one_minus_mu = &GroupRingElem::one() - &mu_e;
    let a = monodromy_jacobian(f);
    let mut placeholders = Vec::new();

    let mut b3 = GroupRingMatrix::zeros(1, 1 + n);
    b3.set(0, 0, one_minus_mu.clone());
    placeholders.extend((1..=n).map(|j| ("B3", 0, j)));

    let mut b2 = GroupRingMatrix::zeros(1 + n, n + 1);
    placeholders.extend((0..=n).map(|j| ("B2", 0, j)));
    for i in 0..n {
        for j in 0..n {
            let mut v = -&(&mu_e * a.get(i, j));
            if i == j {
                v = &v + &GroupRingElem::one();
            }
            b2.set(1 + i, j, v);
        }
        placeholders.push(("B2", 1 + i, n));
    }

    let mut b1 = GroupRingMatrix::zeros(n + 1, 1);
    b1.set(n, 0, one_minus_mu);
    placeholders.extend((0..n).map(|i| ("B1", i, 0)));

    Ok(MappingTorusComplex { alphabet, mu: mu_gen, b3, b2, b1, placeholders })
}

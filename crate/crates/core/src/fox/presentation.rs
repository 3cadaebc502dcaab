use std::collections::BTreeMap;

use num::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupring::{Alphabet, HomToZk, Word};

/// Where a presentation came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresentationKind {
    #[default]
    Generic,
    Wirtinger,
    Torus {
        p: i64,
        q: i64,
    },
}

/// A finite presentation `⟨g₁,…,g_k | r₁,…,r_m⟩`, optionally carrying a
/// homomorphism `φ` to `Z^r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    kind: PresentationKind,
    phi: Option<HomToZk>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<BTreeMap<String, Vec<i64>>>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>, kind: PresentationKind) -> Self {
        Presentation { alphabet, relators, kind, phi: None }
    }

    /// Attaches `φ`; fails unless every relator maps to zero.
    pub fn with_phi(mut self, images: Vec<Vec<i64>>) -> Result<Self> {
        if images.len() != self.num_generators() {
            return Err(Error::BadHomomorphism(format!(
                "{} images given for {} generators",
                images.len(),
                self.num_generators()
            )));
        }
        let rank = images.first().map_or(0, Vec::len);
        self.phi = Some(HomToZk::new(rank, images, &self.relators)?);
        Ok(self)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> &[String] {
        self.alphabet.names()
    }

    pub fn num_generators(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    pub fn phi(&self) -> Option<&HomToZk> {
        self.phi.as_ref()
    }

    pub fn deficiency(&self) -> i64 {
        self.num_generators() as i64 - self.relators.len() as i64
    }

    pub fn is_deficiency_one(&self) -> bool {
        self.deficiency() == 1
    }

    /// `φ` if attached, otherwise the map sending every generator to `1 ∈ Z`
    /// when that is well defined (as for meridional generators of a knot group).
    pub fn phi_or_meridional(&self) -> Result<HomToZk> {
        if let Some(h) = &self.phi {
            return Ok(h.clone());
        }
        HomToZk::new(1, vec![vec![1]; self.num_generators()], &self.relators)
    }

    /// Reads `{"generators": [...], "relators": [...], "phi": {name: [..]}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PresentationJson =
            serde_json::from_str(text).map_err(|e| Error::parse("presentation JSON", e.to_string()))?;
        let alphabet = Alphabet::new(&raw.generators)?;
        let relators = raw.relators.iter().map(|r| alphabet.parse_word(r)).collect::<Result<Vec<_>>>()?;
        let p = Presentation::new(alphabet, relators, PresentationKind::Generic);
        match raw.phi {
            None => Ok(p),
            Some(map) => {
                let mut images = Vec::with_capacity(p.num_generators());
                for name in p.generators() {
                    let v = map
                        .get(name)
                        .ok_or_else(|| Error::parse("presentation JSON", format!("phi has no value for `{name}`")))?;
                    images.push(v.clone());
                }
                if let Some(extra) = map.keys().find(|k| !p.alphabet.contains(k)) {
                    return Err(Error::parse("presentation JSON", format!("phi names unknown generator `{extra}`")));
                }
                p.with_phi(images)
            }
        }
    }

    pub fn to_json(&self) -> String {
        let raw = PresentationJson {
            generators: self.generators().to_vec(),
            relators: self.relators.iter().map(|r| r.display(&self.alphabet).to_string()).collect(),
            phi: self.phi.as_ref().map(|h| self.generators().iter().cloned().zip(h.images().iter().cloned()).collect()),
        };
        serde_json::to_string(&raw).expect("presentation serializes")
    }
}

/// `⟨x, y | x^p y^{-q}⟩` with `φ(x) = q`, `φ(y) = p`.
pub fn torus_presentation(p: i64, q: i64) -> Result<(Presentation, HomToZk)> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let alphabet = Alphabet::new(&["x", "y"])?;
    let rel = Word::power(0, p).mul(&Word::power(1, -q));
    let pres =
        Presentation::new(alphabet, vec![rel], PresentationKind::Torus { p, q }).with_phi(vec![vec![q], vec![p]])?;
    let phi = pres.phi().expect("attached above").clone();
    Ok((pres, phi))
}

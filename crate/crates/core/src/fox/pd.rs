use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupring::{Alphabet, Gen, Word};

use super::presentation::{Presentation, PresentationKind};

/// Planar diagram code: one `(i, j, k, l)` per crossing, listed
/// counterclockwise starting at the incoming under-strand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCode {
    #[serde(rename = "pd")]
    pub crossings: Vec<[u32; 4]>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller label as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }

    fn components(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

impl PdCode {
    pub fn new(crossings: Vec<[u32; 4]>) -> Self {
        PdCode { crossings }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse("PD JSON", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("PD serializes")
    }

    /// Number of edge labels, `2n` for `n` crossings.
    pub fn num_edges(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Checks that labels are exactly `1..=2n`, each used twice.
    pub fn validate(&self) -> Result<()> {
        let m = self.num_edges();
        let mut count = vec![0u32; m + 1];
        for c in &self.crossings {
            for &e in c {
                if e == 0 || e as usize > m {
                    return Err(Error::InvalidPd(format!("label {e} outside 1..={m}")));
                }
                count[e as usize] += 1;
            }
        }
        if let Some(e) = (1..=m).find(|&e| count[e] != 2) {
            return Err(Error::InvalidPd(format!("label {e} occurs {} times", count[e])));
        }
        Ok(())
    }

    /// Number of link components: edges joined through each crossing along
    /// the under-strand `i–k` and the over-strand `j–l`.
    pub fn num_components(&self) -> usize {
        if self.crossings.is_empty() {
            return 1;
        }
        let mut uf = UnionFind::new(self.num_edges());
        for &[i, j, k, l] in &self.crossings {
            uf.union(i as usize - 1, k as usize - 1);
            uf.union(j as usize - 1, l as usize - 1);
        }
        uf.components()
    }

    /// `+1` for a positive crossing, `-1` for a negative one.
    pub fn crossing_sign(&self, idx: usize) -> i64 {
        let [_, j, _, l] = self.crossings[idx];
        let (j, l) = (j as i64, l as i64);
        if j - l == 1 || l - j > 1 {
            1
        } else {
            -1
        }
    }
}

/// Wirtinger presentation of the knot group: one meridian generator per arc,
/// one conjugation relator per crossing, the last one dropped.
pub fn wirtinger_from_pd(pd: &PdCode) -> Result<Presentation> {
    pd.validate()?;
    if pd.crossings.is_empty() {
        let alphabet = Alphabet::new(&["a"])?;
        return Presentation::new(alphabet, vec![], PresentationKind::Wirtinger).with_phi(vec![vec![1]]);
    }
    let comps = pd.num_components();
    if comps != 1 {
        return Err(Error::MultiComponent(comps));
    }

    let m = pd.num_edges();
    let mut arcs = UnionFind::new(m);
    for &[_, j, _, l] in &pd.crossings {
        arcs.union(j as usize - 1, l as usize - 1);
    }
    // arcs numbered in order of their smallest edge label
    let mut arc_of_root = vec![usize::MAX; m];
    let mut n_arcs = 0;
    for e in 0..m {
        let r = arcs.find(e);
        if arc_of_root[r] == usize::MAX {
            arc_of_root[r] = n_arcs;
            n_arcs += 1;
        }
    }
    let mut arc = |e: u32| arc_of_root[arcs.find(e as usize - 1)] as Gen;

    let alphabet = Alphabet::numbered("a", n_arcs);
    let mut relators = Vec::with_capacity(pd.crossings.len());
    for (idx, &[i, j, k, _]) in pd.crossings.iter().enumerate() {
        let eps = pd.crossing_sign(idx);
        let (u_in, over, u_out) = (arc(i), arc(j), arc(k));
        let r = Word::power(u_out, -1)
            .mul(&Word::power(over, eps))
            .mul(&Word::generator(u_in))
            .mul(&Word::power(over, -eps));
        relators.push(r);
    }
    relators.pop();
    Presentation::new(alphabet, relators, PresentationKind::Wirtinger).with_phi(vec![vec![1]; n_arcs])
}

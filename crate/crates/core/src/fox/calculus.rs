use num::{BigRational, One};

use crate::groupring::{Gen, GroupRingElem, GroupRingMatrix, Word};

use super::presentation::Presentation;

/// The Fox derivative `∂w/∂g`.
///
/// A syllable `g^e` preceded by the prefix `u` contributes
/// `u(1 + g + … + g^{e-1})` for `e > 0` and `-u(g^{-1} + … + g^{e})` for `e < 0`.
pub fn fox_derivative(w: &Word, g: Gen) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    let mut prefix = Word::identity();
    for &(h, e) in w.syllables() {
        if h == g {
            if e > 0 {
                for k in 0..e {
                    out.add_term(prefix.mul(&Word::power(g, k)), BigRational::one());
                }
            } else {
                for k in 1..=-e {
                    out.add_term(prefix.mul(&Word::power(g, -k)), -BigRational::one());
                }
            }
        }
        prefix = prefix.mul(&Word::power(h, e));
    }
    out
}

/// Fox derivatives of `w` with respect to generators `0..n`.
pub fn fox_row(w: &Word, n: usize) -> Vec<GroupRingElem> {
    (0..n as Gen).map(|g| fox_derivative(w, g)).collect()
}

/// Rows indexed by relators, columns by generators.
pub fn jacobian(p: &Presentation) -> GroupRingMatrix {
    let n = p.num_generators();
    GroupRingMatrix::from_fn(p.relators().len(), n, |j, i| fox_derivative(&p.relators()[j], i as Gen))
}

use num::{BigRational, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fox::{jacobian, wirtinger_from_pd, PdCode, Presentation};
use crate::groupring::HomToZk;
use crate::laurent::{abelianize_matrix, one_var_roots, LaurentMatrix, LaurentPoly, RootData};
use crate::torsionfn::{equivalent, Factor, MaxMonomialFn, PosReal};
use crate::Exponent;

/// A knot given either as a PD code or as a presentation.
#[derive(Clone, Debug, PartialEq)]
pub enum KnotInput {
    Pd(PdCode),
    Presentation(Presentation),
}

impl KnotInput {
    /// `{"pd": [...]}` or a presentation object.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::parse("knot JSON", e.to_string()))?;
        if v.get("pd").is_some() {
            PdCode::from_json(text).map(KnotInput::Pd)
        } else {
            Presentation::from_json(text).map(KnotInput::Presentation)
        }
    }

    pub fn presentation(&self) -> Result<Presentation> {
        match self {
            KnotInput::Pd(pd) => wirtinger_from_pd(pd),
            KnotInput::Presentation(p) => Ok(p.clone()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            KnotInput::Pd(_) => "pd",
            KnotInput::Presentation(_) => "presentation",
        }
    }
}

impl From<PdCode> for KnotInput {
    fn from(pd: PdCode) -> Self {
        KnotInput::Pd(pd)
    }
}

impl From<Presentation> for KnotInput {
    fn from(p: Presentation) -> Self {
        KnotInput::Presentation(p)
    }
}

/// Abelianized Fox matrix of a deficiency-one presentation with one column
/// deleted.
#[derive(Clone, Debug)]
pub struct FoxSetup {
    pub presentation: Presentation,
    pub phi: HomToZk,
    /// `r × n` abelianized Jacobian.
    pub matrix: LaurentMatrix,
    pub deleted: usize,
    /// `γ(g_i)` for the deleted generator.
    pub deleted_image: Vec<i64>,
    /// `det` of `matrix` without column `deleted`.
    pub det: LaurentPoly,
}

impl FoxSetup {
    pub fn new(p: &Presentation) -> Result<Self> {
        if !p.is_deficiency_one() {
            return Err(Error::arg(format!(
                "a deficiency-one presentation is required ({} generators, {} relators)",
                p.num_generators(),
                p.relators().len()
            )));
        }
        let phi = p.phi_or_meridional()?;
        let deleted =
            (0..p.num_generators()).find(|&i| phi.image(i as u32).iter().any(|&x| x != 0)).ok_or_else(|| {
                Error::SingularSelection { which: "deleted column", msg: "every generator has trivial image".into() }
            })?;
        let matrix = abelianize_matrix(&jacobian(p), &phi)?;
        let det = matrix.delete(&[], &[deleted]).det()?;
        Ok(FoxSetup {
            presentation: p.clone(),
            deleted_image: phi.image(deleted as u32).to_vec(),
            phi,
            matrix,
            deleted,
            det,
        })
    }

    pub fn deleted_name(&self) -> &str {
        &self.presentation.generators()[self.deleted]
    }
}

/// `C · t^m · ∏ max(|a_i|, t)` for `p = C z^m ∏ (z − a_i)`: the function
/// `t ↦ m(p(tz))`.
pub fn fn_from_roots(roots: &RootData) -> MaxMonomialFn {
    let factors = roots
        .roots
        .iter()
        .map(|r| Factor {
            c: PosReal { value: r.modulus, exact: r.exact.clone() },
            e: Exponent::from_integer(r.multiplicity as i64),
        })
        .collect();
    let c = PosReal::exact(roots.lead.abs());
    let low = roots.lead.abs() * &roots.exact_product;
    MaxMonomialFn::new(c, Exponent::from_integer(roots.shift), factors).with_low_shadow(low)
}

/// Abelian torsion of a knot together with its ingredients.
#[derive(Clone, Debug)]
pub struct KnotTorsion {
    /// Representative with the monomial factor of the determinant removed.
    pub torsion: MaxMonomialFn,
    /// `torsion · t^{raw_shift}` is the value of the Fox-matrix formula.
    pub raw_shift: i64,
    /// Normalised Alexander polynomial.
    pub alexander: LaurentPoly,
    pub setup: FoxSetup,
    pub roots: Option<RootData>,
}

impl KnotTorsion {
    /// The function actually computed by the Fox-matrix formula.
    pub fn raw(&self) -> MaxMonomialFn {
        self.torsion.multiply(&MaxMonomialFn::t_pow(Exponent::from_integer(self.raw_shift)))
    }

    pub fn li_zhang(&self) -> MaxMonomialFn {
        self.torsion.multiply(&MaxMonomialFn::max_one_pow(Exponent::from_integer(1)))
    }
}

fn rank_one(setup: &FoxSetup) -> Result<i64> {
    match setup.deleted_image[..] {
        [v] => Ok(v),
        _ => Err(Error::Dimension(format!("knot torsion needs a homomorphism to Z, got rank {}", setup.phi.rank()))),
    }
}

/// `Δ = det(A_i) · (z − 1) / (z^{φ(g_i)} − 1)`, normalised.
pub fn alexander_from_setup(setup: &FoxSetup) -> Result<LaurentPoly> {
    let v = rank_one(setup)?;
    if setup.det.is_zero() {
        return Ok(LaurentPoly::zero(1));
    }
    let z_minus_1 = LaurentPoly::from_int_terms(1, &[(vec![1], 1), (vec![0], -1)]);
    let zv_minus_1 = LaurentPoly::from_int_terms(1, &[(vec![v], 1), (vec![0], -1)]);
    let num = &setup.det * &z_minus_1;
    let d = num
        .div_exact(&zv_minus_1)
        .ok_or_else(|| Error::arg("determinant is not divisible by the deleted-generator factor"))?;
    Ok(d.normalize_one_var())
}

pub fn alexander_polynomial(input: &KnotInput) -> Result<LaurentPoly> {
    alexander_from_setup(&FoxSetup::new(&input.presentation()?)?)
}

/// Abelian L²-Alexander torsion of a knot,
/// `C · ∏ max(|a_i|, t) · max(1, t^{φ(g_i)})^{-1}` where `C ∏ (z − a_i)` is
/// the column-deleted Fox determinant. A vanishing determinant gives the zero
/// function.
pub fn tau_knot_abelianization(input: &KnotInput) -> Result<KnotTorsion> {
    let setup = FoxSetup::new(&input.presentation()?)?;
    let v = rank_one(&setup)?;
    let alexander = alexander_from_setup(&setup)?;
    if setup.det.is_zero() {
        return Ok(KnotTorsion { torsion: MaxMonomialFn::zero(), raw_shift: 0, alexander, setup, roots: None });
    }
    let roots = one_var_roots(&setup.det)?;
    let correction = MaxMonomialFn::max_one_t_to(Exponent::from_integer(v)).powi(-1)?;
    let raw_shift = roots.shift;
    let torsion =
        fn_from_roots(&roots).multiply(&MaxMonomialFn::t_pow(Exponent::from_integer(-raw_shift))).multiply(&correction);
    Ok(KnotTorsion { torsion, raw_shift, alexander, setup, roots: Some(roots) })
}

/// `Δ^{(2)}` restricted to the abelian coefficient system:
/// the knot torsion times `max(1, t)`.
pub fn li_zhang(input: &KnotInput) -> Result<MaxMonomialFn> {
    Ok(tau_knot_abelianization(input)?.li_zhang())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnknotVerdict {
    ConsistentWithUnknot,
    NotUnknot,
}

impl UnknotVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            UnknotVerdict::ConsistentWithUnknot => "consistent-with-unknot",
            UnknotVerdict::NotUnknot => "not-unknot",
        }
    }
}

pub const UNKNOT_CAVEAT: &str = "abelian coefficients only give a necessary condition: \
every knot with trivial Alexander polynomial has this torsion";

#[derive(Clone, Debug)]
pub struct UnknotTest {
    pub verdict: UnknotVerdict,
    pub torsion: MaxMonomialFn,
    pub caveat: Option<&'static str>,
}

/// Compares the abelian torsion with `max(1, t)^{-1}`, the torsion of the unknot.
pub fn unknot_necessary_test(input: &KnotInput) -> Result<UnknotTest> {
    let torsion = tau_knot_abelianization(input)?.torsion;
    let unknot = MaxMonomialFn::max_one_pow(Exponent::from_integer(-1));
    Ok(if equivalent(&torsion, &unknot) {
        UnknotTest { verdict: UnknotVerdict::ConsistentWithUnknot, torsion, caveat: Some(UNKNOT_CAVEAT) }
    } else {
        UnknotTest { verdict: UnknotVerdict::NotUnknot, torsion, caveat: None }
    })
}

/// Leading and trailing coefficients are `±1`.
pub fn is_monic_poly(p: &LaurentPoly) -> bool {
    match p.dense_one_var() {
        Some((_, c)) => {
            let one = BigRational::from_integer(1.into());
            c.first().map(|x| x.abs()) == Some(one.clone()) && c.last().map(|x| x.abs()) == Some(one)
        }
        None => false,
    }
}

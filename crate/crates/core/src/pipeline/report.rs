use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torsionfn::MaxMonomialFn;

use super::knot::{tau_knot_abelianization, unknot_necessary_test, KnotInput};

/// Machine-readable summary of a torsion computation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub coefficient_system: String,
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry_exponent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry_parity_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander_polynomial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default)]
    pub certificates: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    pub caveats: Vec<String>,
}

impl TorsionReport {
    /// Report for an exact torsion function.
    pub fn for_function(coefficient_system: &str, input: &str, f: &MaxMonomialFn) -> Self {
        let degree = f.degree();
        let sym = f.symmetry_exponent();
        let parity = match (sym, f.degree_exact()) {
            (Some(s), Some(d)) if d.is_integer() => s.parity_matches(*d.numer()),
            _ => None,
        };
        TorsionReport {
            coefficient_system: coefficient_system.into(),
            input: input.into(),
            exact: Some(f.to_json_value()),
            display: Some(f.to_string()),
            degree: Some(serde_json::to_value(&degree).expect("serializes")),
            monic: Some(degree.monic),
            symmetry_exponent: sym.map(|s| crate::torsionfn::exponent_string(s.k)),
            symmetry_parity_ok: parity,
            ..Default::default()
        }
    }

    pub fn exact_fn(&self) -> Result<Option<MaxMonomialFn>> {
        self.exact.as_ref().map(MaxMonomialFn::from_json_value).transpose()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse("torsion report", e.to_string()))
    }

    pub fn certify(mut self, key: &str, value: impl Serialize) -> Self {
        self.certificates.insert(key.into(), serde_json::to_value(value).expect("serializes"));
        self
    }
}

pub const KNOT_SYSTEM: &str = "abelian: phi_K to Z (Fox calculus, Mahler measure)";

/// Full report for a knot: torsion, Alexander polynomial, unknot verdict.
pub fn knot_report(input: &KnotInput) -> Result<TorsionReport> {
    let kt = tau_knot_abelianization(input)?;
    let test = unknot_necessary_test(input)?;
    let mut r = TorsionReport::for_function(KNOT_SYSTEM, input.kind(), &kt.torsion);
    r.alexander_polynomial = Some(kt.alexander.to_string());
    r.verdict = Some(test.verdict.as_str().into());
    if let Some(c) = test.caveat {
        r.caveats.push(c.into());
    }
    r.caveats.push(
        "representative normalised so that the determinant has trailing exponent 0; torsion is defined up to t^r"
            .into(),
    );
    let r = r
        .certify("deleted_generator", kt.setup.deleted_name())
        .certify("deleted_image", &kt.setup.deleted_image)
        .certify("raw_shift", kt.raw_shift)
        .certify(
            "degree_vs_alexander",
            "deg tau = deg Delta - 1 (the breakpoint exponents sum to the number of roots minus one)",
        )
        .certify("li_zhang", kt.li_zhang().to_string());
    Ok(match &kt.roots {
        Some(roots) => r.certify("root_moduli", &roots.roots),
        None => r,
    })
}

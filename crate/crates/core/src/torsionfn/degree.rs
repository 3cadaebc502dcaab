use std::fmt;

use serde::{Serialize, Serializer};

/// An element of `R ∪ {±∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("+inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(x) => s.serialize_f64(*x),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// Degrees at `0` and `∞` and their difference.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeReport {
    pub deg0: ExtReal,
    pub deg_inf: ExtReal,
    pub deg: ExtReal,
    pub monomial_in_limit: bool,
    pub monic: bool,
}

impl DegreeReport {
    /// Report for the zero function.
    pub fn zero() -> Self {
        DegreeReport {
            deg0: ExtReal::PosInf,
            deg_inf: ExtReal::NegInf,
            deg: ExtReal::NegInf,
            monomial_in_limit: false,
            monic: false,
        }
    }
}

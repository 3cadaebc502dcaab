//! L²-Alexander torsion for knots and finitely presented 3-manifold groups
//! with abelian (and index-`d` virtually abelian) coefficient systems.
//!
//! The crate is organised bottom-up:
//!
//! * [`groupring`]: free-group words, group-ring arithmetic, ℓ¹ norms and
//!   growth-rate bounds for group-ring matrices.
//! * [`fox`]: Fox calculus, presentations, PD-code Wirtinger presentations,
//!   torus-knot presentations and mapping-torus chain matrices.
//! * [`laurent`]: exact multivariable Laurent polynomials, determinants,
//!   Newton widths and one-variable root moduli.
//! * [`mahler`]: Mahler measures (Jensen and torus quadrature) and the
//!   resulting Fuglede–Kadison determinants.
//! * [`torsionfn`]: exact max-monomial torsion functions and degree calculus.
//! * [`pipeline`]: end-to-end torsion computations and reports.

pub mod error;
pub mod fox;
pub mod groupring;
pub mod laurent;
pub mod mahler;
pub mod parallel;
pub mod pipeline;
pub mod torsionfn;

pub use error::{Error, Result};
pub use fox::{FreeGroupEndo, PdCode, Presentation, PresentationKind};
pub use groupring::{Alphabet, GroupRingElem, GroupRingMatrix, HomToZk, Word};
pub use laurent::{LaurentMatrix, LaurentPoly};
pub use mahler::{MahlerMethod, MahlerValue};
pub use parallel::Exec;
pub use torsionfn::{MaxMonomialFn, SampledFn};

/// Exact rational exponent used for torsion-function exponents and
/// reparametrisations.
pub type Exponent = num::rational::Rational64;

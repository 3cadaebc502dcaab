//! Fox calculus, presentations, Wirtinger presentations from PD codes,
//! torus-knot presentations, monodromy Jacobians and mapping-torus chain
//! matrices.

mod braid;
mod calculus;
mod endo;
mod pd;
mod presentation;

pub use braid::{pd_from_braid, torus_knot_pd};
pub use calculus::{fox_derivative, fox_row, jacobian};
pub use endo::{mapping_torus_matrices, monodromy_jacobian, FreeGroupEndo, MappingTorusComplex};
pub use pd::{wirtinger_from_pd, PdCode};
pub use presentation::{torus_presentation, Presentation, PresentationKind};

//! End-to-end torsion computations: chain-complex evaluators, knot torsion
//! via Fox calculus, closed forms, torsion handles, norms and reports.

mod closed;
mod complexes;
mod handle;
mod knot;
mod norm;
mod report;

pub use closed::{
    basiccase_check, jsj_product, spectral_radius, tau_fibered, tau_graph_manifold, tau_torus_knot, BasicCaseReport,
    BasicCaseRow, FiberedCertificate, Probe, Region, BASICCASE_TOL,
};
pub use complexes::{
    find_three_term_selection, find_two_term_selection, prepare_three_term, prepare_two_term, tau_three_term,
    tau_two_term, tau_two_term_with, PreparedRatio,
};
pub use handle::{tau_multivar, DegreeCertificate, Provenance, TorsionHandle, TorsionSampler};
pub use knot::{
    alexander_from_setup, alexander_polynomial, fn_from_roots, is_monic_poly, li_zhang, tau_knot_abelianization,
    unknot_necessary_test, FoxSetup, KnotInput, KnotTorsion, UnknotTest, UnknotVerdict, UNKNOT_CAVEAT,
};
pub use norm::{alexander_norm_from_poly, alexander_norm_report, NormEntry, NormReport};
pub use report::{knot_report, TorsionReport, KNOT_SYSTEM};

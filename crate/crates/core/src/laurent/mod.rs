//! Exact multivariable Laurent polynomials over `Q`, their matrices and
//! determinants, Newton-polytope widths and one-variable root moduli.

mod matrix;
mod newton;
mod parse;
mod poly;
mod roots;

pub use matrix::{abelianize_matrix, LaurentMatrix};
pub use newton::{newton_range, newton_width, newton_width_int};
pub use parse::{parse_poly, parse_poly_auto};
pub use poly::{abelianize, default_names, kappa_scale, kappa_scale_exact, LaurentPoly, RealLaurentPoly, MAX_EXPONENT};
pub use roots::{one_var_roots, RootData, RootModulus, RootSource};

pub(crate) use poly::fmt_rational;

//! Words in free groups, the integral/rational group ring, ℓ¹ norms and
//! growth-rate upper bounds for group-ring matrices.

mod element;
mod growth;
mod hom;
mod matrix;
mod word;

pub use element::{ring_mul, GroupRingElem};
pub use growth::{growth_rate_upper, growth_rate_upper_with_budget, GrowthBounds, NormedMatrix};
pub use hom::HomToZk;
pub use matrix::GroupRingMatrix;
pub use word::{free_reduce, Alphabet, Gen, Word};

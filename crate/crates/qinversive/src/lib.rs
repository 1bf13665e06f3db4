//! Inversive coordinates of oriented spheres, the Hermitian-matrix action of
//! 2x2 matrices over an order, and normalized coordinates.

mod coord;
mod error;
mod mat;
mod word;

pub use coord::{InvCoord, ScaledInv, SphereRecord};
pub use error::InvError;
pub use mat::{inv_u, Mat2};
pub use word::{congruent_to_seed, Letter, Word};

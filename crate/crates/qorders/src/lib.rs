//! Orders in imaginary quadratic fields and definite quaternion algebras,
//! their lattice geometry and covering vectors.

pub mod catalog;
pub mod covering;
mod error;
pub mod hilbert;
pub mod lattice;
pub mod order;

pub use covering::{is_covering_vector, normalize_covering_vector, CoveringData};
pub use error::OrderError;
pub use order::{quadratic_ring, ArithOrder};

//! Forbidden balls: spheres whose interior meets no sphere of the
//! super-packing, with symbolic and census certificates and the density
//! bounds they give.

pub mod ball;
pub mod bound;
pub mod catalog;
mod error;
pub mod residue;
pub mod verify;

pub use ball::{ghost_ball, ghost_circle, table_forbidden_ball, Construction, ForbiddenBall, GhostCircle, TableRef};
pub use bound::{density_upper_bound, strip_bound, DensityBound};
pub use error::ForbiddenError;
pub use residue::CongruenceClass;
pub use verify::{census_for, verify_forbidden, ForbiddenReport};

//! Exact rationals, algebra signatures and quaternion elements.

mod algebra;
mod elem;
mod error;
mod rational;
mod surd;

pub use algebra::{zero4, AlgebraSig, Coords, Involution};
pub use elem::QuatElem;
pub use error::ArithError;
pub use rational::{
    fmt_q, is_integer, parse_q, q, qf, qgcd, sqfree_part, to_f64, to_int, BigInt, Q,
};
pub use surd::Surd;

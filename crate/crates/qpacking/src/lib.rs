//! Censuses of the super-packing and the Apollonian-type packing attached to
//! a covering vector, with structural checks and exports.

pub mod census;
pub mod check;
mod error;
pub mod export;
pub mod frame;

pub use census::{
    boundary_planes, enumerate_apollonian, enumerate_superpacking, saturation_report, CensusEntry, CensusKind,
    CensusOptions, PackingCensus, Saturation, SaturationReport,
};
pub use error::PackError;

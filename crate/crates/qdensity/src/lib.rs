//! Covolumes, partial densities of Apollonian-type packings, bend-count
//! exponent fits and the density model.

mod error;
pub mod fit;
pub mod model;
pub mod partial;
pub mod report;
pub mod volume;

pub use error::DensityError;
pub use fit::{bend_census_fit, bend_gcd, fit_cumulative, AlphaFit, ALPHA_APOLLONIAN};
pub use model::{density_model, density_model_with_modulus, zeta, ModelPrediction};
pub use partial::{density_at, partial_density, series_density, DensityRow};
pub use report::{density_report, DensityReport, ReportOptions};
pub use volume::{cell_volume, closed_form2, gram_form2, CellVolume};

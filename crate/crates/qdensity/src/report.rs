use crate::error::DensityError;
use crate::fit::{bend_census_fit, bend_gcd, AlphaFit};
use crate::model::density_model_with_modulus;
use crate::partial::{partial_density, series_density, DensityRow};
use crate::volume::{cell_volume, CellVolume};
use qorders::catalog::{CatalogEntry, CatalogRecord};
use qpacking::{PackingCensus, Saturation};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusInfo {
    pub bend_bound: i64,
    pub depth: usize,
    pub spheres: usize,
    pub saturation: Saturation,
}

impl CensusInfo {
    fn of(c: &PackingCensus) -> Self {
        CensusInfo { bend_bound: c.bend_bound, depth: c.saturation.depth_reached, spheres: c.len(), saturation: c.saturation.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub cover: CatalogRecord,
    pub cell_volume: CellVolume,
    pub partial_density: Vec<DensityRow>,
    /// Same sum over the super-packing census, when one is supplied.
    pub series_density: Option<Vec<DensityRow>>,
    pub upper_bound: Option<f64>,
    pub alpha_fit: Option<AlphaFit>,
    /// Why no fit is present.
    pub fit_note: Option<String>,
    pub bend_gcd: i64,
    pub l: u32,
    /// Model density over c(Gamma_u), using the measured bend gcd as modulus.
    pub zeta_model_prediction: Option<f64>,
    pub census: CensusInfo,
    pub super_census: Option<CensusInfo>,
}

impl DensityReport {
    pub fn final_density(&self) -> f64 {
        self.partial_density.last().map_or(0.0, |r| r.density)
    }

    /// Monotone table, 0 <= density <= upper bound <= 1 (up to the error bound).
    pub fn consistent(&self) -> bool {
        let mono = self.partial_density.windows(2).all(|w| w[0].density <= w[1].density && w[0].t < w[1].t);
        let top = self.partial_density.last().map_or(0.0, |r| r.density - r.error);
        let ub = self.upper_bound.unwrap_or(1.0);
        mono && self.partial_density.iter().all(|r| r.density >= 0.0) && top <= ub && ub <= 1.0
    }
}

pub struct ReportOptions {
    pub table_ref: String,
    pub upper_bound: Option<f64>,
    pub lambda: u32,
}

/// Assemble the report from an Apollonian census and optionally a
/// super-packing census of the same cover.
pub fn density_report(apol: &PackingCensus, sup: Option<&PackingCensus>, opts: &ReportOptions) -> Result<DensityReport, DensityError> {
    if let Some(s) = sup {
        if s.cover.order.basis != apol.cover.order.basis || s.cover.u != apol.cover.u {
            return Err(DensityError::Domain("censuses belong to different covers".into()));
        }
    }
    let cover = &apol.cover;
    let counts = apol.bend_counts();
    let (g, l) = bend_gcd(&counts);
    let (fit, note) = match bend_census_fit(&counts, apol.bend_bound, opts.lambda) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let model = match &fit {
        Some(f) => density_model_with_modulus(cover, f.alpha, opts.lambda, g as f64).ok().map(|m| m.per_c),
        None => None,
    };
    let entry = CatalogEntry { cover: cover.clone(), table_ref: opts.table_ref.clone(), stated_discrd: None };
    Ok(DensityReport {
        cover: CatalogRecord::from_entry(&entry),
        cell_volume: cell_volume(cover)?,
        partial_density: partial_density(apol)?,
        series_density: sup.map(series_density).transpose()?,
        upper_bound: opts.upper_bound,
        alpha_fit: fit,
        fit_note: note,
        bend_gcd: g,
        l,
        zeta_model_prediction: model,
        census: CensusInfo::of(apol),
        super_census: sup.map(CensusInfo::of),
    })
}

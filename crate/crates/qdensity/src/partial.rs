use crate::error::DensityError;
use crate::volume::{cell_volume, unit_ball};
use num_traits::ToPrimitive;
use qarith::to_f64;
use qpacking::{CensusKind, PackingCensus};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    /// Normalized bend bound.
    pub t: i64,
    pub density: f64,
    /// Bound on the floating-point error of `density`.
    pub error: f64,
}

/// Neumaier summation.
#[derive(Default, Clone, Copy)]
struct Sum {
    s: f64,
    c: f64,
    abs: f64,
    n: usize,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
        self.abs += x.abs();
        self.n += 1;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }

    /// Compensated summation error plus a few roundings per term.
    fn error(&self) -> f64 {
        let e = f64::EPSILON;
        let n = self.n as f64;
        2.0 * e * self.value().abs() + (n * e) * (n * e) * self.abs + 8.0 * e * self.abs
    }
}

/// Interior volume per bend, grouped: (kappa, count * vol) in increasing kappa.
fn volume_terms(census: &PackingCensus) -> Vec<(i64, f64)> {
    let dim = census.cover.dim();
    let n = to_f64(&census.cover.nrm_q());
    let mut counts: Vec<(i64, usize)> = census.bend_counts().into_iter().filter(|(k, _)| *k > 0).collect();
    counts.sort();
    counts
        .par_iter()
        .map(|&(k, m)| {
            let r = n.sqrt() / k as f64;
            (k, m as f64 * unit_ball(dim) * r.powi(dim as i32 - 1))
        })
        .collect()
}

fn cumulative(census: &PackingCensus) -> Result<Vec<DensityRow>, DensityError> {
    let cell = cell_volume(&census.cover)?.value;
    let mut acc = Sum::default();
    let mut rows = vec![DensityRow { t: 0, density: 0.0, error: 0.0 }];
    for (k, v) in volume_terms(census) {
        acc.add(v);
        let err = acc.error() / cell + acc.value() / cell * 2.0 * f64::EPSILON;
        rows.push(DensityRow { t: k, density: acc.value() / cell, error: err });
    }
    Ok(rows)
}

/// Partial densities of an Apollonian census: for each bend present, the
/// interior volume of census spheres with bend at most that value over the
/// cell volume. The first row is T = 0 (planes only).
pub fn partial_density(census: &PackingCensus) -> Result<Vec<DensityRow>, DensityError> {
    if census.kind != CensusKind::Apollonian {
        return Err(DensityError::Malformed("partial density needs an Apollonian census".into()));
    }
    let planes = census.spheres().filter(|s| s.is_plane()).count();
    if planes != 2 {
        return Err(DensityError::Malformed(format!("expected the two boundary planes, found {planes}")));
    }
    if census.spheres().any(|s| !s.is_plane() && s.kappa.to_integer().to_i64().map_or(true, |k| k <= 0)) {
        return Err(DensityError::Malformed("non-positive bend in census".into()));
    }
    cumulative(census)
}

/// The series sum over a super-packing census (oriented spheres with
/// positive bend modulo the full lattice), on the same scale.
pub fn series_density(census: &PackingCensus) -> Result<Vec<DensityRow>, DensityError> {
    if census.kind != CensusKind::Super {
        return Err(DensityError::Malformed("series density needs a super-packing census".into()));
    }
    cumulative(census)
}

/// Density at bend bound `t` from a table.
pub fn density_at(table: &[DensityRow], t: i64) -> f64 {
    table.iter().take_while(|r| r.t <= t).last().map_or(0.0, |r| r.density)
}

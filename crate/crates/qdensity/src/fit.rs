use crate::error::DensityError;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// McMullen's constant for the Apollonian packing.
pub const ALPHA_APOLLONIAN: f64 = 1.30568;

/// Absolute floor on the disagreement tolerated between window halves.
const STABLE_FLOOR: f64 = 1e-3;
const SAMPLES: usize = 48;
const MIN_POINTS: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaFit {
    /// Slope of log N(T) against log T, times lambda.
    pub alpha: f64,
    pub lambda: u32,
    pub stderr: f64,
    /// alpha +- (2 stderr + the disagreement of the window halves).
    pub band: (f64, f64),
    pub window: (f64, f64),
    pub points: usize,
    /// RMS residual of the log-log fit.
    pub residual: f64,
    /// Fits on the lower and upper halves of the window.
    pub halves: (f64, f64),
}

struct Line {
    slope: f64,
    stderr: f64,
    rms: f64,
}

fn line(pts: &[(f64, f64)]) -> Line {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let ss: f64 = pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
    let dof = (n - 2.0).max(1.0);
    Line { slope, stderr: (ss / dof / sxx).sqrt(), rms: (ss / n).sqrt() }
}

/// Fit the growth exponent of a cumulative count table (T, N(T)).
/// The window starts at the earliest sample for which the slopes of its two
/// halves agree within two combined standard errors.
pub fn fit_cumulative(samples: &[(f64, f64)], lambda: u32) -> Result<AlphaFit, DensityError> {
    let pts: Vec<(f64, f64)> = samples.iter().filter(|s| s.0 > 0.0 && s.1 > 0.0).map(|s| (s.0.ln(), s.1.ln())).collect();
    if pts.len() < MIN_POINTS {
        return Err(DensityError::Unfittable(format!("{} usable samples", pts.len())));
    }
    let halves = |w: &[(f64, f64)]| {
        let h = w.len() / 2;
        (line(&w[..h]), line(&w[h..]))
    };
    let mut start = pts.len() - MIN_POINTS;
    for s in 0..=pts.len() - MIN_POINTS {
        let (a, b) = halves(&pts[s..]);
        let tol = (2.0 * a.stderr.hypot(b.stderr)).max(STABLE_FLOOR);
        if (a.slope - b.slope).abs() <= tol {
            start = s;
            break;
        }
    }
    let w = &pts[start..];
    let l = line(w);
    let (a, b) = halves(w);
    let lam = lambda as f64;
    let alpha = l.slope * lam;
    let half = (2.0 * l.stderr + (a.slope - b.slope).abs()) * lam;
    Ok(AlphaFit {
        alpha,
        lambda,
        stderr: l.stderr * lam,
        band: (alpha - half, alpha + half),
        window: (w[0].0.exp(), w[w.len() - 1].0.exp()),
        points: w.len(),
        residual: l.rms,
        halves: (a.slope * lam, b.slope * lam),
    })
}

/// Exponent fit from counts by bend, complete up to `bend_bound`.
/// Cumulative counts are sampled at bends near log-spaced targets, starting
/// from the tenth distinct bend.
pub fn bend_census_fit(counts: &BTreeMap<i64, usize>, bend_bound: i64, lambda: u32) -> Result<AlphaFit, DensityError> {
    let counts: Vec<(i64, usize)> = counts.iter().filter(|(k, m)| **k > 0 && **k <= bend_bound && **m > 0).map(|(k, m)| (*k, *m)).collect();
    if counts.len() < 10 {
        return Err(DensityError::Unfittable(format!("{} distinct bends", counts.len())));
    }
    let mut cum = Vec::with_capacity(counts.len());
    let mut acc = 0usize;
    for (k, m) in &counts {
        acc += m;
        cum.push((*k as f64, acc as f64));
    }
    let first = cum.iter().position(|c| c.1 >= 10.0).unwrap_or(0).max(9);
    let t0 = cum[first].0;
    let t1 = bend_bound as f64;
    if t1 <= t0 {
        return Err(DensityError::Unfittable("bend range too short".into()));
    }
    // the largest bend below each log-spaced target
    let mut samples: Vec<(f64, f64)> = vec![];
    for j in 0..SAMPLES {
        let t = t0 * (t1 / t0).powf(j as f64 / (SAMPLES - 1) as f64);
        if let Some(c) = cum.iter().take_while(|c| c.0 <= t * (1.0 + 1e-12)).last() {
            if samples.last() != Some(c) {
                samples.push(*c);
            }
        }
    }
    fit_cumulative(&samples, lambda)
}

/// gcd of the observed positive bends and its exponent of 2 (the l of the
/// bend lattice 2^l Z).
pub fn bend_gcd(counts: &BTreeMap<i64, usize>) -> (i64, u32) {
    let g = counts.keys().filter(|k| **k > 0).fold(0i64, |g, k| g.gcd(k));
    (g, if g == 0 { 0 } else { g.trailing_zeros() })
}

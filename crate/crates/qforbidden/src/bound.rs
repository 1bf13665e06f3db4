use crate::ball::ForbiddenBall;
use crate::error::ForbiddenError;
use qarith::to_f64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// The closed-form strip estimate for a dim-3 ghost circle: leftover area
/// of the fundamental cell outside the ball, its ratio to the cell area,
/// and the leading term of leftover as d grows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripBound {
    pub d: i64,
    pub leftover: f64,
    pub cell_area: f64,
    pub ratio: f64,
    /// 4 / sqrt(d) or 6 / sqrt(d).
    pub leading: f64,
}

/// Leftover strip area for |disc| = d. None where the formula has no real
/// value (small d).
pub fn strip_bound(d: i64) -> Option<StripBound> {
    let df = d as f64;
    let cell_area = df.sqrt() / 2.0;
    let (leftover, leading) = if d % 4 == 0 {
        if d < 16 {
            return None;
        }
        (2.0 * (df.sqrt() / 4.0 - (df - 16.0).sqrt() / 4.0), 4.0 / df.sqrt())
    } else if d % 2 == 1 {
        let disc = df * (df * df - 22.0 * df - 7.0);
        if disc < 0.0 {
            return None;
        }
        (df.sqrt() / 2.0 - 2.0 * disc.sqrt() / (4.0 * (df + 1.0)), 6.0 / df.sqrt())
    } else {
        return None;
    };
    Some(StripBound { d, leftover, cell_area, ratio: leftover / cell_area, leading })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityBound {
    /// 1 - vol(union of lattice translates of the ball, mod the lattice) / covolume.
    pub value: f64,
    pub covered_fraction: f64,
    /// Grid rows per transverse axis of the quadrature.
    pub grid: usize,
    pub strip: Option<StripBound>,
}

/// Volume fraction of the fundamental cell not covered by translates of
/// the ball, by exact chord lengths along the first basis direction and a
/// midpoint rule across the others.
pub fn density_upper_bound(ball: &ForbiddenBall) -> Result<DensityBound, ForbiddenError> {
    let sig = ball.cover.sig();
    let r = sig.plus_rank();
    let met: Vec<f64> = sig.metric().iter().map(|m| to_f64(m).sqrt()).collect();
    let emb = |x: &qarith::Coords| -> Vec<f64> { (0..r).map(|k| to_f64(&x[k]) * met[k]).collect() };
    let basis: Vec<Vec<f64>> = ball.cover.plus_basis.iter().map(emb).collect();
    let c = emb(&ball.center());
    let rho2 = to_f64(&ball.radius2());
    let rho = rho2.sqrt();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let gram: Vec<Vec<f64>> = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
    let gi = invert(&gram).ok_or_else(|| ForbiddenError::Domain("degenerate lattice".into()))?;
    // lattice coordinates of the center and the extent of the ball in them
    let bc: Vec<f64> = (0..r).map(|i| dot(&basis[i], &c)).collect();
    let t: Vec<f64> = (0..r).map(|i| (0..r).map(|j| gi[i][j] * bc[j]).sum()).collect();
    let ext: Vec<f64> = (0..r).map(|i| rho * gi[i][i].sqrt()).collect();
    let ranges: Vec<(i64, i64)> =
        (0..r).map(|i| ((-t[i] - ext[i]).floor() as i64 - 1, (1.0 - t[i] + ext[i]).ceil() as i64 + 1)).collect();
    let mut centers: Vec<Vec<f64>> = vec![c.clone()];
    for (i, &(lo, hi)) in ranges.iter().enumerate() {
        let mut next = vec![];
        for p in &centers {
            for m in lo..=hi {
                next.push(p.iter().zip(&basis[i]).map(|(x, e)| x + m as f64 * e).collect());
            }
        }
        centers = next;
    }
    let grid: usize = match r {
        2 => 200_000,
        3 => 300,
        _ => 40,
    };
    let rows = grid.pow((r - 1) as u32);
    let e1 = &basis[0];
    let a = dot(e1, e1);
    let covered: f64 = (0..rows)
        .into_par_iter()
        .map(|idx| {
            let mut q = vec![0.0; r];
            let mut rest = idx;
            for e in basis.iter().skip(1) {
                let s = ((rest % grid) as f64 + 0.5) / grid as f64;
                rest /= grid;
                for k in 0..r {
                    q[k] += s * e[k];
                }
            }
            let mut iv: Vec<(f64, f64)> = vec![];
            for cc in &centers {
                let d: Vec<f64> = q.iter().zip(cc).map(|(x, y)| x - y).collect();
                let b = dot(e1, &d);
                let cq = dot(&d, &d) - rho2;
                let disc = b * b - a * cq;
                if disc <= 0.0 {
                    continue;
                }
                let sq = disc.sqrt();
                let (lo, hi) = (((-b - sq) / a).max(0.0), ((-b + sq) / a).min(1.0));
                if hi > lo {
                    iv.push((lo, hi));
                }
            }
            union_len(&mut iv)
        })
        .sum::<f64>()
        / rows as f64;
    let strip = match &ball.table_ref {
        crate::ball::TableRef::Dim3GhostEven { d } | crate::ball::TableRef::Dim3GhostOdd { d } => strip_bound(*d),
        _ => None,
    };
    Ok(DensityBound { value: 1.0 - covered, covered_fraction: covered, grid, strip })
}

fn union_len(iv: &mut [(f64, f64)]) -> f64 {
    iv.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut total = 0.0;
    let mut cur: Option<(f64, f64)> = None;
    for &(lo, hi) in iv.iter() {
        match cur {
            Some((a, b)) if lo <= b => cur = Some((a, b.max(hi))),
            Some((a, b)) => {
                total += b - a;
                cur = Some((lo, hi));
            }
            None => cur = Some((lo, hi)),
        }
    }
    if let Some((a, b)) = cur {
        total += b - a;
    }
    total
}

fn invert(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        let p = a[col][col];
        a[col].iter_mut().for_each(|x| *x /= p);
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                let pr = a[col].clone();
                a[r].iter_mut().zip(&pr).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

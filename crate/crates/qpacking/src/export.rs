use crate::census::{CensusKind, PackingCensus, Saturation};
use crate::error::PackError;
use qarith::to_f64;
use qinversive::SphereRecord;
use qorders::catalog::CatalogRecord;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusHeader {
    pub cover: CatalogRecord,
    pub kind: CensusKind,
    pub bend_bound: i64,
    pub counts: BTreeMap<i64, usize>,
    pub total: usize,
    pub saturation: Saturation,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusLine {
    #[serde(flatten)]
    pub sphere: SphereRecord,
    pub depth: usize,
    pub word: String,
}

/// JSON lines: a header, then one record per sphere.
pub fn census_jsonl(c: &PackingCensus, table_ref: &str) -> Result<String, PackError> {
    let entry = qorders::catalog::CatalogEntry { cover: c.cover.clone(), table_ref: table_ref.into(), stated_discrd: None };
    let header = CensusHeader {
        cover: CatalogRecord::from_entry(&entry),
        kind: c.kind,
        bend_bound: c.bend_bound,
        counts: c.bend_counts(),
        total: c.len(),
        saturation: c.saturation.clone(),
    };
    let js = |e: serde_json::Error| PackError::Domain(e.to_string());
    let mut out = serde_json::to_string(&header).map_err(js)?;
    out.push('\n');
    let n = c.cover.nrm_q();
    for (i, e) in c.entries.iter().enumerate() {
        let line = CensusLine { sphere: e.sphere.record(c.sig(), &n), depth: e.depth, word: c.word(i).describe() };
        out.push_str(&serde_json::to_string(&line).map_err(js)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_census_jsonl(s: &str) -> Result<(CensusHeader, Vec<CensusLine>), PackError> {
    let js = |e: serde_json::Error| PackError::Domain(e.to_string());
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header: CensusHeader = serde_json::from_str(lines.next().ok_or_else(|| PackError::Domain("empty census".into()))?).map_err(js)?;
    let body = lines.map(|l| serde_json::from_str(l).map_err(js)).collect::<Result<Vec<CensusLine>, _>>()?;
    Ok((header, body))
}

#[derive(Clone, Debug)]
pub struct SvgOptions {
    pub cells: usize,
    pub stroke: f64,
    pub color_by_bend: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { cells: 3, stroke: 0.004, color_by_bend: true }
    }
}

/// Picture of a dim-3 Apollonian census over `cells` translates of the
/// fundamental strip segment.
pub fn census_svg(c: &PackingCensus, opt: &SvgOptions) -> Result<String, PackError> {
    if c.cover.dim() != 3 || c.kind != CensusKind::Apollonian {
        return Err(PackError::Domain("svg export needs a dim-3 Apollonian census".into()));
    }
    let sig = c.sig();
    let n = c.cover.nrm_q();
    // translation vector of the strip, as a float vector in the picture frame
    let s0 = c.cover.su_basis[0].clone();
    let met = sig.metric();
    let sv = [to_f64(&s0[0]) * to_f64(&met[0]).sqrt(), to_f64(&s0[1]) * to_f64(&met[1]).sqrt()];
    let tau = &c.cover.tau;
    let tv = [to_f64(&tau[0]) * to_f64(&met[0]).sqrt(), to_f64(&tau[1]) * to_f64(&met[1]).sqrt()];
    let cells = opt.cells.max(1) as f64;
    let xs = [0.0, sv[0] * cells, tv[0], tv[0] + sv[0] * cells];
    let ys = [0.0, sv[1] * cells, tv[1], tv[1] + sv[1] * cells];
    let fmin = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
    let fmax = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (x0, x1, y0, y1) = (fmin(&xs), fmax(&xs), fmin(&ys), fmax(&ys));
    let pad = 0.05 * (x1 - x0).max(y1 - y0);
    let kmax = c.bend_bound.max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        x0 - pad,
        -(y1 + pad),
        x1 - x0 + 2.0 * pad,
        y1 - y0 + 2.0 * pad
    );
    let _ = writeln!(out, r#"<g fill="none" stroke-width="{}">"#, opt.stroke);
    for (a, b) in [([0.0, 0.0], sv), (tv, [tv[0] + sv[0], tv[1] + sv[1]])] {
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000"/>"##,
            a[0] - sv[0],
            -(a[1] - sv[1]),
            a[0] + (b[0] - a[0]) * (cells + 1.0),
            -(a[1] + (b[1] - a[1]) * (cells + 1.0))
        );
    }
    for s in c.non_planes() {
        let (ctr, r) = s.float_geometry(sig, &n);
        let k = to_f64(&s.kappa);
        let col = if opt.color_by_bend {
            let h = 240.0 * (1.0 - (k / kmax).sqrt().min(1.0));
            format!("hsl({h:.0},70%,40%)")
        } else {
            "#000".into()
        };
        for m in 0..opt.cells.max(1) {
            let m = m as f64;
            let _ = writeln!(
                out,
                r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" stroke="{}"/>"#,
                ctr[0] + m * sv[0],
                -(ctr[1] + m * sv[1]),
                r,
                col
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

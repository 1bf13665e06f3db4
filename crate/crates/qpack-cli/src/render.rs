use qarith::{to_f64, Coords};
use qpacking::export::census_svg;
use qpacking::PackingCensus;
use std::fmt::Write;

pub use qpacking::export::SvgOptions;

fn frame(c: &PackingCensus, x: &Coords) -> Vec<f64> {
    let met = c.sig().metric();
    (0..c.cover.dim() as usize - 1).map(|t| to_f64(&x[t]) * to_f64(&met[t]).abs().sqrt()).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(a: Vec<f64>) -> Vec<f64> {
    let l = dot(&a, &a).sqrt();
    a.into_iter().map(|x| x / l).collect()
}

/// Cross-section of a dim-4 or dim-5 Apollonian census by the plane through
/// the origin spanned by the first S_u lattice vector and u.
pub fn slice_svg(c: &PackingCensus, opt: &SvgOptions) -> String {
    let n = c.cover.nrm_q();
    let e1 = unit(frame(c, &c.cover.su_basis[0]));
    let e2 = unit(frame(c, &c.cover.u));
    let lat: Vec<Vec<f64>> = c.cover.su_basis.iter().map(|s| frame(c, s)).collect();
    let width = dot(&frame(c, &c.cover.tau), &e2);
    let len = dot(&lat[0], &e1) * opt.cells.max(1) as f64;
    let m = opt.cells as i64 + 2;
    let kmax = c.bend_bound.max(1) as f64;
    let mut out = String::new();
    let pad = 0.05 * len.max(width);
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#, -pad, -(width + pad), len + 2.0 * pad, width + 2.0 * pad);
    let _ = writeln!(out, r#"<g fill="none" stroke-width="{}">"#, opt.stroke);
    for y in [0.0, width] {
        let _ = writeln!(out, r##"<line x1="0" y1="{}" x2="{len}" y2="{}" stroke="#000"/>"##, -y, -y);
    }
    let side = (2 * m + 1) as usize;
    for idx in 0..side.pow(lat.len() as u32) {
        let mut rest = idx;
        let coef: Vec<i64> = (0..lat.len())
            .map(|_| {
                let d = (rest % side) as i64 - m;
                rest /= side;
                d
            })
            .collect();
        for s in c.non_planes() {
            let (ctr, r) = s.float_geometry(c.sig(), &n);
            let mut p = ctr.clone();
            for (k, v) in lat.iter().enumerate() {
                for t in 0..p.len() {
                    p[t] += coef[k] as f64 * v[t];
                }
            }
            let (x, y) = (dot(&p, &e1), dot(&p, &e2));
            let d2 = dot(&p, &p) - x * x - y * y;
            if d2 >= r * r || x + r < 0.0 || x - r > len {
                continue;
            }
            let k = to_f64(&s.kappa);
            let col = if opt.color_by_bend { format!("hsl({:.0},70%,40%)", 240.0 * (1.0 - (k / kmax).sqrt().min(1.0))) } else { "#000".into() };
            let _ = writeln!(out, r#"<circle cx="{x:.6}" cy="{:.6}" r="{:.6}" stroke="{col}"/>"#, -y, (r * r - d2).sqrt());
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn svg(c: &PackingCensus, opt: &SvgOptions) -> Result<String, qpacking::PackError> {
    if c.cover.dim() == 3 {
        census_svg(c, opt)
    } else {
        Ok(slice_svg(c, opt))
    }
}

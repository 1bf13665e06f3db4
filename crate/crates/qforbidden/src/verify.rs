use crate::ball::{Construction, ForbiddenBall, TableRef};
use crate::bound::density_upper_bound;
use crate::error::ForbiddenError;
use crate::residue::{min_abs_class, CongruenceClass};
use qarith::{fmt_q, Coords, Q};
use qinversive::{InvCoord, SphereRecord};
use qorders::catalog::{CatalogEntry, CatalogRecord};
use qorders::lattice::Lat;
use qpacking::frame::pairing_gcd;
use qpacking::{enumerate_superpacking, CensusKind, CensusOptions, PackingCensus};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScaledRecord {
    pub scale2: String,
    pub base: SphereRecord,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ForbiddenReport {
    pub cover: CatalogRecord,
    pub table_ref: TableRef,
    pub construction: Construction,
    pub inv: ScaledRecord,
    pub congruence_class: CongruenceClass,
    pub symbolic_pass: bool,
    /// Census spheres scanned (classes modulo the lattice).
    pub empirical_scanned: usize,
    /// Individual translates compared exactly.
    pub translates_checked: usize,
    pub empirical_failures: usize,
    /// Census values outside the symbolic class (expected: none).
    pub class_disagreements: usize,
    pub empirical_pass: bool,
    pub census_bend_bound: i64,
    pub density_upper_bound: Option<f64>,
}

impl ForbiddenReport {
    pub fn pass(&self) -> bool {
        self.symbolic_pass && self.empirical_pass && self.class_disagreements == 0
    }
}

fn sub(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|k| &a[k] - &b[k])
}

struct Scan {
    checked: usize,
    failures: usize,
    disagreements: usize,
}

/// Exact comparison of one census sphere and every translate of it that
/// could come near the ball. Translates farther than the sum of radii are
/// disjoint from the ball and have b < -nrm(u).
fn scan_sphere(ball: &ForbiddenBall, lat: &Lat, gens: &[Coords], s: &InvCoord) -> Scan {
    let sig = ball.cover.sig();
    let n = ball.cover.nrm_q();
    let base = &ball.inv.base;
    let s2 = &ball.inv.scale2;
    let class = &ball.congruence_class;
    let fails = |x: &Q| s2 * x * x <= &n * &n;
    if s.is_plane() {
        // b(G, T_w P) = b(G, P) - kappa_G <w, xi_P>, and 2<w, xi_P> runs over gZ
        let b0 = base.b_form(sig, s).expect("normalized");
        let (g, _) = pairing_gcd(sig, gens, &s.xi);
        let m = &base.kappa * &g / Q::from_integer(2.into());
        let mn = min_abs_class(&b0, &m);
        return Scan { checked: 1, failures: usize::from(fails(&mn)), disagreements: usize::from(!class.contains_base(&b0)) };
    }
    let cg = ball.center();
    let cs = s.center().expect("not a plane");
    let r2 = ball.radius2() + &n / (&s.kappa * &s.kappa);
    let reach = r2 * Q::from_integer(3.into());
    let mut scan = Scan { checked: 0, failures: 0, disagreements: 0 };
    for (_, w) in lat.points_near(sig, &sub(&cg, &cs), &reach) {
        let t = s.translate(sig, &w);
        let b = base.b_form(sig, &t).expect("normalized");
        scan.checked += 1;
        scan.failures += usize::from(fails(&b));
        scan.disagreements += usize::from(!class.contains_base(&b));
    }
    scan
}

/// Symbolic certificate plus an exact scan of a super-packing census.
pub fn verify_forbidden(ball: &ForbiddenBall, census: &PackingCensus) -> Result<ForbiddenReport, ForbiddenError> {
    if census.kind != CensusKind::Super {
        return Err(ForbiddenError::Domain("verification needs a super-packing census".into()));
    }
    if census.cover.order.basis != ball.cover.order.basis || census.cover.u != ball.cover.u {
        return Err(ForbiddenError::Domain("census and ball belong to different covers".into()));
    }
    let sig = ball.cover.sig();
    let gens = ball.cover.full_basis();
    let lat = Lat::new(sig, gens.clone());
    let scans: Vec<Scan> = census.spheres().collect::<Vec<_>>().par_iter().map(|s| scan_sphere(ball, &lat, &gens, s)).collect();
    let (mut checked, mut failures, mut disagreements) = (0, 0, 0);
    for s in &scans {
        checked += s.checked;
        failures += s.failures;
        disagreements += s.disagreements;
    }
    let n = ball.cover.nrm_q();
    let entry = CatalogEntry { cover: ball.cover.clone(), table_ref: ball.table_ref.to_string(), stated_discrd: None };
    let bound = density_upper_bound(ball).ok().map(|b| b.value);
    Ok(ForbiddenReport {
        cover: CatalogRecord::from_entry(&entry),
        table_ref: ball.table_ref.clone(),
        construction: ball.construction.clone(),
        inv: ScaledRecord { scale2: fmt_q(&ball.inv.scale2), base: ball.inv.base.record(sig, &n) },
        congruence_class: ball.congruence_class.clone(),
        symbolic_pass: ball.symbolic_pass(),
        empirical_scanned: census.len(),
        translates_checked: checked,
        empirical_failures: failures,
        class_disagreements: disagreements,
        empirical_pass: failures == 0,
        census_bend_bound: census.bend_bound,
        density_upper_bound: bound,
    })
}

/// Super-packing census of the ball's cover with at least `min_len`
/// spheres, growing the bend bound from a few multiples of nrm(u).
pub fn census_for(ball: &ForbiddenBall, min_len: usize) -> Result<PackingCensus, ForbiddenError> {
    let n = qarith::to_int(&ball.cover.nrm_q()).and_then(|x| i64::try_from(x).ok()).unwrap_or(1).max(1);
    let mut b = 4 * n;
    loop {
        let c = enumerate_superpacking(&ball.cover, &CensusOptions::new(b))?;
        if c.len() >= min_len {
            return Ok(c);
        }
        if b > 1 << 24 {
            return Err(ForbiddenError::Domain(format!("census stays below {min_len} spheres")));
        }
        b += b / 2;
    }
}

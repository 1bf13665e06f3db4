use crate::census::{boundary_planes, frame_for, CensusKind, PackingCensus};
use num_traits::Zero;
use qarith::{AlgebraSig, Coords, Q};
use qinversive::{congruent_to_seed, InvCoord};
use qorders::lattice::Lat;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

fn add(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|k| &a[k] + &b[k])
}

fn sub(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|k| &a[k] - &b[k])
}

fn scale(a: &Coords, r: &Q) -> Coords {
    std::array::from_fn(|k| &a[k] * r)
}

/// Entries failing inv_u = (0, 0, u) mod nrm(u). Apollonian entries are
/// accepted in either orientation.
pub fn congruence_failures(c: &PackingCensus) -> Vec<usize> {
    let n = c.cover.nrm_q();
    let plus = c.cover.full_basis();
    let u = &c.cover.u;
    (0..c.len())
        .into_par_iter()
        .filter(|&i| {
            let s = &c.entries[i].sphere;
            let ok = congruent_to_seed(s, u, &n, &plus)
                || (c.kind == CensusKind::Apollonian && congruent_to_seed(&s.flip(), u, &n, &plus));
            !ok
        })
        .collect()
}

/// Pairs whose b-form is not in nrm(u) + (nrm(u)^2 / 2) Z.
pub fn internal_intersection_failures(c: &PackingCensus) -> Vec<(usize, usize)> {
    let sig = c.sig();
    let n = c.cover.nrm_q();
    let m = &n * &n / Q::from_integer(2.into());
    let sp: Vec<&InvCoord> = c.spheres().collect();
    (0..sp.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut bad = vec![];
            for j in i..sp.len() {
                let b = sp[i].b_form(sig, sp[j]).expect("same normalization");
                if !((b - &n) / &m).is_integer() {
                    bad.push((i, j));
                }
            }
            bad
        })
        .collect()
}

/// Census keys whose image under z -> -conj(z) is missing.
pub fn symmetry_missing(c: &PackingCensus) -> Vec<usize> {
    let sig = c.sig();
    let f = c.frame();
    (0..c.len())
        .into_par_iter()
        .filter(|&i| {
            let m = f.canonical(sig, &c.entries[i].sphere.mirror(sig)).0;
            !c.contains(&m)
        })
        .collect()
}

/// Apollonian spheres (bend within the super census bound) whose class
/// modulo the full lattice is missing from the super census in both
/// orientations.
pub fn apollonian_not_in_super(apol: &PackingCensus, sup: &PackingCensus) -> Vec<usize> {
    let sig = sup.sig();
    let f = frame_for(&sup.cover, CensusKind::Super);
    let b = Q::from_integer(sup.bend_bound.into());
    (0..apol.len())
        .into_par_iter()
        .filter(|&i| {
            let s = &apol.entries[i].sphere;
            if s.kappa > b {
                return false;
            }
            let a = f.canonical(sig, s).0;
            let fl = f.canonical(sig, &s.flip()).0;
            !sup.contains(&a) && !sup.contains(&fl)
        })
        .collect()
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PackingReport {
    pub spheres: usize,
    pub pairs_checked: usize,
    /// Pairs with overlapping interiors, including spheres crossing a plane.
    pub overlaps: usize,
    pub tangencies: usize,
    /// Tangency points not lying on both spheres (expected: none).
    pub bad_points: usize,
    /// Tangency points shared by a third sphere (expected: none).
    pub non_immediate: usize,
    pub planes_tangent_at_infinity: bool,
    pub negative_bends: usize,
    pub stray_planes: usize,
}

impl PackingReport {
    pub fn ok(&self) -> bool {
        self.overlaps == 0
            && self.bad_points == 0
            && self.non_immediate == 0
            && self.planes_tangent_at_infinity
            && self.negative_bends == 0
            && self.stray_planes == 0
    }
}

fn on_sphere(sig: &AlgebraSig, n: &Q, s: &InvCoord, p: &Coords) -> bool {
    if s.is_plane() {
        sig.dot(p, &s.xi) * Q::from_integer(2.into()) == s.kappa_p
    } else {
        let c = s.center().unwrap();
        sig.nrm(&sub(p, &c)) * &s.kappa * &s.kappa == *n
    }
}

/// Exact pairwise checks on an Apollonian census: disjoint interiors
/// (b <= -nrm(u) for every pair, translates included), tangency points on
/// both spheres, and no third sphere through a tangency point.
pub fn packing_report(c: &PackingCensus) -> PackingReport {
    assert_eq!(c.kind, CensusKind::Apollonian);
    let sig = c.sig();
    let n = c.cover.nrm_q();
    let lam = Lat::new(sig, c.cover.su_basis.clone());
    let (p0, p1) = boundary_planes(&c.cover);
    let sp: Vec<&InvCoord> = c.spheres().collect();
    let zero = qarith::zero4();

    // (pairs, overlaps, tangency points)
    let per: Vec<(usize, usize, Vec<(usize, usize, Coords, Coords)>)> = (0..sp.len())
        .into_par_iter()
        .map(|i| {
            let si = sp[i];
            let mut pairs = 0;
            let mut over = 0;
            let mut tang = vec![];
            if si.is_plane() {
                return (0, 0, tang);
            }
            let ci = si.center().unwrap();
            for pl in [&p0, &p1] {
                pairs += 1;
                let b = si.b_form(sig, pl).unwrap();
                if b > -n.clone() {
                    over += 1;
                } else if b == -n.clone() {
                    let p = add(&ci, &scale(&pl.xi, &(Q::from_integer(1.into()) / &si.kappa)));
                    let j = sp.iter().position(|s| *s == pl).expect("boundary planes are stored");
                    tang.push((i, j, zero.clone(), p));
                }
            }
            for j in i..sp.len() {
                let sj = sp[j];
                if sj.is_plane() {
                    continue;
                }
                let cj = sj.center().unwrap();
                let r = Q::from_integer(1.into()) / &si.kappa + Q::from_integer(1.into()) / &sj.kappa;
                let r2 = &r * &r * &n;
                for (_, w) in lam.points_near(sig, &sub(&ci, &cj), &r2) {
                    if i == j && w.iter().all(Zero::is_zero) {
                        continue;
                    }
                    pairs += 1;
                    let t = sj.translate(sig, &w);
                    let b = si.b_form(sig, &t).unwrap();
                    if b > -n.clone() {
                        over += 1;
                    } else if b == -n.clone() {
                        let ct = add(&cj, &w);
                        let p = scale(
                            &add(&scale(&ci, &si.kappa), &scale(&ct, &sj.kappa)),
                            &(Q::from_integer(1.into()) / (&si.kappa + &sj.kappa)),
                        );
                        tang.push((i, j, w, p));
                    }
                }
            }
            (pairs, over, tang)
        })
        .collect();

    let mut rep = PackingReport { spheres: sp.len(), ..Default::default() };
    let mut tangs = vec![];
    for (p, o, t) in per {
        rep.pairs_checked += p;
        rep.overlaps += o;
        tangs.extend(t);
    }
    rep.tangencies = tangs.len();
    let planes = [&p0, &p1];
    let (bad, nonimm): (usize, usize) = tangs
        .par_iter()
        .map(|(i, j, w, p)| {
            let si = sp[*i];
            let sj = sp[*j].translate(sig, w);
            let bad = usize::from(!(on_sphere(sig, &n, si, p) && on_sphere(sig, &n, &sj, p)));
            // every sphere (any translate) and plane through p
            let mut through = planes.iter().filter(|pl| on_sphere(sig, &n, pl, p)).count();
            for s in sp.iter().filter(|s| !s.is_plane()) {
                let cs = s.center().unwrap();
                let r2 = &n / (&s.kappa * &s.kappa);
                for (_, x) in lam.points_near(sig, &sub(p, &cs), &r2) {
                    if sig.nrm(&sub(&sub(p, &cs), &x)) == r2 {
                        through += 1;
                    }
                }
            }
            (bad, usize::from(through != 2))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    rep.bad_points = bad;
    rep.non_immediate = nonimm;
    rep.planes_tangent_at_infinity = p0.b_form(sig, &p1).unwrap() == -n.clone();
    rep.negative_bends = c.negative_bends;
    rep.stray_planes = c.stray_planes;
    rep
}

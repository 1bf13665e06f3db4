use crate::error::PackError;
use crate::frame::{pairing_gcd, Frame};
use num_traits::{Signed, ToPrimitive, Zero};
use qarith::{zero4, AlgebraSig, Coords, Q};
use qinversive::{InvCoord, Letter, Word};
use qorders::lattice::Lat;
use qorders::CoveringData;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CensusKind {
    /// Orbit of S_u under the Cohn group, modulo the full "+" lattice.
    Super,
    /// Orbit of S_u and -S_u + tau under Gamma_u, modulo S_u cap L.
    Apollonian,
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub sphere: InvCoord,
    pub parent: Option<usize>,
    /// Letters taking the parent sphere to this one.
    pub step: Vec<Letter>,
    pub depth: usize,
    /// For roots: the seed sphere the step starts from.
    pub seed: Option<InvCoord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Saturation {
    pub depth_reached: usize,
    pub max_depth: Option<usize>,
    /// The BFS frontier emptied before the depth cap.
    pub fixpoint: bool,
}

/// Options for a census run.
#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub bend_bound: i64,
    pub max_depth: Option<usize>,
    /// Bound on nrm of the translation applied before each Cohn letter
    /// (super-packing only).
    pub generator_norm_bound: Option<Q>,
}

impl CensusOptions {
    pub fn new(bend_bound: i64) -> Self {
        CensusOptions { bend_bound, max_depth: None, generator_norm_bound: None }
    }

    pub fn depth(mut self, d: usize) -> Self {
        self.max_depth = Some(d);
        self
    }

    pub fn generator_norm(mut self, g: Q) -> Self {
        self.generator_norm_bound = Some(g);
        self
    }
}

#[derive(Clone, Debug)]
pub struct PackingCensus {
    pub cover: CoveringData,
    pub kind: CensusKind,
    pub bend_bound: i64,
    pub entries: Vec<CensusEntry>,
    pub index: HashMap<InvCoord, usize>,
    pub saturation: Saturation,
    /// Reflections producing a negative bend (expected: none).
    pub negative_bends: usize,
    /// Planes produced that are not one of the two boundary planes
    /// (expected: none).
    pub stray_planes: usize,
}

fn neg(c: &Coords) -> Coords {
    c.clone().map(|x| -x)
}

fn sub(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|k| &a[k] - &b[k])
}

fn int_of(x: &Q) -> i64 {
    x.to_integer().to_i64().expect("bend fits in i64")
}

impl PackingCensus {
    pub fn sig(&self) -> &AlgebraSig {
        self.cover.sig()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn spheres(&self) -> impl Iterator<Item = &InvCoord> {
        self.entries.iter().map(|e| &e.sphere)
    }

    pub fn non_planes(&self) -> impl Iterator<Item = &InvCoord> {
        self.spheres().filter(|s| !s.is_plane())
    }

    pub fn contains(&self, s: &InvCoord) -> bool {
        self.index.contains_key(s)
    }

    /// Counts of spheres by bend (kappa of the normalized coordinates).
    pub fn bend_counts(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for s in self.spheres() {
            *m.entry(int_of(&s.kappa)).or_insert(0) += 1;
        }
        m
    }

    pub fn frame(&self) -> Frame {
        frame_for(&self.cover, self.kind)
    }

    /// Word taking the seed to entry `i`.
    pub fn word(&self, i: usize) -> Word {
        let mut letters = vec![];
        let mut cur = Some(i);
        while let Some(k) = cur {
            letters.extend(self.entries[k].step.iter().cloned());
            cur = self.entries[k].parent;
        }
        Word(letters)
    }

    /// Seed sphere that `word(i)` starts from.
    pub fn root(&self, i: usize) -> &InvCoord {
        let mut k = i;
        while let Some(p) = self.entries[k].parent {
            k = p;
        }
        self.entries[k].seed.as_ref().unwrap()
    }

    /// Canonical key for a sphere in this census' translation class.
    pub fn canonical(&self, s: &InvCoord) -> InvCoord {
        self.frame().canonical(self.sig(), s).0
    }

    /// The subcensus with bends at most `b`.
    pub fn restrict(&self, b: i64) -> Vec<InvCoord> {
        let bq = Q::from_integer(b.into());
        let mut v: Vec<InvCoord> = self.spheres().filter(|s| s.kappa.abs() <= bq).cloned().collect();
        v.sort();
        v
    }
}

pub fn frame_for(cover: &CoveringData, kind: CensusKind) -> Frame {
    let basis = cover.full_basis();
    let reduce = match kind {
        CensusKind::Super => basis.len(),
        CensusKind::Apollonian => basis.len() - 1,
    };
    Frame::new(cover.sig(), basis, reduce)
}

struct Candidate {
    sphere: InvCoord,
    parent: usize,
    step: Vec<Letter>,
}

struct Expansion {
    cands: Vec<Candidate>,
    negative: usize,
}

fn check_bound(opts: &CensusOptions) -> Result<(), PackError> {
    if opts.bend_bound < 0 {
        return Err(PackError::Domain("bend bound must be nonnegative".into()));
    }
    Ok(())
}

/// Generic frontier BFS with per-level global dedup. `expand` must be a pure
/// function of the sphere; candidates are merged in sorted order so the
/// result does not depend on scheduling.
fn bfs<F>(
    cover: &CoveringData,
    kind: CensusKind,
    opts: &CensusOptions,
    seeds: Vec<(InvCoord, Vec<Letter>)>,
    expand: F,
) -> PackingCensus
where
    F: Fn(&InvCoord) -> Expansion + Sync,
{
    let frame = frame_for(cover, kind);
    let sig = cover.sig();
    let mut entries: Vec<CensusEntry> = vec![];
    let mut index: HashMap<InvCoord, usize> = HashMap::new();
    let mut frontier = vec![];
    for (s, step) in seeds {
        let (c, w) = frame.canonical(sig, &s);
        if index.contains_key(&c) {
            continue;
        }
        let mut st = vec![];
        if !w.iter().all(Zero::is_zero) {
            st.push(Letter::T(w));
        }
        st.extend(step);
        index.insert(c.clone(), entries.len());
        frontier.push(entries.len());
        entries.push(CensusEntry { sphere: c, parent: None, step: st, depth: 0, seed: Some(s) });
    }
    let mut depth = 0;
    let mut negative = 0;
    loop {
        if frontier.is_empty() {
            break;
        }
        if opts.max_depth.is_some_and(|m| depth >= m) {
            break;
        }
        let exps: Vec<(usize, Expansion)> = frontier
            .par_iter()
            .map(|&i| (i, expand(&entries[i].sphere)))
            .collect();
        let mut cands = vec![];
        for (i, e) in exps {
            negative += e.negative;
            for mut c in e.cands {
                c.parent = i;
                cands.push(c);
            }
        }
        let canon: Vec<(InvCoord, Coords)> = cands.par_iter().map(|c| frame.canonical(sig, &c.sphere)).collect();
        let mut order: Vec<usize> = (0..cands.len()).filter(|&k| !index.contains_key(&canon[k].0)).collect();
        order.sort_by(|&x, &y| canon[x].0.cmp(&canon[y].0).then(cands[x].parent.cmp(&cands[y].parent)).then(x.cmp(&y)));
        let mut next = vec![];
        for k in order {
            let (c, w) = &canon[k];
            if index.contains_key(c) {
                continue;
            }
            let mut st = vec![];
            if !w.iter().all(Zero::is_zero) {
                st.push(Letter::T(w.clone()));
            }
            st.extend(cands[k].step.iter().cloned());
            index.insert(c.clone(), entries.len());
            next.push(entries.len());
            entries.push(CensusEntry { sphere: c.clone(), parent: Some(cands[k].parent), step: st, depth: depth + 1, seed: None });
        }
        frontier = next;
        depth += 1;
    }
    let fixpoint = frontier.is_empty();
    log::debug!("{:?} census: {} spheres, depth {}, fixpoint {}", kind, entries.len(), depth, fixpoint);
    PackingCensus {
        cover: cover.clone(),
        kind,
        bend_bound: opts.bend_bound,
        entries,
        index,
        saturation: Saturation { depth_reached: depth, max_depth: opts.max_depth, fixpoint },
        negative_bends: negative,
        stray_planes: 0,
    }
}

/// Orbit of S_u under the group generated by the Cohn matrices W(alpha),
/// alpha in the "+" lattice, modulo translations by that lattice. Since
/// W(alpha) = T_{-alpha} W(0), the neighbours of a class [S] are the classes
/// of W(0) T_v S for v in the lattice.
pub fn enumerate_superpacking(cover: &CoveringData, opts: &CensusOptions) -> Result<PackingCensus, PackError> {
    check_bound(opts)?;
    let sig = cover.sig();
    let n = cover.nrm_q();
    let b = Q::from_integer(opts.bend_bound.into());
    let lat = Lat::new(sig, cover.full_basis());
    let plus = cover.full_basis();
    let w0 = zero4();
    let seed = InvCoord::plane(&cover.u);
    let expand = |s: &InvCoord| {
        let mut cands = vec![];
        let mut push = |v: Coords| {
            if let Some(g) = &opts.generator_norm_bound {
                if sig.nrm(&v) > *g {
                    return;
                }
            }
            let t = s.translate(sig, &v);
            if t.kappa_p.abs() > b {
                return;
            }
            let img = t.invert().mirror(sig);
            cands.push(Candidate { sphere: img, parent: 0, step: vec![Letter::W(w0.clone()), Letter::T(v)] });
        };
        if s.is_plane() {
            // only v modulo the plane's own stabilizer matters
            let (g, v0) = pairing_gcd(sig, &plus, &s.xi);
            let lo = ((-&b - &s.kappa_p) / &g).ceil().to_integer().to_i64().unwrap();
            let hi = ((&b - &s.kappa_p) / &g).floor().to_integer().to_i64().unwrap();
            for t in lo..=hi {
                let tq = Q::from_integer(t.into());
                push(v0.clone().map(|x| x * &tq));
            }
        } else {
            let k = s.kappa.abs();
            let r2 = (&n + &b * &k) / (&k * &k);
            let c = s.center().unwrap();
            for (_, x) in lat.points_near(sig, &neg(&c), &r2) {
                push(x);
            }
        }
        Expansion { cands, negative: 0 }
    };
    Ok(bfs(cover, CensusKind::Super, opts, vec![(seed, vec![])], expand))
}

/// The two boundary planes S_u (oriented as -S_u) and S_u + tau.
pub fn boundary_planes(cover: &CoveringData) -> (InvCoord, InvCoord) {
    let sig = cover.sig();
    let p0 = InvCoord::plane(&cover.u).flip();
    let p1 = InvCoord::plane(&cover.u).translate(sig, &cover.tau);
    (p0, p1)
}

/// Orbit of the two boundary planes under Gamma_u, generated by translations
/// in S_u cap L and unit reflections centred at (S_u cup S_u + tau) cap L,
/// modulo translations. Only spheres with 0 < bend <= bound are kept.
pub fn enumerate_apollonian(cover: &CoveringData, opts: &CensusOptions) -> Result<PackingCensus, PackError> {
    check_bound(opts)?;
    let sig = cover.sig();
    let n = cover.nrm_q();
    let b = Q::from_integer(opts.bend_bound.into());
    let lam = Lat::new(sig, cover.su_basis.clone());
    let tau = cover.tau.clone();
    let (p0, p1) = boundary_planes(cover);
    let frame = frame_for(cover, CensusKind::Apollonian);
    let planes = [frame.canonical(sig, &p0).0, frame.canonical(sig, &p1).0];
    let stray = std::sync::atomic::AtomicUsize::new(0);
    let expand = |s: &InvCoord| {
        let mut cands = vec![];
        let mut negative = 0;
        let mut centres: Vec<Coords> = vec![];
        if s.is_plane() {
            // a boundary plane only reaches spheres through centres on the
            // other plane; those images are translates of one sphere
            for z in [zero4(), tau.clone()] {
                let t = s.translate(sig, &neg(&z));
                if !t.kappa_p.is_zero() {
                    centres.push(z);
                }
            }
        } else {
            let c = s.center().unwrap();
            let r2 = (&n + &b * &s.kappa) / (&s.kappa * &s.kappa);
            for off in [zero4(), tau.clone()] {
                for (_, x) in lam.points_near(sig, &sub(&c, &off), &r2) {
                    centres.push(std::array::from_fn(|k| &x[k] + &off[k]));
                }
            }
        }
        for z in centres {
            let img = s.reflect_at(sig, &z);
            if img.kappa.is_negative() {
                negative += 1;
                continue;
            }
            if img.is_plane() {
                let c = frame.canonical(sig, &img).0;
                if !planes.contains(&c) {
                    stray.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                }
                continue;
            }
            if img.kappa > b {
                continue;
            }
            cands.push(Candidate { sphere: img, parent: 0, step: vec![Letter::Phi(z)] });
        }
        Expansion { cands, negative }
    };
    let seeds = vec![(p0, vec![]), (p1, vec![])];
    let mut c = bfs(cover, CensusKind::Apollonian, opts, seeds, expand);
    c.stray_planes = stray.load(std::sync::atomic::Ordering::Relaxed);
    Ok(c)
}

/// Saturation under doubling the bend bound: the census at B equals the
/// bend <= B part of the census at 2B.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationReport {
    pub bend_bound: i64,
    pub count: usize,
    pub count_from_doubled: usize,
    pub fixpoint: bool,
    pub stable: bool,
}

impl SaturationReport {
    pub fn saturated(&self) -> bool {
        self.fixpoint && self.stable
    }
}

pub fn saturation_report(
    cover: &CoveringData,
    kind: CensusKind,
    opts: &CensusOptions,
) -> Result<(PackingCensus, SaturationReport), PackError> {
    let run = |o: &CensusOptions| match kind {
        CensusKind::Super => enumerate_superpacking(cover, o),
        CensusKind::Apollonian => enumerate_apollonian(cover, o),
    };
    let base = run(opts)?;
    let mut o2 = opts.clone();
    o2.bend_bound = opts.bend_bound.saturating_mul(2);
    let big = run(&o2)?;
    let a = base.restrict(opts.bend_bound);
    let b = big.restrict(opts.bend_bound);
    let rep = SaturationReport {
        bend_bound: opts.bend_bound,
        count: a.len(),
        count_from_doubled: b.len(),
        fixpoint: base.saturation.fixpoint,
        stable: a == b,
    };
    Ok((base, rep))
}

use num_traits::Zero;
use qarith::{q, Q};
use qinversive::{inv_u, InvCoord};
use qorders::catalog::{dim3_entry, table1_entry, table1_rows, table2, table2_entry};
use qorders::CoveringData;
use qpacking::check::*;
use qpacking::export::*;
use qpacking::*;
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

fn d5() -> &'static CoveringData {
    static C: OnceLock<CoveringData> = OnceLock::new();
    C.get_or_init(|| dim3_entry(5).unwrap().cover)
}

fn d6() -> &'static CoveringData {
    static C: OnceLock<CoveringData> = OnceLock::new();
    C.get_or_init(|| dim3_entry(6).unwrap().cover)
}

fn t1() -> &'static CoveringData {
    static C: OnceLock<CoveringData> = OnceLock::new();
    C.get_or_init(|| table1_entry(&table1_rows(-1, -6)[0]).unwrap().cover)
}

fn t2() -> &'static CoveringData {
    static C: OnceLock<CoveringData> = OnceLock::new();
    C.get_or_init(|| {
        let row = table2().into_iter().find(|r| r.a == -1 && r.b == -7).unwrap();
        table2_entry(&row).unwrap().cover
    })
}

fn keys(c: &PackingCensus) -> BTreeSet<InvCoord> {
    c.spheres().cloned().collect()
}

#[test]
fn depth_zero() {
    let c = enumerate_superpacking(d5(), &CensusOptions::new(10).depth(0)).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c.entries[0].sphere, InvCoord::plane(&d5().u));
    let a = enumerate_apollonian(d5(), &CensusOptions::new(10).depth(0)).unwrap();
    assert_eq!(a.len(), 2);
    assert!(a.spheres().all(|s| s.is_plane()));
    let a0 = enumerate_apollonian(d5(), &CensusOptions::new(0)).unwrap();
    assert_eq!(a0.len(), 2);
}

#[test]
fn negative_bound_is_rejected() {
    assert!(enumerate_superpacking(d5(), &CensusOptions::new(-1)).is_err());
    assert!(enumerate_apollonian(d5(), &CensusOptions::new(-1)).is_err());
}

// Frozen small census of Z[sqrt -5]: bends and multiplicities per cell.
#[test]
fn small_census_counts() {
    let a = enumerate_apollonian(d5(), &CensusOptions::new(200)).unwrap();
    let counts: Vec<(i64, usize)> = a.bend_counts().into_iter().take(8).collect();
    assert_eq!(counts, vec![(0, 2), (10, 2), (40, 4), (50, 4), (80, 4), (90, 4), (120, 2), (130, 4)]);
    assert_eq!(a.len(), 54);
    let s = enumerate_superpacking(d5(), &CensusOptions::new(200)).unwrap();
    assert_eq!(s.len(), 159);
    let z = enumerate_apollonian(&dim3_entry(1).unwrap().cover, &CensusOptions::new(50)).unwrap();
    let counts: Vec<(i64, usize)> = z.bend_counts().into_iter().collect();
    assert_eq!(counts, vec![(0, 2), (2, 1), (8, 2), (18, 4), (24, 2), (32, 4), (48, 2), (50, 8)]);
}

fn congruence_suite(cover: &CoveringData, bound: i64) {
    let s = enumerate_superpacking(cover, &CensusOptions::new(bound)).unwrap();
    assert!(s.len() >= 500, "census too small: {}", s.len());
    assert!(s.saturation.fixpoint);
    assert!(congruence_failures(&s).is_empty());
    assert!(internal_intersection_failures(&s).is_empty());
    assert!(symmetry_missing(&s).is_empty());
    let n = cover.nrm_q();
    assert!(s.spheres().all(|x| (&x.kappa / &n).is_integer()));
}

#[test]
fn congruence_dim3_sqrt5() {
    congruence_suite(d5(), 1000);
}

#[test]
fn congruence_dim3_sqrt6() {
    congruence_suite(d6(), 600);
}

#[test]
fn congruence_dim4() {
    congruence_suite(t1(), 72);
}

#[test]
fn congruence_dim5() {
    congruence_suite(t2(), 56);
}

#[test]
fn apollonian_packing_checks() {
    for (cover, b) in [(d5(), 30), (d5(), 400), (d6(), 300), (t1(), 48), (t2(), 35)] {
        let a = enumerate_apollonian(cover, &CensusOptions::new(b)).unwrap();
        let rep = packing_report(&a);
        assert!(rep.ok(), "{rep:?}");
        assert!(rep.tangencies > 0);
        // every non-plane sphere touches something
        assert!(a.non_planes().all(|s| s.kappa > Q::zero()));
        assert!(congruence_failures(&a).is_empty());
    }
}

#[test]
fn apollonian_inside_superpacking() {
    for (cover, b) in [(d5(), 600), (d6(), 300), (t1(), 48), (t2(), 42)] {
        let a = enumerate_apollonian(cover, &CensusOptions::new(b)).unwrap();
        let s = enumerate_superpacking(cover, &CensusOptions::new(b)).unwrap();
        assert!(apollonian_not_in_super(&a, &s).is_empty());
    }
}

#[test]
fn words_reproduce_spheres() {
    for cover in [d5(), t1(), t2()] {
        let sig = Arc::new(cover.sig().clone());
        let s = enumerate_superpacking(cover, &CensusOptions::new(40)).unwrap();
        for i in 0..s.len() {
            let w = s.word(i);
            assert_eq!(w.apply(&sig, s.root(i)), s.entries[i].sphere);
            // matrix path: inv_u of the word's matrix
            if i % 7 == 0 {
                let m = w.matrix(&sig).unwrap();
                assert!(m.in_group());
                assert_eq!(inv_u(&m, &cover.u).unwrap(), s.entries[i].sphere);
            }
        }
        let a = enumerate_apollonian(cover, &CensusOptions::new(40)).unwrap();
        for i in 0..a.len() {
            let w = a.word(i);
            assert_eq!(w.apply(&sig, a.root(i)), a.entries[i].sphere);
            if i % 5 == 0 {
                assert_eq!(w.apply_via_matrices(&sig, a.root(i)).unwrap(), a.entries[i].sphere);
            }
        }
    }
}

#[test]
fn deterministic_across_thread_counts() {
    let run = |t: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
        pool.install(|| {
            let a = enumerate_apollonian(t1(), &CensusOptions::new(36)).unwrap();
            let s = enumerate_superpacking(d5(), &CensusOptions::new(300)).unwrap();
            (a.spheres().cloned().collect::<Vec<_>>(), s.spheres().cloned().collect::<Vec<_>>())
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn monotone_in_bend_bound() {
    for cover in [d5(), t2()] {
        let small = enumerate_apollonian(cover, &CensusOptions::new(28)).unwrap();
        let big = enumerate_apollonian(cover, &CensusOptions::new(42)).unwrap();
        assert!(keys(&small).is_subset(&keys(&big)));
        let small = enumerate_superpacking(cover, &CensusOptions::new(28)).unwrap();
        let big = enumerate_superpacking(cover, &CensusOptions::new(42)).unwrap();
        assert!(keys(&small).is_subset(&keys(&big)));
    }
}

#[test]
fn saturation_and_generator_bound() {
    let (c, rep) = saturation_report(d5(), CensusKind::Apollonian, &CensusOptions::new(300)).unwrap();
    assert!(rep.saturated(), "{rep:?}");
    assert_eq!(rep.count, c.len());
    let (_, rep) = saturation_report(d5(), CensusKind::Super, &CensusOptions::new(200)).unwrap();
    assert!(rep.saturated(), "{rep:?}");
    // a depth cap leaves the census unsaturated
    let capped = enumerate_apollonian(d5(), &CensusOptions::new(300).depth(2)).unwrap();
    assert!(!capped.saturation.fixpoint);
    assert!(keys(&capped).is_subset(&keys(&c)));
    // truncating the generators can only lose spheres
    let full = enumerate_superpacking(d5(), &CensusOptions::new(200)).unwrap();
    let trunc = enumerate_superpacking(d5(), &CensusOptions::new(200).generator_norm(q(2))).unwrap();
    assert!(keys(&trunc).is_subset(&keys(&full)));
    assert!(trunc.len() <= full.len());
}

#[test]
fn jsonl_and_svg() {
    let a = enumerate_apollonian(d5(), &CensusOptions::new(100)).unwrap();
    let text = census_jsonl(&a, "dim3 n=5").unwrap();
    let (h, lines) = parse_census_jsonl(&text).unwrap();
    assert_eq!(h.total, a.len());
    assert_eq!(lines.len(), a.len());
    assert_eq!(h.counts, a.bend_counts());
    for (l, e) in lines.iter().zip(&a.entries) {
        assert_eq!(InvCoord::from_record(&l.sphere).unwrap(), e.sphere);
    }
    let svg = census_svg(&a, &SvgOptions::default()).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 3 * a.non_planes().count());
    assert!(census_svg(&enumerate_apollonian(t1(), &CensusOptions::new(12)).unwrap(), &SvgOptions::default()).is_err());
}

use num_traits::Zero;
use proptest::prelude::*;
use qarith::{q, qf, Coords, Q};
use qforbidden::ball::{dim5_ball, orthogonal_sphere, row_ball};
use qforbidden::catalog::{admissible, row_entry, table_row, table_rows, Inadmissible};
use qforbidden::*;
use qinversive::InvCoord;
use qorders::catalog::{dim3_entry, table1_entry, table1_rows, table2, table2_entry};
use qorders::lattice::combine_int;
use qpacking::{enumerate_superpacking, CensusOptions};
use std::sync::OnceLock;

fn ghost20() -> &'static ForbiddenBall {
    static B: OnceLock<ForbiddenBall> = OnceLock::new();
    B.get_or_init(|| ghost_ball(20).unwrap())
}

#[test]
fn ghost_circle_formulas() {
    let g = ghost_circle(20).unwrap();
    assert_eq!((g.re.clone(), g.im.clone(), g.r2.clone()), (qf(1, 2), qf(1, 4), qf(8, 16)));
    // 20 / (4 sqrt(-21)) = -(20/84) sqrt(-21); radius^2 = 148 / (16 * 21)
    let g = ghost_circle(21).unwrap();
    assert_eq!((g.im.clone(), g.r2.clone()), (qf(-20, 84), qf(148, 336)));
    for bad in [12, 11, 5, -4, 22] {
        assert!(matches!(ghost_circle(bad), Err(ForbiddenError::Domain(_))), "{bad}");
    }
    // no ring of integers has |disc| = 21
    assert!(matches!(ghost_ball(21), Err(ForbiddenError::NotCovered(_))));
}

fn unit_sphere(sig: &qarith::AlgebraSig, z: &Coords) -> InvCoord {
    InvCoord::new(q(1), sig.nrm(z) - q(1), z.clone(), true)
}

#[test]
fn ghost_orthogonal_to_unit_circles() {
    for d in [20, 24, 40, 52, 15, 19, 23, 35] {
        let b = ghost_ball(d).unwrap();
        let sig = b.cover.sig();
        let m = if d % 4 == 0 { d / 4 } else { d };
        let r = |x: i64, y: i64, den: i64| -> Coords { [qf(x, den), qf(y, den), Q::zero(), Q::zero()] };
        let pts: Vec<Coords> = if d % 4 == 0 {
            vec![r(0, 0, 1), r(1, 0, 1), r(0, 1, 1), r(1, 1, 1)]
        } else {
            vec![r(0, 0, 1), r(1, 0, 1), r(1, -1, 2)]
        };
        for z in &pts {
            assert!(b.inv.base.b_form(sig, &unit_sphere(sig, z)).unwrap().is_zero(), "d={d} m={m}");
        }
        assert_eq!(b.inv.q_form(sig), b.cover.nrm_q());
    }
}

#[test]
fn ghost_d20_against_seed_plane() {
    let b = ghost20();
    let sig = b.cover.sig();
    let n = b.cover.nrm_q();
    // geometric value sqrt(10)/2, i.e. the normalized value over nrm(u)
    let v = b.inv.b_with(sig, &InvCoord::plane(&b.cover.u)).unwrap();
    assert_eq!(v.signed_square() / (&n * &n), qf(10, 4));
    assert_eq!(b.congruence_class.describe(), "sqrt(10) * (5/2 + 5 Z)");
}

#[test]
fn ghost_d20_scan_to_bend_30() {
    let b = ghost20();
    let c = enumerate_superpacking(&b.cover, &CensusOptions::new(30)).unwrap();
    let r = verify_forbidden(b, &c).unwrap();
    assert!(r.pass(), "{r:?}");
    assert!(r.translates_checked > 0);
}

#[test]
fn listed_examples() {
    let row = table_row("4.1").unwrap();
    let b = row_ball(&row, 1).unwrap();
    assert_eq!(b.construction, Construction::Listed);
    assert_eq!(b.inv.scale2, qf(10, 6));
    assert_eq!(b.inv.base, InvCoord::new(q(2), q(2), [q(1), q(1), q(1), q(0)], true));
    assert_eq!(b.inv.q_form(b.cover.sig()), q(5));

    let b = dim5_ball(1).unwrap();
    assert_eq!(b.inv.q_form(b.cover.sig()), q(7));
    assert_eq!(b.cover.nrm_q(), q(7));
    // the stated class (13 / (2 sqrt 5)) (5 + 13 Z)
    let b = dim5_ball(2).unwrap();
    assert_eq!(
        b.congruence_class,
        CongruenceClass { scale2: qf(1, 5), offset: qf(65, 2), modulus: qf(169, 2) }
    );
    assert!(b.symbolic_pass());
}

#[test]
fn not_covered_cases() {
    let hur = table2().into_iter().find(|r| r.discrd == 2).unwrap();
    for e in qorders::catalog::covering_vectors(&table2_entry(&hur).unwrap().cover.order) {
        assert!(matches!(table_forbidden_ball(&e), Err(ForbiddenError::NotCovered(_))));
    }
    let zi = dim3_entry(1).unwrap().cover;
    assert!(matches!(table_forbidden_ball(&zi), Err(ForbiddenError::NotCovered(_))));
    // (-1,-6): covering radius of Z + Zi + Z(1+i+j)/2 is below 1
    let e = table1_entry(&table1_rows(-1, -6)[0]).unwrap();
    assert!(matches!(table_forbidden_ball(&e.cover), Err(ForbiddenError::NotCovered(_))));
    assert_eq!(row_entry(&table_row("4.2").unwrap(), 3).unwrap_err(), Inadmissible::Euclidean);
}

#[test]
fn cover_lookup_matches_rows() {
    let e = table1_entry(&table1_rows(-1, -5)[0]).unwrap();
    let b = table_forbidden_ball(&e.cover).unwrap();
    assert_eq!(b.table_ref, TableRef::Table4Row { row: "4.1".into(), n: 1 });
    let b = table_forbidden_ball(&dim3_entry(5).unwrap().cover).unwrap();
    assert_eq!(b.table_ref, TableRef::Dim3GhostEven { d: 20 });
    let row = table2().into_iter().find(|r| r.a == -2 && r.b == -26).unwrap();
    let b = table_forbidden_ball(&table2_entry(&row).unwrap().cover).unwrap();
    assert_eq!(b.table_ref, TableRef::Table6Row { row: 2 });
}

// Smallest admissible n per row, and which rows' listed entries fail
// q = nrm(u) there (frozen).
#[test]
fn admissible_and_listed_status() {
    let mut got = vec![];
    for row in table_rows() {
        let k = if row.table == 4 { 3 } else { 1 };
        let ns: Vec<i64> = admissible(&row, k).into_iter().map(|(n, _)| n).collect();
        let listed = ns.iter().map(|&n| row_ball(&row, n).unwrap().construction == Construction::Listed).collect::<Vec<_>>();
        got.push((row.id, ns, listed));
    }
    let t = true;
    let f = false;
    let want: Vec<(&str, Vec<i64>, Vec<bool>)> = vec![
        ("4.1", vec![1, 3, 4], vec![t, t, t]),
        ("4.2", vec![7, 11, 13], vec![t, t, t]),
        ("4.3a", vec![3, 4, 5], vec![f, f, f]),
        ("4.3b", vec![3, 4, 5], vec![f, f, f]),
        ("4.4", vec![3, 4, 5], vec![t, t, t]),
        ("4.5", vec![2, 3, 4], vec![t, t, t]),
        ("4.6", vec![3, 4, 5], vec![f, f, f]),
        ("4.7", vec![2, 3, 4], vec![f, f, f]),
        ("4.8", vec![5, 7, 10], vec![t, t, t]),
        ("4.9", vec![4, 5, 6], vec![t, t, t]),
        ("4.10", vec![5, 6, 10], vec![t, t, t]),
        ("4.11", vec![1, 3, 5], vec![f, f, f]),
        ("5.1", vec![2], vec![f]),
        ("5.2", vec![1], vec![f]),
        ("5.3", vec![2], vec![t]),
        ("5.4", vec![1], vec![f]),
        ("5.5", vec![1], vec![t]),
        ("5.6", vec![3], vec![t]),
        ("5.7", vec![2], vec![f]),
        ("5.8", vec![3], vec![f]),
        ("5.9", vec![2], vec![t]),
        ("5.10", vec![2], vec![f]),
    ];
    assert_eq!(got, want);
}

#[test]
fn orthogonal_sphere_reproduces_listed_balls() {
    // in these rows the listed ball is the orthogonal sphere itself
    for (id, n) in [("4.1", 1), ("4.2", 7), ("4.8", 5), ("4.9", 4), ("4.10", 5)] {
        let row = table_row(id).unwrap();
        let b = row_ball(&row, n).unwrap();
        let o = orthogonal_sphere(b.cover.sig(), &row.plus_basis()).unwrap();
        let (x, y) = (&b.inv.base, &o);
        let r = &y.kappa / &x.kappa;
        assert_eq!(InvCoord::new(&x.kappa * &r, &x.kappa_p * &r, x.xi.clone().map(|c| c * &r), true), *y, "{id}");
    }
}

#[test]
fn certificates_on_a_sample() {
    let mut balls = vec![ghost20().clone(), dim5_ball(1).unwrap(), dim5_ball(2).unwrap()];
    for (id, n) in [("4.1", 1), ("4.3a", 3), ("4.3b", 3), ("5.10", 2), ("5.6", 3)] {
        balls.push(row_ball(&table_row(id).unwrap(), n).unwrap());
    }
    for b in &balls {
        assert!(b.symbolic_pass(), "{}", b.table_ref);
        let c = census_for(b, 500).unwrap();
        assert!(c.len() >= 500);
        let r = verify_forbidden(b, &c).unwrap();
        assert!(r.pass(), "{r:?}");
    }
}

#[test]
fn strip_bound_values() {
    let s = strip_bound(20).unwrap();
    assert!((s.leftover - (20f64.sqrt() - 2.0) / 2.0).abs() < 1e-12);
    assert!((s.cell_area - 5f64.sqrt()).abs() < 1e-12);
    assert!((s.ratio - 0.5528).abs() < 1e-4);
    for d in [10_000i64, 1_000_000] {
        let even = strip_bound(d).unwrap();
        let odd = strip_bound(d + 3).unwrap();
        let tol = if d == 10_000 { 0.1 } else { 0.01 };
        assert!((even.leftover * (d as f64).sqrt() / 4.0 - 1.0).abs() < tol);
        assert!((odd.leftover * ((d + 3) as f64).sqrt() / 6.0 - 1.0).abs() < tol);
    }
    assert!(strip_bound(12).is_none());
}

#[test]
fn density_bound_d20() {
    // union of translates per cell: one disk of radius sqrt(2)/2 minus the
    // lens it shares with its neighbour at distance 1, pi/4 - 1/2
    let want = 1.0 - (std::f64::consts::PI / 4.0 + 0.5) / 5f64.sqrt();
    let b = density_upper_bound(ghost20()).unwrap();
    assert!((b.value - want).abs() < 1e-6, "{} vs {want}", b.value);
    assert!(b.value < b.strip.unwrap().ratio);
}

#[test]
fn report_json_roundtrip() {
    let b = ghost20();
    let c = enumerate_superpacking(&b.cover, &CensusOptions::new(60)).unwrap();
    let r = verify_forbidden(b, &c).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    let back: ForbiddenReport = serde_json::from_str(&s).unwrap();
    assert_eq!(back.congruence_class, r.congruence_class);
    assert_eq!(back.table_ref, r.table_ref);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    for k in ["cover", "table_ref", "inv", "congruence_class", "symbolic_pass", "empirical_scanned", "empirical_pass", "density_upper_bound"] {
        assert!(v.get(k).is_some(), "{k}");
    }
}

fn w_act(sig: &qarith::AlgebraSig, a: &Coords, c: &InvCoord) -> InvCoord {
    c.invert().mirror(sig).translate(sig, &a.clone().map(|x| -x))
}

fn balls() -> &'static Vec<ForbiddenBall> {
    static B: OnceLock<Vec<ForbiddenBall>> = OnceLock::new();
    B.get_or_init(|| {
        vec![
            ghost20().clone(),
            ghost_ball(23).unwrap(),
            row_ball(&table_row("4.6").unwrap(), 3).unwrap(),
            row_ball(&table_row("5.8").unwrap(), 3).unwrap(),
            dim5_ball(2).unwrap(),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    // orbit points of the seed plane land in the class and miss the interval
    #[test]
    fn random_words_stay_in_class(k in 0usize..5, word in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..8)) {
        let b = &balls()[k];
        let sig = b.cover.sig();
        let basis = b.cover.full_basis();
        let mut s = InvCoord::plane(&b.cover.u);
        for c in &word {
            let a = combine_int(&basis, &c[..basis.len()]);
            s = w_act(sig, &a, &s);
        }
        prop_assert_eq!(s.q_form(sig), b.cover.nrm_q());
        let v = b.inv.base.b_form(sig, &s).unwrap();
        prop_assert!(b.congruence_class.contains_base(&v));
        let n = b.cover.nrm_q();
        prop_assert!(&b.inv.scale2 * &v * &v > &n * &n);
    }
}

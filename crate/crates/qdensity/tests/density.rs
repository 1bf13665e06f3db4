use proptest::prelude::*;
use qarith::{q, qf, Q};
use qdensity::*;
use qorders::catalog::{dim3_entry, table1_entry, table1_rows, table2, table2_entry};
use qorders::order::is_squarefree;
use qorders::CoveringData;
use qpacking::{enumerate_apollonian, enumerate_superpacking, CensusOptions, PackingCensus};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

fn d20() -> &'static CoveringData {
    static C: OnceLock<CoveringData> = OnceLock::new();
    C.get_or_init(|| dim3_entry(5).unwrap().cover)
}

fn apol(cover: &CoveringData, b: i64) -> PackingCensus {
    enumerate_apollonian(cover, &CensusOptions::new(b)).unwrap()
}

fn d20_2000() -> &'static PackingCensus {
    static C: OnceLock<PackingCensus> = OnceLock::new();
    C.get_or_init(|| apol(d20(), 2000))
}

// determinant of the trace form tr(x conj y) over 2^(n-1), computed directly
fn trace_gram2(cover: &CoveringData) -> Q {
    let sig = cover.sig();
    let b = cover.full_basis();
    let m: Vec<Vec<Q>> = b
        .iter()
        .map(|x| b.iter().map(|y| sig.tr(&sig.mul(x, &sig.conj(y)))).collect())
        .collect();
    let d = qorders::lattice::det(&m);
    let d = if d < q(0) { -d } else { d };
    d / Q::from_integer((1i64 << b.len()).into())
}

#[test]
fn cell_volume_examples() {
    let v = cell_volume(d20()).unwrap();
    assert_eq!(v.gram2, "5");
    assert!((v.value - 5f64.sqrt()).abs() < 1e-15);
    // Hurwitz order: index 2 in Z^4
    let hur = table2().into_iter().find(|r| r.discrd == 2).unwrap();
    let c = table2_entry(&hur).unwrap().cover;
    assert_eq!(gram_form2(&c), qf(1, 4));
    assert_eq!(closed_form2(&c), qf(1, 4));
    let c = table1_entry(&table1_rows(-1, -6)[0]).unwrap().cover;
    assert_eq!(gram_form2(&c), trace_gram2(&c));
    assert_eq!(closed_form2(&c), qf(3, 2));
}

#[test]
fn covolume_formula_all_small_orders() {
    for n in 1..=200 {
        if !is_squarefree(n) {
            continue;
        }
        let c = dim3_entry(n).unwrap().cover;
        if c.order.disc() > 200.into() {
            continue;
        }
        assert_eq!(gram_form2(&c), closed_form2(&c), "n={n}");
        assert_eq!(trace_gram2(&c), closed_form2(&c), "n={n}");
    }
    for r in table2() {
        let c = table2_entry(&r).unwrap().cover;
        assert_eq!(gram_form2(&c), closed_form2(&c));
        assert_eq!(trace_gram2(&c), closed_form2(&c));
    }
}

#[test]
fn covolume_formula_table_rows() {
    use qforbidden::catalog::{admissible, table_rows};
    for row in table_rows() {
        for (n, e) in admissible(&row, 3) {
            let c = &e.cover;
            assert_eq!(gram_form2(c), closed_form2(c), "{} n={n}", row.id);
            assert_eq!(trace_gram2(c), closed_form2(c), "{} n={n}", row.id);
        }
    }
}

#[test]
fn planes_only_census() {
    let c = apol(d20(), 0);
    let p = partial_density(&c).unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(p[0].density, 0.0);
    assert!(partial_density(&enumerate_superpacking(d20(), &CensusOptions::new(10)).unwrap()).is_err());
}

#[test]
fn gaussian_strip_first_generations() {
    // strip of width 1: one circle of curvature 2 per period, then two of
    // curvature 2 + 2 + 2 sqrt(4) = 8 in the gaps
    let c = apol(&dim3_entry(1).unwrap().cover, 8);
    let p = partial_density(&c).unwrap();
    assert!((density_at(&p, 2) - PI / 4.0).abs() < 1e-14);
    assert!((density_at(&p, 8) - (PI / 4.0 + 2.0 * PI / 64.0)).abs() < 1e-14);
    assert!(p.iter().all(|r| r.error < 1e-14));
}

#[test]
fn d20_partial_density_respects_bound() {
    let c = d20_2000();
    let p = partial_density(c).unwrap();
    assert!(p.windows(2).all(|w| w[0].density <= w[1].density));
    let last = p.last().unwrap();
    let ub = qforbidden::density_upper_bound(&qforbidden::ghost_ball(20).unwrap()).unwrap().value;
    assert!(last.density + last.error < ub, "{} vs {ub}", last.density);
    assert!(last.density < 0.553);
    // frozen value at B = 2000
    assert!((last.density - 0.197_580_843_66).abs() < 1e-9, "{}", last.density);
}

#[test]
fn euclidean_control_separates() {
    let zi = partial_density(&apol(&dim3_entry(1).unwrap().cover, 2000)).unwrap();
    let d = partial_density(d20_2000()).unwrap();
    assert!(zi.last().unwrap().density > 0.9);
    assert!(d.last().unwrap().density < 0.553);
}

#[test]
fn fit_calibration() {
    let counts: BTreeMap<i64, usize> = (1..=20000i64).map(|k| (k, (1000.0 * (k as f64).powf(0.3)).round() as usize)).collect();
    let f = bend_census_fit(&counts, 20000, 1).unwrap();
    assert!((f.alpha - 1.3).abs() < 0.01, "{f:?}");
    assert!(f.band.0 <= 1.3 && 1.3 <= f.band.1);
    let f2 = bend_census_fit(&counts, 20000, 2).unwrap();
    assert!((f2.alpha - 2.0 * f.alpha).abs() < 1e-12);
    let few: BTreeMap<i64, usize> = (1..=9).map(|k| (k, 5)).collect();
    assert!(matches!(bend_census_fit(&few, 9, 1), Err(DensityError::Unfittable(_))));
}

#[test]
fn d20_fit_brackets_apollonian_constant() {
    let f = bend_census_fit(&d20_2000().bend_counts(), 2000, 1).unwrap();
    assert!(f.alpha >= 1.2 && f.alpha <= 1.45, "{f:?}");
    // disjoint halves of the window agree with each other and lie in the band
    assert!((f.halves.0 - f.halves.1).abs() < 0.05, "{f:?}");
    for h in [f.halves.0, f.halves.1] {
        assert!(f.band.0 <= h && h <= f.band.1, "{f:?}");
    }
    assert_eq!(bend_gcd(&d20_2000().bend_counts()), (10, 1));
}

#[test]
fn zeta_values() {
    assert!((zeta(2.0) - PI * PI / 6.0).abs() < 1e-13);
    assert!((zeta(4.0) - PI.powi(4) / 90.0).abs() < 1e-13);
    // partial sum plus integral tail and midpoint correction
    for s in [1.2, 1.7, 3.0 - 1.30568] {
        let n = 200_000;
        let part: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
        let nf = n as f64;
        let tail = nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + s * nf.powf(-s - 1.0) / 12.0;
        assert!((zeta(s) - part - tail).abs() < 1e-9, "s={s}");
    }
}

#[test]
fn model_ratios() {
    let a = 1.30568;
    let c6 = dim3_entry(6).unwrap().cover;
    let p5 = density_model(d20(), a, 1, 1).unwrap().per_c;
    let p6 = density_model(&c6, a, 1, 1).unwrap().per_c;
    // c(Gamma_u) cancels: sqrt(d5/d6) (N6/N5)^((3-a)/2)
    let want = (20f64 / 24.0).sqrt() * (6f64 / 5.0).powf((3.0 - a) / 2.0);
    assert!((p6 / p5 - want).abs() < 1e-12);
    let p5l = density_model(d20(), a, 1, 2).unwrap().per_c;
    assert!((p5l / p5 - 2f64.powf(-(2.0 - a))).abs() < 1e-12);
    assert!(density_model(d20(), 3.5, 1, 1).is_err());
}

#[test]
fn model_decays_with_measured_modulus() {
    let a = 1.30568;
    let mut last = f64::INFINITY;
    for n in [5, 6, 10, 13, 17, 22, 101, 1001] {
        let c = dim3_entry(n).unwrap().cover;
        let g = bend_gcd(&apol(&c, 8 * n).bend_counts()).0;
        assert_eq!(g, 2 * n, "n={n}");
        let p = density_model_with_modulus(&c, a, 1, g as f64).unwrap().per_c;
        assert!(p < last, "n={n}");
        last = p;
    }
}

#[test]
fn report_roundtrip_and_consistency() {
    let a = apol(d20(), 400);
    let s = enumerate_superpacking(d20(), &CensusOptions::new(60)).unwrap();
    let opts = ReportOptions { table_ref: "ghost circle d=20".into(), upper_bound: Some(0.4251), lambda: 1 };
    let r = density_report(&a, Some(&s), &opts).unwrap();
    assert!(r.consistent());
    assert!(r.alpha_fit.is_some() && r.zeta_model_prediction.is_some());
    assert!(r.series_density.is_some());
    let j = serde_json::to_string(&r).unwrap();
    let back: DensityReport = serde_json::from_str(&j).unwrap();
    assert_eq!(back, r);
    let small = density_report(&apol(d20(), 30), None, &opts).unwrap();
    assert!(small.alpha_fit.is_none() && small.fit_note.is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn partial_density_monotone(t1 in 0i64..2000, dt in 0i64..2000) {
        let p = partial_density(d20_2000()).unwrap();
        prop_assert!(density_at(&p, t1) <= density_at(&p, t1 + dt));
        prop_assert!(density_at(&p, t1 + dt) <= 1.0);
    }
}

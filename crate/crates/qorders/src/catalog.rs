use crate::covering::{is_covering_vector, normalize_covering_vector, primitive, CoveringData};
use crate::error::OrderError;
use crate::hilbert::{legendre, primes_dividing};
use crate::lattice::{gram, inverse, Lat};
use crate::order::{is_squarefree, quadratic_ring, rows, ArithOrder};
use log::{debug, info};
use num_traits::{Signed, ToPrimitive, Zero};
use qarith::{fmt_q, zero4, AlgebraSig, BigInt, Coords, Q};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Upper bound on |disc| of a definite algebra whose maximal orders can
/// carry a covering vector in dim 5 (12 pi^2 < 119).
pub const DIM5_DISC_BOUND: i64 = 119;

/// A named dim-4 family member: algebra (a, n), row tag, basis and the
/// reduced discriminant stated by the table.
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub a: i64,
    pub n: i64,
    pub tag: &'static str,
    pub basis: Vec<Coords>,
    pub stated_discrd: i64,
}

fn md(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

/// All Table 1 rows whose conditions hold for the algebra (a, n).
pub fn table1_rows(a: i64, n: i64) -> Vec<Table1Row> {
    let mut out = Vec::new();
    if n >= 0 || !is_squarefree(n) {
        return out;
    }
    let an = n.abs();
    let mut push = |tag: &'static str, r: &[([i64; 4], i64)], stated: i64| {
        out.push(Table1Row {
            a,
            n,
            tag,
            basis: rows(r),
            stated_discrd: stated,
        })
    };
    let one = ([1, 0, 0, 0], 1);
    let i = ([0, 1, 0, 0], 1);
    let j = ([0, 0, 1, 0], 1);
    let w = ([1, 1, 0, 0], 2);
    match a {
        -1 => match md(n, 4) {
            3 => push("n=-1 mod 4", &[one, i, j, ([1, 1, 1, 1], 2)], 2 * an),
            2 => push(
                "n=2 mod 4",
                &[one, i, ([1, 1, 1, 0], 2), ([0, 0, 1, 1], 2)],
                an,
            ),
            1 => {
                push(
                    "n=1 mod 4 (a)",
                    &[one, i, ([1, 0, 1, 0], 2), ([0, 1, 0, 1], 2)],
                    an,
                );
                push(
                    "n=1 mod 4 (b)",
                    &[one, i, ([0, 1, 1, 0], 2), ([1, 0, 0, 1], 2)],
                    an,
                );
            }
            _ => {}
        },
        -2 => {
            if n % 2 != 0 {
                if md(n, 4) == 3 {
                    push(
                        "n=-1 mod 4",
                        &[one, i, ([1, 1, 1, 0], 2), ([0, 1, 0, 1], 2)],
                        2 * an,
                    );
                } else {
                    push(
                        "n=1 mod 4",
                        &[one, i, ([1, 0, 1, 0], 2), ([0, 1, 0, 1], 2)],
                        2 * an,
                    );
                }
            } else {
                match md(n / 2, 8) {
                    7 => push(
                        "n/2=-1 mod 8",
                        &[one, i, ([0, 1, 1, 0], 2), ([2, 0, 2, 1], 4)],
                        an,
                    ),
                    5 => push(
                        "n/2=-3 mod 8",
                        &[one, i, ([0, 1, 1, 0], 2), ([2, 0, 0, 1], 4)],
                        an,
                    ),
                    3 => push(
                        "n/2=3 mod 8",
                        &[one, i, ([2, 1, 1, 0], 4), ([0, 1, -1, 1], 4)],
                        an,
                    ),
                    1 => push(
                        "n/2=1 mod 8",
                        &[one, i, ([0, 1, 1, 0], 4), ([2, 0, 0, 1], 4)],
                        an,
                    ),
                    _ => {}
                }
            }
        }
        -3 => {
            if n % 3 != 0 {
                push(
                    "3 does not divide n",
                    &[one, w, j, ([0, 0, 1, 1], 2)],
                    3 * an,
                );
            } else if md(n / 3, 3) == 2 {
                push("n/3=-1 mod 3", &[one, w, j, ([0, 0, 3, 1], 6)], an);
            } else {
                push(
                    "n/3=1 mod 3",
                    &[one, w, ([0, 1, 1, 0], 3), ([0, 0, 3, 1], 6)],
                    an,
                );
            }
        }
        -7 => {
            if n % 7 != 0 {
                push(
                    "7 does not divide n",
                    &[one, w, j, ([0, 0, 1, 1], 2)],
                    7 * an,
                );
            } else {
                push("7 divides n", &[one, w, j, ([0, 0, 7, 1], 14)], an);
            }
        }
        -11 => {
            if n % 11 != 0 {
                push(
                    "11 does not divide n",
                    &[one, w, j, ([0, 0, 1, 1], 2)],
                    11 * an,
                );
            } else {
                let m = n / 11;
                let last = ([0, 0, 11, 1], 22);
                if legendre(m, 11) == -1 {
                    push("11 | n, (n/11 | 11) = -1", &[one, w, j, last], an);
                }
                let k = match md(m, 11) {
                    9 => Some((3, "n/11=-2 mod 11")),
                    5 => Some((4, "n/11=5 mod 11")),
                    4 => Some((2, "n/11=4 mod 11")),
                    3 => Some((5, "n/11=3 mod 11")),
                    1 => Some((1, "n/11=1 mod 11")),
                    _ => None,
                };
                if let Some((k, tag)) = k {
                    push(tag, &[one, w, ([0, k, 1, 0], 11), last], an);
                }
            }
        }
        _ => {}
    }
    out
}

/// The five dim-5 classes: algebra, basis and admissible normalized nrm(u).
#[derive(Clone, Debug)]
pub struct Table2Row {
    pub a: i64,
    pub b: i64,
    pub basis: Vec<Coords>,
    pub discrd: i64,
    pub norms: Vec<i64>,
}

pub fn table2() -> Vec<Table2Row> {
    let one = ([1, 0, 0, 0], 1);
    let i = ([0, 1, 0, 0], 1);
    let hur = rows(&[one, i, ([0, 0, 1, 0], 1), ([1, 1, 1, 1], 2)]);
    let t3 = rows(&[one, i, ([0, 1, 1, 0], 2), ([1, 0, 0, 1], 2)]);
    let t5 = rows(&[one, i, ([2, 1, 1, 0], 4), ([2, 2, 0, 1], 4)]);
    vec![
        Table2Row {
            a: -1,
            b: -1,
            basis: hur,
            discrd: 2,
            norms: vec![1, 2, 3, 6, 10],
        },
        Table2Row {
            a: -1,
            b: -3,
            basis: t3.clone(),
            discrd: 3,
            norms: vec![3, 6],
        },
        Table2Row {
            a: -2,
            b: -10,
            basis: t5.clone(),
            discrd: 5,
            norms: vec![5, 10],
        },
        Table2Row {
            a: -1,
            b: -7,
            basis: t3,
            discrd: 7,
            norms: vec![7],
        },
        Table2Row {
            a: -2,
            b: -26,
            basis: t5,
            discrd: 13,
            norms: vec![13],
        },
    ]
}

/// Discriminants D of definite rational quaternion algebras (odd number of
/// prime factors) with D below the bound.
pub fn definite_discriminants(bound: i64) -> Vec<i64> {
    (2..bound)
        .filter(|&d| is_squarefree(d) && primes_dividing(d).len() % 2 == 1)
        .collect()
}

/// The candidate algebras for dim 5 that pass the Minkowski gate. Also
/// returns how many candidates from the doubled range were pruned.
pub fn dim5_candidates() -> (Vec<i64>, usize) {
    let wide = definite_discriminants(2 * DIM5_DISC_BOUND);
    let kept: Vec<i64> = wide
        .iter()
        .copied()
        .filter(|&d| d < DIM5_DISC_BOUND)
        .collect();
    let pruned = wide.len() - kept.len();
    info!(
        "dim 5 gate: {} candidate discriminants below {}, {} pruned from the range below {}",
        kept.len(),
        DIM5_DISC_BOUND,
        pruned,
        2 * DIM5_DISC_BOUND
    );
    (kept, pruned)
}

/// Volume of the unit ball in dimension r, rounded up to a rational.
fn unit_ball_volume_upper(r: usize) -> Q {
    match r {
        0 => qarith::q(1),
        1 => qarith::q(2),
        2 => qarith::qf(315, 100),
        3 => qarith::qf(419, 100),
        _ => qarith::qf(494, 100),
    }
}

/// All covering vectors of an order up to sign, normalized. A covering plane
/// lattice S has covolume below the unit-ball volume, and
/// covol(S) = covol(L) |w| for the primitive dual vector w orthogonal to S,
/// which bounds the search.
pub fn covering_vectors(order: &ArithOrder) -> Vec<CoveringData> {
    let sig = &order.sig;
    let l = order.plus_basis();
    let r = l.len();
    let g = gram(sig, &l);
    let gi = inverse(&g).expect("plus lattice is nondegenerate");
    let dual: Vec<Coords> = gi
        .iter()
        .map(|row| {
            let mut v = zero4();
            for (c, e) in row.iter().zip(&l) {
                for k in 0..4 {
                    v[k] += c * &e[k];
                }
            }
            v
        })
        .collect();
    let covol2 = crate::lattice::det(&g);
    let vb = unit_ball_volume_upper(r - 1);
    let r2 = &vb * &vb / covol2;
    let lat = Lat::new(sig, crate::lattice::lll(sig, &dual));
    let mut seen: BTreeMap<Vec<String>, CoveringData> = BTreeMap::new();
    let mut rejected = std::collections::BTreeSet::new();
    for (_, w) in lat.points_near(sig, &zero4(), &r2) {
        if w.iter().all(Zero::is_zero) || !sig.tr(&w).is_zero() {
            continue;
        }
        let u = match primitive(&l, &w) {
            Some(u) => canonical_sign(u),
            None => continue,
        };
        let key: Vec<String> = u.iter().map(fmt_q).collect();
        if seen.contains_key(&key) || !rejected.insert(key.clone()) {
            continue;
        }
        if let Ok(true) = is_covering_vector(order, &u) {
            if let Ok(cd) = normalize_covering_vector(order, &u) {
                seen.insert(key, cd);
            }
        }
    }
    debug!("{} covering vectors for {}", seen.len(), sig.label());
    seen.into_values().collect()
}

fn canonical_sign(mut u: Coords) -> Coords {
    if let Some(x) = u.iter().find(|x| !x.is_zero()) {
        if x.is_negative() {
            u.iter_mut().for_each(|c| *c = -c.clone());
        }
    }
    u
}

/// One catalog entry: order, normalized covering vector and a table tag.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub cover: CoveringData,
    pub table_ref: String,
    pub stated_discrd: Option<i64>,
}

impl CatalogEntry {
    pub fn order(&self) -> &ArithOrder {
        &self.cover.order
    }
}

fn quat_order(a: i64, b: i64, dim: u8, basis: Vec<Coords>) -> Result<ArithOrder, OrderError> {
    let sig = Arc::new(AlgebraSig::quaternion(dim, a, b));
    ArithOrder::from_basis(sig, basis)
}

fn elem(c: [i64; 4], d: i64) -> Coords {
    c.map(|x| qarith::qf(x, d))
}

/// Dim-4 entry for a Table 1 row, with u = j.
pub fn table1_entry(row: &Table1Row) -> Result<CatalogEntry, OrderError> {
    let order = quat_order(row.a, row.n, 4, row.basis.clone())?;
    let cover = normalize_covering_vector(&order, &elem([0, 0, 1, 0], 1))?;
    Ok(CatalogEntry {
        cover,
        table_ref: format!("dim4 ({},{}) {}", row.a, row.n, row.tag),
        stated_discrd: Some(row.stated_discrd),
    })
}

/// Dim-5 entry for a Table 2 row, with u = ij / gcd(a, b).
pub fn table2_entry(row: &Table2Row) -> Result<CatalogEntry, OrderError> {
    let order = quat_order(row.a, row.b, 5, row.basis.clone())?;
    let g = num_integer::gcd(row.a, row.b);
    let cover = normalize_covering_vector(&order, &elem([0, 0, 0, 1], g))?;
    Ok(CatalogEntry {
        cover,
        table_ref: format!("dim5 ({},{})", row.a, row.b),
        stated_discrd: Some(row.discrd),
    })
}

pub fn dim3_entry(n: i64) -> Result<CatalogEntry, OrderError> {
    let order = quadratic_ring(n)?;
    let cover = normalize_covering_vector(&order, &elem([0, 1, 0, 0], 1))?;
    Ok(CatalogEntry {
        cover,
        table_ref: format!("dim3 n={n}"),
        stated_discrd: None,
    })
}

/// Orders with a covering vector, one per isomorphism fingerprint.
/// dim 3: rings of integers for square-free n up to the bound.
/// dim 4: Table 1 family members with |n| up to the bound.
/// dim 5: Table 2 orders in algebras passing the discriminant gate and
/// below the bound.
pub fn enumerate_covering_orders(dim: u8, bound: i64) -> Result<Vec<CatalogEntry>, OrderError> {
    let mut out: Vec<CatalogEntry> = Vec::new();
    match dim {
        3 => {
            for n in 1..=bound {
                if is_squarefree(n) {
                    out.push(dim3_entry(n)?);
                }
            }
            return Ok(out);
        }
        4 => {
            for a in [-1, -2, -3, -7, -11] {
                for n in (-bound..=-1).rev() {
                    for row in table1_rows(a, n) {
                        out.push(table1_entry(&row)?);
                    }
                }
            }
        }
        5 => {
            let (cands, _) = dim5_candidates();
            for row in table2() {
                let order = quat_order(row.a, row.b, 5, row.basis.clone())?;
                let d = order.algebra_disc().to_i64().unwrap_or(i64::MAX);
                if !cands.contains(&d) || d > bound {
                    continue;
                }
                if !order.is_maximal() {
                    return Err(OrderError::Consistency(format!(
                        "table order in ({},{}) is not maximal",
                        row.a, row.b
                    )));
                }
                out.push(table2_entry(&row)?);
            }
        }
        _ => return Err(OrderError::Domain(format!("dim {dim}"))),
    }
    Ok(dedup(out))
}

fn dedup(entries: Vec<CatalogEntry>) -> Vec<CatalogEntry> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for e in entries {
        let f = (e.order().fingerprint(), e.cover.nrm_u.clone());
        if seen.insert(f) {
            out.push(e);
        } else {
            debug!("fingerprint collision: {} folded", e.table_ref);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CatalogRecord {
    pub sig: AlgebraSig,
    pub basis: Vec<[String; 4]>,
    pub discrd: String,
    pub covering_vector: [String; 4],
    pub su_basis: Vec<[String; 4]>,
    pub tau: [String; 4],
    pub nrm_u: String,
    pub table_ref: String,
}

fn strs(c: &Coords) -> [String; 4] {
    std::array::from_fn(|k| fmt_q(&c[k]))
}

impl CatalogRecord {
    pub fn from_entry(e: &CatalogEntry) -> Self {
        let c = &e.cover;
        CatalogRecord {
            sig: (*c.order.sig).clone(),
            basis: c.order.basis.iter().map(strs).collect(),
            discrd: c.order.discrd.to_string(),
            covering_vector: strs(&c.u),
            su_basis: c.su_basis.iter().map(strs).collect(),
            tau: strs(&c.tau),
            nrm_u: c.nrm_u.to_string(),
            table_ref: e.table_ref.clone(),
        }
    }

    /// Rebuild the entry, recomputing everything from the stored basis and u.
    pub fn to_entry(&self) -> Result<CatalogEntry, OrderError> {
        let parse = |s: &[String; 4]| -> Result<Coords, OrderError> {
            let mut c = zero4();
            for k in 0..4 {
                c[k] = qarith::parse_q(&s[k]).map_err(|e| OrderError::Domain(e.to_string()))?;
            }
            Ok(c)
        };
        let basis = self
            .basis
            .iter()
            .map(parse)
            .collect::<Result<Vec<_>, _>>()?;
        let order = ArithOrder::from_basis(Arc::new(self.sig.clone()), basis)?;
        if order.discrd.to_string() != self.discrd {
            return Err(OrderError::Consistency("stored discrd differs".into()));
        }
        let cover = normalize_covering_vector(&order, &parse(&self.covering_vector)?)?;
        Ok(CatalogEntry {
            cover,
            table_ref: self.table_ref.clone(),
            stated_discrd: None,
        })
    }
}

pub fn catalog_json(entries: &[CatalogEntry]) -> String {
    let recs: Vec<CatalogRecord> = entries.iter().map(CatalogRecord::from_entry).collect();
    serde_json::to_string_pretty(&recs).expect("catalog serializes")
}

pub fn parse_catalog(s: &str) -> Result<Vec<CatalogRecord>, OrderError> {
    serde_json::from_str(s).map_err(|e| OrderError::Domain(e.to_string()))
}

/// Sorted distinct nrm(u) over all normalized covering vectors.
pub fn covering_norm_set(order: &ArithOrder) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = covering_vectors(order)
        .into_iter()
        .map(|c| c.nrm_u)
        .collect();
    v.sort();
    v.dedup();
    v
}

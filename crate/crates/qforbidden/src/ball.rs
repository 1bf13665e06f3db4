use crate::catalog::{abs_discrd, dim5_entry, dim5_rows, row_base, row_entry, table_rows, Inadmissible, TableRow};
use crate::error::ForbiddenError;
use crate::residue::{congruence_class, CongruenceClass};
use num_traits::{Signed, Zero};
use qarith::{fmt_q, qf, Coords, Q};
use qinversive::{InvCoord, ScaledInv};
use qorders::catalog::{dim3_entry, CatalogEntry};
use qorders::lattice::{int_kernel, zspan};
use qorders::order::is_squarefree;
use qorders::CoveringData;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableRef {
    /// Ghost circle for |disc| = 0 mod 4.
    Dim3GhostEven { d: i64 },
    /// Ghost circle for odd |disc| (basis 1, (1 + sqrt(-d))/2).
    Dim3GhostOdd { d: i64 },
    Table4Row { row: String, n: i64 },
    Table5Row { row: String, n: i64 },
    Table6Row { row: usize },
}

impl std::fmt::Display for TableRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableRef::Dim3GhostEven { d } | TableRef::Dim3GhostOdd { d } => write!(f, "ghost circle d={d}"),
            TableRef::Table4Row { row, n } | TableRef::Table5Row { row, n } => write!(f, "row {row} n={n}"),
            TableRef::Table6Row { row } => write!(f, "dim5 row {row}"),
        }
    }
}

/// How the ball coordinates were obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Construction {
    /// The catalog coordinates and scale, as listed.
    Listed,
    /// The listed entry does not satisfy q = nrm(u) (or its scale is not
    /// real); the sphere orthogonal to the unit spheres at 0 and the
    /// lattice basis points is used instead.
    Orthogonal { listed_scale2: Option<String>, listed_q: String },
}

#[derive(Clone, Debug)]
pub struct ForbiddenBall {
    pub cover: CoveringData,
    pub inv: ScaledInv,
    pub congruence_class: CongruenceClass,
    pub table_ref: TableRef,
    pub construction: Construction,
    /// Lattice whose unit spheres the ball is built against.
    pub frame: Vec<Coords>,
}

impl ForbiddenBall {
    fn build(
        cover: CoveringData,
        inv: ScaledInv,
        table_ref: TableRef,
        construction: Construction,
        frame: Vec<Coords>,
    ) -> Result<Self, ForbiddenError> {
        let sig = cover.sig().clone();
        let n = cover.nrm_q();
        if inv.q_form(&sig) != n {
            return Err(ForbiddenError::Certificate(format!(
                "{table_ref}: q = {} but nrm(u) = {}",
                fmt_q(&inv.q_form(&sig)),
                fmt_q(&n)
            )));
        }
        let congruence_class = congruence_class(&sig, &cover.full_basis(), &cover.u, &inv.scale2, &inv.base);
        Ok(ForbiddenBall { cover, inv, congruence_class, table_ref, construction, frame })
    }

    /// Symbolic certificate: the class misses [-nrm(u), nrm(u)].
    pub fn symbolic_pass(&self) -> bool {
        self.congruence_class.misses(&self.cover.nrm_q())
    }

    /// Euclidean center and squared radius of the ball.
    pub fn center(&self) -> Coords {
        self.inv.base.center().expect("ball is not a plane")
    }

    pub fn radius2(&self) -> Q {
        let k = &self.inv.base.kappa;
        self.cover.nrm_q() / (&self.inv.scale2 * k * k)
    }
}

/// Center 1/2 + y sqrt(-d) and squared radius of the ghost circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostCircle {
    pub d: i64,
    pub re: Q,
    /// Coefficient of sqrt(-d) in the center.
    pub im: Q,
    pub r2: Q,
}

pub fn ghost_circle(d: i64) -> Result<GhostCircle, ForbiddenError> {
    if d <= 11 {
        return Err(ForbiddenError::Domain(format!("ghost circle needs |disc| > 11, got {d}")));
    }
    let dq = Q::from_integer(d.into());
    let g = if d % 4 == 0 {
        GhostCircle { d, re: qf(1, 2), im: qf(1, 4), r2: (&dq - Q::from_integer(12.into())) / Q::from_integer(16.into()) }
    } else if d % 2 == 1 {
        // (d - 1) / (4 sqrt(-d)) = -(d - 1) sqrt(-d) / (4 d)
        let r2 = (&dq * &dq - Q::from_integer(14.into()) * &dq + Q::from_integer(1.into())) / (Q::from_integer(16.into()) * &dq);
        GhostCircle { d, re: qf(1, 2), im: -qf(d - 1, 4 * d), r2 }
    } else {
        return Err(ForbiddenError::Domain(format!("{d} = 2 mod 4 is not a discriminant")));
    };
    if !g.r2.is_positive() {
        return Err(ForbiddenError::Domain(format!("ghost circle for d={d} has radius 0")));
    }
    Ok(g)
}

/// The ring of integers with |disc| = d, as n with O_K in Q(sqrt(-n)).
pub fn ring_for_disc(d: i64) -> Option<i64> {
    if d % 4 == 0 {
        let n = d / 4;
        (is_squarefree(n) && matches!(n % 4, 1 | 2)).then_some(n)
    } else {
        (d % 4 == 3 && is_squarefree(d)).then_some(d)
    }
}

/// Ghost circle of the ring of integers with |disc| = d, as a ball.
pub fn ghost_ball(d: i64) -> Result<ForbiddenBall, ForbiddenError> {
    let g = ghost_circle(d)?;
    let m = ring_for_disc(d)
        .ok_or_else(|| ForbiddenError::NotCovered(format!("no imaginary quadratic ring of integers has |disc| = {d}")))?;
    let entry = dim3_entry(m)?;
    // sqrt(-d) = (sqrt(-d) / sqrt(-m)) sqrt(-m)
    let k = if d == m { Q::from_integer(1.into()) } else { Q::from_integer(2.into()) };
    let c: Coords = [g.re.clone(), &g.im * &k, Q::zero(), Q::zero()];
    let sig = entry.cover.sig().clone();
    let base = InvCoord::new(Q::from_integer(1.into()), sig.nrm(&c) - &g.r2, c, true);
    let scale2 = entry.cover.nrm_q() / &g.r2;
    let table_ref = if d % 4 == 0 { TableRef::Dim3GhostEven { d } } else { TableRef::Dim3GhostOdd { d } };
    let frame = entry.cover.order.plus_basis();
    ForbiddenBall::build(entry.cover, ScaledInv::new(scale2, base), table_ref, Construction::Listed, frame)
}

/// The sphere orthogonal to the unit spheres centered at 0 and at the
/// given points, with positive bend, up to scale. None unless unique.
pub fn orthogonal_sphere(sig: &qarith::AlgebraSig, points: &[Coords]) -> Option<InvCoord> {
    let idx: Vec<usize> = (0..sig.plus_rank()).collect();
    // unknowns kappa, kappa', xi_k (k in idx); one equation per point z:
    // -kappa (nrm z - 1) - kappa' + 2 <xi, z> = 0
    let zero = qarith::zero4();
    let pts: Vec<&Coords> = std::iter::once(&zero).chain(points.iter()).collect();
    let met = sig.metric();
    let two = Q::from_integer(2.into());
    let mut cols: Vec<Vec<Q>> = vec![
        pts.iter().map(|z| Q::from_integer(1.into()) - sig.nrm(z)).collect(),
        pts.iter().map(|_| -Q::from_integer(1.into())).collect(),
    ];
    for &k in &idx {
        cols.push(pts.iter().map(|z| &two * &met[k] * &z[k]).collect());
    }
    let ker = int_kernel(&cols);
    if ker.len() != 1 {
        return None;
    }
    let v: Vec<Q> = ker[0].iter().cloned().map(Q::from_integer).collect();
    let mut xi = qarith::zero4();
    for (t, &k) in idx.iter().enumerate() {
        xi[k] = v[2 + t].clone();
    }
    let s = InvCoord::new(v[0].clone(), v[1].clone(), xi, true);
    if s.kappa.is_zero() {
        return None;
    }
    Some(if s.kappa.is_negative() { s.flip() } else { s })
}

fn table_ref_for(row: &TableRow, n: i64) -> TableRef {
    if row.table == 4 {
        TableRef::Table4Row { row: row.id.into(), n }
    } else {
        TableRef::Table5Row { row: row.id.into(), n }
    }
}

/// Listed ball of a dim-4 row at n; falls back to the orthogonal sphere
/// when the listed one fails q = nrm(u).
pub fn row_ball(row: &TableRow, n: i64) -> Result<ForbiddenBall, ForbiddenError> {
    let entry = row_entry(row, n).map_err(|e| ForbiddenError::NotCovered(format!("row {} n={n}: {e:?}", row.id)))?;
    ball_for_entry(row, n, entry)
}

fn ball_for_entry(row: &TableRow, n: i64, entry: CatalogEntry) -> Result<ForbiddenBall, ForbiddenError> {
    let d = abs_discrd(&entry)?;
    let cover = entry.cover;
    let sig = cover.sig().clone();
    let nu = cover.nrm_q();
    let base = row_base(row, n);
    let scale2 = (row.scale2)(&d);
    let tref = table_ref_for(row, n);
    let frame = row.plus_basis();
    if let Some(s2) = scale2.as_ref().filter(|s| s.is_positive()) {
        if s2 * base.q_form(&sig) == nu {
            return ForbiddenBall::build(cover, ScaledInv::new(s2.clone(), base), tref, Construction::Listed, frame);
        }
    }
    let listed_q = scale2.as_ref().map(|s| s * base.q_form(&sig)).unwrap_or_else(|| base.q_form(&sig));
    let construction =
        Construction::Orthogonal { listed_scale2: scale2.as_ref().map(fmt_q), listed_q: fmt_q(&listed_q) };
    let g = orthogonal_sphere(&sig, &frame)
        .ok_or_else(|| ForbiddenError::Certificate(format!("{tref}: no unique orthogonal sphere")))?;
    let q0 = g.q_form(&sig);
    if !q0.is_positive() {
        return Err(ForbiddenError::Certificate(format!("{tref}: orthogonal sphere is imaginary (q = {})", fmt_q(&q0))));
    }
    ForbiddenBall::build(cover, ScaledInv::new(&nu / q0, g), tref, construction, frame)
}

pub fn dim5_ball(index: usize) -> Result<ForbiddenBall, ForbiddenError> {
    let row = dim5_rows()
        .into_iter()
        .find(|r| r.index == index)
        .ok_or_else(|| ForbiddenError::Domain(format!("no dim-5 row {index}")))?;
    let entry = dim5_entry(&row)?;
    let base = InvCoord::new(row.kappa.clone(), row.kappa_p.clone(), row.xi.clone(), true);
    let frame = entry.cover.order.plus_basis();
    ForbiddenBall::build(entry.cover, ScaledInv::new(row.scale2.clone(), base), TableRef::Table6Row { row: index }, Construction::Listed, frame)
}

fn same_lattice(a: &[Coords], b: &[Coords]) -> bool {
    zspan(a) == zspan(b)
}

fn small_norm(cover: &CoveringData) -> Option<ForbiddenError> {
    (cover.nrm_q() <= Q::from_integer(3.into()))
        .then(|| ForbiddenError::NotCovered(format!("nrm(u) = {} <= 3", cover.nrm_u)))
}

/// The catalog ball for a cover, matched by algebra and lattice.
pub fn table_forbidden_ball(cover: &CoveringData) -> Result<ForbiddenBall, ForbiddenError> {
    if let Some(e) = small_norm(cover) {
        return Err(e);
    }
    let sig = cover.sig();
    let a = qarith::to_int(&sig.a).and_then(|x| i64::try_from(x).ok());
    let b = qarith::to_int(&sig.bq()).and_then(|x| i64::try_from(x).ok());
    let (Some(a), Some(b)) = (a, b) else {
        return Err(ForbiddenError::NotCovered("non-integral algebra parameters".into()));
    };
    let ju = |u: &Coords| u[0].is_zero() && u[1].is_zero() && u[3].is_zero() && !u[2].is_zero();
    match cover.dim() {
        3 => {
            let m = -a;
            let d = if m % 4 == 3 { m } else { 4 * m };
            let ball = ghost_ball(d)?;
            if !same_lattice(&ball.cover.plus_basis, &cover.plus_basis) {
                return Err(ForbiddenError::NotCovered(format!("cover is not the ring of integers of |disc| {d}")));
            }
            Ok(ball)
        }
        4 => {
            if !ju(&cover.u) {
                return Err(ForbiddenError::NotCovered("covering vector is not a multiple of j".into()));
            }
            let mut last = None;
            for row in table_rows().iter().filter(|r| r.a == a) {
                let Some(n) = row.solve_n(b) else { continue };
                if !same_lattice(&row.plus_basis(), &cover.plus_basis) {
                    continue;
                }
                match row_entry(row, n) {
                    Ok(entry) => return ball_for_entry(row, n, entry),
                    Err(e) => last = Some(e),
                }
            }
            Err(ForbiddenError::NotCovered(match last {
                Some(Inadmissible::Euclidean) => "order is norm-Euclidean (covering radius below 1)".into(),
                Some(e) => format!("no admissible row: {e:?}"),
                None => "no matching row".into(),
            }))
        }
        _ => {
            for row in dim5_rows() {
                if row.a == a && row.b == b {
                    let ball = dim5_ball(row.index)?;
                    if same_lattice(&ball.cover.order.basis, &cover.order.basis) {
                        return Ok(ball);
                    }
                }
            }
            Err(ForbiddenError::NotCovered("no matching dim-5 row".into()))
        }
    }
}

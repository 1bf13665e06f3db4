use crate::error::ForbiddenError;
use num_traits::{Signed, Zero};
use qarith::{qf, Coords, Q};
use qorders::catalog::{table1_entry, table1_rows, table2, table2_entry, CatalogEntry};
use qorders::lattice::{covering_radius2, zspan};
use qorders::order::is_squarefree;

/// One row of the dim-4 forbidden-ball tables, as a family in n:
/// algebra (a, b0 + b1 n), the "+" lattice, the ball base coordinates
/// (kappa, kappa', xi_1, xi_i, xi_j) and the scale factor squared as a
/// function of D = |discrd|.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub id: &'static str,
    pub table: u8,
    pub a: i64,
    pub b0: i64,
    pub b1: i64,
    pub plus: [([i64; 4], i64); 3],
    pub base: fn(i64) -> [Q; 5],
    pub scale2: fn(&Q) -> Option<Q>,
    pub nmin: i64,
    pub extra: fn(i64) -> bool,
}

impl TableRow {
    pub fn b(&self, n: i64) -> i64 {
        self.b0 + self.b1 * n
    }

    pub fn plus_basis(&self) -> Vec<Coords> {
        qorders::order::rows(&self.plus)
    }

    /// n with b(n) = b, if any.
    pub fn solve_n(&self, b: i64) -> Option<i64> {
        let d = b - self.b0;
        (d % self.b1 == 0).then(|| d / self.b1)
    }
}

fn ratio(num: Q, den: Q) -> Option<Q> {
    (!den.is_zero()).then(|| num / den)
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn b5(k: i64, kp: i64, x: Q, y: Q, z: Q) -> [Q; 5] {
    [qi(k), qi(kp), x, y, z]
}

fn any(_: i64) -> bool {
    true
}

const ONE: ([i64; 4], i64) = ([1, 0, 0, 0], 1);
const I: ([i64; 4], i64) = ([0, 1, 0, 0], 1);
const J: ([i64; 4], i64) = ([0, 0, 1, 0], 1);
const W: ([i64; 4], i64) = ([1, 1, 0, 0], 2);

pub fn table_rows() -> Vec<TableRow> {
    vec![
        TableRow {
            id: "4.1",
            table: 4,
            a: -1,
            b0: -1,
            b1: -4,
            plus: [ONE, I, J],
            base: |_| b5(2, 2, qi(1), qi(1), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(4)),
            nmin: 1,
            extra: any,
        },
        TableRow {
            id: "4.2",
            table: 4,
            a: -1,
            b0: 0,
            b1: -2,
            plus: [ONE, I, ([1, 1, 1, 0], 2)],
            base: |n| b5(4, 4, qi(2), qi(2), qf(n - 1, n)),
            scale2: |d| ratio(d * d, d * d - qi(12) * d + qi(4)),
            nmin: 1,
            extra: any,
        },
        TableRow {
            id: "4.3a",
            table: 4,
            a: -1,
            b0: 1,
            b1: -4,
            plus: [ONE, I, ([1, 0, 1, 0], 2)],
            base: |n| b5(4, 4, qi(2), qi(2), qf(n - 1, n)),
            scale2: |d| ratio(d * d, d * d - qi(10) * d + qi(1)),
            nmin: 1,
            extra: any,
        },
        TableRow {
            id: "4.3b",
            table: 4,
            a: -1,
            b0: 1,
            b1: -4,
            plus: [ONE, I, ([0, 1, 1, 0], 2)],
            base: |n| b5(4, 4, qi(2), qi(2), qf(n - 1, n)),
            scale2: |d| ratio(d * d, d * d - qi(10) * d + qi(1)),
            nmin: 1,
            extra: any,
        },
        TableRow {
            id: "4.4",
            table: 4,
            a: -2,
            b0: -1,
            b1: -4,
            plus: [ONE, I, ([1, 1, 1, 0], 2)],
            base: |n| b5(4, 4, qi(2), qi(2), qf(4 * n - 2, 4 * n + 1)),
            scale2: |d| ratio(d * d, (d - qi(2)) * (d - qi(18))),
            nmin: 1,
            extra: any,
        },
        TableRow {
            id: "4.5",
            table: 4,
            a: -2,
            b0: 1,
            b1: -4,
            plus: [ONE, I, ([1, 0, 1, 0], 2)],
            base: |n| b5(4, 4, qi(2), qi(2), qf(4 * n - 2, 4 * n - 1)),
            scale2: |d| ratio(d * d, d * d - qi(12) * d + qi(4)),
            nmin: 1,
            extra: any,
        },
        TableRow {
            id: "4.6",
            table: 4,
            a: -2,
            b0: 6,
            b1: -16,
            plus: [ONE, I, ([2, 1, 1, 0], 4)],
            base: |n| b5(8, 8, qi(4), qi(4), qf(8 * n - 13, 8 * n - 3)),
            scale2: |d| ratio(d * d, d * d - qi(18) * d + qi(25)),
            nmin: 1,
            extra: any,
        },
        TableRow {
            id: "4.7",
            table: 4,
            a: -2,
            b0: 2,
            b1: -16,
            plus: [ONE, I, ([0, 1, 1, 0], 4)],
            base: |n| b5(8, 8, qi(4), qi(4), qf(8 * n - 7, 8 * n - 1)),
            scale2: |d| ratio(d * d, d * d - qi(14) * d + qi(9)),
            nmin: 1,
            extra: any,
        },
        TableRow {
            id: "4.8",
            table: 4,
            a: -3,
            b0: 0,
            b1: -1,
            plus: [ONE, W, J],
            base: |_| b5(2, 2, qi(1), qf(1, 3), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(8)),
            nmin: 1,
            extra: |n| n % 3 != 0,
        },
        TableRow {
            id: "4.9",
            table: 4,
            a: -3,
            b0: 3,
            b1: -9,
            plus: [ONE, W, ([0, 1, 1, 0], 3)],
            base: |_| b5(6, 6, qi(3), qi(1), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(8)),
            nmin: 1,
            extra: any,
        },
        TableRow {
            id: "4.10",
            table: 4,
            a: -7,
            b0: 0,
            b1: -1,
            plus: [ONE, W, J],
            base: |_| b5(2, 2, qi(1), qf(3, 7), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(12)),
            nmin: 1,
            extra: |n| n % 7 != 0,
        },
        TableRow {
            id: "4.11",
            table: 4,
            a: -11,
            b0: 0,
            b1: -11,
            plus: [ONE, W, J],
            base: |_| b5(2, 2, qi(1), qf(5, 11), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(8)),
            nmin: 1,
            extra: |n| n % 11 != 0,
        },
        TableRow {
            id: "5.1",
            table: 5,
            a: -2,
            b0: -2,
            b1: -16,
            plus: [ONE, I, ([0, 1, 1, 0], 2)],
            base: |n| b5(4, 4, qi(2), qi(2), qf(8 * n, 1 + 8 * n)),
            scale2: |d| ratio(d.clone(), d * d - qi(8) * d + qi(4)),
            nmin: 0,
            extra: any,
        },
        TableRow {
            id: "5.2",
            table: 5,
            a: -2,
            b0: -6,
            b1: -16,
            plus: [ONE, I, ([0, 1, 1, 0], 2)],
            base: |n| b5(4, 4, qi(2), qi(2), qf(8 * n, 1 + 8 * n)),
            scale2: |d| ratio(d.clone(), d * d - qi(8) * d + qi(4)),
            nmin: 0,
            extra: any,
        },
        TableRow {
            id: "5.3",
            table: 5,
            a: -3,
            b0: -3,
            b1: -9,
            plus: [ONE, W, J],
            base: |_| b5(2, 2, qi(1), qf(1, 3), qi(1)),
            scale2: |d| ratio(qi(3) * d, qi(3) * d - qi(8)),
            nmin: 0,
            extra: any,
        },
        TableRow {
            id: "5.4",
            table: 5,
            a: -7,
            b0: 0,
            b1: -7,
            plus: [ONE, W, J],
            base: |_| b5(2, 2, qi(1), qf(3, 7), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(12)),
            nmin: 0,
            extra: any,
        },
        TableRow {
            id: "5.5",
            table: 5,
            a: -11,
            b0: 0,
            b1: -11,
            plus: [ONE, W, J],
            base: |_| b5(2, 2, qi(1), qf(5, 11), qi(1)),
            scale2: |d| ratio(qi(11) * d, qi(11) * d - qi(8)),
            nmin: 0,
            extra: |n| [1, 3, 4, 5, 9].contains(&n.rem_euclid(11)),
        },
        TableRow {
            id: "5.6",
            table: 5,
            a: -11,
            b0: -22,
            b1: -121,
            plus: [ONE, W, ([0, 3, 1, 0], 11)],
            base: |_| b5(22, 22, qi(11), qi(3), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(24)),
            nmin: 0,
            extra: any,
        },
        TableRow {
            id: "5.7",
            table: 5,
            a: -11,
            b0: 55,
            b1: -121,
            plus: [ONE, W, ([0, 4, 1, 0], 11)],
            base: |_| b5(22, 22, qi(0), qi(4), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(28)),
            nmin: 0,
            extra: any,
        },
        TableRow {
            id: "5.8",
            table: 5,
            a: -11,
            b0: 44,
            b1: -121,
            plus: [ONE, W, ([0, 2, 1, 0], 11)],
            base: |_| b5(22, 22, qi(0), qi(2), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(40)),
            nmin: 0,
            extra: any,
        },
        TableRow {
            id: "5.9",
            table: 5,
            a: -11,
            b0: 33,
            b1: -121,
            plus: [ONE, W, ([0, 5, 1, 0], 11)],
            base: |_| b5(22, 22, qi(0), qi(-6), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(8)),
            nmin: 0,
            extra: any,
        },
        TableRow {
            id: "5.10",
            table: 5,
            a: -11,
            b0: 11,
            b1: -121,
            plus: [ONE, W, ([0, 1, 1, 0], 11)],
            base: |_| b5(22, 66, qi(0), qi(-10), qi(1)),
            scale2: |d| ratio(d.clone(), d - qi(32)),
            nmin: 0,
            extra: any,
        },
    ]
}

pub fn table_row(id: &str) -> Option<TableRow> {
    table_rows().into_iter().find(|r| r.id == id)
}

/// A dim-5 row: algebra, order basis and ball (scale2, kappa, kappa', xi).
#[derive(Clone, Debug)]
pub struct Dim5Row {
    pub index: usize,
    pub a: i64,
    pub b: i64,
    pub scale2: Q,
    pub kappa: Q,
    pub kappa_p: Q,
    pub xi: Coords,
}

pub fn dim5_rows() -> Vec<Dim5Row> {
    vec![
        Dim5Row {
            index: 1,
            a: -1,
            b: -7,
            scale2: qi(1),
            kappa: qi(7),
            kappa_p: qi(7),
            xi: [qf(7, 2), qf(7, 2), qf(3, 2), qf(3, 2)],
        },
        Dim5Row {
            index: 2,
            a: -2,
            b: -26,
            scale2: qf(1, 5),
            kappa: qi(13),
            kappa_p: qi(13),
            xi: [qf(13, 2), qf(13, 2), qi(1), qf(5, 4)],
        },
    ]
}

pub fn dim5_entry(row: &Dim5Row) -> Result<CatalogEntry, ForbiddenError> {
    let t = table2().into_iter().find(|t| t.a == row.a && t.b == row.b).ok_or_else(|| {
        ForbiddenError::Domain(format!("no dim-5 order in ({},{})", row.a, row.b))
    })?;
    Ok(table2_entry(&t)?)
}

/// Why an n is not admissible for a row, if it is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inadmissible {
    BelowRange,
    NotNegative,
    NotSquarefree,
    RowCondition,
    NoOrder,
    SmallNorm,
    /// The "+" lattice has covering radius below 1: the order is
    /// norm-Euclidean in the dagger sense and no ball is claimed.
    Euclidean,
}

/// The order of a row at n, or why the row does not apply there.
pub fn row_entry(row: &TableRow, n: i64) -> Result<CatalogEntry, Inadmissible> {
    if n < row.nmin {
        return Err(Inadmissible::BelowRange);
    }
    let b = row.b(n);
    if b >= 0 {
        return Err(Inadmissible::NotNegative);
    }
    if !is_squarefree(b) {
        return Err(Inadmissible::NotSquarefree);
    }
    if !(row.extra)(n) {
        return Err(Inadmissible::RowCondition);
    }
    let want = zspan(&row.plus_basis());
    let entry = table1_rows(row.a, b)
        .iter()
        .filter_map(|r| table1_entry(r).ok())
        .find(|e| zspan(&e.cover.plus_basis) == want)
        .ok_or(Inadmissible::NoOrder)?;
    let c = &entry.cover;
    if c.nrm_q() <= qi(3) {
        return Err(Inadmissible::SmallNorm);
    }
    if covering_radius2(c.sig(), &c.plus_basis) < qi(1) {
        return Err(Inadmissible::Euclidean);
    }
    Ok(entry)
}

/// The first `count` admissible n of a row, with their orders.
pub fn admissible(row: &TableRow, count: usize) -> Vec<(i64, CatalogEntry)> {
    let mut out = vec![];
    let mut n = row.nmin;
    while out.len() < count && n < row.nmin + 400 {
        if let Ok(e) = row_entry(row, n) {
            out.push((n, e));
        }
        n += 1;
    }
    out
}

/// Literal base coordinates of a row at n, as an InvCoord.
pub fn row_base(row: &TableRow, n: i64) -> qinversive::InvCoord {
    let [k, kp, x, y, z] = (row.base)(n);
    qinversive::InvCoord::new(k, kp, [x, y, z, Q::zero()], true)
}

pub fn abs_discrd(entry: &CatalogEntry) -> Result<Q, ForbiddenError> {
    let d = entry.cover.order.reduced_discriminant()?;
    Ok(Q::from_integer(d).abs())
}

//! Lattices inside the algebra, measured with the norm form.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use qarith::{qf, to_f64, zero4, AlgebraSig, BigInt, Coords, Q};

/// Hermite normal form of integer rows (zero rows dropped).
pub fn int_hnf(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    if m.is_empty() {
        return m;
    }
    let n = m[0].len();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..n {
        if m.is_empty() {
            break;
        }
        let (mut piv, mut rest): (Vec<_>, Vec<_>) = m.into_iter().partition(|r| !r[col].is_zero());
        while piv.len() > 1 {
            piv.sort_by(|x, y| x[col].abs().cmp(&y[col].abs()));
            let p = piv[0].clone();
            let mut next = vec![p.clone()];
            for r in piv.into_iter().skip(1) {
                let qq = r[col].div_floor(&p[col]);
                let y: Vec<BigInt> = r.iter().zip(&p).map(|(a, b)| a - &qq * b).collect();
                if !y[col].is_zero() {
                    next.push(y);
                } else if y.iter().any(|v| !v.is_zero()) {
                    rest.push(y);
                }
            }
            piv = next;
        }
        if let Some(mut p) = piv.pop() {
            if p[col].is_negative() {
                p.iter_mut().for_each(|v| *v = -v.clone());
            }
            basis.push(p);
        }
        m = rest;
    }
    for i in 0..basis.len() {
        let c = basis[i].iter().position(|v| !v.is_zero()).unwrap();
        for j in 0..i {
            let qq = basis[j][c].div_floor(&basis[i][c]);
            if !qq.is_zero() {
                let bi = basis[i].clone();
                for (a, b) in basis[j].iter_mut().zip(&bi) {
                    *a -= &qq * b;
                }
            }
        }
    }
    basis
}

fn common_denom<'a>(it: impl Iterator<Item = &'a Q>) -> BigInt {
    it.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Canonical Z-basis of the Z-span of rational vectors.
pub fn zspan_vec(vecs: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if vecs.is_empty() {
        return vec![];
    }
    let d = common_denom(vecs.iter().flatten());
    let dq = Q::from_integer(d.clone());
    let rows = vecs
        .iter()
        .map(|v| v.iter().map(|x| (x * &dq).to_integer()).collect())
        .collect();
    int_hnf(rows)
        .into_iter()
        .map(|r| r.into_iter().map(|x| Q::new(x, d.clone())).collect())
        .collect()
}

pub fn zspan(vecs: &[Coords]) -> Vec<Coords> {
    let v: Vec<Vec<Q>> = vecs.iter().map(|c| c.to_vec()).collect();
    zspan_vec(&v).into_iter().map(to_coords).collect()
}

fn to_coords(v: Vec<Q>) -> Coords {
    let mut c = zero4();
    for (k, x) in v.into_iter().enumerate() {
        c[k] = x;
    }
    c
}

/// Integer relations: all c in Z^r with sum c_i v_i = 0, as an HNF basis.
pub fn int_kernel(vecs: &[Vec<Q>]) -> Vec<Vec<BigInt>> {
    let r = vecs.len();
    if r == 0 {
        return vec![];
    }
    let k = vecs[0].len();
    let d = common_denom(vecs.iter().flatten());
    let dq = Q::from_integer(d);
    let rows: Vec<Vec<BigInt>> = vecs
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row: Vec<BigInt> = v.iter().map(|x| (x * &dq).to_integer()).collect();
            row.extend((0..r).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    int_hnf(rows)
        .into_iter()
        .filter(|row| row[..k].iter().all(|x| x.is_zero()))
        .map(|row| row[k..].to_vec())
        .collect()
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let inv = Q::one() / &a[c][c];
        a[c].iter_mut().for_each(|x| *x *= &inv);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let row_c = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&row_c) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a set of rational vectors.
pub fn rank(vecs: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = vecs.to_vec();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..a.len() {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Coordinates of x in a basis of independent vectors, if x is in their span.
pub fn solve_coords(basis: &[Coords], x: &Coords) -> Option<Vec<Q>> {
    let r = basis.len();
    // augmented system sum c_i b_i = x over the 4 coordinates
    let mut a: Vec<Vec<Q>> = (0..4)
        .map(|k| {
            let mut row: Vec<Q> = basis.iter().map(|b| b[k].clone()).collect();
            row.push(x[k].clone());
            row
        })
        .collect();
    let mut piv_cols = vec![];
    let mut row = 0;
    for c in 0..r {
        let Some(p) = (row..4).find(|&i| !a[i][c].is_zero()) else {
            return None;
        };
        a.swap(p, row);
        let inv = Q::one() / &a[row][c];
        a[row].iter_mut().for_each(|v| *v *= &inv);
        for i in 0..4 {
            if i != row && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let rr = a[row].clone();
                for (v, w) in a[i].iter_mut().zip(&rr) {
                    *v -= &f * w;
                }
            }
        }
        piv_cols.push(c);
        row += 1;
    }
    if (row..4).any(|i| !a[i][r].is_zero()) {
        return None;
    }
    Some((0..r).map(|i| a[i][r].clone()).collect())
}

pub fn in_lattice(basis: &[Coords], x: &Coords) -> bool {
    solve_coords(basis, x).is_some_and(|c| c.iter().all(qarith::is_integer))
}

pub fn combine(basis: &[Coords], c: &[Q]) -> Coords {
    let mut out = zero4();
    for (b, k) in basis.iter().zip(c) {
        if k.is_zero() {
            continue;
        }
        for t in 0..4 {
            out[t] += &b[t] * k;
        }
    }
    out
}

pub fn combine_int(basis: &[Coords], c: &[i64]) -> Coords {
    let cq: Vec<Q> = c.iter().map(|&k| Q::from_integer(k.into())).collect();
    combine(basis, &cq)
}

pub fn gram(sig: &AlgebraSig, basis: &[Coords]) -> Vec<Vec<Q>> {
    basis
        .iter()
        .map(|x| basis.iter().map(|y| sig.dot(x, y)).collect())
        .collect()
}

/// Exact LLL reduction (delta = 3/4) with respect to the norm form.
pub fn lll(sig: &AlgebraSig, basis: &[Coords]) -> Vec<Coords> {
    let mut b: Vec<Coords> = basis.to_vec();
    let n = b.len();
    if n < 2 {
        return b;
    }
    let delta = qf(3, 4);
    let mut k = 1;
    let gso = |b: &Vec<Coords>| -> (Vec<Vec<Q>>, Vec<Q>) {
        let mut mu = vec![vec![Q::zero(); n]; n];
        let mut bstar: Vec<Coords> = Vec::with_capacity(n);
        let mut nb = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = b[i].clone();
            for j in 0..i {
                mu[i][j] = sig.dot(&b[i], &bstar[j]) / &nb[j];
                for t in 0..4 {
                    let s = &mu[i][j] * &bstar[j][t];
                    v[t] -= s;
                }
            }
            nb.push(sig.dot(&v, &v));
            bstar.push(v);
        }
        (mu, nb)
    };
    let (mut mu, mut nb) = gso(&b);
    while k < n {
        for j in (0..k).rev() {
            let r = mu[k][j].round();
            if !r.is_zero() {
                for t in 0..4 {
                    let s = &r * &b[j][t];
                    b[k][t] -= s;
                }
                let recomputed = gso(&b);
                mu = recomputed.0;
                nb = recomputed.1;
            }
        }
        let lhs = &nb[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &nb[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let recomputed = gso(&b);
            mu = recomputed.0;
            nb = recomputed.1;
            k = k.max(2) - 1;
        }
    }
    b
}

/// A lattice with precomputed data for ball enumeration.
#[derive(Clone, Debug)]
pub struct Lat {
    pub basis: Vec<Coords>,
    pub gram: Vec<Vec<Q>>,
    ginv: Vec<Vec<Q>>,
    ginv_f: Vec<Vec<f64>>,
    metric: [f64; 4],
}

impl Lat {
    /// `basis` is used as given (no reduction), so coefficient vectors refer to it.
    pub fn new(sig: &AlgebraSig, basis: Vec<Coords>) -> Self {
        let gram = gram(sig, &basis);
        let ginv = if basis.is_empty() {
            vec![]
        } else {
            inverse(&gram).expect("independent basis")
        };
        let ginv_f = ginv
            .iter()
            .map(|r| r.iter().map(to_f64).collect())
            .collect();
        let metric = sig.metric().map(|m| to_f64(&m));
        Lat {
            basis,
            gram,
            ginv,
            ginv_f,
            metric,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn covolume2(&self) -> Q {
        det(&self.gram)
    }

    /// Real coefficients of the orthogonal projection of p onto the span.
    pub fn proj_coeffs(&self, sig: &AlgebraSig, p: &Coords) -> Vec<Q> {
        let bp: Vec<Q> = self.basis.iter().map(|b| sig.dot(b, p)).collect();
        self.ginv
            .iter()
            .map(|r| r.iter().zip(&bp).map(|(x, y)| x * y).sum())
            .collect()
    }

    fn proj_coeffs_f(&self, p: &[f64; 4]) -> Vec<f64> {
        let bp: Vec<f64> = self
            .basis
            .iter()
            .map(|b| (0..4).map(|t| to_f64(&b[t]) * p[t] * self.metric[t]).sum())
            .collect();
        self.ginv_f
            .iter()
            .map(|r| r.iter().zip(&bp).map(|(x, y)| x * y).sum())
            .collect()
    }

    /// Integer coefficient vectors of lattice points x with |x - p|^2 <= r2,
    /// together with x. Exact on the boundary.
    pub fn points_near(&self, sig: &AlgebraSig, p: &Coords, r2: &Q) -> Vec<(Vec<i64>, Coords)> {
        let mut out = vec![];
        if r2.is_negative() {
            return out;
        }
        let n = self.rank();
        if n == 0 {
            if sig.nrm(p) <= *r2 {
                out.push((vec![], zero4()));
            }
            return out;
        }
        let pf = p.clone().map(|x| to_f64(&x));
        let t = self.proj_coeffs_f(&pf);
        let rf = to_f64(r2);
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for i in 0..n {
            let w = (rf * self.ginv_f[i][i]).max(0.0).sqrt() * (1.0 + 1e-9) + 1e-9;
            lo[i] = (t[i] - w).ceil() as i64;
            hi[i] = (t[i] + w).floor() as i64;
            if lo[i] > hi[i] {
                return out;
            }
        }
        let bf: Vec<[f64; 4]> = self
            .basis
            .iter()
            .map(|b| b.clone().map(|x| to_f64(&x)))
            .collect();
        let mut c = lo.clone();
        loop {
            // float prefilter, exact confirmation near the boundary
            let mut d2 = 0.0;
            for tt in 0..4 {
                let mut x = -pf[tt];
                for i in 0..n {
                    x += c[i] as f64 * bf[i][tt];
                }
                d2 += x * x * self.metric[tt];
            }
            if d2 <= rf * (1.0 + 1e-9) + 1e-9 {
                let x = combine_int(&self.basis, &c);
                let diff: Coords = std::array::from_fn(|k| &x[k] - &p[k]);
                if sig.nrm(&diff) <= *r2 {
                    out.push((c.clone(), x));
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                c[i] += 1;
                if c[i] <= hi[i] {
                    break;
                }
                c[i] = lo[i];
                i += 1;
            }
        }
    }
}

/// Successive minima (squared) of a lattice under the norm form.
pub fn successive_minima(sig: &AlgebraSig, basis: &[Coords], k: usize) -> Result<Vec<Q>, String> {
    if k > basis.len() {
        return Err("k exceeds rank".into());
    }
    let rows: Vec<Vec<Q>> = basis.iter().map(|b| b.to_vec()).collect();
    if rank(&rows) != basis.len() {
        return Err("degenerate lattice".into());
    }
    let red = lll(sig, basis);
    let bound = red.iter().map(|b| sig.nrm(b)).max().unwrap_or_else(Q::zero);
    let lat = Lat::new(sig, red);
    let mut pts: Vec<(Q, Coords)> = lat
        .points_near(sig, &zero4(), &bound)
        .into_iter()
        .filter(|(c, _)| c.iter().any(|&x| x != 0))
        .map(|(_, x)| (sig.nrm(&x), x))
        .collect();
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    let mut chosen: Vec<Vec<Q>> = vec![];
    let mut out = vec![];
    for (n, x) in pts {
        if out.len() == k {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(x.to_vec());
        if rank(&trial) == trial.len() {
            chosen = trial;
            out.push(n);
        }
    }
    Ok(out)
}

/// Squared covering radius, exact: the largest squared norm of a vertex of
/// the Voronoi cell, which is cut out by the Voronoi-relevant vectors.
pub fn covering_radius2(sig: &AlgebraSig, basis: &[Coords]) -> Q {
    let n = basis.len();
    if n == 0 {
        return Q::zero();
    }
    let red = lll(sig, basis);
    let lat = Lat::new(sig, red.clone());
    if n == 1 {
        return sig.nrm(&red[0]) / Q::from_integer(4.into());
    }
    // every class mod 2 has a 0/1 representative, so its shortest member
    // lies within the largest such norm
    let reach = (1u32..(1 << n))
        .map(|cl| {
            let c: Vec<i64> = (0..n).map(|i| ((cl >> i) & 1) as i64).collect();
            sig.nrm(&combine_int(&red, &c))
        })
        .max()
        .unwrap();
    let pts: Vec<(Vec<i64>, Coords)> = lat
        .points_near(sig, &zero4(), &reach)
        .into_iter()
        .filter(|(c, _)| c.iter().any(|&x| x != 0))
        .collect();
    // relevant vectors: the unique (up to sign) shortest member of each nonzero class mod 2
    let mut relevant: Vec<Vec<i64>> = vec![];
    for class in 1..(1u32 << n) {
        let members: Vec<&(Vec<i64>, Coords)> = pts
            .iter()
            .filter(|(c, _)| (0..n).all(|i| (c[i].rem_euclid(2) as u32) == (class >> i) & 1))
            .collect();
        let Some(m) = members.iter().map(|(_, x)| sig.nrm(x)).min() else {
            continue;
        };
        let shortest: Vec<&Vec<i64>> = members
            .iter()
            .filter(|(_, x)| sig.nrm(x) == m)
            .map(|(c, _)| c)
            .collect();
        if shortest.len() == 2 {
            relevant.push(shortest[0].clone());
            relevant.push(shortest[1].clone());
        }
    }
    let g = &lat.gram;
    let gv = |c: &[i64]| -> Vec<Q> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &g[i][j] * Q::from_integer(c[j].into()))
                    .sum()
            })
            .collect()
    };
    let norm_c = |c: &[i64]| -> Q {
        let v = gv(c);
        c.iter()
            .zip(&v)
            .map(|(a, b)| Q::from_integer((*a).into()) * b)
            .sum()
    };
    let mut best = Q::zero();
    let m = relevant.len();
    if m < n {
        return best;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        // vertex t solves <t, v> = |v|^2/2 for the chosen relevant vectors
        let rows: Vec<Vec<Q>> = idx.iter().map(|&i| gv(&relevant[i])).collect();
        if let Some(inv) = inverse(&rows) {
            let rhs: Vec<Q> = idx
                .iter()
                .map(|&i| norm_c(&relevant[i]) / Q::from_integer(2.into()))
                .collect();
            let t: Vec<Q> = inv
                .iter()
                .map(|r| r.iter().zip(&rhs).map(|(a, b)| a * b).sum())
                .collect();
            let tn: Q = (0..n)
                .map(|i| (0..n).map(|j| &t[i] * &g[i][j] * &t[j]).sum::<Q>())
                .sum();
            // a Voronoi vertex satisfies every relevant inequality
            if tn > best
                && relevant.iter().all(|v| {
                    gv(v).iter().zip(&t).map(|(a, b)| a * b).sum::<Q>() * Q::from_integer(2.into())
                        <= norm_c(v)
                })
            {
                best = tn;
            }
        }
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < m - n + i {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("small integer")
}

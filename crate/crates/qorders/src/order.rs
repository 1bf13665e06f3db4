use crate::error::OrderError;
use crate::hilbert::algebra_discriminant;
use crate::lattice::{det, gram, in_lattice, int_kernel, lll, rank, to_i64, zspan, Lat};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use qarith::{sqfree_part, zero4, AlgebraSig, BigInt, Coords, Involution, Q};
use std::sync::Arc;

/// A Z-order given by a basis inside its algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ArithOrder {
    pub sig: Arc<AlgebraSig>,
    pub basis: Vec<Coords>,
    pub discrd: BigInt,
}

impl ArithOrder {
    pub fn from_basis(sig: Arc<AlgebraSig>, basis: Vec<Coords>) -> Result<Self, OrderError> {
        let want = if sig.dim == 3 { 2 } else { 4 };
        if basis.len() != want {
            return Err(OrderError::NotOrder(format!(
                "expected {want} basis elements"
            )));
        }
        if basis.iter().any(|b| !sig.in_algebra(b)) {
            return Err(OrderError::NotOrder(
                "basis element outside the algebra".into(),
            ));
        }
        let rows: Vec<Vec<Q>> = basis.iter().map(|b| b.to_vec()).collect();
        if rank(&rows) != want {
            return Err(OrderError::Degenerate("basis is not independent".into()));
        }
        let mut one = zero4();
        one[0] = Q::one();
        if !in_lattice(&basis, &one) {
            return Err(OrderError::NotOrder("does not contain 1".into()));
        }
        for x in &basis {
            for y in &basis {
                if !in_lattice(&basis, &sig.mul(x, y)) {
                    return Err(OrderError::NotOrder(
                        "not closed under multiplication".into(),
                    ));
                }
            }
            if sig.involution == Involution::Orthogonal && !in_lattice(&basis, &sig.dagger(x)) {
                return Err(OrderError::NotOrder(
                    "not stable under the orthogonal involution".into(),
                ));
            }
        }
        let mut o = ArithOrder {
            sig,
            basis,
            discrd: BigInt::zero(),
        };
        o.discrd = o.reduced_discriminant()?;
        Ok(o)
    }

    pub fn dim(&self) -> u8 {
        self.sig.dim
    }

    /// |det(tr(e_i conj(e_j)))|.
    pub fn disc(&self) -> BigInt {
        trace_disc(&self.sig, &self.basis)
    }

    /// |disc| for dim 3, the square root of |disc| for quaternion orders.
    pub fn reduced_discriminant(&self) -> Result<BigInt, OrderError> {
        let d = self.disc();
        if self.sig.dim == 3 {
            return Ok(d);
        }
        let r = d.sqrt();
        if &r * &r != d {
            return Err(OrderError::NotOrder(format!(
                "discriminant {d} is not a square"
            )));
        }
        Ok(r)
    }

    pub fn contains(&self, x: &Coords) -> bool {
        in_lattice(&self.basis, x)
    }

    /// Basis of the "+" part: the whole order for dims 3 and 5, the
    /// dagger-fixed sublattice for dim 4. LLL-reduced.
    pub fn plus_basis(&self) -> Vec<Coords> {
        let l = if self.sig.dim == 4 {
            let ij: Vec<Vec<Q>> = self.basis.iter().map(|b| vec![b[3].clone()]).collect();
            int_kernel(&ij)
                .into_iter()
                .map(|c| {
                    let cq: Vec<Q> = c.iter().map(|x| Q::from_integer(x.clone())).collect();
                    crate::lattice::combine(&self.basis, &cq)
                })
                .collect()
        } else {
            self.basis.clone()
        };
        lll(&self.sig, &zspan(&l))
    }

    /// Product of ramified primes of the algebra (dims 4, 5); for dim 3 the
    /// field discriminant.
    pub fn algebra_disc(&self) -> BigInt {
        let a = self.sig.a.to_integer().to_i64().unwrap();
        if self.sig.dim == 3 {
            let n = -a;
            let sf = sqfree_part(&BigInt::from(n)).to_i64().unwrap();
            return BigInt::from(if sf % 4 == 3 { sf } else { 4 * sf });
        }
        let b = self.sig.bq().to_integer().to_i64().unwrap();
        BigInt::from(algebra_discriminant(a, b))
    }

    /// Integer generator of the ideal of disc of the involution (dim 4).
    pub fn iota(&self) -> BigInt {
        let ab = &self.sig.a * self.sig.bq();
        let n = ab.numer() * ab.denom();
        sqfree_part(&n)
    }

    /// Maximality: field ring of integers, maximal dagger-order, or maximal order.
    pub fn is_maximal(&self) -> bool {
        match self.sig.dim {
            3 => self.discrd == self.algebra_disc(),
            4 => self.discrd == self.algebra_disc().lcm(&self.iota()),
            _ => self.discrd == self.algebra_disc(),
        }
    }

    /// Invariant fingerprint for isomorphism-class dedup: discrd, the
    /// counts of order elements of norm 1..=8, and the same counts on the
    /// trace-zero part.
    pub fn fingerprint(&self) -> (BigInt, Vec<usize>, Vec<usize>) {
        let red = lll(&self.sig, &self.basis);
        let lat = Lat::new(&self.sig, red);
        let mut all = vec![0usize; 8];
        let mut tz = vec![0usize; 8];
        for (_, v) in lat.points_near(&self.sig, &zero4(), &Q::from_integer(8.into())) {
            let n = self.sig.nrm(&v);
            if n.is_zero() || !n.is_integer() {
                continue;
            }
            let k = n.to_integer().to_usize().unwrap() - 1;
            all[k] += 1;
            if v[0].is_zero() {
                tz[k] += 1;
            }
        }
        (self.discrd.clone(), all, tz)
    }
}

pub fn trace_disc(sig: &AlgebraSig, basis: &[Coords]) -> BigInt {
    let g = gram(sig, basis);
    let two = Q::from_integer(2.into());
    let tg: Vec<Vec<Q>> = g
        .iter()
        .map(|r| r.iter().map(|x| x * &two).collect())
        .collect();
    let d = det(&tg);
    assert!(d.is_integer(), "trace form determinant must be integral");
    d.to_integer().abs()
}

/// Ring of integers of Q(sqrt(-n)), n square-free positive.
pub fn quadratic_ring(n: i64) -> Result<ArithOrder, OrderError> {
    if n <= 0 || sqfree_part(&BigInt::from(n)) != BigInt::from(n) {
        return Err(OrderError::Domain(format!(
            "{n} is not square-free positive"
        )));
    }
    let sig = Arc::new(AlgebraSig::quadratic(n));
    let mut one = zero4();
    one[0] = Q::one();
    let mut w = zero4();
    if n % 4 == 3 {
        w[0] = qarith::qf(1, 2);
        w[1] = qarith::qf(1, 2);
    } else {
        w[1] = Q::one();
    }
    ArithOrder::from_basis(sig, vec![one, w])
}

/// Parse basis rows given as (numerators, common denominator) pairs.
pub fn rows(rows: &[([i64; 4], i64)]) -> Vec<Coords> {
    rows.iter()
        .map(|(c, d)| c.map(|x| qarith::qf(x, *d)))
        .collect()
}

pub fn small_int(x: &BigInt) -> i64 {
    to_i64(x)
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && sqfree_part(&BigInt::from(n)) == BigInt::from(n.abs())
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn one_coords() -> Coords {
    let mut c = zero4();
    c[0] = Q::one();
    c
}

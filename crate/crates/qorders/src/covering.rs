use crate::error::OrderError;
use crate::lattice::{combine, covering_radius2, det, gram, int_kernel, lll, solve_coords, Lat};
use crate::order::ArithOrder;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use qarith::{sqfree_part, zero4, AlgebraSig, BigInt, Coords, Q};
use std::cmp::Ordering;

/// A normalized covering vector with the lattice data built from it.
#[derive(Clone, Debug)]
pub struct CoveringData {
    pub order: ArithOrder,
    /// Reduced basis of the "+" part of the order.
    pub plus_basis: Vec<Coords>,
    pub u: Coords,
    /// Reduced basis of the plane lattice S_u meet the "+" part.
    pub su_basis: Vec<Coords>,
    pub tau: Coords,
    pub nrm_u: BigInt,
}

fn check_u(order: &ArithOrder, u: &Coords) -> Result<(), OrderError> {
    let sig = &order.sig;
    if u.iter().all(Zero::is_zero) {
        return Err(OrderError::Domain("u = 0".into()));
    }
    if !sig.tr(u).is_zero() {
        return Err(OrderError::Domain("u is not trace-zero".into()));
    }
    if !sig.in_plus(u) {
        return Err(OrderError::Domain("u is not in the + part".into()));
    }
    Ok(())
}

/// Basis of {x in L : <x, u> = 0}.
pub fn plane_lattice(sig: &AlgebraSig, l: &[Coords], u: &Coords) -> Vec<Coords> {
    let vals: Vec<Vec<Q>> = l.iter().map(|e| vec![sig.dot(e, u)]).collect();
    let k: Vec<Coords> = int_kernel(&vals)
        .into_iter()
        .map(|c| combine(l, &c.into_iter().map(Q::from_integer).collect::<Vec<_>>()))
        .collect();
    lll(sig, &k)
}

/// Rational lower bound for the volume of the unit ball (exact for rank 1).
fn unit_ball_volume_lower(r: usize) -> Q {
    match r {
        0 => qarith::q(1),
        1 => qarith::q(2),
        2 => qarith::qf(314, 100),
        _ => qarith::qf(4188, 1000),
    }
}

pub fn is_covering_vector(order: &ArithOrder, u: &Coords) -> Result<bool, OrderError> {
    check_u(order, u)?;
    let l = order.plus_basis();
    let s = plane_lattice(&order.sig, &l, u);
    if s.len() + 1 != l.len() {
        return Ok(false);
    }
    // open unit balls cannot cover a lattice whose cell is at least as
    // large as a ball
    let v = unit_ball_volume_lower(s.len());
    if det(&gram(&order.sig, &s)) >= &v * &v {
        return Ok(false);
    }
    // layers parallel to a codimension-1 sublattice T are covol(S)/covol(T)
    // apart, so the covering radius is at least half that
    let red = lll(&order.sig, &s);
    let c2 = det(&gram(&order.sig, &red));
    for k in 0..red.len() {
        let rest: Vec<Coords> = red.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, b)| b.clone()).collect();
        let t2 = det(&gram(&order.sig, &rest));
        if &c2 >= &(t2 * Q::from_integer(4.into())) {
            return Ok(false);
        }
    }
    Ok(covering_radius2(&order.sig, &red) < Q::one())
}

/// Scale u to a primitive element of the "+" lattice (sign kept).
pub fn primitive(l: &[Coords], u: &Coords) -> Option<Coords> {
    let c = solve_coords(l, u)?;
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c
        .iter()
        .map(|x| (x * Q::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let cq: Vec<Q> = ints.into_iter().map(|x| Q::new(x, g.clone())).collect();
    Some(combine(l, &cq))
}

fn ext_gcd_vec(v: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coef = vec![BigInt::zero(); v.len()];
    for (i, x) in v.iter().enumerate() {
        let e = g.extended_gcd(x);
        // e.gcd = e.x * g + e.y * x
        for c in coef.iter_mut() {
            *c *= &e.x;
        }
        coef[i] = e.y.clone();
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        coef.iter_mut().for_each(|c| *c = -c.clone());
    }
    (g, coef)
}

fn lex(a: &Coords, b: &Coords) -> Ordering {
    a.iter().cmp(b.iter())
}

pub fn normalize_covering_vector(
    order: &ArithOrder,
    u: &Coords,
) -> Result<CoveringData, OrderError> {
    if !is_covering_vector(order, u)? {
        return Err(OrderError::NotCovering(
            "covering radius is not below 1".into(),
        ));
    }
    let sig = &order.sig;
    let l = order.plus_basis();
    let u = primitive(&l, u).ok_or_else(|| OrderError::Domain("u not in the + span".into()))?;
    let n = sig.nrm(&u);
    if !n.is_integer() {
        return Err(OrderError::Consistency("nrm(u) not integral".into()));
    }
    let nrm_u = n.to_integer();
    if sqfree_part(&nrm_u) != nrm_u {
        return Err(OrderError::Consistency(format!(
            "nrm(u) = {nrm_u} is not square-free"
        )));
    }
    let su = plane_lattice(sig, &l, &u);
    let tau = choose_tau(sig, &l, &su, &u);
    Ok(CoveringData {
        order: order.clone(),
        plus_basis: l,
        u,
        su_basis: su,
        tau,
        nrm_u,
    })
}

/// Completion of the plane lattice to the full "+" lattice on the u side,
/// of minimal norm, ties broken lexicographically.
pub fn choose_tau(sig: &AlgebraSig, l: &[Coords], su: &[Coords], u: &Coords) -> Coords {
    let vals: Vec<Q> = l.iter().map(|e| sig.dot(e, u)).collect();
    let den = vals.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = vals
        .iter()
        .map(|x| (x * Q::from_integer(den.clone())).to_integer())
        .collect();
    let (_, coef) = ext_gcd_vec(&ints);
    let t0 = combine(
        l,
        &coef.into_iter().map(Q::from_integer).collect::<Vec<_>>(),
    );
    let lat = Lat::new(sig, su.to_vec());
    // closest plane-lattice translate to the origin
    let mut neg = t0.clone();
    neg.iter_mut().for_each(|x| *x = -x.clone());
    let mut r2 = sig.nrm(&t0);
    loop {
        let cands = lat.points_near(sig, &neg, &r2);
        if !cands.is_empty() {
            let mut best: Option<Coords> = None;
            for (_, s) in cands {
                let t: Coords = std::array::from_fn(|k| &t0[k] + &s[k]);
                best = Some(match best {
                    None => t,
                    Some(b) => {
                        let (nt, nb) = (sig.nrm(&t), sig.nrm(&b));
                        if nt < nb || (nt == nb && lex(&t, &b) == Ordering::Less) {
                            t
                        } else {
                            b
                        }
                    }
                });
            }
            return best.unwrap();
        }
        r2 *= Q::from_integer(2.into());
    }
}

impl CoveringData {
    pub fn sig(&self) -> &AlgebraSig {
        &self.order.sig
    }

    pub fn dim(&self) -> u8 {
        self.order.sig.dim
    }

    pub fn nrm_q(&self) -> Q {
        Q::from_integer(self.nrm_u.clone())
    }

    /// Positive generator g of <L, u>; the strip between S_u and S_u + tau
    /// has width g / sqrt(nrm(u)).
    pub fn strip_g(&self) -> Q {
        self.sig().dot(&self.tau, &self.u)
    }

    /// Basis (su_basis..., tau) of the full "+" lattice.
    pub fn full_basis(&self) -> Vec<Coords> {
        let mut b = self.su_basis.clone();
        b.push(self.tau.clone());
        b
    }

    /// The ratio discrd / nrm(u) together with whether it lies in the set of
    /// allowed constants for this dim. Dim 3 uses the square-free part of
    /// |disc|; dims 4 and 5 also accept the reciprocal reading
    /// nrm(u) = p * discrd.
    pub fn thm34(&self) -> Thm34 {
        let n = self.nrm_q();
        let (d_used, disc_note) = if self.dim() == 3 {
            (
                Q::from_integer(sqfree_part(&self.order.discrd)),
                "square-free part of |disc|",
            )
        } else {
            (Q::from_integer(self.order.discrd.clone()), "discrd")
        };
        let allowed: Vec<Q> = match self.dim() {
            3 => vec![qarith::q(1), qarith::q(2)],
            4 => [1, 2, 3, 7, 11].iter().map(|&x| qarith::q(x)).collect(),
            _ => vec![
                qarith::qf(1, 2),
                qarith::q(1),
                qarith::q(2),
                qarith::qf(3, 2),
                qarith::q(3),
                qarith::q(5),
            ],
        };
        let p = &d_used / &n;
        let p_rec = &n / &d_used;
        let direct = allowed.contains(&p);
        let reciprocal = self.dim() != 3 && allowed.contains(&p_rec);
        let p_disc = Q::from_integer(self.order.discrd.clone()) / &n;
        Thm34 {
            p,
            p_full_disc: p_disc,
            direct,
            reciprocal,
            basis: disc_note,
        }
    }

    pub fn check_thm34(&self) -> Result<Q, OrderError> {
        let t = self.thm34();
        if t.direct {
            Ok(t.p)
        } else if t.reciprocal {
            Ok(Q::one() / t.p)
        } else {
            Err(OrderError::Consistency(format!(
                "discrd/nrm(u) = {} not an allowed constant",
                qarith::fmt_q(&t.p)
            )))
        }
    }
}

#[derive(Clone, Debug)]
pub struct Thm34 {
    pub p: Q,
    pub p_full_disc: Q,
    pub direct: bool,
    pub reciprocal: bool,
    pub basis: &'static str,
}

pub fn origin() -> Coords {
    zero4()
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use qarith::{AlgebraSig, Coords, Q};
use qinversive::InvCoord;
use qorders::lattice::{combine, gram, inverse};

/// Coordinates with respect to a basis (s_1..s_k, tau) of the "+" lattice,
/// used to reduce spheres modulo translations by the first `reduce` vectors.
#[derive(Clone, Debug)]
pub struct Frame {
    pub basis: Vec<Coords>,
    pub reduce: usize,
    ginv: Vec<Vec<Q>>,
}

impl Frame {
    pub fn new(sig: &AlgebraSig, basis: Vec<Coords>, reduce: usize) -> Self {
        let ginv = inverse(&gram(sig, &basis)).expect("frame basis is independent");
        Frame { basis, reduce, ginv }
    }

    pub fn coords(&self, sig: &AlgebraSig, x: &Coords) -> Vec<Q> {
        let d: Vec<Q> = self.basis.iter().map(|b| sig.dot(b, x)).collect();
        self.ginv
            .iter()
            .map(|row| row.iter().zip(&d).fold(Q::zero(), |acc, (g, v)| acc + g * v))
            .collect()
    }

    pub fn translations(&self) -> &[Coords] {
        &self.basis[..self.reduce]
    }

    /// Canonical translate of `s` and the translation w used (s -> T_w s).
    pub fn canonical(&self, sig: &AlgebraSig, s: &InvCoord) -> (InvCoord, Coords) {
        if s.is_plane() {
            let (g, combo) = pairing_gcd(sig, self.translations(), &s.xi);
            if g.is_zero() {
                return (s.clone(), qarith::zero4());
            }
            // kappa' changes by t*g under the translation t*combo
            let t = -(&s.kappa_p / &g).floor();
            let w = combo.map(|x| x * &t);
            (s.translate(sig, &w), w)
        } else {
            let c = s.center().unwrap();
            let k = self.coords(sig, &c);
            let mut shift = vec![Q::zero(); self.basis.len()];
            for i in 0..self.reduce {
                shift[i] = -k[i].floor();
            }
            let w = combine(&self.basis, &shift);
            (s.translate(sig, &w), w)
        }
    }
}

/// Positive generator g of {2<w, xi> : w in span_Z(gens)} and a vector
/// attaining it.
pub fn pairing_gcd(sig: &AlgebraSig, gens: &[Coords], xi: &Coords) -> (Q, Coords) {
    let two = Q::from_integer(2.into());
    let vals: Vec<Q> = gens.iter().map(|b| sig.dot(b, xi) * &two).collect();
    let den = vals.iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = vals.iter().map(|v| (v * Q::from_integer(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    let mut coef: Vec<BigInt> = vec![BigInt::zero(); ints.len()];
    for (i, x) in ints.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = x.abs();
            coef[i] = if x.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
            continue;
        }
        let e = g.extended_gcd(x);
        for c in coef.iter_mut().take(i) {
            *c = &*c * &e.x;
        }
        coef[i] = e.y.clone();
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for c in coef.iter_mut() {
            *c = -&*c;
        }
    }
    let cq: Vec<Q> = coef.into_iter().map(Q::from_integer).collect();
    let w = if gens.is_empty() { qarith::zero4() } else { combine(gens, &cq) };
    (Q::new(g, den), w)
}

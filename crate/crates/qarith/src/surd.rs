use crate::rational::{fmt_q, to_f64, Q};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// A real number `coef * sqrt(rad)` with rational `coef` and `rad >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub coef: Q,
    pub rad: Q,
}

impl Surd {
    pub fn rational(x: Q) -> Self {
        Surd { coef: x, rad: Q::from_integer(1.into()) }
    }

    pub fn new(coef: Q, rad: Q) -> Self {
        assert!(!rad.is_negative(), "negative radicand");
        Surd { coef, rad }
    }

    /// Exact square, keeping the sign: sign(x) * x^2.
    pub fn signed_square(&self) -> Q {
        let s = &self.coef * &self.coef * &self.rad;
        if self.coef.is_negative() {
            -s
        } else {
            s
        }
    }

    pub fn abs_cmp_rational(&self, t: &Q) -> Ordering {
        let lhs = &self.coef * &self.coef * &self.rad;
        lhs.cmp(&(t * t))
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero() || self.rad.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coef) * to_f64(&self.rad).sqrt()
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        Surd { coef: &self.coef * &o.coef, rad: &self.rad * &o.rad }
    }

    pub fn scale(&self, r: &Q) -> Surd {
        Surd { coef: &self.coef * r, rad: self.rad.clone() }
    }
}

impl std::fmt::Display for Surd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*sqrt({})", fmt_q(&self.coef), fmt_q(&self.rad))
    }
}

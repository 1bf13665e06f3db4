use crate::ArithError;
pub use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn to_int(x: &Q) -> Option<BigInt> {
    if is_integer(x) {
        Some(x.numer().clone())
    } else {
        None
    }
}

pub fn to_f64(x: &Q) -> f64 {
    // ratio of big integers can overflow f64 individually, so scale first
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift = nb - db - 60;
    let (n, d) = if shift > 0 {
        (x.numer() >> (shift as usize), x.denom().clone())
    } else {
        (x.numer().clone(), x.denom() << ((-shift) as usize))
    };
    n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0) * 2f64.powi(shift as i32)
}

/// gcd of rationals: the positive generator of aZ + bZ.
pub fn qgcd(a: &Q, b: &Q) -> Q {
    let den = a.denom().lcm(b.denom());
    let an = (a * Q::from_integer(den.clone())).to_integer();
    let bn = (b * Q::from_integer(den.clone())).to_integer();
    Q::new(an.gcd(&bn), den)
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q, ArithError> {
    let s = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Square-free part of |n|.
pub fn sqfree_part(n: &BigInt) -> BigInt {
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out * m
}

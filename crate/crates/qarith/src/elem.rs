use crate::algebra::{zero4, AlgebraSig, Coords, Involution};
use crate::rational::{fmt_q, parse_q, Q};
use crate::ArithError;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatElem {
    pub sig: Arc<AlgebraSig>,
    pub c: Coords,
}

impl QuatElem {
    pub fn new(sig: Arc<AlgebraSig>, c: Coords) -> Result<Self, ArithError> {
        if !sig.in_algebra(&c) {
            return Err(ArithError::BadSig("coordinates outside the algebra".into()));
        }
        Ok(QuatElem { sig, c })
    }

    pub fn zero(sig: Arc<AlgebraSig>) -> Self {
        QuatElem { sig, c: zero4() }
    }

    pub fn one(sig: Arc<AlgebraSig>) -> Self {
        Self::scalar(sig, Q::one())
    }

    pub fn scalar(sig: Arc<AlgebraSig>, r: Q) -> Self {
        let mut c = zero4();
        c[0] = r;
        QuatElem { sig, c }
    }

    /// Basis element 1, i, j, ij by index.
    pub fn basis(sig: Arc<AlgebraSig>, k: usize) -> Self {
        let mut c = zero4();
        c[k] = Q::one();
        QuatElem { sig, c }
    }

    fn check(&self, o: &QuatElem) -> Result<(), ArithError> {
        if Arc::ptr_eq(&self.sig, &o.sig) || self.sig == o.sig {
            Ok(())
        } else {
            Err(ArithError::SigMismatch(self.sig.label(), o.sig.label()))
        }
    }

    pub fn mul(&self, o: &QuatElem) -> Result<QuatElem, ArithError> {
        self.check(o)?;
        Ok(QuatElem { sig: self.sig.clone(), c: self.sig.mul(&self.c, &o.c) })
    }

    pub fn add(&self, o: &QuatElem) -> Result<QuatElem, ArithError> {
        self.check(o)?;
        let c = std::array::from_fn(|k| &self.c[k] + &o.c[k]);
        Ok(QuatElem { sig: self.sig.clone(), c })
    }

    pub fn sub(&self, o: &QuatElem) -> Result<QuatElem, ArithError> {
        self.check(o)?;
        let c = std::array::from_fn(|k| &self.c[k] - &o.c[k]);
        Ok(QuatElem { sig: self.sig.clone(), c })
    }

    pub fn scale(&self, r: &Q) -> QuatElem {
        QuatElem { sig: self.sig.clone(), c: std::array::from_fn(|k| &self.c[k] * r) }
    }

    pub fn neg(&self) -> QuatElem {
        QuatElem { sig: self.sig.clone(), c: std::array::from_fn(|k| -&self.c[k]) }
    }

    pub fn conj(&self) -> QuatElem {
        QuatElem { sig: self.sig.clone(), c: self.sig.conj(&self.c) }
    }

    pub fn dagger(&self) -> Result<QuatElem, ArithError> {
        if self.sig.involution != Involution::Orthogonal {
            return Err(ArithError::NotOrthogonal);
        }
        Ok(QuatElem { sig: self.sig.clone(), c: self.sig.dagger(&self.c) })
    }

    pub fn trace(&self) -> Q {
        self.sig.tr(&self.c)
    }

    pub fn norm(&self) -> Q {
        self.sig.nrm(&self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn parse(sig: Arc<AlgebraSig>, s: &str) -> Result<QuatElem, ArithError> {
        let mut c = zero4();
        for term in s.split(" + ") {
            let term = term.trim();
            let (num, k) = if let Some(t) = term.strip_suffix("*i") {
                (t, 1)
            } else if let Some(t) = term.strip_suffix("*j") {
                (t, 2)
            } else if let Some(t) = term.strip_suffix("*k") {
                (t, 3)
            } else {
                (term, 0)
            };
            c[k] += parse_q(num)?;
        }
        QuatElem::new(sig, c)
    }
}

impl fmt::Display for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x0, x1, x2, x3] = &self.c;
        write!(f, "{} + {}*i + {}*j + {}*k", fmt_q(x0), fmt_q(x1), fmt_q(x2), fmt_q(x3))
    }
}

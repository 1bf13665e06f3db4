use crate::coord::InvCoord;
use crate::error::InvError;
use num_traits::{One, Zero};
use qarith::{zero4, AlgebraSig, Coords, Involution, Q};
use std::sync::Arc;

fn add(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|k| &a[k] + &b[k])
}

fn neg(a: &Coords) -> Coords {
    a.clone().map(|x| -x)
}

fn scalar(r: Q) -> Coords {
    let mut c = zero4();
    c[0] = r;
    c
}

fn is_scalar(c: &Coords) -> bool {
    c[1..].iter().all(Zero::is_zero)
}

/// A 2x2 matrix [[a, b], [c, d]] over the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2 {
    pub sig: Arc<AlgebraSig>,
    pub a: Coords,
    pub b: Coords,
    pub c: Coords,
    pub d: Coords,
}

impl Mat2 {
    pub fn new(sig: Arc<AlgebraSig>, a: Coords, b: Coords, c: Coords, d: Coords) -> Self {
        Mat2 { sig, a, b, c, d }
    }

    pub fn identity(sig: Arc<AlgebraSig>) -> Self {
        Mat2::new(sig, scalar(Q::one()), zero4(), zero4(), scalar(Q::one()))
    }

    /// The Cohn matrix W(alpha) = [[alpha, 1], [-1, 0]].
    pub fn w(sig: Arc<AlgebraSig>, alpha: &Coords) -> Self {
        Mat2::new(sig, alpha.clone(), scalar(Q::one()), scalar(-Q::one()), zero4())
    }

    pub fn upper(sig: Arc<AlgebraSig>, alpha: &Coords) -> Self {
        Mat2::new(sig, scalar(Q::one()), alpha.clone(), zero4(), scalar(Q::one()))
    }

    pub fn lower(sig: Arc<AlgebraSig>, alpha: &Coords) -> Self {
        Mat2::new(sig, scalar(Q::one()), zero4(), alpha.clone(), scalar(Q::one()))
    }

    pub fn mul(&self, o: &Mat2) -> Result<Mat2, InvError> {
        if self.sig != o.sig {
            return Err(InvError::Structural("signature mismatch".into()));
        }
        let s = &self.sig;
        let m = |x: &Coords, y: &Coords| s.mul(x, y);
        Ok(Mat2::new(
            self.sig.clone(),
            add(&m(&self.a, &o.a), &m(&self.b, &o.c)),
            add(&m(&self.a, &o.b), &m(&self.b, &o.d)),
            add(&m(&self.c, &o.a), &m(&self.d, &o.c)),
            add(&m(&self.c, &o.b), &m(&self.d, &o.d)),
        ))
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(self.sig.clone(), neg(&self.a), neg(&self.b), neg(&self.c), neg(&self.d))
    }

    /// Conjugate transpose [[conj a, conj c], [conj b, conj d]].
    pub fn sigma(&self) -> Mat2 {
        let s = &self.sig;
        Mat2::new(self.sig.clone(), s.conj(&self.a), s.conj(&self.c), s.conj(&self.b), s.conj(&self.d))
    }

    fn inv_entry(&self, x: &Coords) -> Coords {
        match self.sig.involution {
            Involution::Orthogonal => self.sig.dagger(x),
            Involution::Standard if self.sig.dim == 3 => x.clone(),
            Involution::Standard => self.sig.conj(x),
        }
    }

    /// [[s(d), -s(b)], [-s(c), s(a)]] for the ring involution s (identity in
    /// dim 3, dagger in dim 4, conjugation in dim 5).
    pub fn sigma_hat(&self) -> Mat2 {
        Mat2::new(
            self.sig.clone(),
            self.inv_entry(&self.d),
            neg(&self.inv_entry(&self.b)),
            neg(&self.inv_entry(&self.c)),
            self.inv_entry(&self.a),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.sig.clone())
    }

    /// Study determinant nrm(a)nrm(d) + nrm(b)nrm(c) - tr(a conj(c) d conj(b)),
    /// the square of the Dieudonne determinant.
    pub fn study_det(&self) -> Q {
        let s = &self.sig;
        let t = s.mul(&s.mul(&self.a, &s.conj(&self.c)), &s.mul(&self.d, &s.conj(&self.b)));
        s.nrm(&self.a) * s.nrm(&self.d) + s.nrm(&self.b) * s.nrm(&self.c) - s.tr(&t)
    }

    /// Membership in the group: sigma_hat(M) M = M sigma_hat(M) = 1 in dims 3
    /// and 4; Study determinant 1 in dim 5.
    pub fn in_group(&self) -> bool {
        if self.sig.dim == 5 {
            return self.study_det().is_one();
        }
        let h = self.sigma_hat();
        matches!(h.mul(self), Ok(p) if p.is_identity()) && matches!(self.mul(&h), Ok(p) if p.is_identity())
    }

    /// Entries lie in the given order basis.
    pub fn over_order(&self, basis: &[Coords]) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|x| qorders::lattice::in_lattice(basis, x))
    }

    /// Action on inversive coordinates via H -> M H sigma(M), with
    /// H = [[kappa', xi], [conj xi, kappa]].
    pub fn act(&self, c: &InvCoord) -> Result<InvCoord, InvError> {
        if self.study_det().is_zero() {
            return Err(InvError::Structural("matrix is not invertible".into()));
        }
        let s = &self.sig;
        let m = |x: &Coords, y: &Coords| s.mul(x, y);
        let kp = scalar(c.kappa_p.clone());
        let k = scalar(c.kappa.clone());
        let xb = s.conj(&c.xi);
        // M H
        let p00 = add(&m(&self.a, &kp), &m(&self.b, &xb));
        let p01 = add(&m(&self.a, &c.xi), &m(&self.b, &k));
        let p10 = add(&m(&self.c, &kp), &m(&self.d, &xb));
        let p11 = add(&m(&self.c, &c.xi), &m(&self.d, &k));
        let sg = self.sigma();
        let h00 = add(&m(&p00, &sg.a), &m(&p01, &sg.c));
        let h01 = add(&m(&p00, &sg.b), &m(&p01, &sg.d));
        let h11 = add(&m(&p10, &sg.b), &m(&p11, &sg.d));
        if !is_scalar(&h00) || !is_scalar(&h11) {
            return Err(InvError::Structural("image is not Hermitian".into()));
        }
        Ok(InvCoord::new(h11[0].clone(), h00[0].clone(), h01, c.normalized))
    }
}

/// Normalized coordinates of M.S_u from the closed form
/// (c u conj d - d u conj c, a u conj b - b u conj a, a u conj d - b u conj c).
pub fn inv_u(m: &Mat2, u: &Coords) -> Result<InvCoord, InvError> {
    let s = &m.sig;
    if s.conj(u) != neg(u) {
        return Err(InvError::Domain("u must be trace-zero".into()));
    }
    let f = |x: &Coords, y: &Coords| s.mul(&s.mul(x, u), &s.conj(y));
    let sub = |x: Coords, y: Coords| -> Coords { std::array::from_fn(|k| &x[k] - &y[k]) };
    let k = sub(f(&m.c, &m.d), f(&m.d, &m.c));
    let kp = sub(f(&m.a, &m.b), f(&m.b, &m.a));
    let xi = sub(f(&m.a, &m.d), f(&m.b, &m.c));
    if !is_scalar(&k) || !is_scalar(&kp) {
        return Err(InvError::Structural("bend is not scalar".into()));
    }
    Ok(InvCoord::new(k[0].clone(), kp[0].clone(), xi, true))
}

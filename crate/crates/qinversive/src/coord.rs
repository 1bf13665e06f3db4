use crate::error::InvError;
use num_traits::{Signed, Zero};
use qarith::{fmt_q, to_f64, AlgebraSig, Coords, Surd, Q};
use serde::{Deserialize, Serialize};

/// Inversive coordinates (bend, co-bend, bend-center) with rational entries.
/// When `normalized` is set these are sqrt(nrm u) times the geometric ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvCoord {
    pub kappa: Q,
    pub kappa_p: Q,
    pub xi: Coords,
    pub normalized: bool,
}

fn sub(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|k| &a[k] - &b[k])
}

fn add(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|k| &a[k] + &b[k])
}

fn scale(a: &Coords, r: &Q) -> Coords {
    std::array::from_fn(|k| &a[k] * r)
}

impl InvCoord {
    pub fn new(kappa: Q, kappa_p: Q, xi: Coords, normalized: bool) -> Self {
        InvCoord { kappa, kappa_p, xi, normalized }
    }

    /// Normalized coordinates (0, 0, u) of the plane S_u.
    pub fn plane(u: &Coords) -> Self {
        InvCoord::new(Q::zero(), Q::zero(), u.clone(), true)
    }

    pub fn is_plane(&self) -> bool {
        self.kappa.is_zero()
    }

    pub fn q_form(&self, sig: &AlgebraSig) -> Q {
        -(&self.kappa * &self.kappa_p) + sig.nrm(&self.xi)
    }

    pub fn b_form(&self, sig: &AlgebraSig, o: &InvCoord) -> Result<Q, InvError> {
        if self.normalized != o.normalized {
            return Err(InvError::Structural("mixed normalization".into()));
        }
        Ok(self.b_raw(sig, o))
    }

    pub(crate) fn b_raw(&self, sig: &AlgebraSig, o: &InvCoord) -> Q {
        let two = Q::from_integer(2.into());
        (-(&self.kappa * &o.kappa_p) - &o.kappa * &self.kappa_p) / &two + sig.dot(&self.xi, &o.xi)
    }

    /// Opposite orientation.
    pub fn flip(&self) -> Self {
        InvCoord::new(-self.kappa.clone(), -self.kappa_p.clone(), scale(&self.xi, &-Q::from_integer(1.into())), self.normalized)
    }

    /// Translation z -> z + w.
    pub fn translate(&self, sig: &AlgebraSig, w: &Coords) -> Self {
        let kp = &self.kappa_p + sig.dot(w, &self.xi) * Q::from_integer(2.into()) + &self.kappa * sig.nrm(w);
        InvCoord::new(self.kappa.clone(), kp, add(&self.xi, &scale(w, &self.kappa)), self.normalized)
    }

    /// Reflection through the unit sphere centered at 0.
    pub fn invert(&self) -> Self {
        InvCoord::new(self.kappa_p.clone(), self.kappa.clone(), self.xi.clone(), self.normalized)
    }

    /// Reflection through the unit sphere centered at z.
    pub fn reflect_at(&self, sig: &AlgebraSig, z: &Coords) -> Self {
        let mz = scale(z, &-Q::from_integer(1.into()));
        self.translate(sig, &mz).invert().translate(sig, z)
    }

    /// The isometry z -> -conj(z).
    pub fn mirror(&self, sig: &AlgebraSig) -> Self {
        let c = sig.conj(&self.xi);
        InvCoord::new(self.kappa.clone(), self.kappa_p.clone(), scale(&c, &-Q::from_integer(1.into())), self.normalized)
    }

    pub fn sub_xi(&self, u: &Coords) -> Coords {
        sub(&self.xi, u)
    }

    /// Center (in structural coordinates) of a non-plane sphere.
    pub fn center(&self) -> Option<Coords> {
        if self.is_plane() {
            None
        } else {
            Some(scale(&self.xi, &(Q::from_integer(1.into()) / &self.kappa)))
        }
    }

    /// Geometric bend as a surd: kappa / sqrt(nrm u) when normalized.
    pub fn bend(&self, nrm_u: &Q) -> Surd {
        if self.normalized {
            Surd::new(self.kappa.clone() / nrm_u, nrm_u.clone())
        } else {
            Surd::rational(self.kappa.clone())
        }
    }

    /// Center in an orthonormal frame of the "+" part, and radius.
    pub fn float_geometry(&self, sig: &AlgebraSig, nrm_u: &Q) -> (Vec<f64>, f64) {
        let met = sig.metric();
        let idx = plus_indices(sig);
        let k = self.bend(nrm_u).to_f64();
        match self.center() {
            Some(c) => {
                let ctr = idx.iter().map(|&t| to_f64(&c[t]) * to_f64(&met[t]).abs().sqrt()).collect();
                (ctr, 1.0 / k.abs())
            }
            None => {
                // unit normal
                let s = if self.normalized { to_f64(nrm_u).sqrt() } else { 1.0 };
                let n = idx.iter().map(|&t| to_f64(&self.xi[t]) * to_f64(&met[t]).abs().sqrt() / s).collect();
                (n, f64::INFINITY)
            }
        }
    }

    pub fn record(&self, sig: &AlgebraSig, nrm_u: &Q) -> SphereRecord {
        let (center, radius) = self.float_geometry(sig, nrm_u);
        SphereRecord {
            bend: fmt_q(&self.kappa),
            cobend: fmt_q(&self.kappa_p),
            xi: std::array::from_fn(|k| fmt_q(&self.xi[k])),
            normalized: self.normalized,
            float: FloatGeom { center, radius: if radius.is_finite() { Some(radius) } else { None } },
        }
    }

    pub fn from_record(r: &SphereRecord) -> Result<Self, InvError> {
        let p = |s: &str| qarith::parse_q(s).map_err(|e| InvError::Domain(e.to_string()));
        let mut xi = qarith::zero4();
        for k in 0..4 {
            xi[k] = p(&r.xi[k])?;
        }
        Ok(InvCoord::new(p(&r.bend)?, p(&r.cobend)?, xi, r.normalized))
    }

    /// Sign of the bend (0 for planes).
    pub fn orientation(&self) -> i8 {
        if self.kappa.is_zero() {
            0
        } else if self.kappa.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Structural coordinates spanning the "+" part.
pub fn plus_indices(sig: &AlgebraSig) -> Vec<usize> {
    match sig.dim {
        3 => vec![0, 1],
        4 => vec![0, 1, 2],
        _ => vec![0, 1, 2, 3],
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FloatGeom {
    pub center: Vec<f64>,
    pub radius: Option<f64>,
}

/// JSON form of a sphere.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SphereRecord {
    pub bend: String,
    pub cobend: String,
    pub xi: [String; 4],
    pub normalized: bool,
    pub float: FloatGeom,
}

/// sqrt(scale2) * base, for coordinates that are rational only up to one
/// common square root.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledInv {
    pub scale2: Q,
    pub base: InvCoord,
}

impl ScaledInv {
    pub fn new(scale2: Q, base: InvCoord) -> Self {
        ScaledInv { scale2, base }
    }

    pub fn q_form(&self, sig: &AlgebraSig) -> Q {
        &self.scale2 * self.base.q_form(sig)
    }

    /// b against rational coordinates of the same normalization.
    pub fn b_with(&self, sig: &AlgebraSig, o: &InvCoord) -> Result<Surd, InvError> {
        let b = self.base.b_form(sig, o)?;
        Ok(Surd::new(b, self.scale2.clone()))
    }

    pub fn b_with_scaled(&self, sig: &AlgebraSig, o: &ScaledInv) -> Result<Surd, InvError> {
        let b = self.base.b_form(sig, &o.base)?;
        Ok(Surd::new(b, &self.scale2 * &o.scale2))
    }

    pub fn translate(&self, sig: &AlgebraSig, w: &Coords) -> ScaledInv {
        // translation mixes kappa into xi, so it commutes with scaling
        ScaledInv::new(self.scale2.clone(), self.base.translate(sig, w))
    }

    pub fn to_f64(&self) -> (f64, f64, [f64; 4]) {
        let s = to_f64(&self.scale2).sqrt();
        (to_f64(&self.base.kappa) * s, to_f64(&self.base.kappa_p) * s, self.base.xi.clone().map(|x| to_f64(&x) * s))
    }
}

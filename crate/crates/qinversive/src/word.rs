use crate::coord::InvCoord;
use crate::error::InvError;
use crate::mat::Mat2;
use qarith::{fmt_q, AlgebraSig, Coords, Q};
use qorders::lattice::in_lattice;
use std::sync::Arc;

/// Generators: Cohn matrices W(alpha), translations T_w, and reflections
/// phi_z through unit spheres centered at z.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    W(Coords),
    T(Coords),
    Phi(Coords),
}

/// A word, applied right to left: the last letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(vec![])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `l` followed by this word on the left: l * self.
    pub fn prepend(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(l);
        v.extend(self.0.iter().cloned());
        Word(v)
    }

    /// Matrix of a word in the Cohn generators and translations.
    pub fn matrix(&self, sig: &Arc<AlgebraSig>) -> Result<Mat2, InvError> {
        let mut m = Mat2::identity(sig.clone());
        for l in &self.0 {
            let g = match l {
                Letter::W(a) => Mat2::w(sig.clone(), a),
                Letter::T(w) => Mat2::upper(sig.clone(), w),
                Letter::Phi(_) => return Err(InvError::Domain("reflections have no matrix".into())),
            };
            m = m.mul(&g)?;
        }
        Ok(m)
    }

    /// Direct application letter by letter, using the coordinate formulas.
    pub fn apply(&self, sig: &AlgebraSig, c: &InvCoord) -> InvCoord {
        let mut x = c.clone();
        for l in self.0.iter().rev() {
            x = match l {
                Letter::W(a) => {
                    // W(a) = T_{-a} W(0), W(0): (k, k', xi) -> (k', k, -conj xi)
                    let w0 = x.invert().mirror(sig);
                    w0.translate(sig, &a.clone().map(|t| -t))
                }
                Letter::T(w) => x.translate(sig, w),
                Letter::Phi(z) => x.reflect_at(sig, z),
            };
        }
        x
    }

    /// Application through matrices; a reflection phi_z is T_z R W(0) T_{-z}
    /// with R the mirror z -> -conj(z).
    pub fn apply_via_matrices(&self, sig: &Arc<AlgebraSig>, c: &InvCoord) -> Result<InvCoord, InvError> {
        let mut x = c.clone();
        for l in self.0.iter().rev() {
            x = match l {
                Letter::W(a) => Mat2::w(sig.clone(), a).act(&x)?,
                Letter::T(w) => Mat2::upper(sig.clone(), w).act(&x)?,
                Letter::Phi(z) => {
                    let mz = z.clone().map(|t| -t);
                    let y = Mat2::upper(sig.clone(), &mz).act(&x)?;
                    let y = Mat2::w(sig.clone(), &qarith::zero4()).act(&y)?.mirror(sig);
                    Mat2::upper(sig.clone(), z).act(&y)?
                }
            };
        }
        Ok(x)
    }

    pub fn describe(&self) -> String {
        let f = |c: &Coords| c.iter().map(fmt_q).collect::<Vec<_>>().join(",");
        self.0
            .iter()
            .map(|l| match l {
                Letter::W(a) => format!("W({})", f(a)),
                Letter::T(a) => format!("T({})", f(a)),
                Letter::Phi(a) => format!("P({})", f(a)),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Congruence inv_u = (0, 0, u) mod nrm(u): bends in nrm(u) Z and
/// xi - u in nrm(u) times the "+" lattice.
pub fn congruent_to_seed(c: &InvCoord, u: &Coords, nrm_u: &Q, plus_basis: &[Coords]) -> bool {
    let div = |x: &Q| (x / nrm_u).is_integer();
    if !div(&c.kappa) || !div(&c.kappa_p) {
        return false;
    }
    let d: Coords = std::array::from_fn(|k| (&c.xi[k] - &u[k]) / nrm_u);
    in_lattice(plus_basis, &d)
}

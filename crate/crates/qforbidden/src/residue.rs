use num_traits::{Signed, Zero};
use qarith::{fmt_q, qgcd, AlgebraSig, Coords, Q};
use qinversive::InvCoord;
use qorders::lattice::zspan_vec;
use serde::{Deserialize, Serialize};

/// The values sqrt(scale2) * (offset + modulus * Z).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ClassRecord", try_from = "ClassRecord")]
pub struct CongruenceClass {
    pub scale2: Q,
    pub offset: Q,
    pub modulus: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassRecord {
    pub scale2: String,
    pub offset: String,
    pub modulus: String,
    pub text: String,
}

impl From<CongruenceClass> for ClassRecord {
    fn from(c: CongruenceClass) -> Self {
        ClassRecord { scale2: fmt_q(&c.scale2), offset: fmt_q(&c.offset), modulus: fmt_q(&c.modulus), text: c.describe() }
    }
}

impl TryFrom<ClassRecord> for CongruenceClass {
    type Error = String;
    fn try_from(r: ClassRecord) -> Result<Self, String> {
        let p = |s: &str| qarith::parse_q(s).map_err(|e| e.to_string());
        Ok(CongruenceClass { scale2: p(&r.scale2)?, offset: p(&r.offset)?, modulus: p(&r.modulus)? })
    }
}

impl CongruenceClass {
    /// Smallest |offset + modulus * t| over integers t.
    pub fn min_abs(&self) -> Q {
        min_abs_class(&self.offset, &self.modulus)
    }

    /// True when every value lies outside [-bound, bound].
    pub fn misses(&self, bound: &Q) -> bool {
        let m = self.min_abs();
        &self.scale2 * &m * &m > bound * bound
    }

    /// Membership of sqrt(scale2) * x.
    pub fn contains_base(&self, x: &Q) -> bool {
        if self.modulus.is_zero() {
            return *x == self.offset;
        }
        ((x - &self.offset) / &self.modulus).is_integer()
    }

    pub fn describe(&self) -> String {
        format!("sqrt({}) * ({} + {} Z)", fmt_q(&self.scale2), fmt_q(&self.offset), fmt_q(&self.modulus))
    }
}

pub fn min_abs_class(x: &Q, m: &Q) -> Q {
    if m.is_zero() {
        return x.abs();
    }
    let m = m.abs();
    let r = x - (x / &m).floor() * &m;
    let s = &m - &r;
    if r < s {
        r
    } else {
        s
    }
}

fn flat(c: &InvCoord) -> Vec<Q> {
    let mut v = vec![c.kappa.clone(), c.kappa_p.clone()];
    v.extend(c.xi.iter().cloned());
    v
}

fn unflat(v: &[Q]) -> InvCoord {
    InvCoord::new(v[0].clone(), v[1].clone(), std::array::from_fn(|k| v[2 + k].clone()), true)
}

/// W(a) = T_{-a} W(0); linear on coordinates.
fn w_act(sig: &AlgebraSig, a: &Coords, c: &InvCoord) -> InvCoord {
    let na: Coords = a.clone().map(|x| -x);
    c.invert().mirror(sig).translate(sig, &na)
}

/// A Z-module M with inv_u(g S_u) - (0, 0, u) in M for every g generated by
/// the W(a), a in the lattice. M is the smallest module containing the
/// displacements of (0, 0, u) and stable under the linear parts. The maps
/// are quadratic in a, so the lattice points 0, e_i, 2e_i, e_i + e_j
/// suffice.
pub fn residue_module(sig: &AlgebraSig, lattice: &[Coords], u: &Coords) -> Vec<InvCoord> {
    let m = lattice.len();
    let mut aset: Vec<Coords> = vec![qarith::zero4()];
    for i in 0..m {
        aset.push(lattice[i].clone());
        aset.push(lattice[i].clone().map(|x| x * Q::from_integer(2.into())));
        for j in i + 1..m {
            aset.push(std::array::from_fn(|k| &lattice[i][k] + &lattice[j][k]));
        }
    }
    let seed = InvCoord::plane(u);
    let gens: Vec<Vec<Q>> = aset
        .iter()
        .map(|a| {
            let img = w_act(sig, a, &seed);
            let d = InvCoord::new(img.kappa, img.kappa_p, std::array::from_fn(|k| &img.xi[k] - &u[k]), true);
            flat(&d)
        })
        .collect();
    let mut cur = zspan_vec(&gens);
    loop {
        let mut all = cur.clone();
        for v in &cur {
            let c = unflat(v);
            for a in &aset {
                all.push(flat(&w_act(sig, a, &c)));
            }
        }
        let next = zspan_vec(&all);
        if next == cur {
            return cur.iter().map(|v| unflat(v)).collect();
        }
        cur = next;
    }
}

/// Class of b(sqrt(scale2) base, s) over the orbit of the seed plane.
pub fn congruence_class(sig: &AlgebraSig, lattice: &[Coords], u: &Coords, scale2: &Q, base: &InvCoord) -> CongruenceClass {
    let module = residue_module(sig, lattice, u);
    let offset = base.b_form(sig, &InvCoord::plane(u)).expect("normalized");
    let modulus = module.iter().fold(Q::zero(), |g, m| qgcd(&g, &base.b_form(sig, m).expect("normalized")));
    CongruenceClass { scale2: scale2.clone(), offset, modulus }
}

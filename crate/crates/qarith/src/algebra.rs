use crate::rational::{fmt_q, parse_q, q, Q};
use crate::ArithError;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coordinates on the basis 1, i, j, ij.
pub type Coords = [Q; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Involution {
    Standard,
    Orthogonal,
}

/// (a, b / Q) with i^2 = a, j^2 = b, ij = -ji. For dim 3 only `a` is set and
/// the algebra is Q(sqrt(a)).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSig {
    pub dim: u8,
    pub a: Q,
    pub b: Option<Q>,
    pub involution: Involution,
}

impl AlgebraSig {
    pub fn new(dim: u8, a: Q, b: Option<Q>, involution: Involution) -> Result<Self, ArithError> {
        let bad = |m: &str| Err(ArithError::BadSig(m.to_string()));
        if !a.is_negative() {
            return bad("a must be negative");
        }
        match (dim, &b, involution) {
            (3, None, Involution::Standard) => {}
            (3, _, _) => return bad("dim 3 takes no b and the standard involution"),
            (4, Some(b), Involution::Orthogonal) | (5, Some(b), Involution::Standard) => {
                if !b.is_negative() {
                    return bad("b must be negative");
                }
            }
            (4, _, _) => return bad("dim 4 needs b and the orthogonal involution"),
            (5, _, _) => return bad("dim 5 needs b and the standard involution"),
            _ => return bad("dim must be 3, 4 or 5"),
        }
        Ok(AlgebraSig { dim, a, b, involution })
    }

    /// Q(sqrt(-n)).
    pub fn quadratic(n: i64) -> Self {
        Self::new(3, q(-n), None, Involution::Standard).expect("n > 0")
    }

    pub fn quaternion(dim: u8, a: i64, b: i64) -> Self {
        let inv = if dim == 4 { Involution::Orthogonal } else { Involution::Standard };
        Self::new(dim, q(a), Some(q(b)), inv).expect("valid quaternion signature")
    }

    pub fn bq(&self) -> Q {
        self.b.clone().unwrap_or_else(Q::zero)
    }

    /// Rank of the "+" part: 2, 3, 4 for dims 3, 4, 5.
    pub fn plus_rank(&self) -> usize {
        (self.dim - 1) as usize
    }

    pub fn mul(&self, x: &Coords, y: &Coords) -> Coords {
        let a = &self.a;
        let b = &self.bq();
        let ab = a * b;
        let [x0, x1, x2, x3] = x;
        let [y0, y1, y2, y3] = y;
        [
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - &ab * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ]
    }

    pub fn conj(&self, x: &Coords) -> Coords {
        [x[0].clone(), -&x[1], -&x[2], -&x[3]]
    }

    pub fn dagger(&self, x: &Coords) -> Coords {
        [x[0].clone(), x[1].clone(), x[2].clone(), -&x[3]]
    }

    pub fn nrm(&self, x: &Coords) -> Q {
        let a = &self.a;
        let b = &self.bq();
        &x[0] * &x[0] - a * &x[1] * &x[1] - b * &x[2] * &x[2] + a * b * &x[3] * &x[3]
    }

    pub fn tr(&self, x: &Coords) -> Q {
        &x[0] + &x[0]
    }

    /// Euclidean inner product tr(x conj(y)) / 2.
    pub fn dot(&self, x: &Coords, y: &Coords) -> Q {
        let a = &self.a;
        let b = &self.bq();
        &x[0] * &y[0] - a * &x[1] * &y[1] - b * &x[2] * &y[2] + a * b * &x[3] * &y[3]
    }

    /// Squared length of each basis vector 1, i, j, ij.
    pub fn metric(&self) -> [Q; 4] {
        let a = -&self.a;
        let b = -self.bq();
        [q(1), a.clone(), b.clone(), a * b]
    }

    pub fn in_plus(&self, x: &Coords) -> bool {
        match self.dim {
            3 => x[2].is_zero() && x[3].is_zero(),
            4 => x[3].is_zero(),
            _ => true,
        }
    }

    pub fn in_algebra(&self, x: &Coords) -> bool {
        self.dim != 3 || (x[2].is_zero() && x[3].is_zero())
    }

    pub fn label(&self) -> String {
        match &self.b {
            None => format!("Q(sqrt({}))", fmt_q(&self.a)),
            Some(b) => format!("({},{})", fmt_q(&self.a), fmt_q(b)),
        }
    }
}

pub fn zero4() -> Coords {
    [Q::zero(), Q::zero(), Q::zero(), Q::zero()]
}

#[derive(Serialize, Deserialize)]
struct RawSig {
    dim: u8,
    a: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<String>,
    involution: Involution,
}

impl Serialize for AlgebraSig {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawSig {
            dim: self.dim,
            a: fmt_q(&self.a),
            b: self.b.as_ref().map(fmt_q),
            involution: self.involution,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraSig {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = RawSig::deserialize(d)?;
        let a = parse_q(&r.a).map_err(D::Error::custom)?;
        let b = match r.b {
            Some(s) => Some(parse_q(&s).map_err(D::Error::custom)?),
            None => None,
        };
        AlgebraSig::new(r.dim, a, b, r.involution).map_err(D::Error::custom)
    }
}

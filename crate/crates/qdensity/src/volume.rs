use crate::error::DensityError;
use num_traits::Signed;
use qarith::{fmt_q, to_f64, Q};
use qorders::lattice::Lat;
use qorders::CoveringData;
use serde::{Deserialize, Serialize};

/// Volume of the fundamental cell of the "+" lattice, kept as its square.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellVolume {
    /// det of the Gram matrix of the lattice basis.
    pub gram2: String,
    /// Closed form from the order discriminant.
    pub closed2: String,
    pub value: f64,
}

/// Squared covolume from the discriminant: |disc|/4 (dim 3),
/// |disc|/(4|iota|) (dim 4), |disc|/16 (dim 5).
pub fn closed_form2(cover: &CoveringData) -> Q {
    let o = &cover.order;
    let d = Q::from_integer(o.disc());
    match o.dim() {
        3 => d / Q::from_integer(4.into()),
        4 => d / Q::from_integer(o.iota().abs() * 4),
        _ => d / Q::from_integer(16.into()),
    }
}

/// det(<e_i, e_j>) = |det(tr(e_i conj e_j))| / 2^(n-1) over a basis of the full "+" lattice.
pub fn gram_form2(cover: &CoveringData) -> Q {
    Lat::new(cover.sig(), cover.full_basis()).covolume2().abs()
}

pub fn cell_volume(cover: &CoveringData) -> Result<CellVolume, DensityError> {
    let g = gram_form2(cover);
    let c = closed_form2(cover);
    if g != c {
        return Err(DensityError::Consistency(format!("Gram {} vs closed form {}", fmt_q(&g), fmt_q(&c))));
    }
    Ok(CellVolume { gram2: fmt_q(&g), closed2: fmt_q(&c), value: to_f64(&g).sqrt() })
}

/// Volume of the unit ball in R^(dim-1).
pub fn unit_ball(dim: u8) -> f64 {
    use std::f64::consts::PI;
    match dim {
        3 => PI,
        4 => 4.0 * PI / 3.0,
        _ => PI * PI / 2.0,
    }
}

use crate::volume::cell_volume;
use crate::error::DensityError;
use qarith::to_f64;
use qorders::CoveringData;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

/// Riemann zeta for real s > 1 (Euler-Maclaurin with N = 10 and six
/// Bernoulli corrections).
pub fn zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta needs s > 1");
    const N: usize = 10;
    // B_2k / (2k)!
    const B: [f64; 6] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0, -691.0 / 1307674368000.0];
    let n = N as f64;
    let mut sum: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // rising factorial s (s+1) ... (s+2k-2) times n^(-s-2k+1)
    let mut fac = s;
    let mut pw = n.powf(-s - 1.0);
    for (k, b) in B.iter().enumerate() {
        sum += b * fac * pw;
        let j = 2.0 * k as f64;
        fac *= (s + j + 1.0) * (s + j + 2.0);
        pw /= n * n;
    }
    sum
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelPrediction {
    /// Density divided by the unknown c(Gamma_u).
    pub per_c: f64,
    pub alpha: f64,
    pub lambda: u32,
    /// Bends are taken in (modulus / sqrt(nrm u)) Z.
    pub modulus: f64,
}

/// The model with bend modulus 2^l.
pub fn density_model(cover: &CoveringData, alpha: f64, lambda: u32, l: u32) -> Result<ModelPrediction, DensityError> {
    density_model_with_modulus(cover, alpha, lambda, 2f64.powi(l as i32))
}

/// (1/alpha) pi^(n/2) nrm(u)^((n - a)/2) / (m^(2 - a) Gamma(n/2 + 1))
/// zeta(n - a) / vol(cell), with a = alpha/lambda, n = dim and m the bend
/// modulus.
pub fn density_model_with_modulus(cover: &CoveringData, alpha: f64, lambda: u32, modulus: f64) -> Result<ModelPrediction, DensityError> {
    let n = cover.dim() as f64;
    let a = alpha / lambda as f64;
    if !(a > 0.0 && n - a > 1.0) || modulus <= 0.0 {
        return Err(DensityError::Domain(format!("exponent {a} or modulus {modulus} out of range")));
    }
    let nrm = to_f64(&cover.nrm_q());
    let cell = cell_volume(cover)?.value;
    let per_c = std::f64::consts::PI.powf(n / 2.0) * nrm.powf((n - a) / 2.0)
        / (modulus.powf(2.0 - a) * gamma(n / 2.0 + 1.0))
        * zeta(n - a)
        / (alpha * cell);
    Ok(ModelPrediction { per_c, alpha, lambda, modulus })
}

//! Hong–Ou–Mandel interference with sources that occasionally emit two pairs.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::immanant::{immanant, permanent};
use crate::linalg::CMatrix;
use crate::photonics::config::{OutputEvent, PhotonInput};
use crate::photonics::profile::SpectralProfile;
use crate::photonics::rate::{coincidence_rate, scattering_matrix};
use crate::symgroup::Partition;

/// Outputs with at least one photon in each mode when two photons enter each port.
pub const DOUBLE_PAIR_OUTPUTS: [[usize; 2]; 3] = [[2, 2], [3, 1], [1, 3]];

/// The pieces of the total HOM rate at one delay setting.
#[derive(Clone, Debug, PartialEq)]
pub struct HomRates {
    /// `C^{12,12}(τ₁, τ₂)`.
    pub single: f64,
    /// `C^{1122,ξ}(τ₁, τ₁, τ₂, τ₂)` for `ξ = 1122, 1112, 1222`.
    pub double: [f64; 3],
    pub p: f64,
}

impl HomRates {
    /// `p·C^{12,12} + p²·Σ_ξ C^{1122,ξ}`.
    pub fn total(&self) -> f64 {
        self.p * self.single + self.p * self.p * self.double.iter().sum::<f64>()
    }

    /// Rate of an ideal source that never emits two pairs, `p·C^{12,12}`.
    pub fn single_source(&self) -> f64 {
        self.p * self.single
    }

    /// Multi-pair excess over the single-pair source, `p²·Σ_ξ C^{1122,ξ}`.
    pub fn excess(&self) -> f64 {
        self.total() - self.single_source()
    }
}

fn check_hom(u: &CMatrix, p: f64) -> Result<()> {
    if u.nrows() != 2 || u.ncols() != 2 {
        return Err(Error::SizeMismatch {
            expected: 2,
            actual: u.nrows().max(u.ncols()),
        });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(())
}

pub fn hom_rates(
    u: &CMatrix,
    tau1: f64,
    tau2: f64,
    p: f64,
    profile: &SpectralProfile,
) -> Result<HomRates> {
    check_hom(u, p)?;
    let single_input = PhotonInput::new(vec![1, 1], vec![1, 2], vec![tau1, tau2])?;
    let single = coincidence_rate(&single_input, u, &OutputEvent::new(vec![1, 1])?, profile)?;
    let pairs = PhotonInput::new(vec![2, 2], vec![1, 1, 2, 2], vec![tau1, tau1, tau2, tau2])?;
    let mut double = [0.0; 3];
    for (slot, mu) in double.iter_mut().zip(DOUBLE_PAIR_OUTPUTS) {
        *slot = coincidence_rate(&pairs, u, &OutputEvent::new(mu.to_vec())?, profile)?;
    }
    Ok(HomRates { single, double, p })
}

/// `p·C^{12,12}(τ) + p²·[C^{1122,1122} + C^{1122,1112} + C^{1122,1222}](τ′)` with
/// `τ′ = (τ₁, τ₁, τ₂, τ₂)`.
pub fn hom_total_rate(
    u: &CMatrix,
    tau1: f64,
    tau2: f64,
    p: f64,
    profile: &SpectralProfile,
) -> Result<f64> {
    Ok(hom_rates(u, tau1, tau2, p, profile)?.total())
}

/// `T^{1122,ξ}` for the three double-pair outputs.
pub fn double_pair_scattering(u: &CMatrix) -> Result<[CMatrix; 3]> {
    let ups = [1, 1, 2, 2];
    Ok([
        scattering_matrix(u, &ups, &[1, 1, 2, 2])?,
        scattering_matrix(u, &ups, &[1, 1, 1, 2])?,
        scattering_matrix(u, &ups, &[1, 2, 2, 2])?,
    ])
}

/// Closed-form indistinguishable excess: `p²·Σ_ξ |perm T^{1122,ξ}|²`.
pub fn h_f(u: &CMatrix, p: f64) -> Result<f64> {
    check_hom(u, p)?;
    let mut sum = 0.0;
    for t in double_pair_scattering(u)? {
        sum += permanent(&t)?.norm_sqr();
    }
    Ok(p * p * sum)
}

/// Closed-form fully distinguishable excess,
/// `p²/384·(4|P₁|² + 8|I₁^{[2,2]}|² + w|I₁^{[3,1]}|² + 4|P₂|² + 4w|I₂^{[3,1]}|² + 4|P₃|² + 4w|I₃^{[3,1]}|²)`
/// with `w = 3 + 2√2`, `P` permanents and `I` immanants of the three `T^{1122,ξ}`.
pub fn h_c(u: &CMatrix, p: f64) -> Result<f64> {
    check_hom(u, p)?;
    let w = 3.0 + 2.0 * std::f64::consts::SQRT_2;
    let [t1, t2, t3] = double_pair_scattering(u)?;
    let l31 = Partition::new(vec![3, 1])?;
    let l22 = Partition::new(vec![2, 2])?;
    let sq = |z: Complex64| z.norm_sqr();
    let sum = 4.0 * sq(permanent(&t1)?)
        + 8.0 * sq(immanant(&l22, &t1)?)
        + w * sq(immanant(&l31, &t1)?)
        + 4.0 * sq(permanent(&t2)?)
        + 4.0 * w * sq(immanant(&l31, &t2)?)
        + 4.0 * sq(permanent(&t3)?)
        + 4.0 * w * sq(immanant(&l31, &t3)?);
    Ok(p * p / 384.0 * sum)
}

/// Beamsplitter `[[√t, i√(1−t)], [i√(1−t), √t]]` with intensity transmission `t`.
pub fn beamsplitter(transmission: f64) -> Result<CMatrix> {
    if !(0.0..=1.0).contains(&transmission) {
        return Err(Error::InvalidProbability(transmission));
    }
    let a = Complex64::new(transmission.sqrt(), 0.0);
    let b = Complex64::new(0.0, (1.0 - transmission).sqrt());
    Ok(CMatrix::from_row_slice(2, 2, &[a, b, b, a]))
}

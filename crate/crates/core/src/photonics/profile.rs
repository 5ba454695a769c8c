use num_complex::Complex64;

use crate::error::{Error, Result};

const NORMALIZATION_TOL: f64 = 1e-8;

/// Spectral intensity `|φ(ω)|²` shared by all photons.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectralProfile {
    /// Gaussian of width `sigma` (inverse time) centred on `omega0`.
    Gaussian { sigma: f64, omega0: f64 },
    /// Samples `(ω, |φ(ω)|²)` on an increasing grid, integrated by the trapezoid rule.
    Tabulated { points: Vec<(f64, f64)> },
}

impl SpectralProfile {
    pub fn gaussian(sigma: f64, omega0: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidProfile(format!(
                "width must be positive, got {sigma}"
            )));
        }
        if !omega0.is_finite() {
            return Err(Error::NonFinite("omega0"));
        }
        Ok(SpectralProfile::Gaussian { sigma, omega0 })
    }

    /// Validates a sampled intensity: increasing grid, nonnegative finite values, unit area.
    pub fn tabulated(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidProfile("need at least two samples".into()));
        }
        if points
            .iter()
            .any(|&(w, v)| !w.is_finite() || !v.is_finite() || v < 0.0)
        {
            return Err(Error::InvalidProfile(
                "samples must be finite with nonnegative intensity".into(),
            ));
        }
        if points.windows(2).any(|p| p[1].0 <= p[0].0) {
            return Err(Error::InvalidProfile(
                "frequency grid must be increasing".into(),
            ));
        }
        let integral = trapezoid(&points, |_, v| Complex64::new(v, 0.0)).re;
        if (integral - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::UnnormalizedProfile { integral });
        }
        Ok(SpectralProfile::Tabulated { points })
    }

    /// Samples the intensity whose kernel equals the Gaussian variant's:
    /// a normal density of standard deviation `sigma`, over `±span·sigma`.
    pub fn sampled_gaussian(sigma: f64, omega0: f64, samples: usize, span: f64) -> Result<Self> {
        let samples = samples.max(2);
        let lo = omega0 - span * sigma;
        let step = 2.0 * span * sigma / (samples - 1) as f64;
        let norm = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
        let mut points: Vec<(f64, f64)> = (0..samples)
            .map(|i| {
                let w = lo + step * i as f64;
                let z = (w - omega0) / sigma;
                (w, norm * (-0.5 * z * z).exp())
            })
            .collect();
        // remove the truncation and quadrature error so the table passes validation
        let area = trapezoid(&points, |_, v| Complex64::new(v, 0.0)).re;
        points.iter_mut().for_each(|p| p.1 /= area);
        SpectralProfile::tabulated(points)
    }

    /// Pair overlap `K(t)`; `K(0) = 1` and `K(−t) = K(t)*`.
    pub fn kernel(&self, t: f64) -> Complex64 {
        match self {
            SpectralProfile::Gaussian { sigma, .. } => {
                // the carrier phase e^{iω₀t} cancels in every Δ_σ and is dropped
                Complex64::new((-0.5 * sigma * sigma * t * t).exp(), 0.0)
            }
            SpectralProfile::Tabulated { points } => {
                trapezoid(points, |w, v| Complex64::from_polar(v, w * t))
            }
        }
    }
}

/// `K(t)` for the given profile.
pub fn overlap_kernel(profile: &SpectralProfile, t: f64) -> Result<Complex64> {
    if !t.is_finite() {
        return Err(Error::NonFinite("kernel argument"));
    }
    Ok(profile.kernel(t))
}

fn trapezoid(points: &[(f64, f64)], f: impl Fn(f64, f64) -> Complex64) -> Complex64 {
    points
        .windows(2)
        .map(|p| (f(p[0].0, p[0].1) + f(p[1].0, p[1].1)) * (0.5 * (p[1].0 - p[0].0)))
        .sum()
}

/// `∫|φ(ω)|² e^{iωt} dω` for `φ(ω) = (πσ²)^{-1/4} exp(−(ω−ω₀)²/(2σ²))`, integrated
/// numerically. Gives `e^{iω₀t} e^{−σ²t²/4}`, so a product `K(t)K(−t)` is
/// `e^{−σ²t²/2}` rather than the `e^{−σ²t²}` of [`SpectralProfile::kernel`].
pub fn amplitude_gaussian_kernel(sigma: f64, omega0: f64, t: f64) -> Complex64 {
    let samples = 4001;
    let span = 12.0 * sigma;
    let step = 2.0 * span / (samples - 1) as f64;
    let norm = 1.0 / (std::f64::consts::PI.sqrt() * sigma);
    let points: Vec<(f64, f64)> = (0..samples)
        .map(|i| {
            let w = omega0 - span + step * i as f64;
            let z = (w - omega0) / sigma;
            (w, norm * (-z * z).exp())
        })
        .collect();
    trapezoid(&points, |w, v| Complex64::from_polar(v, w * t))
}

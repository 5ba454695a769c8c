//! Scenario files: one JSON object describing an interferometer, an input state, an output
//! event and optional delay sweeps.

use std::path::Path;

use coincidence::linalg::{random_unitary, seeded_rng, unitarity_deviation, CMatrix};
use coincidence::photonics::{word_from_occupation, OutputEvent, PhotonInput, SpectralProfile};
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::CliError;

/// Accepted departure from unitarity; printed matrices are typically rounded to 6 digits.
pub const UNITARITY_TOL: f64 = 1e-5;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    /// One-based index into `tau`.
    pub index: usize,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl SweepAxis {
    /// `steps` evenly spaced points from `min` to `max` inclusive.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.min + h * k as f64).collect()
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    u: Option<Vec<Vec<[f64; 2]>>>,
    eta: Vec<usize>,
    upsilon: Option<Vec<usize>>,
    mu: Vec<usize>,
    tau: Vec<f64>,
    #[serde(default = "one")]
    sigma: f64,
    #[serde(default)]
    omega0: f64,
    p: Option<f64>,
    #[serde(default)]
    sweep: Vec<SweepAxis>,
    #[serde(default = "default_seed")]
    seed: u64,
}

fn one() -> f64 {
    1.0
}

fn default_seed() -> u64 {
    coincidence::verify::DEFAULT_SEED
}

/// A validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub u: CMatrix,
    pub input: PhotonInput,
    pub event: OutputEvent,
    pub profile: SpectralProfile,
    pub p: Option<f64>,
    pub sweep: Vec<SweepAxis>,
    pub seed: u64,
}

fn field(name: &str, message: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("field `{name}`: {message}"))
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Scenario::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Scenario, CliError> {
        let raw: RawScenario = serde_json::from_str(text).map_err(|e| {
            CliError::Config(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        let m = raw.eta.len();
        if m == 0 {
            return Err(field("eta", "must list at least one mode"));
        }
        let u = match raw.u {
            Some(rows) => {
                if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                    return Err(field(
                        "u",
                        format!("expected a {m}x{m} matrix to match `eta`"),
                    ));
                }
                let entries: Vec<Complex64> = rows
                    .iter()
                    .flatten()
                    .map(|&[re, im]| Complex64::new(re, im))
                    .collect();
                CMatrix::from_row_slice(m, m, &entries)
            }
            None => random_unitary(m, &mut seeded_rng(raw.seed)),
        };
        let deviation = unitarity_deviation(&u);
        if deviation.is_nan() || deviation > UNITARITY_TOL {
            return Err(field(
                "u",
                format!("not unitary (deviation {deviation:.2e})"),
            ));
        }
        if raw.mu.len() != m {
            return Err(field(
                "mu",
                format!("has {} modes, `eta` has {m}", raw.mu.len()),
            ));
        }
        let upsilon = raw
            .upsilon
            .unwrap_or_else(|| word_from_occupation(&raw.eta));
        if raw.tau.len() != upsilon.len() {
            return Err(field(
                "tau",
                format!("has {} delays for {} photons", raw.tau.len(), upsilon.len()),
            ));
        }
        let input = PhotonInput::new(raw.eta, upsilon, raw.tau).map_err(|e| field("upsilon", e))?;
        let event = OutputEvent::new(raw.mu).map_err(|e| field("mu", e))?;
        if event.n() != input.n() {
            return Err(field(
                "mu",
                format!("holds {} photons, the input has {}", event.n(), input.n()),
            ));
        }
        let profile =
            SpectralProfile::gaussian(raw.sigma, raw.omega0).map_err(|e| field("sigma", e))?;
        if let Some(p) = raw.p {
            if !(0.0..=1.0).contains(&p) {
                return Err(field("p", format!("{p} outside [0, 1]")));
            }
        }
        for (k, axis) in raw.sweep.iter().enumerate() {
            let name = format!("sweep[{k}]");
            if axis.index == 0 || axis.index > input.n() {
                return Err(field(
                    &name,
                    format!("index {} outside 1..={}", axis.index, input.n()),
                ));
            }
            if axis.steps == 0 {
                return Err(field(&name, "steps must be positive"));
            }
            if !axis.min.is_finite() || !axis.max.is_finite() {
                return Err(field(&name, "bounds must be finite"));
            }
        }
        Ok(Scenario {
            u,
            input,
            event,
            profile,
            p: raw.p,
            sweep: raw.sweep,
            seed: raw.seed,
        })
    }
}

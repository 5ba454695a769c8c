//! First-principles rates for cross-checking the pipeline.
//!
//! Everything here is enumerated from scratch: output words, the permutations sending
//! photons to output slots, and the pairwise spectral overlaps. Nothing is taken from
//! the representation machinery or the pipeline's rate matrix; only the spectral
//! kernel `K(t)` is shared.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{unitarity_deviation, CMatrix};
use crate::photonics::Normalization;
use crate::photonics::{OutputEvent, PhotonInput, SpectralProfile};

pub const MAX_ORACLE_PHOTONS: usize = 4;
pub const MAX_REPRESENTATION_PHOTONS: usize = 5;
pub const MAX_COMPLETENESS_PHOTONS: usize = 3;
const UNITARITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            passed: value <= tolerance,
            value,
            tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub pipeline_value: f64,
    pub oracle_value: f64,
    pub relative_error: f64,
    pub checks: Vec<Check>,
}

impl OracleReport {
    pub fn new(pipeline_value: f64, oracle_value: f64) -> Self {
        OracleReport {
            pipeline_value,
            oracle_value,
            relative_error: relative_error(pipeline_value, oracle_value),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `|a − b| / max(|a|, |b|, 1e−300)`.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// All orderings of `0..n`, by repeated insertion.
fn orderings(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=p.len()).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    out
}

/// Photon-to-slot assignments grouped by the output word they produce:
/// `ρ` sends photon `x` to slot `ρ(x)`, which lies in mode `ξ_{ρ(x)}`.
fn assignments_by_word(xi: &[usize]) -> BTreeMap<Vec<usize>, Vec<Vec<usize>>> {
    let mut groups: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    for rho in orderings(xi.len()) {
        let word: Vec<usize> = rho.iter().map(|&slot| xi[slot]).collect();
        groups.entry(word).or_default().push(rho);
    }
    groups
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Overlap of the bra assignment `ρ′` with the ket assignment `ρ`: the ket photon `x`
/// pairs with the bra photon `y = ρ′⁻¹(ρ(x))` occupying the same slot, and each pair
/// contributes `K(τ_y − τ_x)`.
fn pair_overlap(
    rho_bra: &[usize],
    rho_ket: &[usize],
    tau: &[f64],
    profile: &SpectralProfile,
) -> Complex64 {
    let bra_inv = inverse(rho_bra);
    (0..tau.len())
        .map(|x| profile.kernel(tau[bra_inv[rho_ket[x]]] - tau[x]))
        .product()
}

fn validate(input: &PhotonInput, u: &CMatrix, event: &OutputEvent, cap: usize) -> Result<()> {
    if input.n() > cap {
        return Err(Error::TooLarge {
            what: "oracle photons",
            size: input.n(),
            max: cap,
        });
    }
    if input.n() != event.n() {
        return Err(Error::SizeMismatch {
            expected: input.n(),
            actual: event.n(),
        });
    }
    if u.nrows() != u.ncols() {
        return Err(Error::NotSquare {
            rows: u.nrows(),
            cols: u.ncols(),
        });
    }
    if input.modes() != u.nrows() || event.modes() != u.nrows() {
        return Err(Error::SizeMismatch {
            expected: u.nrows(),
            actual: input.modes().max(event.modes()),
        });
    }
    Ok(())
}

/// Unnormalized rate as a double sum over output words and the photon-to-slot
/// assignments realizing them, with the `1/Π μ!` slot-relabelling factor.
pub fn brute_force_rate(
    input: &PhotonInput,
    u: &CMatrix,
    event: &OutputEvent,
    profile: &SpectralProfile,
) -> Result<f64> {
    validate(input, u, event, MAX_ORACLE_PHOTONS)?;
    let groups = assignments_by_word(&event.xi);
    let amplitude = |word: &[usize]| -> Complex64 {
        input
            .upsilon
            .iter()
            .zip(word)
            .map(|(&a, &b)| u[(a - 1, b - 1)])
            .product()
    };
    let words: Vec<(&Vec<Vec<usize>>, Complex64)> = groups
        .iter()
        .map(|(w, rhos)| (rhos, amplitude(w)))
        .collect();
    let slot_relabelings = words[0].0.len() as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for (bra_rhos, bra_amp) in &words {
        for (ket_rhos, ket_amp) in &words {
            let mut overlap = Complex64::new(0.0, 0.0);
            for rb in bra_rhos.iter() {
                for rk in ket_rhos.iter() {
                    overlap += pair_overlap(rb, rk, &input.tau, profile);
                }
            }
            total += bra_amp.conj() * overlap * ket_amp;
        }
    }
    Ok(total.re / slot_relabelings)
}

/// `⟨ψ|ψ⟩`: photons sharing an input mode may be exchanged.
pub fn brute_force_state_norm(input: &PhotonInput, profile: &SpectralProfile) -> f64 {
    let n = input.n();
    let mut total = Complex64::new(0.0, 0.0);
    for p in orderings(n) {
        if (0..n).all(|x| input.upsilon[p[x]] == input.upsilon[x]) {
            total += (0..n)
                .map(|x| profile.kernel(input.tau[p[x]] - input.tau[x]))
                .product::<Complex64>();
        }
    }
    total.re
}

/// Compares `Σ_σ Δ_σ Γ(σ)`, assembled here from the definitions, against a pipeline
/// rate matrix, and against the oracle's own double coset sum.
pub fn representation_check(
    event: &OutputEvent,
    tau: &[f64],
    profile: &SpectralProfile,
    pipeline_r: &CMatrix,
) -> Result<OracleReport> {
    let n = event.n();
    if n > MAX_REPRESENTATION_PHOTONS {
        return Err(Error::TooLarge {
            what: "representation check photons",
            size: n,
            max: MAX_REPRESENTATION_PHOTONS,
        });
    }
    if tau.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            actual: tau.len(),
        });
    }
    let groups = assignments_by_word(&event.xi);
    let words: Vec<&Vec<usize>> = groups.keys().collect();
    let dim = words.len();
    if pipeline_r.nrows() != dim || pipeline_r.ncols() != dim {
        return Err(Error::SizeMismatch {
            expected: dim,
            actual: pipeline_r.nrows(),
        });
    }
    let index: BTreeMap<&Vec<usize>, usize> =
        words.iter().enumerate().map(|(i, w)| (*w, i)).collect();

    // Σ_σ Δ_σ Γ(σ), with Γ_ij(σ) = 1 when (w_i)_{σ(x)} = (w_j)_x for all x
    let mut assembled = CMatrix::zeros(dim, dim);
    for sigma in orderings(n) {
        let delta: Complex64 = (0..n)
            .map(|x| profile.kernel(tau[sigma[x]] - tau[x]))
            .product();
        for (i, w) in words.iter().enumerate() {
            let moved: Vec<usize> = (0..n).map(|x| w[sigma[x]]).collect();
            assembled[(i, index[&moved])] += delta;
        }
    }

    let mut double_sum = CMatrix::zeros(dim, dim);
    let slot_relabelings = groups.values().next().map_or(1, |g| g.len()) as f64;
    for (i, bra) in groups.values().enumerate() {
        for (j, ket) in groups.values().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for rb in bra {
                for rk in ket {
                    acc += pair_overlap(rb, rk, tau, profile);
                }
            }
            double_sum[(i, j)] = acc / slot_relabelings;
        }
    }

    let vs_pipeline = (&assembled - pipeline_r).camax();
    let vs_double = (&assembled - &double_sum).camax();
    let hermitian = (pipeline_r - pipeline_r.adjoint()).camax();
    let mut report = OracleReport::new(pipeline_r.camax(), assembled.camax());
    report.relative_error = vs_pipeline;
    report.checks = vec![
        Check::at_most("representation_sum_vs_pipeline", vs_pipeline, 1e-12),
        Check::at_most("representation_sum_vs_coset_sum", vs_double, 1e-12),
        Check::at_most("rate_matrix_hermitian", hermitian, 1e-14),
    ];
    Ok(report)
}

/// Sums the oracle rate over every output pattern. With a unitary `U` the detection
/// probabilities must add up to one; the report gives `|Σ − 1|` for the chosen mode.
pub fn completeness_check(
    input: &PhotonInput,
    u: &CMatrix,
    profile: &SpectralProfile,
    mode: Normalization,
) -> Result<OracleReport> {
    let deviation = unitarity_deviation(u);
    if deviation > UNITARITY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    if input.n() > MAX_COMPLETENESS_PHOTONS {
        return Err(Error::TooLarge {
            what: "completeness check photons",
            size: input.n(),
            max: MAX_COMPLETENESS_PHOTONS,
        });
    }
    let norm = brute_force_state_norm(input, profile);
    let scale = match mode {
        Normalization::Unnormalized => 1.0,
        Normalization::StateNorm => norm,
        Normalization::SquaredStateNorm => norm * norm,
    };
    let mut sum = 0.0;
    for event in OutputEvent::all(input.n(), u.nrows()) {
        sum += brute_force_rate(input, u, &event, profile)? / scale;
    }
    let mut report = OracleReport::new(sum, 1.0);
    report.checks = vec![Check::at_most(
        format!("probability_sum_{mode:?}"),
        (sum - 1.0).abs(),
        1e-8,
    )];
    Ok(report)
}

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{to_complex, CMatrix, CVector};
use crate::photonics::config::{OutputEvent, PhotonInput};
use crate::photonics::profile::SpectralProfile;
use crate::repthy::{standard_representation, BlockBasis, StandardRep};
use crate::symgroup::{factorial, rearrangements, Permutation};

/// Largest photon number for which a full `Δ_σ` table is built.
pub const MAX_DELTA_PHOTONS: usize = 8;

fn check_modes(u: &CMatrix, word: &[usize]) -> Result<()> {
    if u.nrows() != u.ncols() {
        return Err(Error::NotSquare {
            rows: u.nrows(),
            cols: u.ncols(),
        });
    }
    match word.iter().find(|&&w| w == 0 || w > u.nrows()) {
        Some(&w) => Err(Error::IndexOutOfRange {
            index: w,
            bound: u.nrows(),
        }),
        None => Ok(()),
    }
}

/// `T_ij = U[υ_i][ξ_j]`.
pub fn scattering_matrix(u: &CMatrix, upsilon: &[usize], xi: &[usize]) -> Result<CMatrix> {
    check_modes(u, upsilon)?;
    check_modes(u, xi)?;
    if upsilon.len() != xi.len() {
        return Err(Error::SizeMismatch {
            expected: upsilon.len(),
            actual: xi.len(),
        });
    }
    Ok(CMatrix::from_fn(upsilon.len(), xi.len(), |i, j| {
        u[(upsilon[i] - 1, xi[j] - 1)]
    }))
}

/// `u_k = Π_i U[υ_i][ῡ^k_i]` over the rearrangements of `ξ`.
pub fn interferometer_vector(
    u: &CMatrix,
    upsilon: &[usize],
    event: &OutputEvent,
) -> Result<CVector> {
    check_modes(u, upsilon)?;
    check_modes(u, &event.xi)?;
    if upsilon.len() != event.n() {
        return Err(Error::SizeMismatch {
            expected: event.n(),
            actual: upsilon.len(),
        });
    }
    let basis = rearrangements(&event.xi)?;
    Ok(CVector::from_iterator(
        basis.len(),
        basis.iter().map(|w| {
            upsilon
                .iter()
                .zip(w)
                .map(|(&a, &b)| u[(a - 1, b - 1)])
                .product::<Complex64>()
        }),
    ))
}

/// `Δ_σ(τ) = Π_x K(τ_{σ(x)} − τ_x)` for every `σ ∈ S_n`, indexed by lexicographic rank.
#[derive(Clone, Debug)]
pub struct DeltaWeights {
    n: usize,
    values: Vec<Complex64>,
}

impl DeltaWeights {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, sigma: &Permutation) -> Complex64 {
        self.values[sigma.lex_rank()]
    }

    /// Values in lexicographic order of `σ`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

pub fn delta_weights(tau: &[f64], profile: &SpectralProfile) -> Result<DeltaWeights> {
    let n = tau.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if n > MAX_DELTA_PHOTONS {
        return Err(Error::TooLarge {
            what: "delta table photons",
            size: n,
            max: MAX_DELTA_PHOTONS,
        });
    }
    if tau.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite("delay"));
    }
    // pair[x][y] = K(τ_y − τ_x); every Δ_σ is a product of n table entries
    let pair: Vec<Vec<Complex64>> = (0..n)
        .map(|x| (0..n).map(|y| profile.kernel(tau[y] - tau[x])).collect())
        .collect();
    let values = Permutation::all(n)
        .iter()
        .map(|s| (0..n).map(|x| pair[x][s.apply(x)]).product())
        .collect();
    Ok(DeltaWeights { n, values })
}

/// `R = Σ_σ Δ_σ Γ(σ)`.
pub fn rate_matrix_from(rep: &StandardRep, delta: &DeltaWeights) -> Result<CMatrix> {
    if rep.n() != delta.n() {
        return Err(Error::SizeMismatch {
            expected: rep.n(),
            actual: delta.n(),
        });
    }
    let dim = rep.dim();
    let mut r = CMatrix::zeros(dim, dim);
    for (s, &d) in delta.values().iter().enumerate() {
        if d == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (i, &j) in rep.action_by_index(s).iter().enumerate() {
            r[(i, j as usize)] += d;
        }
    }
    Ok(r)
}

/// Rate matrix for an output event: `R_ij = Σ_{σ : P_σ ῡ^i = ῡ^j} Δ_σ`.
pub fn rate_matrix(event: &OutputEvent, tau: &[f64], profile: &SpectralProfile) -> Result<CMatrix> {
    if tau.len() != event.n() {
        return Err(Error::SizeMismatch {
            expected: event.n(),
            actual: tau.len(),
        });
    }
    let rep = standard_representation(&event.xi)?;
    rate_matrix_from(&rep, &delta_weights(tau, profile)?)
}

/// How a rate is normalized against the input state norm `⟨ψ|ψ⟩`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// `u†Ru` as is.
    #[default]
    Unnormalized,
    /// Divided by `⟨ψ|ψ⟩`; detection probabilities for unitary `U`.
    StateNorm,
    /// Divided by `|⟨ψ|ψ⟩|²`.
    SquaredStateNorm,
}

impl Normalization {
    pub const ALL: [Normalization; 3] = [
        Normalization::Unnormalized,
        Normalization::StateNorm,
        Normalization::SquaredStateNorm,
    ];
}

/// `⟨ψ|ψ⟩ = Σ_{π ∈ Stab(υ)} Δ_π`: photons in the same input mode overlap.
pub fn state_norm(input: &PhotonInput, profile: &SpectralProfile) -> Result<f64> {
    let n = input.n();
    let mut total = Complex64::new(0.0, 0.0);
    for pi in Permutation::all(n) {
        if pi.act_on_word(&input.upsilon) != input.upsilon {
            continue;
        }
        total += (0..n)
            .map(|x| profile.kernel(input.tau[pi.apply(x)] - input.tau[x]))
            .product::<Complex64>();
    }
    Ok(total.re)
}

fn quadratic_form(u: &CVector, r: &CMatrix) -> Complex64 {
    (u.adjoint() * r * u)[(0, 0)]
}

fn apply_normalization(
    value: f64,
    input: &PhotonInput,
    profile: &SpectralProfile,
    mode: Normalization,
) -> Result<f64> {
    Ok(match mode {
        Normalization::Unnormalized => value,
        Normalization::StateNorm => value / state_norm(input, profile)?,
        Normalization::SquaredStateNorm => value / state_norm(input, profile)?.powi(2),
    })
}

fn check_event(input: &PhotonInput, u: &CMatrix, event: &OutputEvent) -> Result<()> {
    if input.n() != event.n() {
        return Err(Error::SizeMismatch {
            expected: input.n(),
            actual: event.n(),
        });
    }
    if input.modes() != u.nrows() || event.modes() != u.ncols() {
        return Err(Error::SizeMismatch {
            expected: u.nrows(),
            actual: input.modes().max(event.modes()),
        });
    }
    Ok(())
}

/// `C(τ) = u†R(τ)u`, unnormalized.
pub fn coincidence_rate(
    input: &PhotonInput,
    u: &CMatrix,
    event: &OutputEvent,
    profile: &SpectralProfile,
) -> Result<f64> {
    coincidence_rate_with(input, u, event, profile, Normalization::Unnormalized)
}

pub fn coincidence_rate_with(
    input: &PhotonInput,
    u: &CMatrix,
    event: &OutputEvent,
    profile: &SpectralProfile,
    mode: Normalization,
) -> Result<f64> {
    check_event(input, u, event)?;
    let uvec = interferometer_vector(u, &input.upsilon, event)?;
    let r = rate_matrix(event, &input.tau, profile)?;
    apply_normalization(quadratic_form(&uvec, &r).re, input, profile, mode)
}

/// `(Vu)†[V R Vᵀ](Vu)`.
pub fn rotated_rate(v: &BlockBasis, u: &CVector, r: &CMatrix) -> Result<f64> {
    if v.dim() != u.len() || r.nrows() != u.len() || r.ncols() != u.len() {
        return Err(Error::SizeMismatch {
            expected: v.dim(),
            actual: u.len(),
        });
    }
    let vc = to_complex(&v.v);
    let vu = &vc * u;
    let vr = &vc * r * vc.transpose();
    Ok(quadratic_form(&vu, &vr).re)
}

/// Rate for the input with photons rearranged to `υ′ = P_σ υ`, from the unpermuted
/// `u` and `R`. Since `u′ = Γ(σ)ᵀu`, the rate is `(Vu)†[VΓ(σ)RΓ(σ)ᵀVᵀ](Vu)`.
pub fn permuted_photon_rate(
    sigma: &Permutation,
    rep: &StandardRep,
    v: &BlockBasis,
    u: &CVector,
    r: &CMatrix,
) -> Result<f64> {
    if sigma.n() != rep.n() {
        return Err(Error::SizeMismatch {
            expected: rep.n(),
            actual: sigma.n(),
        });
    }
    let g = to_complex(&rep.matrix(sigma));
    let rotated = &g * r * g.transpose();
    rotated_rate(v, u, &rotated)
}

/// `V R Vᵀ`.
pub fn rotate(v: &BlockBasis, r: &CMatrix) -> CMatrix {
    let vc = to_complex(&v.v);
    &vc * r * vc.transpose()
}

/// Precomputed pieces of the pipeline for one (input word, `U`, event); only `Δ`
/// changes across a delay sweep.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub upsilon: Vec<usize>,
    pub event: OutputEvent,
    pub rep: StandardRep,
    pub scattering: CMatrix,
    pub u: CVector,
}

impl Experiment {
    pub fn new(upsilon: &[usize], u: &CMatrix, event: &OutputEvent) -> Result<Self> {
        let rep = standard_representation(&event.xi)?;
        Ok(Experiment {
            upsilon: upsilon.to_vec(),
            event: event.clone(),
            scattering: scattering_matrix(u, upsilon, &event.xi)?,
            u: interferometer_vector(u, upsilon, event)?,
            rep,
        })
    }

    pub fn rate_matrix(&self, tau: &[f64], profile: &SpectralProfile) -> Result<CMatrix> {
        if tau.len() != self.rep.n() {
            return Err(Error::SizeMismatch {
                expected: self.rep.n(),
                actual: tau.len(),
            });
        }
        rate_matrix_from(&self.rep, &delta_weights(tau, profile)?)
    }

    pub fn rate(&self, tau: &[f64], profile: &SpectralProfile) -> Result<f64> {
        Ok(quadratic_form(&self.u, &self.rate_matrix(tau, profile)?).re)
    }
}

/// `|C₁| = Π μ_i!`, the value of every rate-matrix entry when all delays agree.
pub fn stabilizer_order(event: &OutputEvent) -> u64 {
    event.mu.iter().map(|&k| factorial(k)).product()
}

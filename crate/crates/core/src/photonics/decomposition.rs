use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::immanant::{distinct_immanants, ImmanantSet};
use crate::linalg::{lstsq_col_piv, to_complex, CMatrix};
use crate::photonics::config::{OutputEvent, PhotonInput};
use crate::photonics::profile::SpectralProfile;
use crate::photonics::rate::Experiment;
use crate::repthy::{reducing_basis, BlockBasis, BlockLayout};
use crate::symgroup::{Partition, Permutation};

pub const MAX_DECOMPOSITION_PHOTONS: usize = 6;
const FIT_TOL: f64 = 1e-9;
const TOTAL_TOL: f64 = 1e-9;

/// One `conj(imm^λ T_σ)·α^λ_{σ,σ′}·imm^λ T_σ′` contribution.
#[derive(Clone, Debug)]
pub struct RateTerm {
    pub lambda: Partition,
    pub left: Permutation,
    pub right: Permutation,
    pub alpha: Complex64,
    pub left_value: Complex64,
    pub right_value: Complex64,
}

impl RateTerm {
    pub fn value(&self) -> Complex64 {
        self.left_value.conj() * self.alpha * self.right_value
    }
}

/// Expression of the rows of one irrep block of `V` through immanants:
/// `(V u)_block = coefficients · (imm^λ T_σ)_σ`.
#[derive(Clone, Debug)]
pub struct BlockFit {
    pub layout: BlockLayout,
    pub immanants: ImmanantSet,
    pub coefficients: DMatrix<f64>,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct RateDecomposition {
    pub terms: Vec<RateTerm>,
    pub blocks: Vec<BlockFit>,
    pub total: f64,
}

impl RateDecomposition {
    /// `Σ` of term values.
    pub fn reconstructed(&self) -> Complex64 {
        self.terms.iter().map(RateTerm::value).sum()
    }

    /// Summed term values per irrep, in block order.
    pub fn by_irrep(&self) -> Vec<(Partition, Complex64)> {
        self.blocks
            .iter()
            .map(|b| {
                let sum = self
                    .terms
                    .iter()
                    .filter(|t| t.lambda == b.layout.irrep)
                    .map(RateTerm::value)
                    .sum();
                (b.layout.irrep.clone(), sum)
            })
            .collect()
    }

    pub fn term(
        &self,
        lambda: &Partition,
        left: &Permutation,
        right: &Permutation,
    ) -> Option<&RateTerm> {
        self.terms
            .iter()
            .find(|t| &t.lambda == lambda && &t.left == left && &t.right == right)
    }
}

/// Fits every block of `V` onto the distinct immanants of its irrep, exactly as
/// polynomials in `U`.
pub fn fit_blocks(experiment: &Experiment, basis: &BlockBasis) -> Result<Vec<BlockFit>> {
    let xi = &experiment.event.xi;
    let upsilon = &experiment.upsilon;
    let mut fits = Vec::with_capacity(basis.layout.len());
    for block in &basis.layout {
        let set = distinct_immanants(&block.irrep, upsilon, xi, &experiment.scattering)?;
        let e = set.monomials.embedding();
        let vb = basis.v.rows(block.start, block.size).into_owned();
        let target = &vb * &e; // size × monomials
        let (coefficients, residual) = if set.is_empty() {
            (DMatrix::zeros(block.size, 0), target.amax())
        } else {
            // target = C · coordinates  ⇔  coordinatesᵀ Cᵀ = targetᵀ
            let ct = lstsq_col_piv(&set.coordinates.transpose(), &target.transpose(), 1e-12);
            let c = ct.transpose();
            let residual = (&c * &set.coordinates - &target).amax() / target.amax().max(1.0);
            (c, residual)
        };
        if residual > FIT_TOL {
            return Err(Error::FitResidual {
                lambda: block.irrep.to_string(),
                residual,
            });
        }
        fits.push(BlockFit {
            layout: block.clone(),
            immanants: set,
            coefficients,
            residual,
        });
    }
    Ok(fits)
}

/// Builds the immanant expansion from precomputed block fits and a rate matrix.
pub fn decompose_with(
    experiment: &Experiment,
    basis: &BlockBasis,
    fits: &[BlockFit],
    r: &CMatrix,
) -> Result<RateDecomposition> {
    let vc = to_complex(&basis.v);
    let rotated = &vc * r * vc.transpose();
    let vu = &vc * &experiment.u;
    let mut terms = Vec::new();
    let mut worst_fit: f64 = 0.0;
    for fit in fits {
        let block = &fit.layout;
        if fit.immanants.is_empty() {
            continue;
        }
        // numeric check of the polynomial fit on this U
        let values: Vec<Complex64> = fit
            .immanants
            .representatives
            .iter()
            .map(|(_, v)| *v)
            .collect();
        let scale = vu.camax().max(f64::MIN_POSITIVE);
        for row in 0..block.size {
            let fitted: Complex64 = (0..values.len())
                .map(|a| values[a] * fit.coefficients[(row, a)])
                .sum();
            worst_fit = worst_fit.max((fitted - vu[block.start + row]).norm() / scale);
        }
        let c = to_complex(&fit.coefficients);
        let m = rotated.view((block.start, block.start), (block.size, block.size));
        let alpha = c.transpose() * m * &c;
        for (a, (sa, va)) in fit.immanants.representatives.iter().enumerate() {
            for (b, (sb, vb)) in fit.immanants.representatives.iter().enumerate() {
                terms.push(RateTerm {
                    lambda: block.irrep.clone(),
                    left: sa.clone(),
                    right: sb.clone(),
                    alpha: alpha[(a, b)],
                    left_value: *va,
                    right_value: *vb,
                });
            }
        }
    }
    if worst_fit > FIT_TOL {
        return Err(Error::FitResidual {
            lambda: "evaluated V·u".into(),
            residual: worst_fit,
        });
    }
    let total = (experiment.u.adjoint() * r * &experiment.u)[(0, 0)].re;
    let decomposition = RateDecomposition {
        terms,
        blocks: fits.to_vec(),
        total,
    };
    let rebuilt = decomposition.reconstructed();
    let scale = total
        .abs()
        .max(experiment.u.norm_squared() * r.camax())
        .max(f64::MIN_POSITIVE);
    if (rebuilt.re - total).abs() > TOTAL_TOL * scale || rebuilt.im.abs() > TOTAL_TOL * scale {
        return Err(Error::FitResidual {
            lambda: "total rate".into(),
            residual: (rebuilt - total).norm() / scale,
        });
    }
    Ok(decomposition)
}

/// The rate as a sum over irreps of immanant pairs with delay-dependent weights `α`.
pub fn immanant_form(
    input: &PhotonInput,
    u: &CMatrix,
    event: &OutputEvent,
    profile: &SpectralProfile,
) -> Result<RateDecomposition> {
    if input.n() > MAX_DECOMPOSITION_PHOTONS {
        return Err(Error::TooLarge {
            what: "immanant decomposition photons",
            size: input.n(),
            max: MAX_DECOMPOSITION_PHOTONS,
        });
    }
    let experiment = Experiment::new(&input.upsilon, u, event)?;
    let basis = reducing_basis(&experiment.rep)?;
    let fits = fit_blocks(&experiment, &basis)?;
    let r = experiment.rate_matrix(&input.tau, profile)?;
    decompose_with(&experiment, &basis, &fits, &r)
}

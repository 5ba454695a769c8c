//! Coincidence rates of time-delayed photons through a linear interferometer, in the
//! factored form `C = u†Ru` and as sums of immanants of the scattering matrix.

pub mod config;
pub mod decomposition;
pub mod hom;
pub mod profile;
pub mod rate;

pub use config::{
    occupation_from_word, permuted_mode_input, word_from_occupation, OutputEvent, PhotonInput,
};
pub use decomposition::{immanant_form, BlockFit, RateDecomposition, RateTerm};
pub use hom::{beamsplitter, h_c, h_f, hom_rates, hom_total_rate, HomRates};
pub use profile::{amplitude_gaussian_kernel, overlap_kernel, SpectralProfile};
pub use rate::{
    coincidence_rate, coincidence_rate_with, delta_weights, interferometer_vector,
    permuted_photon_rate, rate_matrix, rate_matrix_from, rotate, rotated_rate, scattering_matrix,
    stabilizer_order, state_norm, DeltaWeights, Experiment, Normalization,
};

//! Symmetric-group machinery: permutations, partitions, characters, tableau counts and
//! the coset structure of occupation words.

pub mod character;
pub mod coset;
pub mod partition;
pub mod permutation;

pub use character::{character, CharacterTable};
pub use coset::{coset_decomposition, rearrangements, CosetDecomposition};
pub use partition::{class_eigenvalue, count_ssyt, irrep_dimension, Partition};
pub use permutation::{factorial, next_permutation, Permutation};

use crate::error::Result;

/// `p∘q`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn cycle_type(p: &Permutation) -> Partition {
    p.cycle_type()
}

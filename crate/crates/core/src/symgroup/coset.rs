use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::symgroup::permutation::next_permutation;
use crate::symgroup::Permutation;

/// All distinct rearrangements of `word` in lexicographic order. The first entry is the
/// sorted word.
pub fn rearrangements(word: &[usize]) -> Result<Vec<Vec<usize>>> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut current = word.to_vec();
    current.sort_unstable();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    Ok(out)
}

/// Right cosets of the stabilizer of a sorted word.
///
/// `cosets[k]` holds every `σ` with `P_σ representatives[k] = target`, listed in
/// lexicographic order; `cosets[0]` is the stabilizer itself.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    pub target: Vec<usize>,
    pub representatives: Vec<Vec<usize>>,
    pub cosets: Vec<Vec<Permutation>>,
}

impl CosetDecomposition {
    pub fn stabilizer(&self) -> &[Permutation] {
        &self.cosets[0]
    }

    /// Index of the coset containing `sigma`.
    pub fn coset_of(&self, sigma: &Permutation) -> Option<usize> {
        self.cosets.iter().position(|c| c.contains(sigma))
    }
}

/// Decomposes `S_n` into the cosets `C_k = {σ : P_σ ῡ^k = ξ}` where `ξ` is `word` sorted.
pub fn coset_decomposition(word: &[usize]) -> Result<CosetDecomposition> {
    let representatives = rearrangements(word)?;
    let target = representatives[0].clone();
    let index: HashMap<&[usize], usize> = representatives
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let mut cosets = vec![Vec::new(); representatives.len()];
    for sigma in Permutation::all(target.len()) {
        // P_σ w = ξ  ⇔  w = P_{σ⁻¹} ξ
        let w = sigma.inverse().act_on_word(&target);
        cosets[index[w.as_slice()]].push(sigma);
    }
    Ok(CosetDecomposition {
        target,
        representatives,
        cosets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &str) -> Permutation {
        Permutation::parse_cycles(4, s).unwrap()
    }

    #[test]
    fn rearrangement_examples() {
        let r = rearrangements(&[2, 2, 3, 3]).unwrap();
        let expected: Vec<Vec<usize>> = [
            [2, 2, 3, 3],
            [2, 3, 2, 3],
            [2, 3, 3, 2],
            [3, 2, 2, 3],
            [3, 2, 3, 2],
            [3, 3, 2, 2],
        ]
        .iter()
        .map(|w| w.to_vec())
        .collect();
        assert_eq!(r, expected);
        assert_eq!(rearrangements(&[1, 1]).unwrap(), vec![vec![1, 1]]);
        assert_eq!(
            rearrangements(&[1, 2]).unwrap(),
            vec![vec![1, 2], vec![2, 1]]
        );
        assert_eq!(rearrangements(&[]).unwrap_err(), Error::EmptyWord);
    }

    #[test]
    fn cosets_of_2233() {
        let d = coset_decomposition(&[2, 2, 3, 3]).unwrap();
        let listed: [&[&str]; 6] = [
            &["e", "(12)", "(34)", "(12,34)"],
            &["(23)", "(132)", "(234)", "(1342)"],
            &["(24)", "(142)", "(243)", "(1432)"],
            &["(13)", "(123)", "(134)", "(1234)"],
            &["(14)", "(124)", "(143)", "(1243)"],
            &["(1324)", "(1423)", "(13,24)", "(14,23)"],
        ];
        for (k, names) in listed.iter().enumerate() {
            let mut want: Vec<Permutation> = names.iter().map(|s| cyc(s)).collect();
            want.sort();
            let mut got = d.cosets[k].clone();
            got.sort();
            assert_eq!(got, want, "coset {}", k + 1);
        }
        assert!(d.cosets[1].contains(&cyc("(23)")));
        assert_eq!(cyc("(23)").act_on_word(&[2, 3, 2, 3]), vec![2, 2, 3, 3]);
    }

    #[test]
    fn cosets_without_repeats() {
        let d = coset_decomposition(&[1, 2]).unwrap();
        assert_eq!(d.cosets[0], vec![Permutation::identity(2)]);
        assert_eq!(d.cosets[1], vec![Permutation::new(&[2, 1]).unwrap()]);
    }

    #[test]
    fn cosets_partition_the_group() {
        for word in [
            &[1, 1, 2, 3][..],
            &[1, 2, 2, 2, 3],
            &[1, 1, 2, 2, 3, 3],
            &[4, 4, 4],
        ] {
            let d = coset_decomposition(word).unwrap();
            let size = d.cosets[0].len();
            let mut all: Vec<Permutation> = d.cosets.iter().flatten().cloned().collect();
            assert_eq!(all.len() as u64, crate::symgroup::factorial(word.len()));
            all.sort();
            all.dedup();
            assert_eq!(all.len() as u64, crate::symgroup::factorial(word.len()));
            assert!(d.cosets.iter().all(|c| c.len() == size));
            // the first coset is closed under composition
            for a in d.stabilizer() {
                for b in d.stabilizer() {
                    assert!(d.stabilizer().contains(&a.compose(b).unwrap()));
                }
            }
        }
    }
}

use std::fmt;

use crate::error::{Error, Result};
use crate::symgroup::Partition;

/// A bijection on `{1..n}` in one-line notation.
///
/// Images are stored zero-based; the public constructors and [`Permutation::one_line`]
/// speak the one-based language used everywhere else in the crate. Composition follows
/// `(p∘q)(i) = p(q(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-based one-line notation.
    pub fn new(one_line: &[usize]) -> Result<Self> {
        let n = one_line.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty image".into()));
        }
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &v in one_line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{one_line:?} is not a bijection on 1..={n}"
                )));
            }
            seen[v - 1] = true;
            image.push(v - 1);
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation from zero-based images. Panics if `image` is not a bijection.
    pub fn from_zero_based(image: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = image.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Permutation { image }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation of `{1..n}` from one-based disjoint cycles, e.g. `&[&[1, 2, 3]]`
    /// maps 1→2→3→1.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (pos, &v) in cycle.iter().enumerate() {
                if v == 0 || v > n || touched[v - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle {cycle:?} is not disjoint or leaves 1..={n}"
                    )));
                }
                touched[v - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                image[v - 1] = next - 1;
            }
        }
        Ok(Permutation { image })
    }

    /// Parses compact cycle notation such as `e`, `(123)`, `(12)(34)` or `(12,34)`.
    /// Digits are single-symbol, so this is limited to n ≤ 9.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "e" || text.is_empty() {
            return Ok(Permutation::identity(n));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for group in text.split(')') {
            let group = group.trim().trim_start_matches('(');
            if group.is_empty() {
                continue;
            }
            for part in group.split(',') {
                let cycle: Option<Vec<usize>> = part
                    .trim()
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect();
                let cycle = cycle.ok_or_else(|| {
                    Error::InvalidPermutation(format!("cannot parse cycle notation {text:?}"))
                })?;
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
            }
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(n, &refs)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// Zero-based image of zero-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// Zero-based images.
    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// One-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self∘other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                actual: other.n(),
            });
        }
        Ok(Permutation {
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { image: inv }
    }

    /// Disjoint cycles of length ≥ 2, one-based, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.image[i];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.image[i];
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted(lengths)
    }

    /// +1 for even permutations, −1 for odd ones.
    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Rearranges a word by this permutation: `(P_σ v)_i = v_{σ(i)}`.
    pub fn act_on_word<T: Copy>(&self, word: &[T]) -> Vec<T> {
        debug_assert_eq!(word.len(), self.n());
        self.image.iter().map(|&j| word[j]).collect()
    }

    /// Lexicographic rank among all permutations of the same size (Lehmer code).
    pub fn lex_rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.image[i + 1..]
                .iter()
                .filter(|&&v| v < self.image[i])
                .count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    /// All `n!` permutations in lexicographic order of their one-line words.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(factorial(n) as usize);
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                image: current.clone(),
            });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }

    /// The transposition swapping one-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Permutation> {
        Permutation::from_cycles(n, &[&[a, b]])
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        let compact = self.n() <= 9;
        for c in cycles {
            let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            if compact {
                write!(f, "({})", body.join(""))?;
            } else {
                write!(f, "({})", body.join(","))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.one_line())
    }
}

/// Advances `v` to the next lexicographic arrangement; returns false after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

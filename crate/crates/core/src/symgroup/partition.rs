use std::fmt;

use crate::error::{Error, Result};

/// An integer partition `λ ⊢ n`, used both as an irrep label and as a conjugacy-class label.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// All partitions of `n` in reverse lexicographic order: `[n]` first, `[1^n]` last.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition::from_sorted(prefix.clone()));
                return;
            }
            for part in (1..=rem.min(max)).rev() {
                prefix.push(part);
                rec(rem - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&r| r > c).count())
            .collect();
        Partition::from_sorted(parts)
    }

    /// Size of the conjugacy class of permutations with this cycle type:
    /// `n! / Π_i (i^{m_i} m_i!)`.
    pub fn class_size(&self) -> u64 {
        let n = self.size();
        let mut denom: u64 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let len = self.parts[i];
            let mut mult = 0;
            while i < self.parts.len() && self.parts[i] == len {
                mult += 1;
                i += 1;
            }
            denom *= (len as u64).pow(mult as u32) * (1..=mult as u64).product::<u64>();
        }
        (1..=n as u64).product::<u64>() / denom
    }

    /// Dimension of the irrep, by the hook-length formula.
    pub fn irrep_dimension(&self) -> u64 {
        let n = self.size();
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (r, &row) in self.parts.iter().enumerate() {
            for c in 0..row {
                let hook = (row - c) + (conj.parts[c] - r) - 1;
                hooks *= hook as u128;
            }
        }
        let nf: u128 = (1..=n as u128).product();
        (nf / hooks) as u64
    }

    /// Eigenvalue of the two-cycle class operator on this irrep,
    /// `n/2 + ½ Σ_ℓ λ_ℓ(λ_ℓ − 2ℓ)`, which equals the sum of box contents and is
    /// therefore always an integer.
    pub fn class_eigenvalue(&self) -> i64 {
        let n = self.size() as i64;
        let twice: i64 = self
            .parts
            .iter()
            .enumerate()
            .map(|(l, &p)| p as i64 * (p as i64 - 2 * (l as i64 + 1)))
            .sum();
        (n + twice) / 2
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Reverse-lexicographic: `[4] < [3,1] < [2,2] < [2,1,1] < [1,1,1,1]`, matching the
/// order in which blocks are laid out.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: std::result::Result<Vec<usize>, _> =
            body.split(',').map(|p| p.trim().parse::<usize>()).collect();
        let parts = parts.map_err(|_| Error::InvalidPartition(s.to_string()))?;
        Partition::new(parts)
    }
}

/// Number of standard Young tableaux of shape `lambda`.
pub fn irrep_dimension(lambda: &Partition) -> u64 {
    lambda.irrep_dimension()
}

/// Class-operator eigenvalue `κ_λ`.
pub fn class_eigenvalue(lambda: &Partition) -> i64 {
    lambda.class_eigenvalue()
}

/// Number of semi-standard Young tableaux of shape `lambda` whose entries are the
/// multiset of symbols in `content` (a Kostka number).
pub fn count_ssyt(lambda: &Partition, content: &[usize]) -> Result<u64> {
    if lambda.size() != content.len() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            actual: content.len(),
        });
    }
    let mut symbols = content.to_vec();
    symbols.sort_unstable();
    let mut counts = Vec::new();
    let mut i = 0;
    while i < symbols.len() {
        let s = symbols[i];
        let mut c = 0;
        while i < symbols.len() && symbols[i] == s {
            c += 1;
            i += 1;
        }
        counts.push(c);
    }
    Ok(kostka(lambda.parts(), &counts))
}

/// Strips the largest symbol as a horizontal strip and recurses.
fn kostka(shape: &[usize], counts: &[usize]) -> u64 {
    let Some((&last, rest)) = counts.split_last() else {
        return u64::from(shape.iter().all(|&p| p == 0));
    };
    let mut total = 0;
    let mut inner = shape.to_vec();
    strips(shape, 0, last, &mut inner, &mut |mu| {
        total += kostka(mu, rest)
    });
    total
}

/// Enumerates shapes `mu ⊆ shape` with `shape/mu` a horizontal strip of `remaining` boxes.
fn strips(
    shape: &[usize],
    row: usize,
    remaining: usize,
    mu: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if row == shape.len() {
        if remaining == 0 {
            visit(mu);
        }
        return;
    }
    let below = shape.get(row + 1).copied().unwrap_or(0);
    let max_remove = (shape[row] - below).min(remaining);
    for k in 0..=max_remove {
        mu[row] = shape[row] - k;
        strips(shape, row + 1, remaining - k, mu, visit);
    }
    mu[row] = shape[row];
}

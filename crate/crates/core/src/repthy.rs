//! The permutation representation `Γ` of `S_n` on the rearrangements of an occupation
//! word, its two-cycle class operators, and the orthogonal basis `V` that reduces it.
//!
//! `Γ_ij(σ) = 1` exactly when `P_σ ῡ^i = ῡ^j`, with `(P_σ v)_i = v_{σ(i)}`. Under
//! `(p∘q)(i) = p(q(i))` this is a homomorphism: `Γ(σ₁)Γ(σ₂) = Γ(σ₁∘σ₂)`
//! (see `homomorphism_convention` below).

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::linalg::seeded_rng;
use crate::symgroup::{count_ssyt, factorial, rearrangements, Partition, Permutation};

/// Largest `n!·N` table the representation will materialize.
const MAX_ACTION_ENTRIES: u64 = 20_000_000;

/// `Γ` over the lexicographically ordered rearrangements of a word.
#[derive(Clone, Debug)]
pub struct StandardRep {
    word: Vec<usize>,
    basis: Vec<Vec<usize>>,
    group: Vec<Permutation>,
    /// `action[s][i] = j` with `P_{group[s]} basis[i] = basis[j]`.
    action: Vec<Vec<u32>>,
}

impl StandardRep {
    /// The sorted word `ξ`.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// The rearrangement list `Υ`.
    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// All of `S_n`, lexicographic.
    pub fn group(&self) -> &[Permutation] {
        &self.group
    }

    /// Basis index `j` with `Γ_ij(σ) = 1`.
    pub fn image(&self, sigma: &Permutation, i: usize) -> usize {
        self.action[sigma.lex_rank()][i] as usize
    }

    /// Image table of the group element at lexicographic index `s`.
    pub fn action_by_index(&self, s: usize) -> &[u32] {
        &self.action[s]
    }

    pub fn matrix(&self, sigma: &Permutation) -> DMatrix<f64> {
        let row = &self.action[sigma.lex_rank()];
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (i, &j) in row.iter().enumerate() {
            m[(i, j as usize)] = 1.0;
        }
        m
    }
}

pub fn standard_representation(xi: &[usize]) -> Result<StandardRep> {
    let basis = rearrangements(xi)?;
    let n = xi.len();
    let entries = factorial(n).saturating_mul(basis.len() as u64);
    if entries > MAX_ACTION_ENTRIES {
        return Err(Error::TooLarge {
            what: "standard representation (n!·N entries)",
            size: entries as usize,
            max: MAX_ACTION_ENTRIES as usize,
        });
    }
    let word = basis[0].clone();
    let index: HashMap<&[usize], u32> = basis
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i as u32))
        .collect();
    let group = Permutation::all(n);
    let action = group
        .iter()
        .map(|sigma| {
            basis
                .iter()
                .map(|w| index[sigma.act_on_word(w).as_slice()])
                .collect()
        })
        .collect();
    Ok(StandardRep {
        word,
        basis,
        group,
        action,
    })
}

/// `D_k^(2)`: the sum of `Γ(σ)` over all transpositions of `S_k ⊂ S_n`.
pub fn class_operator(k: usize, rep: &StandardRep) -> Result<DMatrix<f64>> {
    let n = rep.n();
    if k < 2 || k > n {
        return Err(Error::ClassOperatorRange { k, n });
    }
    let dim = rep.dim();
    let mut d = DMatrix::zeros(dim, dim);
    for a in 1..=k {
        for b in a + 1..=k {
            let t = Permutation::transposition(n, a, b)?;
            for i in 0..dim {
                d[(i, rep.image(&t, i))] += 1.0;
            }
        }
    }
    Ok(d)
}

/// Multiplicity `p^λ` of every irrep of `S_n` in `Γ`, including the zeros.
pub fn multiplicities(xi: &[usize]) -> Result<BTreeMap<Partition, u64>> {
    if xi.is_empty() {
        return Err(Error::EmptyWord);
    }
    Partition::all(xi.len())
        .into_iter()
        .map(|lam| {
            let p = count_ssyt(&lam, xi)?;
            Ok((lam, p))
        })
        .collect()
}

/// One irrep block of the reduced representation.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockLayout {
    pub irrep: Partition,
    pub start: usize,
    pub size: usize,
}

impl BlockLayout {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.size
    }
}

/// Orthogonal `V` whose rows are simultaneous eigenvectors of the class operators,
/// grouped into irrep blocks.
#[derive(Clone, Debug)]
pub struct BlockBasis {
    pub v: DMatrix<f64>,
    pub layout: Vec<BlockLayout>,
    /// Per row, the eigenvalues `(κ_n, κ_{n−1}, …, κ_2)` of `D_n^(2), …, D_2^(2)`.
    pub chains: Vec<Vec<i64>>,
    /// Weights `α_k` (for `k = 2..=n`) that produced a separable spectrum.
    pub weights: Vec<f64>,
}

impl BlockBasis {
    pub fn dim(&self) -> usize {
        self.v.nrows()
    }

    pub fn block_of_row(&self, row: usize) -> Option<&BlockLayout> {
        self.layout.iter().find(|b| b.range().contains(&row))
    }

    /// Largest `|M_ij|` with `i`, `j` in different blocks.
    pub fn off_block_max(&self, m: &DMatrix<f64>) -> f64 {
        let owner = self.row_owner();
        let mut worst: f64 = 0.0;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if owner[i] != owner[j] {
                    worst = worst.max(m[(i, j)].abs());
                }
            }
        }
        worst
    }

    pub(crate) fn row_owner(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.dim()];
        for (b, block) in self.layout.iter().enumerate() {
            for r in block.range() {
                owner[r] = b;
            }
        }
        owner
    }

    /// `max |V Vᵀ − 1|`.
    pub fn orthogonality_deviation(&self) -> f64 {
        let prod = &self.v * self.v.transpose();
        (prod - DMatrix::identity(self.dim(), self.dim())).amax()
    }
}

const DEFAULT_WEIGHT_OFFSET: f64 = 7.0;
const MAX_WEIGHT_DRAWS: usize = 64;
const WEIGHT_SEED: u64 = 0x5eed_c1a5;
const PRIMES: [u64; 40] = [
    11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103,
    107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
];

/// Reduces `Γ` with the eigenbasis of `D^(2) = Σ_k α_k D_k^(2)`.
///
/// Starts from `α_k = k + 7`; if two distinct chains share a `D^(2)` eigenvalue the
/// weights are redrawn from a seeded shuffle of primes. Within each chain eigenspace the
/// basis is canonicalized by Gram–Schmidt on the projected unit vectors, and every row
/// is signed so that its first nonzero entry is positive.
pub fn reducing_basis(rep: &StandardRep) -> Result<BlockBasis> {
    let n = rep.n();
    let dim = rep.dim();
    if n == 1 {
        return Ok(BlockBasis {
            v: DMatrix::identity(1, 1),
            layout: vec![BlockLayout {
                irrep: Partition::new(vec![1])?,
                start: 0,
                size: 1,
            }],
            chains: vec![vec![]],
            weights: vec![],
        });
    }
    let ops: Vec<DMatrix<f64>> = (2..=n)
        .map(|k| class_operator(k, rep))
        .collect::<Result<_>>()?;

    let mut weights: Vec<f64> = (2..=n).map(|k| k as f64 + DEFAULT_WEIGHT_OFFSET).collect();
    let mut rng = seeded_rng(WEIGHT_SEED);
    for _ in 0..MAX_WEIGHT_DRAWS {
        if let Some(basis) = try_reduce(&ops, &weights, dim, n) {
            return Ok(basis);
        }
        let mut primes = PRIMES.to_vec();
        primes.shuffle(&mut rng);
        weights = primes[..n - 1].iter().map(|&p| p as f64).collect();
    }
    Err(Error::DegenerateSpectrum {
        attempts: MAX_WEIGHT_DRAWS,
    })
}

/// Same as [`reducing_basis`] with caller-supplied weights; `None` when the weights do
/// not separate the chains.
pub fn reducing_basis_with_weights(rep: &StandardRep, weights: &[f64]) -> Option<BlockBasis> {
    let n = rep.n();
    let ops: Vec<DMatrix<f64>> = (2..=n)
        .map(|k| class_operator(k, rep).ok())
        .collect::<Option<_>>()?;
    try_reduce(&ops, weights, rep.dim(), n)
}

fn try_reduce(ops: &[DMatrix<f64>], weights: &[f64], dim: usize, n: usize) -> Option<BlockBasis> {
    let mut combined = DMatrix::<f64>::zeros(dim, dim);
    for (op, &w) in ops.iter().zip(weights) {
        combined += op * w;
    }
    let eig = SymmetricEigen::new(combined);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    // Eigenvalues of D^(2) are integer combinations of integer κ's when the weights are
    // integers, so clusters are separated by at least one.
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        match clusters.last_mut() {
            Some(c) if (eig.eigenvalues[idx] - eig.eigenvalues[c[0]]).abs() < 0.5 => c.push(idx),
            _ => clusters.push(vec![idx]),
        }
    }

    struct Space {
        chain: Vec<i64>,
        irrep: Partition,
        rows: Vec<Vec<f64>>,
    }
    let mut spaces = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let q = DMatrix::from_fn(dim, cluster.len(), |i, j| eig.eigenvectors[(i, cluster[j])]);
        // each class operator must act as a scalar on the eigenspace
        let mut chain = Vec::with_capacity(ops.len());
        for op in ops.iter().rev() {
            let reduced = q.transpose() * op * &q;
            let kappa = reduced[(0, 0)].round();
            let scalar = DMatrix::<f64>::identity(cluster.len(), cluster.len()) * kappa;
            if (reduced - scalar).amax() > 1e-6 {
                return None;
            }
            chain.push(kappa as i64);
        }
        let irrep = shape_from_chain(&chain)?;
        debug_assert_eq!(irrep.size(), n);
        spaces.push(Space {
            chain,
            irrep,
            rows: canonical_rows(&q),
        });
    }

    // blocks in partition order, chains descending within a block
    spaces.sort_by(|a, b| a.irrep.cmp(&b.irrep).then_with(|| b.chain.cmp(&a.chain)));
    let mut v = DMatrix::zeros(dim, dim);
    let mut chains = Vec::with_capacity(dim);
    let mut layout: Vec<BlockLayout> = Vec::new();
    let mut row = 0;
    for space in spaces {
        match layout.last_mut() {
            Some(b) if b.irrep == space.irrep => b.size += space.rows.len(),
            _ => layout.push(BlockLayout {
                irrep: space.irrep.clone(),
                start: row,
                size: space.rows.len(),
            }),
        }
        for r in space.rows {
            for (j, x) in r.into_iter().enumerate() {
                v[(row, j)] = x;
            }
            chains.push(space.chain.clone());
            row += 1;
        }
    }
    Some(BlockBasis {
        v,
        layout,
        chains,
        weights: weights.to_vec(),
    })
}

/// Orthonormal rows spanning the column space of `q`, built by Gram–Schmidt on the
/// projections of the unit vectors so the result does not depend on the eigensolver's
/// choice of basis.
fn canonical_rows(q: &DMatrix<f64>) -> Vec<Vec<f64>> {
    let dim = q.nrows();
    let want = q.ncols();
    let projector = q * q.transpose();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(want);
    for j in 0..dim {
        if rows.len() == want {
            break;
        }
        let mut x: Vec<f64> = projector.column(j).iter().copied().collect();
        for r in &rows {
            let dot: f64 = r.iter().zip(&x).map(|(a, b)| a * b).sum();
            for (xi, ri) in x.iter_mut().zip(r) {
                *xi -= dot * ri;
            }
        }
        let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-8 {
            x.iter_mut().for_each(|a| *a /= norm);
            if let Some(first) = x.iter().find(|a| a.abs() > 1e-10) {
                if *first < 0.0 {
                    x.iter_mut().for_each(|a| *a = -*a);
                }
            }
            rows.push(x);
        }
    }
    rows
}

/// Recovers the irrep from the eigenvalue chain `(κ_n, …, κ_2)`: each step
/// `κ_k − κ_{k−1}` is the content of the box added to go from `S_{k−1}` to `S_k`.
pub fn shape_from_chain(chain: &[i64]) -> Option<Partition> {
    let mut shape: Vec<usize> = vec![1];
    let mut previous = 0i64;
    for &kappa in chain.iter().rev() {
        let content = kappa - previous;
        previous = kappa;
        let row = (0..=shape.len()).find(|&r| {
            let len = shape.get(r).copied().unwrap_or(0);
            let addable = r == 0 || shape[r - 1] > len;
            addable && len as i64 - r as i64 == content
        })?;
        if row == shape.len() {
            shape.push(1);
        } else {
            shape[row] += 1;
        }
    }
    Partition::new(shape).ok()
}

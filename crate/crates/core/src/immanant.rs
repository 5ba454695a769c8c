//! Permanents, immanants and the selection of linearly independent immanants of a
//! row-permuted scattering matrix.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{lstsq_col_piv, random_unitary, seeded_rng, CMatrix};
use crate::symgroup::{
    character, count_ssyt, next_permutation, rearrangements, Partition, Permutation,
};

pub const MAX_PERMANENT_SIZE: usize = 20;
pub const MAX_IMMANANT_SIZE: usize = 10;

fn require_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// Ryser's formula with Gray-code subset order, `O(2ⁿ·n)`.
pub fn permanent(m: &CMatrix) -> Result<Complex64> {
    let n = require_square(m)?;
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if n > MAX_PERMANENT_SIZE {
        return Err(Error::TooLarge {
            what: "permanent",
            size: n,
            max: MAX_PERMANENT_SIZE,
        });
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    for k in 1..(1u64 << n) {
        let next = k ^ (k >> 1);
        let flipped = (gray ^ next).trailing_zeros() as usize;
        let added = next & (1 << flipped) != 0;
        gray = next;
        for (i, s) in row_sums.iter_mut().enumerate() {
            if added {
                *s += m[(i, flipped)];
            } else {
                *s -= m[(i, flipped)];
            }
        }
        let prod: Complex64 = row_sums.iter().product();
        if gray.count_ones() % 2 == n as u32 % 2 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

/// Direct `Σ_σ Π_i M_{i,σ(i)}`; kept as a cross-check for [`permanent`].
pub fn permanent_naive(m: &CMatrix) -> Result<Complex64> {
    let n = require_square(m)?;
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        total += (0..n).map(|i| m[(i, sigma[i])]).product::<Complex64>();
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(total)
}

/// Cycle type of a zero-based one-line permutation, decreasing.
fn cycle_lengths(sigma: &[usize], seen: &mut [bool]) -> Vec<usize> {
    seen.iter_mut().for_each(|s| *s = false);
    let mut lengths = Vec::new();
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            len += 1;
            i = sigma[i];
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

/// Visits every permutation of `0..n` in lexicographic order together with `χ^λ` of it.
fn for_each_with_character(lambda: &Partition, mut visit: impl FnMut(&[usize], i64)) -> Result<()> {
    let n = lambda.size();
    let mut chars: HashMap<Vec<usize>, i64> = HashMap::new();
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    loop {
        let class = cycle_lengths(&sigma, &mut seen);
        let chi = match chars.get(&class) {
            Some(&c) => c,
            None => {
                let c = character(lambda, &Partition::new(class.clone())?)?;
                chars.insert(class, c);
                c
            }
        };
        if chi != 0 {
            visit(&sigma, chi);
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(())
}

/// `imm^λ M = Σ_σ χ^λ(σ) Π_i M_{i,σ(i)}`.
pub fn immanant(lambda: &Partition, m: &CMatrix) -> Result<Complex64> {
    let n = require_square(m)?;
    if lambda.size() != n {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            actual: n,
        });
    }
    if n > MAX_IMMANANT_SIZE {
        return Err(Error::TooLarge {
            what: "immanant",
            size: n,
            max: MAX_IMMANANT_SIZE,
        });
    }
    let mut total = Complex64::new(0.0, 0.0);
    for_each_with_character(lambda, |sigma, chi| {
        let prod: Complex64 = (0..n).map(|i| m[(i, sigma[i])]).product();
        total += prod * chi as f64;
    })?;
    Ok(total)
}

pub fn determinant(m: &CMatrix) -> Result<Complex64> {
    let n = require_square(m)?;
    immanant(&Partition::new(vec![1; n.max(1)])?, m)
}

/// `M_σ`: row `i` of the result is row `σ(i)` of `M`.
pub fn row_permuted(m: &CMatrix, sigma: &Permutation) -> Result<CMatrix> {
    if sigma.n() != m.nrows() {
        return Err(Error::SizeMismatch {
            expected: m.nrows(),
            actual: sigma.n(),
        });
    }
    Ok(CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        m[(sigma.apply(i), j)]
    }))
}

/// Monomial coordinates of the amplitudes `u_k = Π_j U[υ_j][ῡ^k_j]`.
///
/// Two rearrangements give the same monomial in the entries of `U` exactly when they
/// carry the same multiset of (input, output) mode pairs, so every `u_k` is identified
/// with one of `count` distinct monomials; `orbit[k]` names it.
#[derive(Clone, Debug)]
pub struct MonomialMap {
    pub upsilon: Vec<usize>,
    pub basis: Vec<Vec<usize>>,
    pub orbit: Vec<usize>,
    pub count: usize,
}

impl MonomialMap {
    pub fn new(upsilon: &[usize], xi: &[usize]) -> Result<Self> {
        if upsilon.len() != xi.len() {
            return Err(Error::SizeMismatch {
                expected: xi.len(),
                actual: upsilon.len(),
            });
        }
        let basis = rearrangements(xi)?;
        let mut ids: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
        let orbit = basis
            .iter()
            .map(|w| {
                let mut pairs: Vec<(usize, usize)> =
                    upsilon.iter().copied().zip(w.iter().copied()).collect();
                pairs.sort_unstable();
                let next = ids.len();
                *ids.entry(pairs).or_insert(next)
            })
            .collect();
        Ok(MonomialMap {
            upsilon: upsilon.to_vec(),
            basis,
            orbit,
            count: ids.len(),
        })
    }

    /// `E`: the `N × count` 0/1 matrix with `u = E·m`.
    pub fn embedding(&self) -> DMatrix<f64> {
        let mut e = DMatrix::zeros(self.basis.len(), self.count);
        for (k, &o) in self.orbit.iter().enumerate() {
            e[(k, o)] = 1.0;
        }
        e
    }

    /// Sums a functional on `u` down to monomial coordinates.
    pub fn aggregate(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.count];
        for (k, &c) in coeffs.iter().enumerate() {
            out[self.orbit[k]] += c;
        }
        out
    }
}

/// Integer coefficients `c` with `imm^λ(T_σ) = Σ_k c_k u_k` over the rearrangements of `ξ`.
///
/// With `(T_σ)_ij = T_{σ(i),j}` one has `imm^λ(T_σ) = Σ_π χ(π) Π_j U[υ_j][ξ_{π(σ⁻¹(j))}]`.
pub fn immanant_functional(
    lambda: &Partition,
    sigma: &Permutation,
    xi: &[usize],
) -> Result<Vec<i64>> {
    let basis = rearrangements(xi)?;
    let xi_sorted = &basis[0];
    if lambda.size() != xi.len() || sigma.n() != xi.len() {
        return Err(Error::SizeMismatch {
            expected: xi.len(),
            actual: lambda.size(),
        });
    }
    let index: HashMap<&[usize], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let inv = sigma.inverse();
    let mut coeffs = vec![0i64; basis.len()];
    let mut word = vec![0usize; xi.len()];
    for_each_with_character(lambda, |pi, chi| {
        for (j, w) in word.iter_mut().enumerate() {
            *w = xi_sorted[pi[inv.apply(j)]];
        }
        coeffs[index[word.as_slice()]] += chi;
    })?;
    Ok(coeffs)
}

/// Exact rank of an integer matrix (rows as vectors) by fraction-free elimination.
fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let (pv, f) = (pivot[col], row[col]);
            for (x, &y) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = *x * pv - y * f;
            }
            let g = row.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `imm^λ(T_σ)` written as a combination of the representatives.
#[derive(Clone, Debug)]
pub struct ImmanantRelation {
    pub sigma: Permutation,
    pub coefficients: Vec<f64>,
}

/// Linearly independent immanants `imm^λ(M_σ)`, and how every other row
/// arrangement is expressed through them.
#[derive(Clone, Debug)]
pub struct ImmanantSet {
    pub lambda: Partition,
    /// `(σ, imm^λ(M_σ))`, lexicographically first independent choices.
    pub representatives: Vec<(Permutation, Complex64)>,
    /// One entry per distinct row arrangement `P_σ υ` not chosen as a representative.
    pub relations: Vec<ImmanantRelation>,
    /// Representative coefficients over the monomials of `u` (one row per representative).
    pub coordinates: DMatrix<f64>,
    pub monomials: MonomialMap,
}

impl ImmanantSet {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn sigmas(&self) -> Vec<Permutation> {
        self.representatives
            .iter()
            .map(|(s, _)| s.clone())
            .collect()
    }
}

/// Number of linearly independent immanants of type `λ` among the `M_σ`:
/// `K(λ, υ)·K(λ, ξ)`, the product of the two semi-standard tableau counts.
pub fn expected_distinct_count(
    lambda: &Partition,
    upsilon: &[usize],
    xi: &[usize],
) -> Result<usize> {
    Ok((count_ssyt(lambda, upsilon)? * count_ssyt(lambda, xi)?) as usize)
}

/// Rank of `{imm^λ(T_σ)}` for the given `σ`, as polynomials in the entries of `U`.
pub fn immanant_rank(
    lambda: &Partition,
    upsilon: &[usize],
    xi: &[usize],
    sigmas: &[Permutation],
) -> Result<usize> {
    let map = MonomialMap::new(upsilon, xi)?;
    let rows = sigmas
        .iter()
        .map(|s| Ok(map.aggregate(&immanant_functional(lambda, s, xi)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(integer_rank(&rows))
}

const RELATION_SEEDS: [u64; 2] = [0x1a2b_3c4d, 0x5e6f_7a8b];
const RELATION_TOL: f64 = 1e-9;

/// Selects independent immanants of `M = T(υ, ξ)` under row permutations.
///
/// Candidates are scanned in lexicographic order of `σ`, one per distinct arrangement
/// `P_σ υ`; a candidate is kept when it is linearly independent (exactly, in monomial
/// coordinates) of those already kept. The resulting count must equal
/// [`expected_distinct_count`]. Relations are then checked numerically on two seeded
/// generic unitaries.
pub fn distinct_immanants(
    lambda: &Partition,
    upsilon: &[usize],
    xi: &[usize],
    m: &CMatrix,
) -> Result<ImmanantSet> {
    let n = upsilon.len();
    if lambda.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            actual: lambda.size(),
        });
    }
    let map = MonomialMap::new(upsilon, xi)?;
    let mut seen_words: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut kept: Vec<(Permutation, Vec<i64>)> = Vec::new();
    let mut others: Vec<(Permutation, Vec<i64>)> = Vec::new();
    for sigma in Permutation::all(n) {
        if seen_words.insert(sigma.act_on_word(upsilon), ()).is_some() {
            continue;
        }
        let coords = map.aggregate(&immanant_functional(lambda, &sigma, xi)?);
        let mut trial: Vec<Vec<i64>> = kept.iter().map(|(_, c)| c.clone()).collect();
        trial.push(coords.clone());
        if integer_rank(&trial) > kept.len() {
            kept.push((sigma, coords));
        } else {
            others.push((sigma, coords));
        }
    }
    // zero functionals never count as independent
    let expected = expected_distinct_count(lambda, upsilon, xi)?;
    if kept.len() != expected {
        return Err(Error::ImmanantCountMismatch {
            lambda: lambda.to_string(),
            found: kept.len(),
            expected,
        });
    }

    let coordinates = DMatrix::from_fn(kept.len(), map.count, |r, c| kept[r].1[c] as f64);
    let relations = if kept.is_empty() {
        others
            .iter()
            .map(|(s, _)| ImmanantRelation {
                sigma: s.clone(),
                coefficients: vec![],
            })
            .collect()
    } else {
        let targets = DMatrix::from_fn(map.count, others.len(), |r, c| others[c].1[r] as f64);
        let solved = lstsq_col_piv(&coordinates.transpose(), &targets, 1e-12);
        others
            .iter()
            .enumerate()
            .map(|(c, (s, _))| ImmanantRelation {
                sigma: s.clone(),
                coefficients: solved.column(c).iter().copied().collect(),
            })
            .collect()
    };

    let representatives = kept
        .iter()
        .map(|(s, _)| Ok((s.clone(), immanant(lambda, &row_permuted(m, s)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let set = ImmanantSet {
        lambda: lambda.clone(),
        representatives,
        relations,
        coordinates,
        monomials: map,
    };
    check_relations(&set, upsilon, xi)?;
    Ok(set)
}

/// Evaluates every relation on generic unitaries large enough to hold all modes.
fn check_relations(set: &ImmanantSet, upsilon: &[usize], xi: &[usize]) -> Result<()> {
    let modes = upsilon.iter().chain(xi).copied().max().unwrap_or(1);
    for seed in RELATION_SEEDS {
        let u = random_unitary(modes, &mut seeded_rng(seed));
        let t = CMatrix::from_fn(upsilon.len(), xi.len(), |i, j| {
            u[(upsilon[i] - 1, xi[j] - 1)]
        });
        let reps: Vec<Complex64> = set
            .representatives
            .iter()
            .map(|(s, _)| immanant(&set.lambda, &row_permuted(&t, s)?))
            .collect::<Result<_>>()?;
        // |imm^λ T_σ| is bounded by χ(e)·perm(|T|)
        let bound = permanent(&t.map(|z| Complex64::new(z.norm(), 0.0)))?.re;
        let scale = reps.iter().map(|z| z.norm()).fold(bound, f64::max);
        for rel in &set.relations {
            let direct = immanant(&set.lambda, &row_permuted(&t, &rel.sigma)?)?;
            let combined: Complex64 = rel
                .coefficients
                .iter()
                .zip(&reps)
                .map(|(&c, &z)| z * c)
                .sum();
            let residual = (direct - combined).norm() / scale;
            if residual > RELATION_TOL {
                return Err(Error::ImmanantRelation {
                    lambda: set.lambda.to_string(),
                    residual,
                });
            }
        }
    }
    Ok(())
}

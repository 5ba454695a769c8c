//! Small dense linear-algebra helpers shared by the pipeline and the oracle.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the diagonal phases of R
/// folded back into Q.
pub fn random_unitary<R: Rng>(m: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(m, m, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..m {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..m {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Generic (non-unitary) complex matrix with standard normal entries.
pub fn random_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// `max |U U† − 1|` over entries; infinite for non-square input.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let prod = u * u.adjoint();
    let mut worst: f64 = 0.0;
    for i in 0..u.nrows() {
        for j in 0..u.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - target).norm());
        }
    }
    worst
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Least-squares solution of `A X = B` through a column-pivoted QR factorization.
/// Columns of `A` whose pivot falls below `rtol·|R₀₀|` are treated as dependent and get
/// zero coefficients.
pub fn lstsq_col_piv(a: &DMatrix<f64>, b: &DMatrix<f64>, rtol: f64) -> DMatrix<f64> {
    let (m, s) = a.shape();
    let k = b.ncols();
    if s == 0 {
        return DMatrix::zeros(0, k);
    }
    let qr = a.clone().col_piv_qr();
    let q = qr.q();
    let r = qr.r();
    let p = qr.p();
    let qtb = q.transpose() * b;
    let lead = r[(0, 0)].abs();
    let diag = m.min(s);
    let rank = (0..diag)
        .take_while(|&i| r[(i, i)].abs() > rtol * lead.max(f64::MIN_POSITIVE))
        .count();
    let mut z = DMatrix::<f64>::zeros(s, k);
    for col in 0..k {
        for i in (0..rank).rev() {
            let mut acc = qtb[(i, col)];
            for j in i + 1..rank {
                acc -= r[(i, j)] * z[(j, col)];
            }
            z[(i, col)] = acc / r[(i, i)];
        }
    }
    p.inv_permute_rows(&mut z);
    z
}

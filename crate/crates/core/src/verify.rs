//! Seeded cross-validation of the pipeline against the oracle.

use rand::Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::linalg::{random_unitary, seeded_rng, CMatrix};
use crate::oracle::{
    brute_force_rate, completeness_check, relative_error, representation_check, Check,
};
use crate::photonics::{Experiment, Normalization, OutputEvent, PhotonInput, SpectralProfile};
use crate::repthy::{reducing_basis, BlockBasis};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CASES: usize = 200;
pub const RATE_TOL: f64 = 1e-9;
pub const REPRESENTATION_TOL: f64 = 1e-12;
pub const BLOCK_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub cases: usize,
    /// Negative control: rotate two rows of `V` from different blocks into each other.
    pub corrupt_basis: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: DEFAULT_SEED,
            cases: DEFAULT_CASES,
            corrupt_basis: false,
        }
    }
}

/// One randomly drawn configuration.
#[derive(Clone, Debug)]
pub struct Case {
    pub index: usize,
    pub u: CMatrix,
    pub input: PhotonInput,
    pub event: OutputEvent,
    pub sigma: f64,
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub seed: u64,
    pub results: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results
            .iter()
            .all(|r| r.checks.iter().all(|c| c.passed))
    }

    pub fn failures(&self) -> usize {
        self.results
            .iter()
            .flat_map(|r| &r.checks)
            .filter(|c| !c.passed)
            .count()
    }

    pub fn check_count(&self) -> usize {
        self.results.iter().map(|r| r.checks.len()).sum()
    }

    /// One `key=value` line per check, in case order.
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.check_count() + 1);
        for r in &self.results {
            for c in &r.checks {
                out.push(format!(
                    "check={} case={} n={} m={} status={} value={:.3e} tol={:.0e}",
                    c.name,
                    r.index,
                    r.n,
                    r.m,
                    if c.passed { "pass" } else { "fail" },
                    c.value,
                    c.tolerance
                ));
            }
        }
        out.push(format!(
            "summary seed={} cases={} checks={} failures={} status={}",
            self.seed,
            self.results.len(),
            self.check_count(),
            self.failures(),
            if self.passed() { "pass" } else { "fail" }
        ));
        out
    }
}

/// Case `index` of the suite with the given seed; independent of every other case.
pub fn draw_case(seed: u64, index: usize) -> Case {
    let mut rng = seeded_rng(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let n = rng.gen_range(2..=4);
    let m = rng.gen_range(2..=3);
    let u = random_unitary(m, &mut rng);
    let upsilon: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=m)).collect();
    let mut counts = vec![0; m];
    for _ in 0..n {
        counts[rng.gen_range(0..m)] += 1;
    }
    let sigma = rng.gen_range(0.5..2.0);
    let tau: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0) / sigma).collect();
    Case {
        index,
        input: PhotonInput::from_word(upsilon, m, tau).expect("drawn word fits the modes"),
        event: OutputEvent::new(counts).expect("n ≥ 2"),
        u,
        sigma,
    }
}

/// Mixes the first row of the first block with the first row of the last block.
pub fn corrupt(basis: &mut BlockBasis) {
    let (Some(first), Some(last)) = (basis.layout.first(), basis.layout.last()) else {
        return;
    };
    if first.start == last.start {
        return;
    }
    let (a, b) = (first.start, last.start);
    let (c, s) = (0.8f64, 0.6f64);
    for j in 0..basis.v.ncols() {
        let (x, y) = (basis.v[(a, j)], basis.v[(b, j)]);
        basis.v[(a, j)] = c * x + s * y;
        basis.v[(b, j)] = -s * x + c * y;
    }
}

pub fn run_case(case: &Case, corrupt_basis: bool) -> Result<CaseResult> {
    let profile = SpectralProfile::gaussian(case.sigma, 0.0)?;
    let exp = Experiment::new(&case.input.upsilon, &case.u, &case.event)?;
    let r = exp.rate_matrix(&case.input.tau, &profile)?;
    let pipeline = (exp.u.adjoint() * &r * &exp.u)[(0, 0)].re;
    let oracle = brute_force_rate(&case.input, &case.u, &case.event, &profile)?;
    let mut checks = vec![Check::at_most(
        "pipeline_vs_oracle",
        relative_error(pipeline, oracle),
        RATE_TOL,
    )];
    checks.extend(representation_check(&case.event, &case.input.tau, &profile, &r)?.checks);

    let mut basis = reducing_basis(&exp.rep)?;
    if corrupt_basis {
        corrupt(&mut basis);
    }
    let mut block = 0.0f64;
    for s in 0..exp.rep.group().len() {
        let g = exp.rep.matrix(&exp.rep.group()[s]);
        block = block.max(basis.off_block_max(&(&basis.v * g * basis.v.transpose())));
    }
    checks.push(Check::at_most("block_diagonal", block, BLOCK_TOL));
    checks.push(Check::at_most(
        "basis_orthogonal",
        basis.orthogonality_deviation(),
        1e-12,
    ));
    if case.input.n() <= 3 {
        let report = completeness_check(&case.input, &case.u, &profile, Normalization::StateNorm)?;
        checks.extend(report.checks);
    }
    Ok(CaseResult {
        index: case.index,
        n: case.input.n(),
        m: case.u.nrows(),
        checks,
    })
}

pub fn run_suite(options: &SuiteOptions) -> Result<SuiteReport> {
    let results = (0..options.cases)
        .into_par_iter()
        .map(|i| run_case(&draw_case(options.seed, i), options.corrupt_basis))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        seed: options.seed,
        results,
    })
}

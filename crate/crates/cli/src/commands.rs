//! Report and CSV builders behind each subcommand. Everything returns a `String` so
//! output bytes depend only on the scenario, never on thread scheduling.

use std::fmt::Write as _;

use coincidence::oracle::{
    brute_force_rate, relative_error, representation_check, Check, MAX_ORACLE_PHOTONS,
};
use coincidence::photonics::decomposition::{
    decompose_with, fit_blocks, MAX_DECOMPOSITION_PHOTONS,
};
use coincidence::photonics::{h_c, h_f, hom_rates, Experiment, RateDecomposition};
use coincidence::repthy::{reducing_basis, BlockBasis};
use coincidence::verify::{run_suite, SuiteOptions, RATE_TOL};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{Scenario, SweepAxis};
use crate::error::CliError;

/// Fixed 17-significant-digit scientific notation.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn cnum(z: Complex64) -> String {
    format!(
        "{}{}{}i",
        num(z.re),
        if z.im < 0.0 { "" } else { "+" },
        num(z.im)
    )
}

struct Prepared {
    experiment: Experiment,
    basis: Option<BlockBasis>,
}

fn prepare(s: &Scenario, with_basis: bool) -> Result<Prepared, CliError> {
    let experiment = Experiment::new(&s.input.upsilon, &s.u, &s.event)?;
    let basis = if with_basis {
        Some(reducing_basis(&experiment.rep)?)
    } else {
        None
    };
    Ok(Prepared { experiment, basis })
}

fn decomposition(p: &Prepared, s: &Scenario) -> Result<Option<RateDecomposition>, CliError> {
    let Some(basis) = &p.basis else {
        return Ok(None);
    };
    if s.input.n() > MAX_DECOMPOSITION_PHOTONS {
        return Ok(None);
    }
    let fits = fit_blocks(&p.experiment, basis)?;
    let r = p.experiment.rate_matrix(&s.input.tau, &s.profile)?;
    Ok(Some(decompose_with(&p.experiment, basis, &fits, &r)?))
}

fn layout_lines(out: &mut String, basis: &BlockBasis) {
    out.push_str("blocks:\n");
    for b in &basis.layout {
        let _ = writeln!(
            out,
            "  {} rows {}..{} size {}",
            b.irrep,
            b.start + 1,
            b.start + b.size,
            b.size
        );
    }
}

fn term_lines(out: &mut String, d: &RateDecomposition) {
    out.push_str("terms: lambda left right alpha imm_left imm_right value\n");
    for t in &d.terms {
        let _ = writeln!(
            out,
            "  {} {} {} {} {} {} {}",
            t.lambda,
            t.left,
            t.right,
            cnum(t.alpha),
            cnum(t.left_value),
            cnum(t.right_value),
            cnum(t.value())
        );
    }
    out.push_str("irrep totals:\n");
    for (lambda, total) in d.by_irrep() {
        let _ = writeln!(out, "  {lambda} {}", num(total.re));
    }
}

/// `rate`: `C(τ)`, an oracle cross-check when small enough, the block layout and the
/// immanant term table.
pub fn rate_report(s: &Scenario) -> Result<String, CliError> {
    let p = prepare(s, s.input.n() <= MAX_DECOMPOSITION_PHOTONS)?;
    let rate = p.experiment.rate(&s.input.tau, &s.profile)?;
    let mut out = String::new();
    let _ = writeln!(out, "rate {}", num(rate));
    if s.input.n() <= MAX_ORACLE_PHOTONS {
        let oracle = brute_force_rate(&s.input, &s.u, &s.event, &s.profile)?;
        let _ = writeln!(
            out,
            "oracle {} relative_error {:.3e}",
            num(oracle),
            relative_error(rate, oracle)
        );
    }
    if let Some(basis) = &p.basis {
        layout_lines(&mut out, basis);
    }
    if let Some(d) = decomposition(&p, s)? {
        term_lines(&mut out, &d);
    }
    Ok(out)
}

/// `decompose`: the reducing basis, the immanant fits of each block and the term table.
pub fn decompose_report(s: &Scenario) -> Result<String, CliError> {
    if s.input.n() > MAX_DECOMPOSITION_PHOTONS {
        return Err(CliError::Config(format!(
            "decomposition supports at most {MAX_DECOMPOSITION_PHOTONS} photons, scenario has {}",
            s.input.n()
        )));
    }
    let p = prepare(s, true)?;
    let basis = p.basis.as_ref().expect("basis requested");
    let mut out = String::new();
    let _ = writeln!(
        out,
        "word {:?} dim {}",
        p.experiment.rep.word(),
        basis.dim()
    );
    layout_lines(&mut out, basis);
    out.push_str("basis rows (chain: entries):\n");
    for row in 0..basis.dim() {
        let entries: Vec<String> = basis.v.row(row).iter().map(|&x| num(x)).collect();
        let _ = writeln!(out, "  {:?}: {}", basis.chains[row], entries.join(" "));
    }
    let fits = fit_blocks(&p.experiment, basis)?;
    for fit in &fits {
        let _ = writeln!(
            out,
            "immanants {} (fit residual {:.3e}):",
            fit.layout.irrep, fit.residual
        );
        for (sigma, value) in &fit.immanants.representatives {
            let _ = writeln!(out, "  {sigma} {}", cnum(*value));
        }
        for rel in &fit.immanants.relations {
            let coeffs: Vec<String> = rel.coefficients.iter().map(|&c| num(c)).collect();
            let _ = writeln!(out, "  {} = [{}]", rel.sigma, coeffs.join(", "));
        }
    }
    let r = p.experiment.rate_matrix(&s.input.tau, &s.profile)?;
    let d = decompose_with(&p.experiment, basis, &fits, &r)?;
    let _ = writeln!(out, "rate {}", num(d.total));
    term_lines(&mut out, &d);
    Ok(out)
}

fn sweep_rates(
    s: &Scenario,
    experiment: &Experiment,
    points: &[Vec<f64>],
) -> Result<Vec<f64>, CliError> {
    points
        .par_iter()
        .map(|tau| experiment.rate(tau, &s.profile).map_err(CliError::from))
        .collect()
}

fn axes<const K: usize>(s: &Scenario, command: &str) -> Result<[SweepAxis; K], CliError> {
    <[SweepAxis; K]>::try_from(s.sweep.clone()).map_err(|v: Vec<SweepAxis>| {
        CliError::Config(format!(
            "field `sweep`: `{command}` needs exactly {K} axes, found {}",
            v.len()
        ))
    })
}

/// `landscape`: `tau_a,tau_b,rate` over the grid of two sweep axes, row-major in `tau_a`.
pub fn landscape_csv(s: &Scenario) -> Result<String, CliError> {
    let [a, b] = axes::<2>(s, "landscape")?;
    if a.index == b.index {
        return Err(CliError::Config(
            "field `sweep`: axes must vary different delays".into(),
        ));
    }
    let experiment = Experiment::new(&s.input.upsilon, &s.u, &s.event)?;
    let (va, vb) = (a.values(), b.values());
    let mut points = Vec::with_capacity(va.len() * vb.len());
    for &x in &va {
        for &y in &vb {
            let mut tau = s.input.tau.clone();
            tau[a.index - 1] = x;
            tau[b.index - 1] = y;
            points.push(tau);
        }
    }
    let rates = sweep_rates(s, &experiment, &points)?;
    let mut out = String::from("tau_a,tau_b,rate\n");
    for (tau, rate) in points.iter().zip(rates) {
        let _ = writeln!(
            out,
            "{},{},{}",
            num(tau[a.index - 1]),
            num(tau[b.index - 1]),
            num(rate)
        );
    }
    Ok(out)
}

/// `hom`: `tau2,rate_single,rate_total` with `τ₁` fixed to the scenario's first delay,
/// followed by the closed-form `h_f` and `h_c` as comments.
pub fn hom_csv(s: &Scenario) -> Result<String, CliError> {
    if s.u.nrows() != 2 {
        return Err(CliError::Config(format!(
            "field `u`: `hom` needs 2 modes, found {}",
            s.u.nrows()
        )));
    }
    let p =
        s.p.ok_or_else(|| CliError::Config("field `p`: required by `hom`".into()))?;
    let [axis] = axes::<1>(s, "hom")?;
    if axis.index != 2 {
        return Err(CliError::Config(
            "field `sweep[0]`: `hom` sweeps delay 2".into(),
        ));
    }
    let tau1 = s.input.tau[0];
    let values = axis.values();
    let rows = values
        .par_iter()
        .map(|&t2| hom_rates(&s.u, tau1, t2, p, &s.profile).map_err(CliError::from))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = String::from("tau2,rate_single,rate_total\n");
    for (t2, r) in values.iter().zip(rows) {
        let _ = writeln!(
            out,
            "{},{},{}",
            num(*t2),
            num(r.single_source()),
            num(r.total())
        );
    }
    let _ = writeln!(out, "# h_f={}", num(h_f(&s.u, p)?));
    let _ = writeln!(out, "# h_c={}", num(h_c(&s.u, p)?));
    Ok(out)
}

fn check_line(out: &mut String, c: &Check) {
    let _ = writeln!(
        out,
        "check={} status={} value={:.3e} tol={:.0e}",
        c.name,
        if c.passed { "pass" } else { "fail" },
        c.value,
        c.tolerance
    );
}

/// `verify` on the seeded random suite. Returns the report and whether every check passed.
pub fn verify_suite(options: &SuiteOptions) -> Result<(String, bool), CliError> {
    let report = run_suite(options)?;
    let mut out = report.lines().join("\n");
    out.push('\n');
    Ok((out, report.passed()))
}

/// `verify <config>`: pipeline against oracle and the representation check for one scenario.
pub fn verify_scenario(s: &Scenario, corrupt_basis: bool) -> Result<(String, bool), CliError> {
    if s.input.n() > MAX_ORACLE_PHOTONS {
        return Err(CliError::Config(format!(
            "verification supports at most {MAX_ORACLE_PHOTONS} photons, scenario has {}",
            s.input.n()
        )));
    }
    let experiment = Experiment::new(&s.input.upsilon, &s.u, &s.event)?;
    let r = experiment.rate_matrix(&s.input.tau, &s.profile)?;
    let pipeline = (experiment.u.adjoint() * &r * &experiment.u)[(0, 0)].re;
    let oracle = brute_force_rate(&s.input, &s.u, &s.event, &s.profile)?;
    let mut checks = vec![Check::at_most(
        "pipeline_vs_oracle",
        relative_error(pipeline, oracle),
        RATE_TOL,
    )];
    checks.extend(representation_check(&s.event, &s.input.tau, &s.profile, &r)?.checks);
    let mut basis = reducing_basis(&experiment.rep)?;
    if corrupt_basis {
        coincidence::verify::corrupt(&mut basis);
    }
    let mut block: f64 = 0.0;
    for sigma in experiment.rep.group() {
        let g = experiment.rep.matrix(sigma);
        block = block.max(basis.off_block_max(&(&basis.v * g * basis.v.transpose())));
    }
    checks.push(Check::at_most(
        "block_diagonal",
        block,
        coincidence::verify::BLOCK_TOL,
    ));
    let mut out = String::new();
    for c in &checks {
        check_line(&mut out, c);
    }
    let passed = checks.iter().all(|c| c.passed);
    let _ = writeln!(
        out,
        "summary checks={} failures={} status={}",
        checks.len(),
        checks.iter().filter(|c| !c.passed).count(),
        if passed { "pass" } else { "fail" }
    );
    Ok((out, passed))
}

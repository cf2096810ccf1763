//! The `verify` command: numerical checks of a configured state.

use std::f64::consts::PI;
use std::fmt;

use dynosc_core::operators::{apply_ladder, commutator_check, invariant_report, FirstOrderOperator, LadderKind};
use dynosc_core::oracle::{comoving_residual, dft_momentum, quadrature_moment, schrodinger_residual, TauConvention};
use dynosc_core::states::{eval_momentum_with, sample_invariant_frame};
use dynosc_core::stencil::interior_norm;
use dynosc_core::{
    classical_moments, flow, sample_frame, Grid, MomentumDenominator, Representation, StateSpec, WaveFrame,
};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliResult;

/// Grid used for the time-derivative residual; the configured bounds are
/// kept and the resolution raised so spatial truncation does not dominate.
pub const RESIDUAL_POINTS: usize = 4096;
/// Grid for the operator checks.
pub const OPERATOR_POINTS: usize = 8192;
pub const RESIDUAL_DT: f64 = 1e-4;
/// Number of evenly spaced check times across the configured window.
pub const CHECK_TIMES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub denominator: MomentumDenominator,
    pub tau: TauConvention,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { denominator: MomentumDenominator::Beta0Quart, tau: TauConvention::MinusTwoGamma }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    /// The check passes when `measured < tolerance`.
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.measured < self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict}  {:<22} measured {:.3e}  tolerance < {:.0e}", self.name, self.measured, self.tolerance)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check_times(config: &RunConfig) -> Vec<f64> {
    let (a, b) = (config.time.t_start, config.time.t_end);
    if a == b {
        return vec![a];
    }
    (0..CHECK_TIMES).map(|k| a + (b - a) * k as f64 / (CHECK_TIMES - 1) as f64).collect()
}

fn max_over<F>(times: &[f64], f: F) -> CliResult<f64>
where
    F: Fn(f64) -> CliResult<f64> + Sync,
{
    let values: Vec<f64> = times.par_iter().map(|&t| f(t)).collect::<CliResult<_>>()?;
    // NaN must surface as a failure, so it wins over finite values.
    Ok(values.into_iter().fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) }))
}

fn ladder_gap(spec: &StateSpec, grid: Grid, t: f64, kind: LadderKind) -> CliResult<f64> {
    let n = spec.n;
    let op = FirstOrderOperator::at(kind, &spec.params, t);
    let frame = sample_invariant_frame(spec, grid, t)?;
    let applied = apply_ladder(&op, &frame)?;
    let target = match kind {
        LadderKind::Annihilation => n.lowered().map(|m| (m, n.get() as f64)),
        _ => Some((n.raised()?, n.get() as f64 + 1.0)),
    };
    let expected: Vec<Complex64> = match target {
        Some((m, k)) => {
            let neighbour = sample_invariant_frame(&spec.with_n(m), grid, t)?;
            neighbour.amplitudes().iter().map(|a| a * k.sqrt()).collect()
        }
        None => vec![Complex64::new(0.0, 0.0); grid.len()],
    };
    let diff: Vec<Complex64> = applied.amplitudes().iter().zip(&expected).map(|(a, b)| a - b).collect();
    Ok(interior_norm(&diff) / interior_norm(frame.amplitudes()))
}

fn periodicity_gap(spec: &StateSpec, t: f64) -> f64 {
    let a = flow(&spec.params, t);
    let b = flow(&spec.params, t + 2.0 * PI);
    [
        a.mu - b.mu,
        a.alpha - b.alpha,
        a.beta - b.beta,
        a.gamma - PI - b.gamma,
        a.delta - b.delta,
        a.eps - b.eps,
        a.kappa - b.kappa,
    ]
    .iter()
    .fold(0.0, |m: f64, d| m.max(d.abs()))
}

fn moment_gap(spec: &StateSpec, grid: Grid, t: f64) -> CliResult<f64> {
    let position = sample_frame(spec, Representation::Position, grid, t)?;
    let momentum = dft_momentum(&position)?.frame;
    let (x1, x2) = (quadrature_moment(&position, 1)?, quadrature_moment(&position, 2)?);
    let (p1, p2) = (quadrature_moment(&momentum, 1)?, quadrature_moment(&momentum, 2)?);
    let m = classical_moments(&spec.params, spec.n, t);
    let rel = |q: f64, c: f64| (q - c).abs() / c.abs().max(1.0);
    Ok([rel(x1, m.mean_x), rel(p1, m.mean_p), rel(x2 - x1 * x1, m.var_x), rel(p2 - p1 * p1, m.var_p)]
        .into_iter()
        .fold(0.0, f64::max))
}

/// Runs every check on the configured state.
pub fn verify(config: &RunConfig, options: VerifyOptions) -> CliResult<VerifyReport> {
    let spec = config.spec();
    let grid = config.position_grid()?;
    let residual_grid = config.refined_grid(RESIDUAL_POINTS)?;
    let operator_grid = config.refined_grid(OPERATOR_POINTS)?;
    let times = check_times(config);
    let mut checks = Vec::new();
    let mut push = |name, measured, tolerance| checks.push(Check { name, measured, tolerance });

    push(
        "schrodinger_residual",
        max_over(&times, |t| Ok(schrodinger_residual(&spec, residual_grid, t, RESIDUAL_DT)?.l2_relative))?,
        1e-6,
    );
    let expected_norm = spec.params.norm_squared();
    push(
        "norm",
        max_over(&times, |t| {
            let frame = sample_frame(&spec, Representation::Position, grid, t)?;
            Ok((frame.norm_squared() - expected_norm).abs() / expected_norm)
        })?,
        1e-10,
    );
    push(
        "invariant_eigenvalue",
        max_over(&times, |t| {
            let frame = sample_frame(&spec, Representation::Position, operator_grid, t)?;
            Ok((invariant_report(&spec, &frame, t)?.eigenvalue_estimate - spec.n.half_integer()).abs())
        })?,
        1e-7,
    );
    push("ladder_lowering", max_over(&times, |t| ladder_gap(&spec, operator_grid, t, LadderKind::Annihilation))?, 1e-6);
    if spec.n.raised().is_ok() {
        push("ladder_raising", max_over(&times, |t| ladder_gap(&spec, operator_grid, t, LadderKind::Creation))?, 1e-6);
    }
    push(
        "commutator",
        max_over(&times, |t| {
            let frame = sample_frame(&spec, Representation::Position, operator_grid, t)?;
            Ok(commutator_check(t, &spec.params, &[frame])?.residual_l2)
        })?,
        1e-7,
    );
    push(
        "momentum_fourier",
        max_over(&times, |t| {
            let position = sample_frame(&spec, Representation::Position, grid, t)?;
            let transformed = dft_momentum(&position)?.frame;
            let closed = WaveFrame::from_fn(Representation::Momentum, t, grid, |p| {
                eval_momentum_with(&spec, p, t, options.denominator)
            })?;
            Ok(transformed.l2_distance(&closed)?)
        })?,
        1e-8,
    );
    push("moment_quadrature", max_over(&times, |t| moment_gap(&spec, grid, t))?, 1e-8);
    push(
        "comoving_residual",
        max_over(&times, |t| {
            Ok(comoving_residual(&spec, t, options.tau).map(|r| r.l2_relative).unwrap_or(f64::INFINITY))
        })?,
        1e-6,
    );
    push("periodicity", times.iter().map(|&t| periodicity_gap(&spec, t)).fold(0.0, f64::max), 1e-12);
    Ok(VerifyReport { checks })
}

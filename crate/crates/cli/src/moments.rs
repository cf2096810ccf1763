//! The `moments` command: closed-form moment table, optionally cross-checked
//! by quadrature.

use dynosc_core::oracle::quadrature_moment;
use dynosc_core::states::sample_frame_with;
use dynosc_core::{classical_moments, MomentSet, MomentumDenominator, Representation};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::export::{moment_row, MOMENT_COLUMNS};

/// Largest relative quadrature error accepted by `--check`.
pub const CHECK_TOLERANCE: f64 = 1e-8;

pub const ERROR_COLUMNS: [&str; 6] =
    ["err_mean_x", "err_mean_p", "err_var_x", "err_var_p", "err_product", "err_energy"];

#[derive(Debug, Clone, PartialEq)]
pub struct MomentsTable {
    pub csv: String,
    /// Largest entry of the error columns; `None` without `--check`.
    pub worst_error: Option<f64>,
}

impl MomentsTable {
    pub fn passed(&self) -> bool {
        self.worst_error.is_none_or(|e| e < CHECK_TOLERANCE)
    }
}

/// Error relative to the closed-form value, measured against unit scale
/// when that value is small.
fn relative_error(quadrature: f64, closed: f64) -> f64 {
    (quadrature - closed).abs() / closed.abs().max(1.0)
}

/// Re-derives each moment from trapezoid quadrature over sampled position and
/// momentum densities on the configured grid.
fn quadrature_errors(
    config: &RunConfig,
    t: f64,
    closed: &MomentSet,
    denom: MomentumDenominator,
) -> CliResult<[f64; 6]> {
    let grid = config.position_grid()?;
    let spec = config.spec();
    let position = sample_frame_with(&spec, Representation::Position, grid, t, denom)?;
    let momentum = sample_frame_with(&spec, Representation::Momentum, grid, t, denom)?;
    let (x1, x2) = (quadrature_moment(&position, 1)?, quadrature_moment(&position, 2)?);
    let (p1, p2) = (quadrature_moment(&momentum, 1)?, quadrature_moment(&momentum, 2)?);
    let (var_x, var_p) = (x2 - x1 * x1, p2 - p1 * p1);
    Ok([
        relative_error(x1, closed.mean_x),
        relative_error(p1, closed.mean_p),
        relative_error(var_x, closed.var_x),
        relative_error(var_p, closed.var_p),
        relative_error(var_x * var_p, closed.product),
        relative_error(0.5 * (x1 * x1 + p1 * p1), closed.energy),
    ])
}

pub fn moments(config: &RunConfig, check: bool, denom: MomentumDenominator) -> CliResult<MomentsTable> {
    let times = config.times();
    let rows: Vec<(f64, MomentSet, Option<[f64; 6]>)> = times
        .par_iter()
        .map(|&t| {
            let m = classical_moments(&config.params, config.n, t);
            let errs = if check { Some(quadrature_errors(config, t, &m, denom)?) } else { None };
            Ok((t, m, errs))
        })
        .collect::<CliResult<_>>()?;

    let mut csv = MOMENT_COLUMNS.join(",");
    if check {
        csv.push(',');
        csv.push_str(&ERROR_COLUMNS.join(","));
    }
    csv.push('\n');
    let mut worst: Option<f64> = check.then_some(0.0);
    for (t, m, errs) in &rows {
        let extra = errs.as_ref().map_or(&[][..], |e| &e[..]);
        moment_row(&mut csv, *t, m, extra);
        if let (Some(w), Some(e)) = (worst.as_mut(), errs) {
            *w = e.iter().fold(*w, |a, &b| if b.is_nan() { f64::NAN } else { a.max(b) });
        }
    }
    Ok(MomentsTable { csv, worst_error: worst })
}

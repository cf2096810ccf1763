//! Independent numerical checks on the closed forms: PDE residuals,
//! quadrature moments, a direct Fourier sum, a split-step propagator and the
//! comoving-frame substitution.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{trapezoid, Grid, Representation, WaveFrame};
use crate::param_flow::flow;
use crate::states::{amplitude, StateSpec};
use crate::stencil::{interior, second_derivative, INTERIOR_MARGIN};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    /// ‖r‖₂ / ‖ψ‖₂ over the interior.
    pub l2_relative: f64,
    /// max|r| / max|ψ| over the interior.
    pub linf_relative: f64,
    pub grid_points: usize,
    pub dt: f64,
}

impl ResidualReport {
    fn from_residual(residual: &[Complex64], reference: &[Complex64], grid_points: usize, dt: f64) -> Self {
        let l2 = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let linf = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Self {
            l2_relative: l2(residual) / l2(reference),
            linf_relative: linf(residual) / linf(reference),
            grid_points,
            dt,
        }
    }
}

/// Residual of 2iψ_t + ψ_xx − x²ψ = 0 for the closed-form ψₙ.
///
/// ψ_t is the central difference of closed-form frames at t ± dt and ψ_xx
/// uses the fourth-order stencil.
pub fn schrodinger_residual(spec: &StateSpec, grid: Grid, t: f64, dt: f64) -> Result<ResidualReport> {
    residual_with(
        grid,
        dt,
        |t| {
            let s = flow(&spec.params, t);
            grid.points().map(|x| amplitude(spec.n, &s, x)).collect()
        },
        t,
    )
}

/// [`schrodinger_residual`] for an arbitrary sampler `psi(t) -> samples`.
pub fn residual_with(grid: Grid, dt: f64, psi: impl Fn(f64) -> Vec<Complex64>, t: f64) -> Result<ResidualReport> {
    if !(dt > 0.0 && (t + dt).is_finite() && (t - dt).is_finite()) {
        return Err(Error::Domain(format!("time step must be positive and finite, got {dt}")));
    }
    let now = psi(t);
    let fwd = psi(t + dt);
    let bwd = psi(t - dt);
    let d2 = second_derivative(&now, grid.step());
    let residual: Vec<Complex64> = grid
        .points()
        .enumerate()
        .map(|(i, x)| 2.0 * I * (fwd[i] - bwd[i]) / (2.0 * dt) + d2[i] - x * x * now[i])
        .collect();
    Ok(ResidualReport::from_residual(interior(&residual), interior(&now), grid.len(), dt))
}

/// Output of [`dft_momentum`].
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumTransform {
    pub frame: WaveFrame,
    /// Largest density on the two boundary samples of the input.
    pub boundary_density: f64,
    /// Set when the input has not decayed below 1e−12 at the boundary.
    pub precision_warning: bool,
}

const DFT_BOUNDARY_DENSITY: f64 = 1e-12;

fn fourier_sum(frame: &WaveFrame, sign: f64) -> Vec<Complex64> {
    let grid = *frame.grid();
    let h = grid.step();
    let norm = h / (2.0 * PI).sqrt();
    let psi = frame.amplitudes();
    let last = psi.len() - 1;
    let weighted: Vec<(f64, Complex64)> = grid
        .points()
        .zip(psi)
        .enumerate()
        .map(|(i, (x, &f))| (x, if i == 0 || i == last { 0.5 * f } else { f }))
        .collect();
    grid.points()
        .map(|p| {
            let s: Complex64 = weighted.iter().map(|&(x, f)| f * Complex64::from_polar(1.0, sign * p * x)).sum();
            s * norm
        })
        .collect()
}

/// aₙ(p) = (2π)^{−1/2} ∫ e^{−ipx} ψₙ(x) dx by the trapezoid rule, sampled
/// on a momentum grid with the same points as the position grid.
pub fn dft_momentum(frame: &WaveFrame) -> Result<MomentumTransform> {
    frame.require(Representation::Position)?;
    let dens = frame.densities();
    let boundary_density = dens[0].max(dens[dens.len() - 1]);
    let out = WaveFrame::new(Representation::Momentum, frame.t(), *frame.grid(), fourier_sum(frame, -1.0))?;
    Ok(MomentumTransform { frame: out, boundary_density, precision_warning: boundary_density > DFT_BOUNDARY_DENSITY })
}

/// Inverse of [`dft_momentum`], kernel e^{+ipx}.
pub fn inverse_dft(frame: &WaveFrame) -> Result<WaveFrame> {
    frame.require(Representation::Momentum)?;
    WaveFrame::new(Representation::Position, frame.t(), *frame.grid(), fourier_sum(frame, 1.0))
}

/// Strang splitting for iψ_t = ½(−ψ_xx + x²ψ): half potential step, full
/// spectral kinetic step, half potential step.
///
/// The grid is treated as one period of a periodic box; states must decay
/// before the boundary. Requires `steps ≥ 100·|t_final|`.
pub fn split_step_propagate(initial: &WaveFrame, t_final: f64, steps: usize) -> Result<WaveFrame> {
    initial.require(Representation::Position)?;
    let span = t_final - initial.t();
    if (steps as f64) < 100.0 * span.abs() || steps == 0 {
        return Err(Error::Domain(format!("{steps} steps is below the floor of 100 per unit time for span {span}")));
    }
    let grid = *initial.grid();
    let n = grid.len();
    let dt = span / steps as f64;
    let h = grid.step();

    let half_potential: Vec<Complex64> =
        grid.points().map(|x| Complex64::from_polar(1.0, -0.25 * dt * x * x)).collect();
    let box_len = n as f64 * h;
    let kinetic: Vec<Complex64> = (0..n)
        .map(|j| {
            let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
            let k = 2.0 * PI * m / box_len;
            // the inverse FFT is unnormalized
            Complex64::from_polar(1.0 / n as f64, -0.5 * dt * k * k)
        })
        .collect();

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut scratch =
        vec![Complex64::new(0.0, 0.0); forward.get_inplace_scratch_len().max(inverse.get_inplace_scratch_len())];

    let mut psi = initial.amplitudes().to_vec();
    for _ in 0..steps {
        psi.iter_mut().zip(&half_potential).for_each(|(z, v)| *z *= v);
        forward.process_with_scratch(&mut psi, &mut scratch);
        psi.iter_mut().zip(&kinetic).for_each(|(z, k)| *z *= k);
        inverse.process_with_scratch(&mut psi, &mut scratch);
        psi.iter_mut().zip(&half_potential).for_each(|(z, v)| *z *= v);
    }
    WaveFrame::new(Representation::Position, t_final, grid, psi)
}

/// Candidate readings of the comoving time variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TauConvention {
    /// τ = −γ(t)
    MinusGamma,
    /// τ = −2γ(t)
    MinusTwoGamma,
}

impl TauConvention {
    pub const ALL: [TauConvention; 2] = [TauConvention::MinusGamma, TauConvention::MinusTwoGamma];

    pub fn tau(self, gamma: f64) -> f64 {
        match self {
            Self::MinusGamma => -gamma,
            Self::MinusTwoGamma => -2.0 * gamma,
        }
    }
}

/// χ(ξ, τ) = √μ e^{−i(αx² + δx + κ)} ψₙ(x, t) sampled on a ξ grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComovingFrame {
    pub xi_grid: Grid,
    pub tau: f64,
    pub chi: Vec<Complex64>,
}

pub fn comoving_frame(spec: &StateSpec, xi_grid: Grid, t: f64, convention: TauConvention) -> ComovingFrame {
    let s = flow(&spec.params, t);
    let chi = xi_grid
        .points()
        .map(|xi| {
            let x = (xi - s.eps) / s.beta;
            let strip = Complex64::from_polar(s.mu.sqrt(), -(s.alpha * x * x + s.delta * x + s.kappa));
            strip * amplitude(spec.n, &s, x)
        })
        .collect();
    ComovingFrame { xi_grid, tau: convention.tau(s.gamma), chi }
}

const COMOVING_DT: f64 = 1e-4;

/// Residual of 2iχ_τ + χ_ξξ − ξ²χ with χ_τ = χ_t / (dτ/dt) at fixed ξ.
///
/// Uses a 1024-point ξ grid on [−12, 12] and central differences in t with
/// step 1e−4 for both χ_t and dτ/dt.
pub fn comoving_residual(spec: &StateSpec, t: f64, convention: TauConvention) -> Result<ResidualReport> {
    let xi_grid = Grid::default_position();
    let dt = COMOVING_DT;
    let fwd = comoving_frame(spec, xi_grid, t + dt, convention);
    let bwd = comoving_frame(spec, xi_grid, t - dt, convention);
    let now = comoving_frame(spec, xi_grid, t, convention);
    let dtau_dt = (fwd.tau - bwd.tau) / (2.0 * dt);
    if dtau_dt.abs() < 1e-12 {
        return Err(Error::Degenerate(format!("dτ/dt vanishes at t={t}; resample")));
    }
    let d2 = second_derivative(&now.chi, xi_grid.step());
    let residual: Vec<Complex64> = xi_grid
        .points()
        .enumerate()
        .map(|(i, xi)| {
            let chi_tau = (fwd.chi[i] - bwd.chi[i]) / (2.0 * dt * dtau_dt);
            2.0 * I * chi_tau + d2[i] - xi * xi * now.chi[i]
        })
        .collect();
    debug_assert!(xi_grid.len() > 2 * INTERIOR_MARGIN);
    Ok(ResidualReport::from_residual(interior(&residual), interior(&now.chi), xi_grid.len(), dt))
}

/// ∫ s^k |ψ|² ds / ∫ |ψ|² ds by the trapezoid rule, k ∈ {0, 1, 2}; s is x or
/// p depending on the frame.
pub fn quadrature_moment(frame: &WaveFrame, power: u32) -> Result<f64> {
    if power > 2 {
        return Err(Error::Domain(format!("moment power must be 0, 1 or 2, got {power}")));
    }
    let h = frame.grid().step();
    let dens = frame.densities();
    let weighted: Vec<f64> = frame.grid().points().zip(&dens).map(|(s, d)| s.powi(power as i32) * d).collect();
    Ok(trapezoid(&weighted, h) / trapezoid(&dens, h))
}

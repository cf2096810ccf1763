//! Hamiltonian, dynamic invariant and ladder operators applied to sampled
//! frames with fourth-order finite differences.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::{Representation, WaveFrame};
use crate::param_flow::{flow, OscillatorParams, ParamState};
use crate::states::StateSpec;
use crate::stencil::{first_derivative, interior_inner, interior_norm, second_derivative};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Annihilation,
    Creation,
    /// p − 2αx − δ with p = −i d/dx.
    ShiftedMomentum,
}

/// One of â(t), â†(t) or the shifted momentum, frozen at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstOrderOperator {
    pub kind: LadderKind,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub eps: f64,
}

impl FirstOrderOperator {
    pub fn new(kind: LadderKind, alpha: f64, beta: f64, delta: f64, eps: f64) -> Result<Self> {
        if beta == 0.0 || !beta.is_finite() {
            return Err(Error::InvalidParams("ladder operator needs nonzero beta".into()));
        }
        Ok(Self { kind, alpha, beta, delta, eps })
    }

    pub fn from_state(kind: LadderKind, state: &ParamState) -> Self {
        // flow keeps β(t) nonzero for valid initial data
        Self { kind, alpha: state.alpha, beta: state.beta, delta: state.delta, eps: state.eps }
    }

    pub fn at(kind: LadderKind, params: &OscillatorParams, t: f64) -> Self {
        Self::from_state(kind, &flow(params, t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorReport {
    pub residual_l2: f64,
    pub eigenvalue_estimate: f64,
    pub grid_spacing: f64,
}

/// ½(−ψ″ + x²ψ).
pub fn apply_hamiltonian(frame: &WaveFrame) -> Result<WaveFrame> {
    frame.require(Representation::Position)?;
    let h = frame.grid().step();
    let psi = frame.amplitudes();
    let d2 = second_derivative(psi, h);
    let out = frame.grid().points().zip(psi).zip(&d2).map(|((x, &f), &f2)| 0.5 * (x * x * f - f2)).collect();
    Ok(frame.with_amplitudes(out))
}

/// Applies â, â† or p − 2αx − δ.
pub fn apply_ladder(op: &FirstOrderOperator, frame: &WaveFrame) -> Result<WaveFrame> {
    frame.require(Representation::Position)?;
    let h = frame.grid().step();
    let psi = frame.amplitudes();
    let d1 = first_derivative(psi, h);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let out = frame
        .grid()
        .points()
        .zip(psi)
        .zip(&d1)
        .map(|((x, &f), &f1)| {
            let shifted = -I * f1 - (2.0 * op.alpha * x + op.delta) * f;
            let position = (op.beta * x + op.eps) * f;
            match op.kind {
                LadderKind::Annihilation => scale * (position + I * shifted / op.beta),
                LadderKind::Creation => scale * (position - I * shifted / op.beta),
                LadderKind::ShiftedMomentum => shifted,
            }
        })
        .collect();
    Ok(frame.with_amplitudes(out))
}

/// E(t)ψ = ½[(p − 2αx − δ)²ψ/β² + (βx + ε)²ψ].
///
/// The squared shifted momentum is expanded as
/// −ψ″ + 2i(2αx + δ)ψ′ + 2iαψ + (2αx + δ)²ψ so that ψ″ comes from the
/// five-point second-derivative stencil.
pub fn apply_invariant(spec: &StateSpec, frame: &WaveFrame, t: f64) -> Result<WaveFrame> {
    frame.require(Representation::Position)?;
    if (frame.t() - t).abs() > 1e-12 * t.abs().max(1.0) {
        return Err(Error::Domain(format!("frame sampled at t={} but invariant requested at t={t}", frame.t())));
    }
    let s = flow(&spec.params, t);
    let h = frame.grid().step();
    let psi = frame.amplitudes();
    let d1 = first_derivative(psi, h);
    let d2 = second_derivative(psi, h);
    let inv_b2 = 1.0 / (s.beta * s.beta);
    let out = frame
        .grid()
        .points()
        .zip(psi)
        .zip(d1.iter().zip(&d2))
        .map(|((x, &f), (&f1, &f2))| {
            let g = 2.0 * s.alpha * x + s.delta;
            let momentum_sq = -f2 + 2.0 * I * g * f1 + 2.0 * I * s.alpha * f + g * g * f;
            let q = s.beta * x + s.eps;
            0.5 * (momentum_sq * inv_b2 + q * q * f)
        })
        .collect();
    Ok(frame.with_amplitudes(out))
}

/// ⟨ψ, Aψ⟩ / ⟨ψ, ψ⟩ over the interior.
pub fn rayleigh_quotient(frame: &WaveFrame, applied: &WaveFrame) -> f64 {
    let num = interior_inner(frame.amplitudes(), applied.amplitudes());
    let den = interior_inner(frame.amplitudes(), frame.amplitudes());
    num.re / den.re
}

/// ‖Aψ − λψ‖ / ‖ψ‖ over the interior.
pub fn eigen_residual(frame: &WaveFrame, applied: &WaveFrame, lambda: f64) -> f64 {
    let diff: Vec<Complex64> =
        applied.amplitudes().iter().zip(frame.amplitudes()).map(|(a, f)| a - lambda * f).collect();
    interior_norm(&diff) / interior_norm(frame.amplitudes())
}

/// Eigenvalue estimate of E(t) on `frame` with the residual against n + ½.
pub fn invariant_report(spec: &StateSpec, frame: &WaveFrame, t: f64) -> Result<OperatorReport> {
    let applied = apply_invariant(spec, frame, t)?;
    Ok(OperatorReport {
        residual_l2: eigen_residual(frame, &applied, spec.n.half_integer()),
        eigenvalue_estimate: rayleigh_quotient(frame, &applied),
        grid_spacing: frame.grid().step(),
    })
}

/// Measures ‖(ââ† − â†â)ψ − ψ‖/‖ψ‖, maximized over the test frames.
/// `eigenvalue_estimate` is the smallest ⟨ψ, [â, â†]ψ⟩/⟨ψ, ψ⟩ seen.
pub fn commutator_check(t: f64, params: &OscillatorParams, test_frames: &[WaveFrame]) -> Result<OperatorReport> {
    let lower = FirstOrderOperator::at(LadderKind::Annihilation, params, t);
    let raise = FirstOrderOperator::at(LadderKind::Creation, params, t);
    let mut report = OperatorReport { residual_l2: 0.0, eigenvalue_estimate: f64::INFINITY, grid_spacing: 0.0 };
    for frame in test_frames {
        let lr = apply_ladder(&lower, &apply_ladder(&raise, frame)?)?;
        let rl = apply_ladder(&raise, &apply_ladder(&lower, frame)?)?;
        let comm = frame.with_amplitudes(lr.amplitudes().iter().zip(rl.amplitudes()).map(|(a, b)| a - b).collect());
        let r = eigen_residual(frame, &comm, 1.0);
        if r >= report.residual_l2 {
            report.residual_l2 = r;
            report.grid_spacing = frame.grid().step();
        }
        report.eigenvalue_estimate = report.eigenvalue_estimate.min(rayleigh_quotient(frame, &comm));
    }
    Ok(report)
}

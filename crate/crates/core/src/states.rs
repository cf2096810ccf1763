//! Closed-form wavefunctions ψₙ(x, t), their invariant-frame counterparts
//! Ψₙ, and the momentum wavefunctions aₙ(p, t).

use num_complex::Complex64;

use crate::error::Result;
use crate::frame::{Grid, Representation, WaveFrame};
use crate::param_flow::{flow, momentum_params_with, MomentumDenominator, OscillatorParams, ParamState};
use crate::special_fn::{hermite_function, HermiteOrder};

/// One family member: initial data plus quantum number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub params: OscillatorParams,
    pub n: HermiteOrder,
}

impl StateSpec {
    pub fn new(params: OscillatorParams, n: HermiteOrder) -> Self {
        Self { params, n }
    }

    /// Same parameters, different quantum number.
    pub fn with_n(&self, n: HermiteOrder) -> Self {
        Self { params: self.params, n }
    }

    /// The state whose position-space closed form is aₙ(p, t).
    pub fn momentum_dual(&self, denom: MomentumDenominator) -> Self {
        Self { params: momentum_params_with(&self.params, denom), n: self.n }
    }
}

/// Ψₙ(x, t) from a precomputed parameter state: the closed form without the
/// Lewis phase e^{i(2n+1)γ}.
pub(crate) fn invariant_amplitude(n: HermiteOrder, state: &ParamState, x: f64) -> Complex64 {
    let u = state.beta * x + state.eps;
    // u is finite for finite x, so the only failure mode is excluded.
    let shape = hermite_function(n, u).unwrap_or(0.0) / state.mu.sqrt();
    let phase = state.alpha * x * x + state.delta * x + state.kappa;
    Complex64::from_polar(shape, phase)
}

pub(crate) fn lewis_phase(n: HermiteOrder, state: &ParamState) -> Complex64 {
    Complex64::from_polar(1.0, (2 * n.get() + 1) as f64 * state.gamma)
}

pub(crate) fn amplitude(n: HermiteOrder, state: &ParamState, x: f64) -> Complex64 {
    invariant_amplitude(n, state, x) * lewis_phase(n, state)
}

pub fn eval_psi(spec: &StateSpec, x: f64, t: f64) -> Complex64 {
    amplitude(spec.n, &flow(&spec.params, t), x)
}

/// Ψₙ = e^{−i(2n+1)γ(t)} ψₙ, the eigenfunctions the ladder operators act on.
pub fn eval_psi_invariant_frame(spec: &StateSpec, x: f64, t: f64) -> Complex64 {
    invariant_amplitude(spec.n, &flow(&spec.params, t), x)
}

pub fn eval_momentum(spec: &StateSpec, p: f64, t: f64) -> Complex64 {
    eval_momentum_with(spec, p, t, MomentumDenominator::Beta0Quart)
}

pub fn eval_momentum_with(spec: &StateSpec, p: f64, t: f64, denom: MomentumDenominator) -> Complex64 {
    eval_psi(&spec.momentum_dual(denom), p, t)
}

/// Samples ψₙ or aₙ on `grid` at time `t`.
pub fn sample_frame(spec: &StateSpec, representation: Representation, grid: Grid, t: f64) -> Result<WaveFrame> {
    sample_frame_with(spec, representation, grid, t, MomentumDenominator::Beta0Quart)
}

pub fn sample_frame_with(
    spec: &StateSpec,
    representation: Representation,
    grid: Grid,
    t: f64,
    denom: MomentumDenominator,
) -> Result<WaveFrame> {
    let source = match representation {
        Representation::Position => *spec,
        Representation::Momentum => spec.momentum_dual(denom),
    };
    let state = flow(&source.params, t);
    WaveFrame::from_fn(representation, t, grid, |x| amplitude(source.n, &state, x))
}

/// Samples Ψₙ (no Lewis phase) in position space.
pub fn sample_invariant_frame(spec: &StateSpec, grid: Grid, t: f64) -> Result<WaveFrame> {
    let state = flow(&spec.params, t);
    WaveFrame::from_fn(Representation::Position, t, grid, |x| invariant_amplitude(spec.n, &state, x))
}

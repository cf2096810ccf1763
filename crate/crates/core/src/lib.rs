//! Closed-form dynamic states of the quantum harmonic oscillator
//! 2iψ_t + ψ_xx − x²ψ = 0, with the tools to check them numerically.
//!
//! The family is parameterized by seven real initial data
//! ([`OscillatorParams`]) that evolve in closed form ([`flow`]); each member
//! and quantum number gives a square-integrable solution ψₙ(x, t)
//! ([`states`]). The [`operators`] module applies the dynamic invariant and
//! ladder operators by finite differences, and [`oracle`] holds independent
//! verification routes (PDE residuals, Fourier sums, split-step propagation).

pub mod error;
pub mod frame;
pub mod operators;
pub mod oracle;
pub mod param_flow;
pub mod presets;
pub mod special_fn;
pub mod states;
pub mod stencil;

pub use error::{Error, Result};
pub use frame::{Grid, Representation, WaveFrame};
pub use param_flow::{
    classical_moments, discriminant, flow, is_minimum_uncertainty_family, momentum_params, momentum_params_with,
    MomentSet, MomentumDenominator, OscillatorParams, ParamState,
};
pub use presets::Preset;
pub use special_fn::{hermite, hermite_function, HermiteOrder, N_MAX};
pub use states::{eval_momentum, eval_psi, eval_psi_invariant_frame, sample_frame, StateSpec};

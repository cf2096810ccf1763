//! Time evolution of the seven family parameters, the momentum-representation
//! parameter map, and the closed-form phase-space moments.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_fn::HermiteOrder;

/// Initial data (μ₀, α₀, β₀, γ₀, δ₀, ε₀, κ₀) of one family member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct OscillatorParams {
    mu0: f64,
    alpha0: f64,
    beta0: f64,
    gamma0: f64,
    delta0: f64,
    eps0: f64,
    kappa0: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    mu0: f64,
    alpha0: f64,
    beta0: f64,
    #[serde(default)]
    gamma0: f64,
    #[serde(default)]
    delta0: f64,
    #[serde(default)]
    eps0: f64,
    #[serde(default)]
    kappa0: f64,
}

impl TryFrom<RawParams> for OscillatorParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        Self::new(r.mu0, r.alpha0, r.beta0, r.gamma0, r.delta0, r.eps0, r.kappa0)
    }
}

impl From<OscillatorParams> for RawParams {
    fn from(p: OscillatorParams) -> Self {
        RawParams {
            mu0: p.mu0,
            alpha0: p.alpha0,
            beta0: p.beta0,
            gamma0: p.gamma0,
            delta0: p.delta0,
            eps0: p.eps0,
            kappa0: p.kappa0,
        }
    }
}

impl OscillatorParams {
    pub fn new(mu0: f64, alpha0: f64, beta0: f64, gamma0: f64, delta0: f64, eps0: f64, kappa0: f64) -> Result<Self> {
        let all = [mu0, alpha0, beta0, gamma0, delta0, eps0, kappa0];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("initial data must be finite".into()));
        }
        if mu0 <= 0.0 {
            return Err(Error::InvalidParams("mu0 must be positive".into()));
        }
        if beta0 == 0.0 {
            return Err(Error::InvalidParams("beta0 must be nonzero".into()));
        }
        Ok(Self { mu0, alpha0, beta0, gamma0, delta0, eps0, kappa0 })
    }

    /// The textbook stationary states: μ₀ = β₀ = 1, everything else zero.
    pub fn schrodinger() -> Self {
        Self::new(1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0).unwrap()
    }

    pub fn mu0(&self) -> f64 {
        self.mu0
    }
    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }
    pub fn beta0(&self) -> f64 {
        self.beta0
    }
    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }
    pub fn delta0(&self) -> f64 {
        self.delta0
    }
    pub fn eps0(&self) -> f64 {
        self.eps0
    }
    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    /// ∫|ψₙ|² dx = 1/(μ₀|β₀|) for every n and t.
    pub fn norm_squared(&self) -> f64 {
        1.0 / (self.mu0 * self.beta0.abs())
    }

    /// Same initial data with a different constant phase offset.
    pub fn with_kappa0(&self, kappa0: f64) -> Self {
        Self { kappa0, ..*self }
    }
}

/// Values of the seven parameters at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamState {
    pub t: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub eps: f64,
    pub kappa: f64,
}

/// D(t) = β₀⁴ sin²t + (2α₀ sin t + cos t)², the shared denominator of the flow.
pub fn discriminant(params: &OscillatorParams, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    let b2 = params.beta0 * params.beta0;
    let x = 2.0 * params.alpha0 * s + c;
    b2 * b2 * s * s + x * x
}

/// Continuous argument of (2α₀ sin t + cos t) + iβ₀² sin t with value 0 at t = 0.
///
/// The complex number changes sign under t → t + π and its argument is
/// strictly increasing, so the argument advances by exactly π per half period.
/// Reducing t to r ∈ [−π/2, π/2] leaves a principal-branch atan2 that is
/// already continuous there.
fn unwrapped_angle(alpha0: f64, beta0_sq: f64, t: f64) -> f64 {
    let k = (t / PI).round();
    let r = t - k * PI;
    let (s, c) = r.sin_cos();
    k * PI + (beta0_sq * s).atan2(2.0 * alpha0 * s + c)
}

/// Evaluates μ(t), α(t), β(t), γ(t), δ(t), ε(t), κ(t).
///
/// γ(t) is continuous in t, so γ(t + 2π) = γ(t) − π.
pub fn flow(params: &OscillatorParams, t: f64) -> ParamState {
    let OscillatorParams { mu0, alpha0: a0, beta0: b0, gamma0, delta0: d0, eps0: e0, kappa0 } = *params;
    let (s, c) = t.sin_cos();
    let (s2, c2) = (2.0 * t).sin_cos();
    let b2 = b0 * b0;
    let b4 = b2 * b2;
    let x = 2.0 * a0 * s + c;
    let d = b4 * s * s + x * x;
    let sd = d.sqrt();

    let kappa =
        kappa0 + s * s * (e0 * b2 * (a0 * e0 - b0 * d0) - a0 * d0 * d0) / d + 0.25 * s2 * (e0 * e0 * b2 - d0 * d0) / d;

    ParamState {
        t,
        mu: mu0 * sd,
        alpha: (a0 * c2 + s2 * (b4 + 4.0 * a0 * a0 - 1.0) / 4.0) / d,
        beta: b0 / sd,
        gamma: gamma0 - 0.5 * unwrapped_angle(a0, b2, t),
        delta: (d0 * x + e0 * b2 * b0 * s) / d,
        eps: (e0 * x - b0 * d0 * s) / sd,
        kappa,
    }
}

/// Which reading of the momentum-map denominator to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentumDenominator {
    /// 4α₀² + β₀⁴, the value the direct Gaussian transform produces.
    #[default]
    Beta0Quart,
    /// 4α₀² + β₀², kept as a negative control.
    Beta0Sq,
}

impl MomentumDenominator {
    fn eval(self, alpha0: f64, beta0: f64) -> f64 {
        let b2 = beta0 * beta0;
        4.0 * alpha0 * alpha0
            + match self {
                Self::Beta0Quart => b2 * b2,
                Self::Beta0Sq => b2,
            }
    }
}

/// Initial data of the momentum wavefunctions aₙ(p, t), which have the same
/// closed form as ψₙ(x, t) with x → p.
pub fn momentum_params(params: &OscillatorParams) -> OscillatorParams {
    momentum_params_with(params, MomentumDenominator::Beta0Quart)
}

/// [`momentum_params`] with an explicit denominator reading.
///
/// The phase split: the e^{−ipx} transform carries φₙ to (−i)ⁿφₙ, so γ₁
/// includes −π/4 relative to the bare arccot term and κ₁ takes +π/4 back,
/// leaving the n = 0 phase unchanged.
pub fn momentum_params_with(params: &OscillatorParams, denom: MomentumDenominator) -> OscillatorParams {
    let OscillatorParams { mu0, alpha0: a0, beta0: b0, gamma0, delta0: d0, eps0: e0, kappa0 } = *params;
    let w = denom.eval(a0, b0);
    let sw = w.sqrt();
    let b2 = b0 * b0;
    let b3 = b2 * b0;
    // ½ arccot(β₀²/2α₀) on the branch continuous through α₀ = 0.
    let half_arccot = 0.5 * (2.0 * a0 / b2).atan();

    OscillatorParams {
        mu0: mu0 * sw,
        alpha0: -a0 / w,
        beta0: b0 / sw,
        gamma0: gamma0 - FRAC_PI_4 + half_arccot,
        delta0: (2.0 * a0 * d0 + b3 * e0) / w,
        eps0: (2.0 * a0 * e0 - b0 * d0) / sw,
        kappa0: kappa0 + FRAC_PI_4 + (a0 * (b2 * e0 * e0 - d0 * d0) - b3 * d0 * e0) / w,
    }
}

/// Closed-form phase-space moments of ψₙ at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentSet {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub product: f64,
    pub energy: f64,
    pub n: HermiteOrder,
}

pub fn classical_moments(params: &OscillatorParams, n: HermiteOrder, t: f64) -> MomentSet {
    let OscillatorParams { alpha0: a0, beta0: b0, delta0: d0, eps0: e0, .. } = *params;
    let (s, c) = t.sin_cos();
    let (s2, c2) = (2.0 * t).sin_cos();
    let k = 2.0 * a0 * e0 - b0 * d0;
    let mean_x = -(k * s + e0 * c) / b0;
    let mean_p = -(k * c - e0 * s) / b0;

    let b2 = b0 * b0;
    let sq = 4.0 * a0 * a0 + b2 * b2;
    let a = 1.0 + sq;
    let osc = (sq - 1.0) * c2 - 4.0 * a0 * s2;
    let half = n.half_integer();
    let var_p = half * (a + osc) / (2.0 * b2);
    let var_x = half * (a - osc) / (2.0 * b2);

    MomentSet {
        mean_x,
        mean_p,
        var_x,
        var_p,
        product: var_x * var_p,
        energy: 0.5 * (mean_p * mean_p + mean_x * mean_x),
        n,
    }
}

/// Total classical energy of the mean trajectory, fixed by the initial data.
pub fn classical_energy(params: &OscillatorParams) -> f64 {
    let OscillatorParams { alpha0: a0, beta0: b0, delta0: d0, eps0: e0, .. } = *params;
    let k = 2.0 * a0 * e0 - b0 * d0;
    (k * k + e0 * e0) / (2.0 * b0 * b0)
}

/// True when 4α₀² + β₀⁴ = 1 within `tol`, the minimum-uncertainty condition.
pub fn is_minimum_uncertainty_family(params: &OscillatorParams, tol: f64) -> bool {
    let b2 = params.beta0 * params.beta0;
    (4.0 * params.alpha0 * params.alpha0 + b2 * b2 - 1.0).abs() <= tol
}

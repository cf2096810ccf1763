//! Hermite polynomials (physicists' convention) and the normalized Hermite
//! functions built from them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported polynomial degree.
pub const N_MAX: u32 = 64;

/// A polynomial degree / oscillator quantum number, capped at [`N_MAX`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct HermiteOrder(u32);

impl HermiteOrder {
    pub fn new(n: u32) -> Result<Self> {
        if n > N_MAX {
            return Err(Error::Capacity { n, max: N_MAX });
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `n + 1/2`, the invariant eigenvalue attached to this order.
    pub fn half_integer(self) -> f64 {
        self.0 as f64 + 0.5
    }

    /// The next order down, or `None` at the ground state.
    pub fn lowered(self) -> Option<Self> {
        self.0.checked_sub(1).map(Self)
    }

    pub fn raised(self) -> Result<Self> {
        Self::new(self.0 + 1)
    }
}

impl TryFrom<u32> for HermiteOrder {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

impl From<HermiteOrder> for u32 {
    fn from(n: HermiteOrder) -> u32 {
        n.0
    }
}

fn check_finite(u: f64) -> Result<()> {
    if u.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("hermite argument must be finite, got {u}")))
    }
}

/// Hₙ(u) by the three-term recurrence H₀ = 1, H₁ = 2u,
/// Hₖ₊₁ = 2u Hₖ − 2k Hₖ₋₁.
pub fn hermite(n: HermiteOrder, u: f64) -> Result<f64> {
    check_finite(u)?;
    let n = n.get();
    if n == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, 2.0 * u);
    for k in 1..n {
        let next = 2.0 * u * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

// Above this magnitude the scaled recurrence is renormalized and the factor
// is carried in a log accumulator.
const RESCALE_ABOVE: f64 = 1e150;

/// φₙ(u) = e^{−u²/2} Hₙ(u) / √(2ⁿ n! √π).
///
/// The recurrence carries φₖ e^{u²/2} directly,
/// φₖ₊₁ = √(2/(k+1)) u φₖ − √(k/(k+1)) φₖ₋₁,
/// so no factorial is formed. Large values are rescaled and the Gaussian
/// factor is applied once at the end in log space, which keeps intermediates
/// finite for |u| ≤ 40 at every supported order.
pub fn hermite_function(n: HermiteOrder, u: f64) -> Result<f64> {
    check_finite(u)?;
    let n = n.get();
    let mut prev = PI.powf(-0.25);
    let mut log_scale = 0.0;
    if n == 0 {
        return Ok(prev * (-0.5 * u * u).exp());
    }
    let mut cur = std::f64::consts::SQRT_2 * u * prev;
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * u * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            prev /= RESCALE_ABOVE;
            cur /= RESCALE_ABOVE;
            log_scale += RESCALE_ABOVE.ln();
        }
    }
    if cur == 0.0 {
        return Ok(0.0);
    }
    let log_mag = cur.abs().ln() + log_scale - 0.5 * u * u;
    Ok(cur.signum() * log_mag.exp())
}

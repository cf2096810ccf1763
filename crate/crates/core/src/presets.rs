//! Named family members used by the command line and the acceptance suite.
//!
//! Every preset sets μ₀ = 1/|β₀| so that sampled densities integrate to one.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::param_flow::OscillatorParams;
use crate::special_fn::HermiteOrder;
use crate::states::StateSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Textbook stationary states.
    Schrodinger,
    /// Ground state, β₀ = 2/3, δ₀ = 1.
    Example1,
    /// First excited state with the example1 parameters.
    Example2,
    /// Ground state, β₀ = 2/3, δ₀ = 3/2; exported in both representations.
    Example3,
    /// Minimum-uncertainty squeezed state, α₀ = 0.3, β₀ = 0.64^{1/4}.
    Minuncert,
}

impl Preset {
    pub const ALL: [Preset; 5] =
        [Preset::Schrodinger, Preset::Example1, Preset::Example2, Preset::Example3, Preset::Minuncert];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Schrodinger => "schrodinger",
            Preset::Example1 => "example1",
            Preset::Example2 => "example2",
            Preset::Example3 => "example3",
            Preset::Minuncert => "minuncert",
        }
    }

    pub fn params(self) -> OscillatorParams {
        let squeezed = |delta0: f64| {
            let beta0 = 2.0 / 3.0;
            OscillatorParams::new(1.0 / beta0, 0.0, beta0, 0.0, delta0, 0.0, 0.0).unwrap()
        };
        match self {
            Preset::Schrodinger => OscillatorParams::schrodinger(),
            Preset::Example1 | Preset::Example2 => squeezed(1.0),
            Preset::Example3 => squeezed(1.5),
            Preset::Minuncert => {
                let beta0 = 0.64f64.powf(0.25);
                OscillatorParams::new(1.0 / beta0, 0.3, beta0, 0.0, 0.0, 0.0, 0.0).unwrap()
            }
        }
    }

    pub fn n(self) -> HermiteOrder {
        let n = if self == Preset::Example2 { 1 } else { 0 };
        HermiteOrder::new(n).unwrap()
    }

    pub fn spec(self) -> StateSpec {
        StateSpec::new(self.params(), self.n())
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown preset '{s}'")))
    }
}

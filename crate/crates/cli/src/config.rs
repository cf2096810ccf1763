//! JSON run configuration and the built-in presets.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::path::Path;

use dynosc_core::{Grid, HermiteOrder, OscillatorParams, Preset, StateSpec};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Frames per preset animation: t = π(T−1)/500 for T = 1…1001.
pub const PRESET_FRAMES: usize = 1001;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    pub t_start: f64,
    pub t_end: f64,
    pub frames: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    PositionDensity,
    MomentumDensity,
    Moments,
    Wavefunction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub params: OscillatorParams,
    #[serde(default = "ground_state")]
    pub n: HermiteOrder,
    pub grid: GridSpec,
    pub time: TimeSpec,
    pub outputs: BTreeSet<OutputKind>,
}

fn ground_state() -> HermiteOrder {
    HermiteOrder::new(0).expect("zero is within the cap")
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let config: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn preset(preset: Preset) -> Self {
        let mut outputs: BTreeSet<OutputKind> =
            [OutputKind::PositionDensity, OutputKind::Wavefunction, OutputKind::Moments].into();
        if preset == Preset::Example3 {
            outputs.insert(OutputKind::MomentumDensity);
        }
        RunConfig {
            schema_version: SCHEMA_VERSION,
            params: preset.params(),
            n: preset.n(),
            grid: GridSpec { x_min: -12.0, x_max: 12.0, points: 1024 },
            time: TimeSpec { t_start: 0.0, t_end: 2.0 * PI, frames: PRESET_FRAMES },
            outputs,
        }
    }

    fn validate(&self) -> CliResult<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        self.position_grid()?;
        let TimeSpec { t_start, t_end, frames } = self.time;
        if !(t_start.is_finite() && t_end.is_finite()) {
            return Err(CliError::Config("time bounds must be finite".into()));
        }
        if t_start > t_end {
            return Err(CliError::Config(format!("t_start {t_start} exceeds t_end {t_end}")));
        }
        if frames == 0 {
            return Err(CliError::Config("time.frames must be at least 1".into()));
        }
        Ok(())
    }

    pub fn spec(&self) -> StateSpec {
        StateSpec::new(self.params, self.n)
    }

    pub fn position_grid(&self) -> CliResult<Grid> {
        Ok(Grid::new(self.grid.x_min, self.grid.x_max, self.grid.points)?)
    }

    /// Same bounds as the configured grid, with at least `points` samples.
    pub fn refined_grid(&self, points: usize) -> CliResult<Grid> {
        Ok(Grid::new(self.grid.x_min, self.grid.x_max, self.grid.points.max(points))?)
    }

    /// Frame clock, evenly spaced and inclusive of both ends.
    pub fn times(&self) -> Vec<f64> {
        let TimeSpec { t_start, t_end, frames } = self.time;
        if frames == 1 {
            return vec![t_start];
        }
        let span = t_end - t_start;
        (0..frames).map(|k| t_start + span * k as f64 / (frames - 1) as f64).collect()
    }

    pub fn wants(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }

    pub fn wants_position(&self) -> bool {
        self.wants(OutputKind::PositionDensity) || self.wants(OutputKind::Wavefunction)
    }
}

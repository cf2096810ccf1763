//! Uniform grids and sampled wavefunction frames.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_GRID_POINTS: usize = 16;

/// Uniformly spaced, strictly increasing sample points, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    start: f64,
    step: f64,
    len: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(Error::Domain(format!("grid bounds must satisfy min < max, got [{min}, {max}]")));
        }
        if points < MIN_GRID_POINTS {
            return Err(Error::Domain(format!("grid needs at least {MIN_GRID_POINTS} points, got {points}")));
        }
        Ok(Self { start: min, step: (max - min) / (points - 1) as f64, len: points })
    }

    /// 1024 points on [−12, 12].
    pub fn default_position() -> Self {
        Self::new(-12.0, 12.0, 1024).unwrap()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn min(&self) -> f64 {
        self.start
    }

    pub fn max(&self) -> f64 {
        self.at(self.len - 1)
    }

    pub fn at(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.len).map(move |i| self.at(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.points().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    Position,
    Momentum,
}

/// Complex amplitudes sampled on a [`Grid`] at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFrame {
    representation: Representation,
    t: f64,
    grid: Grid,
    amplitudes: Vec<Complex64>,
}

impl WaveFrame {
    pub fn new(representation: Representation, t: f64, grid: Grid, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::Domain(format!(
                "frame has {} amplitudes for {} grid points",
                amplitudes.len(),
                grid.len()
            )));
        }
        if amplitudes.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Domain("frame amplitudes must be finite".into()));
        }
        Ok(Self { representation, t, grid, amplitudes })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(representation: Representation, t: f64, grid: Grid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let amplitudes = grid.points().map(f).collect();
        Self::new(representation, t, grid, amplitudes)
    }

    pub fn zeros(representation: Representation, t: f64, grid: Grid) -> Self {
        Self { representation, t, grid, amplitudes: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Same grid and tags, new samples.
    pub(crate) fn with_amplitudes(&self, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), self.grid.len());
        Self { representation: self.representation, t: self.t, grid: self.grid, amplitudes }
    }

    pub fn densities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn require(&self, representation: Representation) -> Result<()> {
        if self.representation == representation {
            Ok(())
        } else {
            Err(Error::Domain(format!("expected a {representation:?} frame, got {:?}", self.representation)))
        }
    }

    /// Trapezoid integral of |ψ|².
    pub fn norm_squared(&self) -> f64 {
        trapezoid(&self.densities(), self.grid.step())
    }

    /// Index of the largest density sample.
    pub fn peak_index(&self) -> usize {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .enumerate()
            .fold((0, f64::MIN), |best, (i, d)| if d > best.1 { (i, d) } else { best })
            .0
    }

    /// Trapezoid L² distance to another frame on the same grid.
    pub fn l2_distance(&self, other: &WaveFrame) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Domain("frames live on different grids".into()));
        }
        let diff: Vec<f64> = self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm_sqr()).collect();
        Ok(trapezoid(&diff, self.grid.step()).sqrt())
    }
}

/// Composite trapezoid rule on uniform spacing `h`.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values {
        [] => 0.0,
        [only] => only * h,
        [first, inner @ .., last] => h * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

use std::f64::consts::PI;

use nalgebra::Vector2;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::mask::Mask;
use super::product::{Cascade, Tail};
use crate::error::{Error, Result};
use crate::matrix2::IntMatrix2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GridTarget {
    /// `|φ̂(ξ)|` on the frequency grid.
    FrequencyMagnitude,
    /// Real part of the inverse DFT of the sampled `φ̂`, centered at `x = 0`.
    SpatialReconstruction,
}

impl GridTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            GridTarget::FrequencyMagnitude => "freq",
            GridTarget::SpatialReconstruction => "spatial",
        }
    }
}

/// `n × n` nodes `ξ = ((col − n/2)·h, (row − n/2)·h)` with `h = 2·extent/n`,
/// covering `[−extent, extent)²`; node `(n/2, n/2)` is the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub extent: f64,
    pub target: GridTarget,
}

impl GridSpec {
    pub fn new(n: usize, extent: f64, target: GridTarget) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "grid size must be a power of two >= 8, got {n}"
            )));
        }
        if !(extent > 0.0 && extent.is_finite()) {
            return Err(Error::InvalidInput(format!("extent > 0 failed: {extent}")));
        }
        Ok(Self { n, extent, target })
    }

    /// Frequency spacing `h`.
    pub fn step(&self) -> f64 {
        2.0 * self.extent / self.n as f64
    }

    pub fn node(&self, row: usize, col: usize) -> Vector2<f64> {
        let half = (self.n / 2) as f64;
        let h = self.step();
        Vector2::new((col as f64 - half) * h, (row as f64 - half) * h)
    }
}

/// Row-major `n × n` values; rows ascend in the second coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct RenderedGrid {
    pub spec: GridSpec,
    pub depth: u32,
    pub values: Vec<f64>,
    /// Node spacing of the output: `h` for the frequency grid, `2π/(n·h)`
    /// for the spatial grid.
    pub spacing: f64,
}

impl RenderedGrid {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.spec.n + col]
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }
}

/// Samples `φ̂` on the grid of `spec` at depth `J` (centroid tail).
pub fn sample_phi_hat(cascade: &Cascade, spec: &GridSpec) -> Vec<Complex64> {
    let n = spec.n;
    (0..n * n)
        .into_par_iter()
        .map(|idx| cascade.eval(&spec.node(idx / n, idx % n)).value)
        .collect()
}

pub fn render_grid(mask: &Mask, a: &IntMatrix2, spec: &GridSpec, depth: u32) -> Result<RenderedGrid> {
    let spec = GridSpec::new(spec.n, spec.extent, spec.target)?;
    let cascade = Cascade::new(mask, a, depth, Tail::Centroid)?;
    let samples = sample_phi_hat(&cascade, &spec);
    let (values, spacing) = match spec.target {
        GridTarget::FrequencyMagnitude => (samples.iter().map(|z| z.norm()).collect(), spec.step()),
        GridTarget::SpatialReconstruction => {
            let spacing = 2.0 * PI / (spec.n as f64 * spec.step());
            (spatial(samples, &spec), spacing)
        }
    };
    Ok(RenderedGrid {
        spec,
        depth,
        values,
        spacing,
    })
}

/// `φ(x) ≈ h²/(4π²) Σ φ̂(ξ) e^{iξ·x}` on the centered grid. With both grids
/// centered at index `n/2`, the sign pattern `(−1)^{row+col}` applied before
/// and after a plain inverse FFT performs the shifts.
fn spatial(mut data: Vec<Complex64>, spec: &GridSpec) -> Vec<f64> {
    let n = spec.n;
    let checker = |idx: usize| if (idx / n + idx % n) % 2 == 0 { 1.0 } else { -1.0 };
    for (idx, z) in data.iter_mut().enumerate() {
        *z *= checker(idx);
    }
    let fft = FftPlanner::new().plan_fft_inverse(n);
    for row in data.chunks_mut(n) {
        fft.process(row);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for col in 0..n {
        for row in 0..n {
            column[row] = data[row * n + col];
        }
        fft.process(&mut column);
        for row in 0..n {
            data[row * n + col] = column[row];
        }
    }
    let h = spec.step();
    let scale = h * h / (4.0 * PI * PI);
    data.iter()
        .enumerate()
        .map(|(idx, z)| z.re * checker(idx) * scale)
        .collect()
}

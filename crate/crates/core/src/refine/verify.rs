//! Numerical check of the rotate-and-dilate identity of a refinable function.
//!
//! With `(Aᵀ)^{−j} = Δ^{−j/2}·Q⁻¹·R^j·Q`, iterating
//! `φ̂(ξ) = m₀((Aᵀ)⁻¹ξ)·φ̂((Aᵀ)⁻¹ξ)` `j'` times at the point
//! `Q⁻¹·R^{−j'}·Q·ξ` gives
//!
//! ```text
//! φ̂(Q⁻¹ R_ϑ Q ξ) = ∏_{j=1}^{j'} m₀(Δ^{−j/2} Q⁻¹ R^{j−j'} Q ξ) · φ̂(Δ^{−j'/2} ξ),   ϑ = −j'θ
//! ```
//!
//! where `θ` is the signed angle of `R`. Letting `j'` run over ℕ, `ϑ` sweeps
//! the same orbit `{jθ mod 2π}` up to direction.

use std::f64::consts::TAU;

use nalgebra::Vector2;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::mask::Mask;
use super::product::{Cascade, Tail};
use crate::error::{Error, Result};
use crate::matrix2::IntMatrix2;
use crate::similarity::{decompose, rotation};

/// Label of the sign and index convention implemented by [`verify_two_angle`].
pub const CONVENTION: &str = "vartheta = -j'*theta_signed; factors m0(det^(-j/2) Q^-1 R^(j-j') Q xi), j = 1..j'";

/// Half-width of the sampling square `[−2π, 2π]²`.
pub const SAMPLE_HALF_WIDTH: f64 = TAU;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoAngleReport {
    pub max_residual: f64,
    /// Sample point attaining `max_residual`.
    pub worst_xi: [f64; 2],
    /// Rotation angle `ϑ = −j'θ` on the left-hand side.
    pub vartheta: f64,
    pub jprime: u32,
    pub samples: usize,
    pub depth: u32,
    pub seed: u64,
    pub tail: Tail,
}

/// Seeded sample points, uniform in `[−2π, 2π]²`.
pub fn sample_points(samples: usize, seed: u64) -> Vec<Vector2<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let x = rng.random_range(-SAMPLE_HALF_WIDTH..=SAMPLE_HALF_WIDTH);
            let y = rng.random_range(-SAMPLE_HALF_WIDTH..=SAMPLE_HALF_WIDTH);
            Vector2::new(x, y)
        })
        .collect()
}

pub fn verify_two_angle(
    mask: &Mask,
    a: &IntMatrix2,
    jprime: u32,
    samples: usize,
    seed: u64,
    depth: u32,
    tail: Tail,
) -> Result<TwoAngleReport> {
    if jprime < 1 {
        return Err(Error::InvalidInput("j' >= 1 failed: j' = 0".into()));
    }
    if samples < 1 {
        return Err(Error::InvalidInput("samples >= 1 failed: samples = 0".into()));
    }
    let points = sample_points(samples, seed);
    two_angle_at(mask, a, jprime, &points, depth, tail).map(|(max_residual, worst_xi, vartheta)| {
        TwoAngleReport {
            max_residual,
            worst_xi,
            vartheta,
            jprime,
            samples,
            depth,
            seed,
            tail,
        }
    })
}

/// Maximum residual of the identity over explicit points, with the worst
/// point and `ϑ`.
pub fn two_angle_at(
    mask: &Mask,
    a: &IntMatrix2,
    jprime: u32,
    points: &[Vector2<f64>],
    depth: u32,
    tail: Tail,
) -> Result<(f64, [f64; 2], f64)> {
    let cascade = Cascade::new(mask, a, depth, tail)?;
    let d = decompose(a)?;
    let jp = jprime as i64;
    let vartheta = -(jp as f64) * d.theta_signed;
    let lhs_map = d.q_inv * rotation(vartheta) * d.q;
    let sqrt_delta = d.sqrt_det();
    let factor_maps: Vec<_> = (1..=jp)
        .map(|j| d.q_inv * d.rotation_power(j - jp) * d.q / sqrt_delta.powi(j as i32))
        .collect();
    let tail_scale = sqrt_delta.powi(-(jprime as i32));

    let residual = |xi: &Vector2<f64>| {
        let lhs = cascade.eval(&(lhs_map * xi)).value;
        let head = factor_maps
            .iter()
            .fold(num_complex::Complex64::new(1.0, 0.0), |acc, m| acc * mask.eval(&(m * xi)));
        let rhs = head * cascade.eval(&(xi * tail_scale)).value;
        (lhs - rhs).norm()
    };

    let (max_residual, worst) = points
        .par_iter()
        .map(|xi| (residual(xi), *xi))
        .reduce(
            || (0.0, Vector2::zeros()),
            |p, q| if q.0 > p.0 || (q.0 == p.0 && lex_less(&q.1, &p.1)) { q } else { p },
        );
    Ok((max_residual, [worst[0], worst[1]], vartheta))
}

// Tie-break so the reported worst point does not depend on scheduling.
fn lex_less(a: &Vector2<f64>, b: &Vector2<f64>) -> bool {
    (a[0], a[1]) < (b[0], b[1])
}

//! Truncated infinite product `φ̂(ξ) ≈ ∏_{j=1}^{J} m₀((Aᵀ)^{−j} ξ)`.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use super::mask::Mask;
use crate::error::{Error, GateFailure, MaskError, Result};
use crate::matrix2::IntMatrix2;
use crate::similarity::{decompose, max_abs};

/// Model for the discarded tail `φ̂((Aᵀ)^{−J} ξ)` of the product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Tail taken as `φ̂(0) = 1`; plain truncation, error `O(Δ^{−J/2}|ξ|)`.
    Unit,
    /// Tail taken as `e^{−i c·η}` with `c` the centroid of `φ`, which the
    /// two-scale relation fixes as `c = (A − I)⁻¹ Δ^{−1/2} Σ h_k k`. This
    /// is exact to first order in `η`, so the error drops to
    /// `O(Δ^{−J}|ξ|²)`.
    #[default]
    Centroid,
}

impl Tail {
    pub fn as_str(self) -> &'static str {
        match self {
            Tail::Unit => "unit",
            Tail::Centroid => "centroid",
        }
    }
}

/// Value of the truncated product with the size of its last factor's
/// deviation `|m₀((Aᵀ)^{−J}ξ) − 1|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiHat {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// Precomputed data to evaluate `φ̂` at many points for one `(mask, A)`.
#[derive(Clone, Debug)]
pub struct Cascade {
    mask: Mask,
    matrix: IntMatrix2,
    /// `(Aᵀ)⁻¹`
    contraction: Matrix2<f64>,
    centroid: Vector2<f64>,
    depth: u32,
    tail: Tail,
}

/// Rotational, `Δ ≥ 2`, and matching the mask determinant.
pub(crate) fn check_expansive(mask: &Mask, a: &IntMatrix2) -> Result<()> {
    a.rotational_gate()?;
    let delta = a.det();
    if delta < 2 {
        return Err(GateFailure::NotExpansive { delta }.into());
    }
    if mask.delta() != delta {
        return Err(MaskError::new(
            "delta",
            format!("mask delta {} does not match det A = {delta}", mask.delta()),
        )
        .into());
    }
    Ok(())
}

impl Cascade {
    pub fn new(mask: &Mask, a: &IntMatrix2, depth: u32, tail: Tail) -> Result<Self> {
        check_expansive(mask, a)?;
        if depth < 1 {
            return Err(Error::InvalidInput("depth J >= 1 failed: J = 0".into()));
        }
        let delta = a.det() as f64;
        // (Aᵀ)⁻¹ = adj(Aᵀ)/Δ
        let contraction = Matrix2::new(a.d as f64, -(a.c as f64), -(a.b as f64), a.a as f64) / delta;
        let shifted = a.to_f64() - Matrix2::identity();
        let centroid = shifted
            .try_inverse()
            .map(|inv| inv * mask.first_moment())
            .unwrap_or_else(Vector2::zeros);
        Ok(Self {
            mask: mask.clone(),
            matrix: *a,
            contraction,
            centroid,
            depth,
            tail,
        })
    }

    pub fn mask(&self) -> &Mask {
        &self.mask
    }

    pub fn matrix(&self) -> &IntMatrix2 {
        &self.matrix
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// `∫ x φ(x) dx` for the normalized `φ`.
    pub fn centroid(&self) -> Vector2<f64> {
        self.centroid
    }

    pub fn eval(&self, xi: &Vector2<f64>) -> PhiHat {
        let mut eta = *xi;
        let mut value = Complex64::new(1.0, 0.0);
        let mut last = Complex64::new(1.0, 0.0);
        for _ in 0..self.depth {
            eta = self.contraction * eta;
            last = self.mask.eval(&eta);
            value *= last;
        }
        if self.tail == Tail::Centroid {
            value *= Complex64::from_polar(1.0, -self.centroid.dot(&eta));
        }
        PhiHat {
            value,
            tail_bound: (last - 1.0).norm(),
        }
    }
}

/// `φ̂(ξ)` truncated at depth `J` with the given tail model.
pub fn phi_hat(mask: &Mask, a: &IntMatrix2, xi: &Vector2<f64>, depth: u32, tail: Tail) -> Result<PhiHat> {
    Ok(Cascade::new(mask, a, depth, tail)?.eval(xi))
}

/// `(Aᵀ)^{−n}` from the integer adjugate power divided by `Δⁿ`.
pub fn inverse_transpose_power(a: &IntMatrix2, n: u32) -> Result<Matrix2<f64>> {
    let delta = a.det();
    if delta == 0 {
        return Err(GateFailure::NonPositiveDeterminant { delta }.into());
    }
    let adj = [[a.d as i128, -(a.c as i128)], [-(a.b as i128), a.a as i128]];
    let mut acc = [[1i128, 0], [0, 1]];
    let overflow = || Error::InvalidInput(format!("(A^T)^-{n} overflows exact integer arithmetic"));
    for _ in 0..n {
        let mut next = [[0i128; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                next[i][j] = adj[i][0]
                    .checked_mul(acc[0][j])
                    .and_then(|x| adj[i][1].checked_mul(acc[1][j]).and_then(|y| x.checked_add(y)))
                    .ok_or_else(overflow)?;
            }
        }
        acc = next;
    }
    let scale = (delta as f64).powi(n as i32);
    Ok(Matrix2::new(
        acc[0][0] as f64,
        acc[0][1] as f64,
        acc[1][0] as f64,
        acc[1][1] as f64,
    ) / scale)
}

/// `‖(Aᵀ)^{−j'} − Δ^{−j'/2}·Q⁻¹·R^{j'}·Q‖`, max-abs entry norm.
pub fn power_identity_residual(a: &IntMatrix2, jprime: u32) -> Result<f64> {
    if jprime < 1 {
        return Err(Error::InvalidInput("j' >= 1 failed: j' = 0".into()));
    }
    let d = decompose(a)?;
    let exact = inverse_transpose_power(a, jprime)?;
    let scale = (a.det() as f64).powf(-(jprime as f64) / 2.0);
    let via_rotation = d.q_inv * d.rotation_power(jprime as i64) * d.q * scale;
    Ok(max_abs(&(exact - via_rotation)))
}

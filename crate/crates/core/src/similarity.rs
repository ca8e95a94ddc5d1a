//! Similarity of a rotational dilation matrix to a rotation:
//! `A = √Δ · Q · R · Q⁻¹` with `Q` symmetric positive definite and `R` a
//! rotation.
//!
//! For the normalized matrix `Ã = A/√Δ` with eigenpair `(λ, x)`, `|λ| = 1`,
//! put `T = [x | x̄]`. Then `Ã = T·diag(λ, λ̄)·T⁻¹` and `Q² = T·T*` is real,
//! symmetric and positive definite. `U = Q⁻¹ÃQ` satisfies
//! `UU* = Q⁻¹T·diag(|λ|²)·T*Q⁻¹ = I`, and being real with `det U = 1` it is a
//! rotation.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix2::IntMatrix2;

/// Residual above which a decomposition is treated as a numerics bug.
pub const CONSISTENCY_LIMIT: f64 = 1e-8;

/// Eigenvalue of `A/√Δ` with positive imaginary part and a unit eigenvector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexEigenpair {
    pub lambda: Complex64,
    pub x: [Complex64; 2],
}

impl ComplexEigenpair {
    /// `‖Ãx − λx‖∞` for the normalized matrix `Ã = A/√Δ`.
    pub fn residual(&self, a: &IntMatrix2) -> f64 {
        let s = (a.det() as f64).sqrt();
        let [x1, x2] = self.x;
        let r1 = (x1 * a.a as f64 + x2 * a.b as f64) / s - self.lambda * x1;
        let r2 = (x1 * a.c as f64 + x2 * a.d as f64) / s - self.lambda * x2;
        r1.norm().max(r2.norm())
    }

    /// The other eigenvalue, `λ̄`.
    pub fn conjugate_lambda(&self) -> Complex64 {
        self.lambda.conj()
    }
}

/// `A = √Δ · Q · R · Q⁻¹` with `det Q = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decomposition {
    pub matrix: IntMatrix2,
    pub q: Matrix2<f64>,
    pub q_inv: Matrix2<f64>,
    pub r: Matrix2<f64>,
    /// `atan2(R₂₁, R₁₁)` in `(−π, π]`.
    pub theta_signed: f64,
    /// `‖A − √Δ·Q·R·Q⁻¹‖`, max-abs entry norm.
    pub residual_similarity: f64,
    /// `‖R·Rᵀ − I‖`, max-abs entry norm.
    pub residual_orthogonality: f64,
}

impl Decomposition {
    pub fn sqrt_det(&self) -> f64 {
        (self.matrix.det() as f64).sqrt()
    }

    /// `Rⁿ` computed by repeated multiplication; `n` may be negative.
    pub fn rotation_power(&self, n: i64) -> Matrix2<f64> {
        let base = if n < 0 { self.r.transpose() } else { self.r };
        let mut out = Matrix2::identity();
        for _ in 0..n.unsigned_abs() {
            out = base * out;
        }
        out
    }
}

/// Largest absolute entry.
pub(crate) fn max_abs(m: &Matrix2<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

pub fn eigenpair(a: &IntMatrix2) -> Result<ComplexEigenpair> {
    a.rotational_gate()?;
    let (tau, delta) = a.trace_det();
    let sqrt_delta = (delta as f64).sqrt();
    let disc = (4 * delta as i128 - (tau as i128) * (tau as i128)) as f64;
    let lambda = Complex64::new(tau as f64, disc.sqrt()) / (2.0 * sqrt_delta);
    // μ = √Δ·λ is an eigenvalue of A itself.
    let mu = Complex64::new(tau as f64 / 2.0, disc.sqrt() / 2.0);
    // b = c = 0 would force (a − d)² < 0, so one branch always applies.
    let (x1, x2) = if a.b != 0 {
        (Complex64::new(a.b as f64, 0.0), mu - a.a as f64)
    } else {
        (mu - a.d as f64, Complex64::new(a.c as f64, 0.0))
    };
    let norm = (x1.norm_sqr() + x2.norm_sqr()).sqrt();
    Ok(ComplexEigenpair {
        lambda,
        x: [x1 / norm, x2 / norm],
    })
}

/// `Q² = T·T* = 2·[[|x₁|², Re(x₁x̄₂)], [Re(x₁x̄₂), |x₂|²]]`.
pub fn gram_q2(pair: &ComplexEigenpair) -> Matrix2<f64> {
    let [x1, x2] = pair.x;
    let off = 2.0 * (x1 * x2.conj()).re;
    Matrix2::new(2.0 * x1.norm_sqr(), off, off, 2.0 * x2.norm_sqr())
}

/// Principal square root of a symmetric positive definite 2×2 matrix,
/// `(M + √(det M)·I) / √(tr M + 2√(det M))`.
pub fn sqrt_spd(m: &Matrix2<f64>) -> Result<Matrix2<f64>> {
    let scale = max_abs(m);
    if (m[(0, 1)] - m[(1, 0)]).abs() > 1e-12 * scale {
        return Err(Error::NotSpd(format!(
            "M12 = M21 failed: {} vs {}",
            m[(0, 1)],
            m[(1, 0)]
        )));
    }
    if !(m[(0, 0)] > 0.0) {
        return Err(Error::NotSpd(format!("M11 > 0 failed: M11 = {}", m[(0, 0)])));
    }
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(0, 1)];
    if !(det > 0.0) {
        return Err(Error::NotSpd(format!("det M > 0 failed: det M = {det}")));
    }
    let s = det.sqrt();
    let t = (m.trace() + 2.0 * s).sqrt();
    let off = m[(0, 1)] / t;
    Ok(Matrix2::new(
        (m[(0, 0)] + s) / t,
        off,
        off,
        (m[(1, 1)] + s) / t,
    ))
}

pub fn decompose(a: &IntMatrix2) -> Result<Decomposition> {
    let pair = eigenpair(a)?;
    let g = gram_q2(&pair);
    let root = sqrt_spd(&g)?;
    let det_root = root[(0, 0)] * root[(1, 1)] - root[(0, 1)] * root[(0, 1)];
    let q = root / det_root.sqrt();
    let (q11, q12, q22) = (q[(0, 0)], q[(0, 1)], q[(1, 1)]);
    let det_q = q11 * q22 - q12 * q12;
    let q_inv = Matrix2::new(q22, -q12, -q12, q11) / det_q;

    let sqrt_delta = (a.det() as f64).sqrt();
    let af = a.to_f64();
    let r = q_inv * (af / sqrt_delta) * q;
    let theta_signed = angle_of(&r);

    let residual_similarity = max_abs(&(af - q * r * q_inv * sqrt_delta));
    let residual_orthogonality = max_abs(&(r * r.transpose() - Matrix2::identity()));
    for (what, residual) in [
        ("similarity", residual_similarity),
        ("orthogonality", residual_orthogonality),
    ] {
        if !(residual <= CONSISTENCY_LIMIT) {
            return Err(Error::Inconsistent {
                what,
                residual,
                limit: CONSISTENCY_LIMIT,
            });
        }
    }

    Ok(Decomposition {
        matrix: *a,
        q,
        q_inv,
        r,
        theta_signed,
        residual_similarity,
        residual_orthogonality,
    })
}

/// Direction-resolved rotation angle of `R`, in `(−π, π]`.
pub fn signed_angle(d: &Decomposition) -> f64 {
    angle_of(&d.r)
}

fn angle_of(r: &Matrix2<f64>) -> f64 {
    let t = r[(1, 0)].atan2(r[(0, 0)]);
    if t == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        t
    }
}

/// Counterclockwise rotation by `theta`.
pub fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    use super::*;

    fn close(a: &Matrix2<f64>, b: &Matrix2<f64>, tol: f64) -> bool {
        max_abs(&(a - b)) <= tol
    }

    #[test]
    fn eigenpair_quincunx() {
        let p = eigenpair(&IntMatrix2::new(1, -1, 1, 1)).unwrap();
        let e = Complex64::from_polar(1.0, FRAC_PI_4);
        assert!((p.lambda - e).norm() < 1e-15);
        assert!(p.residual(&IntMatrix2::new(1, -1, 1, 1)) < 1e-15);
    }

    #[test]
    fn eigenpair_quarter_turn() {
        let a = IntMatrix2::new(0, -1, 1, 0);
        let p = eigenpair(&a).unwrap();
        assert!((p.lambda - Complex64::i()).norm() < 1e-15);
        // x ∝ (−1, i)
        let ratio = p.x[1] / p.x[0];
        assert!((ratio - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn eigenpair_example_matrix() {
        let a = IntMatrix2::new(0, -2, 1, 1);
        let p = eigenpair(&a).unwrap();
        let expect = Complex64::new(1.0, 7f64.sqrt()) / (2.0 * 2f64.sqrt());
        assert!((p.lambda - expect).norm() < 1e-15);
        assert!((p.lambda.norm() - 1.0).abs() < 1e-15);
        assert!(p.residual(&a) < 1e-15);
    }

    #[test]
    fn eigenpair_b_zero_branch() {
        // b = 0 forces c ≠ 0 on the rotational set
        let a = IntMatrix2::new(1, 0, -3, 1);
        assert!(!crate::matrix2::is_rotational(&a));
        let a = IntMatrix2::new(1, -1, 0, 1);
        assert!(!crate::matrix2::is_rotational(&a));
        let err = eigenpair(&IntMatrix2::new(2, 1, 1, 1)).unwrap_err();
        assert!(matches!(err, Error::Gate(_)));
    }

    #[test]
    fn gram_examples() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let pair = ComplexEigenpair {
            lambda: Complex64::i(),
            x: [Complex64::new(r, 0.0), Complex64::new(0.0, r)],
        };
        assert!(close(&gram_q2(&pair), &Matrix2::identity(), 1e-15));

        let g = gram_q2(&eigenpair(&IntMatrix2::new(1, -1, 1, 1)).unwrap());
        let s = g[(0, 0)];
        assert!(close(&(g / s), &Matrix2::identity(), 1e-15));

        let g = gram_q2(&eigenpair(&IntMatrix2::new(0, -2, 1, 1)).unwrap());
        let g = g / g[(1, 1)];
        assert!(close(&g, &Matrix2::new(2.0, -0.5, -0.5, 1.0), 1e-14));
    }

    #[test]
    fn sqrt_spd_examples() {
        assert_eq!(sqrt_spd(&Matrix2::identity()).unwrap(), Matrix2::identity());
        let s = sqrt_spd(&Matrix2::new(4.0, 0.0, 0.0, 9.0)).unwrap();
        assert_eq!(s, Matrix2::new(2.0, 0.0, 0.0, 3.0));
        let m = Matrix2::new(2.0, -0.5, -0.5, 1.0);
        let s = sqrt_spd(&m).unwrap();
        assert!(close(&(s * s), &m, 1e-14));
        assert_eq!(s[(0, 1)], s[(1, 0)]);
        assert!(s[(0, 0)] > 0.0 && s.determinant() > 0.0);
    }

    #[test]
    fn sqrt_spd_rejects() {
        let e = sqrt_spd(&Matrix2::new(1.0, 2.0, 2.0, 1.0)).unwrap_err();
        assert!(e.to_string().contains("det M > 0"), "{e}");
        let e = sqrt_spd(&Matrix2::new(-1.0, 0.0, 0.0, -1.0)).unwrap_err();
        assert!(e.to_string().contains("M11 > 0"), "{e}");
        let e = sqrt_spd(&Matrix2::new(1.0, 0.5, 0.0, 1.0)).unwrap_err();
        assert!(e.to_string().contains("M12 = M21"), "{e}");
    }

    #[test]
    fn decompose_quincunx() {
        let d = decompose(&IntMatrix2::new(1, -1, 1, 1)).unwrap();
        assert!(close(&d.q, &Matrix2::identity(), 1e-15));
        assert!((d.theta_signed - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn decompose_quarter_turn() {
        let d = decompose(&IntMatrix2::new(0, -1, 1, 0)).unwrap();
        assert!(close(&d.q, &Matrix2::identity(), 1e-15));
        assert!((d.theta_signed - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn decompose_example_matrix() {
        let d = decompose(&IntMatrix2::new(0, -2, 1, 1)).unwrap();
        assert!((d.theta_signed - 1.209_429_202_888_189).abs() < 1e-12);
        assert!((d.theta_signed.to_degrees() - 69.295_188_9).abs() < 1e-6);
        assert!(d.residual_similarity < 1e-14);
        assert!((d.q.determinant() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn signed_angle_of_rotations() {
        let mk = |theta: f64| Decomposition {
            matrix: IntMatrix2::IDENTITY,
            q: Matrix2::identity(),
            q_inv: Matrix2::identity(),
            r: rotation(theta),
            theta_signed: theta,
            residual_similarity: 0.0,
            residual_orthogonality: 0.0,
        };
        assert!((signed_angle(&mk(FRAC_PI_4)) - FRAC_PI_4).abs() < 1e-15);
        assert!((signed_angle(&mk(-FRAC_PI_3)) + FRAC_PI_3).abs() < 1e-15);
        let flip = Decomposition {
            r: Matrix2::new(-1.0, 0.0, -0.0, -1.0),
            ..mk(0.0)
        };
        assert_eq!(signed_angle(&flip), std::f64::consts::PI);
    }

    #[test]
    fn rotation_power_wraps() {
        let d = decompose(&IntMatrix2::new(1, -1, 1, 1)).unwrap();
        assert!(close(&d.rotation_power(8), &Matrix2::identity(), 1e-14));
        assert!(close(&(d.rotation_power(-3) * d.rotation_power(3)), &Matrix2::identity(), 1e-14));
    }
}

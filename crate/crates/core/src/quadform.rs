//! Invariant quadratic forms of a rotational dilation matrix.
//!
//! From `A = √Δ·Q·R·Q⁻¹` it follows that `Aᵀ·Q⁻²·A = Δ·Q⁻²` and
//! `A·Q²·Aᵀ = Δ·Q²`, so `W(x) = xᵀQ⁻²x` satisfies `W(Ax) = Δ·W(x)` and every
//! ellipse `W(x) = C` is mapped onto the similar ellipse `W(x) = Δ·C`.

use nalgebra::{Matrix2, Vector2};
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::matrix2::IntMatrix2;
use crate::similarity::{decompose, max_abs};

/// Tolerance for deciding that two forms are proportional.
pub const PROPORTIONAL_TOL: f64 = 1e-9;

/// Tolerance of the per-entry rational reconstruction.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

/// Symmetric positive definite form `[[m11, m12], [m12, m22]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticForm {
    pub m11: f64,
    pub m12: f64,
    pub m22: f64,
}

impl QuadraticForm {
    pub fn new(m11: f64, m12: f64, m22: f64) -> Result<Self> {
        let f = Self { m11, m12, m22 };
        if !(m11 > 0.0) {
            return Err(Error::NotSpd(format!("m11 > 0 failed: m11 = {m11}")));
        }
        if !(f.det() > 0.0) {
            return Err(Error::NotSpd(format!(
                "m11*m22 - m12^2 > 0 failed: {}",
                f.det()
            )));
        }
        Ok(f)
    }

    pub const IDENTITY: QuadraticForm = QuadraticForm {
        m11: 1.0,
        m12: 0.0,
        m22: 1.0,
    };

    /// Symmetrizes `m` by reading its upper triangle.
    pub fn from_matrix(m: &Matrix2<f64>) -> Result<Self> {
        Self::new(m[(0, 0)], m[(0, 1)], m[(1, 1)])
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.m11, self.m12, self.m12, self.m22)
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m12
    }

    pub fn eval(&self, x: &Vector2<f64>) -> f64 {
        self.m11 * x[0] * x[0] + 2.0 * self.m12 * x[0] * x[1] + self.m22 * x[1] * x[1]
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        Self {
            m11: self.m22 / det,
            m12: -self.m12 / det,
            m22: self.m11 / det,
        }
    }

    /// Scaled so the largest-magnitude entry is 1.
    pub fn normalized(&self) -> Self {
        let s = self.m11.abs().max(self.m12.abs()).max(self.m22.abs());
        Self {
            m11: self.m11 / s,
            m12: self.m12 / s,
            m22: self.m22 / s,
        }
    }

    /// Equal up to a positive factor, compared entrywise after
    /// [`normalized`](Self::normalized).
    pub fn proportional(&self, other: &QuadraticForm, tol: f64) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        (a.m11 - b.m11).abs() <= tol
            && (a.m12 - b.m12).abs() <= tol
            && (a.m22 - b.m22).abs() <= tol
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.m11 + self.m22);
        let half_gap = (0.5 * (self.m11 - self.m22)).hypot(self.m12);
        (mean - half_gap, mean + half_gap)
    }
}

/// Symmetric integer form `[[m11, m12], [m12, m22]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntForm {
    pub m11: i64,
    pub m12: i64,
    pub m22: i64,
}

impl IntForm {
    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.m11, self.m12], [self.m12, self.m22]]
    }

    pub fn to_form(&self) -> QuadraticForm {
        QuadraticForm {
            m11: self.m11 as f64,
            m12: self.m12 as f64,
            m22: self.m22 as f64,
        }
    }

    /// `Aᵀ·V·A = Δ·V` in exact integer arithmetic.
    pub fn is_invariant_under(&self, a: &IntMatrix2) -> bool {
        let [[p, q], [r, s]] = a.rows().map(|row| row.map(i128::from));
        let (v11, v12, v22) = (self.m11 as i128, self.m12 as i128, self.m22 as i128);
        let delta = p * s - q * r;
        // (AᵀVA)_{ij} = Σ A_{ki} V_{kl} A_{lj}
        let t11 = p * (v11 * p + v12 * r) + r * (v12 * p + v22 * r);
        let t12 = p * (v11 * q + v12 * s) + r * (v12 * q + v22 * s);
        let t22 = q * (v11 * q + v12 * s) + s * (v12 * q + v22 * s);
        t11 == delta * v11 && t12 == delta * v12 && t22 == delta * v22
    }
}

/// Geometry of the ellipse `W(x) = C`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseGeometry {
    pub semi_major: f64,
    pub semi_minor: f64,
    /// Angle of the major axis in `[0, π)`; 0 for a circle.
    pub orientation: f64,
    pub level: f64,
}

impl EllipseGeometry {
    pub fn is_circle(&self) -> bool {
        (self.semi_major - self.semi_minor).abs() <= 1e-12 * self.semi_major
    }

    /// Boundary point at parameter `t`.
    pub fn point(&self, t: f64) -> Vector2<f64> {
        let (so, co) = self.orientation.sin_cos();
        let (st, ct) = t.sin_cos();
        let u = self.semi_major * ct;
        let v = self.semi_minor * st;
        Vector2::new(co * u - so * v, so * u + co * v)
    }
}

/// `W = Q⁻²` for the `det Q = 1` decomposition of `a`.
pub fn invariant_form(a: &IntMatrix2) -> Result<QuadraticForm> {
    let d = decompose(a)?;
    QuadraticForm::from_matrix(&(d.q_inv * d.q_inv))
}

/// `Q²`, the form invariant under `Aᵀ`.
pub fn dual_form(a: &IntMatrix2) -> Result<QuadraticForm> {
    let d = decompose(a)?;
    QuadraticForm::from_matrix(&(d.q * d.q))
}

/// `‖Aᵀ·W·A − Δ·W‖ / ‖W‖` in the max-abs entry norm.
pub fn check_invariance(a: &IntMatrix2, w: &QuadraticForm) -> f64 {
    let af = a.to_f64();
    let wm = w.matrix();
    max_abs(&(af.transpose() * wm * af - wm * a.det() as f64)) / max_abs(&wm)
}

/// `‖A·M·Aᵀ − Δ·M‖ / ‖M‖`, the invariance residual of a dual form.
pub fn check_dual_invariance(a: &IntMatrix2, m: &QuadraticForm) -> f64 {
    let af = a.to_f64();
    let mm = m.matrix();
    max_abs(&(af * mm * af.transpose() - mm * a.det() as f64)) / max_abs(&mm)
}

/// Smallest-denominator continued-fraction convergent of `x` within `tol`
/// whose denominator does not exceed `max_den`.
pub fn best_rational(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    if !x.is_finite() || max_den < 1 {
        return None;
    }
    // (p₋₂, q₋₂) = (0, 1), (p₋₁, q₋₁) = (1, 0)
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let p2 = a as i128 * p1 + p0;
        let q2 = a as i128 * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        if (x - p2 as f64 / q2 as f64).abs() <= tol {
            return Some((p2 as i64, q2 as i64));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a;
        if frac <= 0.0 {
            break;
        }
        r = frac.recip();
    }
    None
}

/// Smallest positive integer form proportional to `w`, or `None` when the
/// ratios `m12/m11`, `m22/m11` have no reconstruction with denominator
/// `≤ max_den` at [`RECONSTRUCTION_TOL`].
pub fn rationalize_form(w: &QuadraticForm, max_den: i64) -> Option<IntForm> {
    let (p12, q12) = best_rational(w.m12 / w.m11, max_den, RECONSTRUCTION_TOL)?;
    let (p22, q22) = best_rational(w.m22 / w.m11, max_den, RECONSTRUCTION_TOL)?;
    let l = q12.lcm(&q22);
    let (m11, m12, m22) = (l, p12 * (l / q12), p22 * (l / q22));
    let g = m11.gcd(&m12).gcd(&m22);
    Some(IntForm {
        m11: m11 / g,
        m12: m12 / g,
        m22: m22 / g,
    })
}

pub fn ellipse_geometry(w: &QuadraticForm, level: f64) -> Result<EllipseGeometry> {
    if !(level > 0.0) {
        return Err(Error::InvalidInput(format!("level C > 0 failed: C = {level}")));
    }
    let (small, large) = w.eigenvalues();
    let semi_major = (level / small).sqrt();
    let semi_minor = (level / large).sqrt();
    let circular = (large - small) <= 1e-12 * large;
    let orientation = if circular {
        0.0
    } else {
        // major axis = eigenvector of the smaller eigenvalue
        let phi_large = 0.5 * (2.0 * w.m12).atan2(w.m11 - w.m22);
        wrap_half_turn(phi_large + std::f64::consts::FRAC_PI_2)
    };
    Ok(EllipseGeometry {
        semi_major,
        semi_minor,
        orientation,
        level,
    })
}

fn wrap_half_turn(t: f64) -> f64 {
    let r = t.rem_euclid(std::f64::consts::PI);
    if r >= std::f64::consts::PI {
        0.0
    } else {
        r
    }
}

/// Basis `Q` of the lattice `Γ = Q·ℤ²` in which the invariant ellipse is a
/// circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeTransform {
    pub basis: Matrix2<f64>,
    /// `‖Qᵀ·Q⁻²·Q − I‖`.
    pub circle_residual: f64,
}

pub fn lattice_transform(a: &IntMatrix2) -> Result<LatticeTransform> {
    let d = decompose(a)?;
    let w = d.q_inv * d.q_inv;
    let circle_residual = max_abs(&(d.q.transpose() * w * d.q - Matrix2::identity()));
    Ok(LatticeTransform {
        basis: d.q,
        circle_residual,
    })
}

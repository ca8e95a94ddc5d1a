//! Rotation properties of 2×2 integer dilation matrices.
//!
//! An integer matrix `A` with `det A > 0` and `(tr A)² < 4 det A` is similar,
//! up to the factor `√det A`, to a rotation: `A = √Δ·Q·R·Q⁻¹` with `Q`
//! symmetric positive definite. This crate
//!
//! - classifies the rotation angle exactly ([`matrix2`]),
//! - constructs `Q` and `R` ([`similarity`]),
//! - extracts the invariant quadratic form `Q⁻²` and its ellipse
//!   ([`quadform`]),
//! - evaluates refinable-function Fourier products and checks the resulting
//!   rotate-and-dilate identity numerically ([`refine`]).

pub mod error;
pub mod matrix2;
pub mod quadform;
pub mod refine;
pub mod similarity;

pub use error::{Error, GateFailure, MaskError, Result};
pub use matrix2::{
    angle_table, classify_angle, classify_trace_det, commensurable_trace_det,
    enumerate_matrices, is_commensurable, is_rotational, AngleClass, AngleKind, CosRadical,
    Degeneracy, IntMatrix2, ParseMatrixError, PiFraction, Rational, TableCell,
};
pub use quadform::{
    check_invariance, dual_form, ellipse_geometry, invariant_form, lattice_transform,
    rationalize_form, EllipseGeometry, IntForm, LatticeTransform, QuadraticForm,
};
pub use refine::{
    mask_eval, orbit_angles, phi_hat, power_identity_residual, render_grid, verify_two_angle,
    GridSpec, GridTarget, Mask, Orbit, PhiHat, RenderedGrid, Tail, TwoAngleReport,
};
pub use similarity::{decompose, eigenpair, gram_q2, signed_angle, sqrt_spd, ComplexEigenpair, Decomposition};

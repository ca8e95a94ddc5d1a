//! Refinable functions in the Fourier domain: masks, truncated infinite
//! products for `φ̂`, rotation orbits, the two-angle check and grid
//! rendering.
//!
//! `A*` is taken as `Aᵀ` throughout; all inputs are real integer matrices.

mod grid;
mod mask;
mod orbit;
mod product;
mod verify;

pub use grid::{render_grid, sample_phi_hat, GridSpec, GridTarget, RenderedGrid};
pub use mask::{mask_eval, Mask, NORMALIZATION_TOL};
pub use orbit::{orbit_angles, Orbit};
pub use product::{inverse_transpose_power, phi_hat, power_identity_residual, Cascade, PhiHat, Tail};
pub use verify::{sample_points, two_angle_at, verify_two_angle, TwoAngleReport, CONVENTION, SAMPLE_HALF_WIDTH};

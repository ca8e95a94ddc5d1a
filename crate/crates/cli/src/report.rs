//! Serializable reports. Field order is the output order.

use isodil_core::{
    check_invariance, classify_angle, decompose, ellipse_geometry, invariant_form,
    quadform, rationalize_form, AngleClass, IntMatrix2, Result,
};
use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

/// Largest denominator tried when recovering an integer invariant form.
pub const MAX_FORM_DENOMINATOR: i64 = 1024;

pub type Real2x2 = [[f64; 2]; 2];

pub fn rows(m: &Matrix2<f64>) -> Real2x2 {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngleReport {
    pub kind: String,
    pub exact: Option<String>,
    pub pi_fraction: Option<String>,
    pub theta_abs: Option<f64>,
    pub theta_signed: Option<f64>,
    pub cos_theta_radical: Option<String>,
    pub cos_2theta: Option<String>,
    pub commensurable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Residuals {
    pub similarity: f64,
    pub orthogonality: f64,
    pub invariance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub matrix: [i64; 4],
    pub det: i64,
    pub trace: i64,
    pub rotational: bool,
    /// Why the matrix is not rotational.
    pub degeneracy: Option<String>,
    pub angle: AngleReport,
    #[serde(rename = "Q")]
    pub q: Option<Real2x2>,
    #[serde(rename = "R")]
    pub r: Option<Real2x2>,
    pub residuals: Option<Residuals>,
    pub invariant_form: Option<Real2x2>,
    pub integer_form: Option<[[i64; 2]; 2]>,
}

fn angle_report(class: &AngleClass, theta_signed: Option<f64>) -> AngleReport {
    AngleReport {
        kind: class.kind.as_str().to_string(),
        exact: class.exact_ascii(),
        pi_fraction: class.pi_fraction.map(|p| p.ascii_label()),
        theta_abs: class.theta_abs,
        theta_signed,
        cos_theta_radical: class.cos_theta.map(|c| c.reduce().ascii()),
        cos_2theta: class.cos_2theta.map(|r| r.to_string()),
        commensurable: class.is_commensurable(),
    }
}

impl AnalysisReport {
    /// Full analysis; fails only on internal consistency errors.
    pub fn build(m: &IntMatrix2) -> Result<Self> {
        let class = classify_angle(m);
        let (tau, delta) = m.trace_det();
        let mut report = AnalysisReport {
            matrix: m.entries(),
            det: delta,
            trace: tau,
            rotational: class.is_rotational(),
            degeneracy: class.degeneracy.map(|d| d.explain().to_string()),
            angle: angle_report(&class, None),
            q: None,
            r: None,
            residuals: None,
            invariant_form: None,
            integer_form: None,
        };
        if !class.is_rotational() {
            return Ok(report);
        }
        let d = decompose(m)?;
        let w = invariant_form(m)?;
        report.angle.theta_signed = Some(d.theta_signed);
        report.q = Some(rows(&d.q));
        report.r = Some(rows(&d.r));
        report.residuals = Some(Residuals {
            similarity: d.residual_similarity,
            orthogonality: d.residual_orthogonality,
            invariance: check_invariance(m, &w),
        });
        report.invariant_form = Some(rows(&w.matrix()));
        report.integer_form = rationalize_form(&w, MAX_FORM_DENOMINATOR).map(|v| v.rows());
        Ok(report)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipseReport {
    pub matrix: [i64; 4],
    pub level: f64,
    pub semi_major: f64,
    pub semi_minor: f64,
    /// Major-axis angle in `[0, π)`.
    pub orientation: f64,
    pub circle: bool,
    pub invariant_form: Real2x2,
    pub integer_form: Option<[[i64; 2]; 2]>,
    pub invariance_residual: f64,
    pub dual_invariance_residual: f64,
}

impl EllipseReport {
    pub fn build(m: &IntMatrix2, level: f64) -> Result<Self> {
        let w = invariant_form(m)?;
        let g = ellipse_geometry(&w, level)?;
        let dual = isodil_core::dual_form(m)?;
        Ok(EllipseReport {
            matrix: m.entries(),
            level,
            semi_major: g.semi_major,
            semi_minor: g.semi_minor,
            orientation: g.orientation,
            circle: g.is_circle(),
            invariant_form: rows(&w.matrix()),
            integer_form: rationalize_form(&w, MAX_FORM_DENOMINATOR).map(|v| v.rows()),
            invariance_residual: check_invariance(m, &w),
            dual_invariance_residual: quadform::check_dual_invariance(m, &dual),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub matrix: [i64; 4],
    pub convention: String,
    pub jprime: u32,
    pub vartheta: f64,
    pub samples: usize,
    pub seed: u64,
    pub depth: u32,
    pub tail: String,
    pub max_residual: f64,
    pub worst_xi: [f64; 2],
    pub power_identity_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Written next to a rendered image.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderSidecar {
    pub matrix: [i64; 4],
    pub mode: String,
    pub grid: usize,
    pub extent: f64,
    pub depth: u32,
    /// Node spacing of the image grid.
    pub spacing: f64,
    /// Value mapped to gray level 0.
    pub min: f64,
    /// Value mapped to gray level 255.
    pub max: f64,
}

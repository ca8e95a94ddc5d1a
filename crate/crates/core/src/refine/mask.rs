use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::Vector2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::MaskError;

/// Largest accepted `|Σ h_k − √Δ|`.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Finitely supported refinement coefficients `h_k`, `k ∈ ℤ²`.
///
/// The two-scale relation `φ(x) = Σ_k h_k √Δ φ(Ax − k)` becomes
/// `φ̂(ξ) = m₀((Aᵀ)⁻¹ξ) φ̂((Aᵀ)⁻¹ξ)` with
/// `m₀(ξ) = Δ^{-1/2} Σ_k h_k e^{−ik·ξ}`, so `m₀(0) = 1` exactly when
/// `Σ h_k = √Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mask {
    delta: i64,
    /// Sorted by `k`, no duplicates.
    coeffs: Vec<([i64; 2], f64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaskDoc {
    delta: i64,
    coeffs: Vec<CoeffDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffDoc {
    k: [i64; 2],
    h: f64,
}

impl Mask {
    /// Validates support, duplicates and the normalization `Σ h_k = √Δ`.
    pub fn new(
        delta: i64,
        coeffs: impl IntoIterator<Item = ([i64; 2], f64)>,
    ) -> Result<Self, MaskError> {
        Self::validated(delta, coeffs.into_iter().collect())
    }

    fn validated(delta: i64, list: Vec<([i64; 2], f64)>) -> Result<Self, MaskError> {
        if delta < 1 {
            return Err(MaskError::new("delta", format!("delta >= 1 failed: {delta}")));
        }
        if list.is_empty() {
            return Err(MaskError::new("coeffs", "mask has no coefficients"));
        }
        let mut seen = BTreeMap::new();
        for (i, (k, h)) in list.iter().enumerate() {
            if !h.is_finite() {
                return Err(MaskError::new(format!("coeffs[{i}].h"), "non-finite coefficient"));
            }
            if let Some(first) = seen.insert(*k, i) {
                return Err(MaskError::new(
                    format!("coeffs[{i}].k"),
                    format!("duplicate k = [{}, {}] (first at coeffs[{first}])", k[0], k[1]),
                ));
            }
        }
        if list.iter().all(|(_, h)| *h == 0.0) {
            return Err(MaskError::new("coeffs", "all coefficients are zero"));
        }
        let sum: f64 = list.iter().map(|(_, h)| h).sum();
        let target = (delta as f64).sqrt();
        if !((sum - target).abs() <= NORMALIZATION_TOL) {
            return Err(MaskError::new(
                "coeffs",
                format!("sum of h = {sum:.17e}, expected sqrt(delta) = {target:.17e}"),
            ));
        }
        let mut coeffs = list;
        coeffs.sort_by_key(|(k, _)| *k);
        Ok(Self { delta, coeffs })
    }

    /// Two taps `h_(0,0) = h_(1,0) = √Δ/2`; for `Δ = 2` this is the
    /// quincunx Haar mask.
    pub fn two_tap(delta: i64) -> Result<Self, MaskError> {
        let h = (delta as f64).sqrt() / 2.0;
        Self::new(delta, [([0, 0], h), ([1, 0], h)])
    }

    pub fn quincunx_haar() -> Self {
        Self::two_tap(2).expect("two-tap mask is normalized")
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn coeffs(&self) -> &[([i64; 2], f64)] {
        &self.coeffs
    }

    pub fn from_json_str(text: &str) -> Result<Self, MaskError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: MaskDoc = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            MaskError::new(if path == "." { "$".to_string() } else { path }, e.into_inner().to_string())
        })?;
        Self::validated(doc.delta, doc.coeffs.into_iter().map(|c| (c.k, c.h)).collect())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, MaskError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| MaskError::new("$", format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> String {
        let doc = MaskDoc {
            delta: self.delta,
            coeffs: self
                .coeffs
                .iter()
                .map(|&(k, h)| CoeffDoc { k, h })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("mask serializes")
    }

    /// `m₀(ξ) = Δ^{-1/2} Σ_k h_k e^{−ik·ξ}`.
    pub fn eval(&self, xi: &Vector2<f64>) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &([k1, k2], h) in &self.coeffs {
            let phase = k1 as f64 * xi[0] + k2 as f64 * xi[1];
            let (s, c) = phase.sin_cos();
            acc += Complex64::new(h * c, -h * s);
        }
        acc / (self.delta as f64).sqrt()
    }

    /// `Δ^{-1/2} Σ_k h_k k`, so that `m₀(ξ) = 1 − i·moment·ξ + O(|ξ|²)`.
    pub fn first_moment(&self) -> Vector2<f64> {
        let mut m = Vector2::zeros();
        for &([k1, k2], h) in &self.coeffs {
            m += Vector2::new(k1 as f64, k2 as f64) * h;
        }
        m / (self.delta as f64).sqrt()
    }
}

/// `m₀(ξ)` for `mask`.
pub fn mask_eval(mask: &Mask, xi: &Vector2<f64>) -> Complex64 {
    mask.eval(xi)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    use super::*;

    #[test]
    fn eval_examples() {
        let m = Mask::quincunx_haar();
        assert!((m.eval(&Vector2::zeros()) - 1.0).norm() < 1e-15);
        assert!(m.eval(&Vector2::new(PI, 0.0)).norm() < 1e-15);
        let v = m.eval(&Vector2::new(FRAC_PI_2, 0.0));
        assert!((v - Complex64::new(0.5, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn haar_sum_matches_root_delta() {
        let m = Mask::quincunx_haar();
        let s: f64 = m.coeffs().iter().map(|c| c.1).sum();
        assert!((s - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(m.coeffs()[0], ([0, 0], FRAC_1_SQRT_2));
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let m = Mask::quincunx_haar();
        assert_eq!(Mask::from_json_str(&m.to_json()).unwrap(), m);

        let dup = r#"{"delta": 2, "coeffs": [{"k": [0,0], "h": 0.7071067811865476},
                     {"k": [0,0], "h": 0.7071067811865476}]}"#;
        let e = Mask::from_json_str(dup).unwrap_err();
        assert_eq!(e.path, "coeffs[1].k");

        let bad_sum = r#"{"delta": 2, "coeffs": [{"k": [0,0], "h": 1.0}]}"#;
        let e = Mask::from_json_str(bad_sum).unwrap_err();
        assert_eq!(e.path, "coeffs");
        assert!(e.message.contains("sum of h = 1.0"), "{}", e.message);

        let bad_type = r#"{"delta": 2, "coeffs": [{"k": [0,"x"], "h": 1.0}]}"#;
        let e = Mask::from_json_str(bad_type).unwrap_err();
        assert_eq!(e.path, "coeffs[0].k[1]");

        let e = Mask::from_json_str(r#"{"delta": 0, "coeffs": []}"#).unwrap_err();
        assert_eq!(e.path, "delta");
        let e = Mask::from_json_str(r#"{"delta": 1, "coeffs": []}"#).unwrap_err();
        assert_eq!(e.path, "coeffs");
        let e = Mask::from_json_str(r#"{"delta": 1, "coeffs": [], "x": 1}"#).unwrap_err();
        assert_eq!(e.path, "x");
    }

    #[test]
    fn first_moment_of_haar() {
        let m = Mask::quincunx_haar();
        let mu = m.first_moment();
        assert!((mu - Vector2::new(0.5, 0.0)).norm() < 1e-15);
    }
}

//! Exact arithmetic on 2×2 integer matrices and rotation-angle classification.
//!
//! A dilation matrix `A` with `Δ = det A > 0` and `τ = tr A` is *rotational*
//! when `τ² < 4Δ`: then `A/√Δ` has the unimodular eigenvalues `e^{±iθ}` with
//! `cos θ = τ/(2√Δ)`. Since `cos 2θ = (τ² − 2Δ)/(2Δ)` is rational, Niven's
//! theorem leaves only `τ² ∈ {0, Δ, 2Δ, 3Δ}` as angles commensurable with π;
//! every other rotational matrix rotates by an irrational multiple of π.
//!
//! Everything in this module that decides a class works on integers only.
//! Floating point appears solely in [`AngleClass::theta_abs`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::GateFailure;

/// 2×2 integer matrix `[[a, b], [c, d]]`, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMatrix2 {
    pub const IDENTITY: IntMatrix2 = IntMatrix2::new(1, 0, 0, 1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn from_rows(rows: [[i64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub const fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub const fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    #[inline]
    pub const fn trace(&self) -> i64 {
        self.a + self.d
    }

    #[inline]
    pub const fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// `(τ, Δ) = (tr A, det A)`, both exact.
    pub const fn trace_det(&self) -> (i64, i64) {
        (self.trace(), self.det())
    }

    pub const fn transpose(&self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }

    pub const fn mul(&self, rhs: &IntMatrix2) -> Self {
        Self::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }

    pub fn to_f64(&self) -> nalgebra::Matrix2<f64> {
        nalgebra::Matrix2::new(self.a as f64, self.b as f64, self.c as f64, self.d as f64)
    }

    /// `Ok(())` iff `Δ > 0` and `τ² < 4Δ`.
    pub fn rotational_gate(&self) -> Result<(), GateFailure> {
        let (tau, delta) = self.trace_det();
        rotational_gate(tau, delta)
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Failure to parse the `a,b;c,d` matrix syntax.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseMatrixError {
    #[error("expected two rows separated by ';', found {0}")]
    RowCount(usize),
    #[error("row {row} must have two entries separated by ',', found {found}")]
    ColumnCount { row: usize, found: usize },
    #[error("invalid integer token {token:?} at row {row}, column {col}")]
    Token { token: String, row: usize, col: usize },
}

impl FromStr for IntMatrix2 {
    type Err = ParseMatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows: Vec<&str> = s.trim().split(';').collect();
        if rows.len() != 2 {
            return Err(ParseMatrixError::RowCount(rows.len()));
        }
        let mut out = [[0i64; 2]; 2];
        for (i, row) in rows.iter().enumerate() {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != 2 {
                return Err(ParseMatrixError::ColumnCount {
                    row: i + 1,
                    found: cols.len(),
                });
            }
            for (j, tok) in cols.iter().enumerate() {
                out[i][j] = tok.trim().parse().map_err(|_| ParseMatrixError::Token {
                    token: tok.trim().to_string(),
                    row: i + 1,
                    col: j + 1,
                })?;
            }
        }
        Ok(IntMatrix2::from_rows(out))
    }
}

/// Exact rational in lowest terms with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let g = num.gcd(&den).max(1);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Self {
            num: n as i64,
            den: d as i64,
        }
    }

    pub const fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    #[inline]
    pub const fn num(&self) -> i64 {
        self.num
    }

    #[inline]
    pub const fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `Ok(())` iff `Δ > 0` and `τ² < 4Δ`, compared exactly.
pub fn rotational_gate(tau: i64, delta: i64) -> Result<(), GateFailure> {
    if delta <= 0 {
        return Err(GateFailure::NonPositiveDeterminant { delta });
    }
    if sq(tau) >= 4 * delta as i128 {
        return Err(GateFailure::RealSpectrum { tau, delta });
    }
    Ok(())
}

pub fn is_rotational(m: &IntMatrix2) -> bool {
    m.rotational_gate().is_ok()
}

#[inline]
fn sq(x: i64) -> i128 {
    (x as i128) * (x as i128)
}

/// The angles commensurable with π that a rotational (or boundary) integer
/// matrix can realize. Stored as magnitudes in `[0, π]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PiFraction {
    Zero,
    Sixth,
    Quarter,
    Third,
    Half,
    TwoThirds,
    ThreeQuarters,
    FiveSixths,
    Whole,
}

impl PiFraction {
    pub fn radians(self) -> f64 {
        match self {
            PiFraction::Zero => 0.0,
            PiFraction::Sixth => PI / 6.0,
            PiFraction::Quarter => PI / 4.0,
            PiFraction::Third => PI / 3.0,
            PiFraction::Half => PI / 2.0,
            PiFraction::TwoThirds => 2.0 * PI / 3.0,
            PiFraction::ThreeQuarters => 3.0 * PI / 4.0,
            PiFraction::FiveSixths => 5.0 * PI / 6.0,
            PiFraction::Whole => PI,
        }
    }

    /// `(p, q)` with the angle equal to `p·π/q`.
    pub fn ratio(self) -> (i64, i64) {
        match self {
            PiFraction::Zero => (0, 1),
            PiFraction::Sixth => (1, 6),
            PiFraction::Quarter => (1, 4),
            PiFraction::Third => (1, 3),
            PiFraction::Half => (1, 2),
            PiFraction::TwoThirds => (2, 3),
            PiFraction::ThreeQuarters => (3, 4),
            PiFraction::FiveSixths => (5, 6),
            PiFraction::Whole => (1, 1),
        }
    }

    fn render(self, pi: &str) -> String {
        match self.ratio() {
            (0, _) => "0".to_string(),
            (1, 1) => pi.to_string(),
            (1, q) => format!("{pi}/{q}"),
            (p, q) => format!("{p}{pi}/{q}"),
        }
    }

    /// Unicode label of the magnitude, e.g. `π/4`, `2π/3`.
    pub fn label(self) -> String {
        self.render("π")
    }

    /// ASCII label of the magnitude, e.g. `pi/4`, `2pi/3`.
    pub fn ascii_label(self) -> String {
        self.render("pi")
    }
}

/// `cos θ = τ/(2√Δ)` held symbolically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CosRadical {
    pub tau: i64,
    pub delta: i64,
}

/// `numerator · √radicand / denominator` with a square-free radicand and
/// `gcd(numerator, denominator) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReducedRadical {
    pub numerator: i64,
    pub radicand: i64,
    pub denominator: i64,
}

impl CosRadical {
    /// Requires `delta > 0`.
    pub fn reduce(&self) -> ReducedRadical {
        assert!(self.delta > 0, "cos θ radical needs a positive determinant");
        let (outer, radicand) = split_square(self.delta);
        // τ/(2·s·√r) = τ·√r / (2·s·r)
        let num = self.tau as i128;
        let den = 2 * outer as i128 * radicand as i128;
        let g = num.gcd(&den).max(1);
        ReducedRadical {
            numerator: (num / g) as i64,
            radicand,
            denominator: (den / g) as i64,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.tau as f64 / (2.0 * (self.delta as f64).sqrt())
    }
}

impl ReducedRadical {
    fn render(&self, sep: &str, sqrt: impl Fn(i64) -> String) -> String {
        let ReducedRadical {
            numerator: n,
            radicand: r,
            denominator: q,
        } = *self;
        if n == 0 {
            return "0".to_string();
        }
        let head = if r == 1 {
            n.to_string()
        } else {
            match n {
                1 => sqrt(r),
                -1 => format!("-{}", sqrt(r)),
                _ => format!("{n}{}{}", sep, sqrt(r)),
            }
        };
        if q == 1 {
            head
        } else {
            format!("{head}/{q}")
        }
    }

    /// e.g. `3√5/10`.
    pub fn unicode(&self) -> String {
        self.render("", |r| format!("√{r}"))
    }

    /// e.g. `3*sqrt(5)/10`.
    pub fn ascii(&self) -> String {
        self.render("*", |r| format!("sqrt({r})"))
    }
}

impl fmt::Display for CosRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.reduce().unicode())
    }
}

/// Writes `n = s²·r` with `r` square-free, returning `(s, r)`.
fn split_square(n: i64) -> (i64, i64) {
    debug_assert!(n > 0);
    let mut outer = 1i64;
    let mut rest = n;
    let mut p = 2i64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            outer *= p;
        }
        p += 1;
    }
    (outer, rest)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AngleKind {
    SpecialPiFraction,
    Incommensurable,
    DegenerateRealSpectrum,
}

impl AngleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AngleKind::SpecialPiFraction => "special",
            AngleKind::Incommensurable => "incommensurable",
            AngleKind::DegenerateRealSpectrum => "degenerate",
        }
    }
}

/// Which condition puts a matrix outside the rotational case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degeneracy {
    NonPositiveDeterminant,
    /// `τ² = 4Δ`: the normalized matrix has the double eigenvalue `±1`.
    RepeatedEigenvalue,
    /// `τ² > 4Δ`: two real eigenvalues of different modulus.
    DistinctRealEigenvalues,
}

impl Degeneracy {
    pub fn explain(self) -> &'static str {
        match self {
            Degeneracy::NonPositiveDeterminant => "det A <= 0",
            Degeneracy::RepeatedEigenvalue => "(tr A)^2 = 4 det A, repeated real eigenvalue",
            Degeneracy::DistinctRealEigenvalues => "(tr A)^2 > 4 det A, real eigenvalues",
        }
    }
}

/// Exact classification of the rotation angle of a dilation matrix.
///
/// Only the magnitude of the angle is determined by `(τ, Δ)`; the direction
/// is resolved by [`crate::similarity::decompose`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleClass {
    pub tau: i64,
    pub delta: i64,
    pub kind: AngleKind,
    pub degeneracy: Option<Degeneracy>,
    pub pi_fraction: Option<PiFraction>,
    /// `None` when `Δ ≤ 0`.
    pub cos_theta: Option<CosRadical>,
    /// `(τ² − 2Δ)/(2Δ)`; `None` when `Δ ≤ 0`.
    pub cos_2theta: Option<Rational>,
    /// `|θ| ∈ [0, π]`; `None` unless `Δ > 0` and `τ² ≤ 4Δ`.
    pub theta_abs: Option<f64>,
}

impl AngleClass {
    pub fn is_rotational(&self) -> bool {
        self.degeneracy.is_none()
    }

    /// Angle commensurable with π (including the degenerate 0 and π cases).
    pub fn is_commensurable(&self) -> bool {
        self.pi_fraction.is_some()
    }

    /// Unicode label in the style `±π/4`, `±arccos(√2/4)`, `0`; `None` when
    /// no angle exists.
    pub fn exact_label(&self) -> Option<String> {
        match (self.pi_fraction, self.kind) {
            (Some(PiFraction::Zero), _) | (Some(PiFraction::Whole), _) => {
                self.pi_fraction.map(PiFraction::label)
            }
            (Some(p), _) => Some(format!("±{}", p.label())),
            (None, AngleKind::Incommensurable) => self
                .cos_theta
                .map(|c| format!("±arccos({})", c.reduce().unicode())),
            (None, _) => None,
        }
    }

    /// ASCII magnitude label, e.g. `pi/4` or `arccos(sqrt(2)/4)`.
    pub fn exact_ascii(&self) -> Option<String> {
        match (self.pi_fraction, self.kind) {
            (Some(p), _) => Some(p.ascii_label()),
            (None, AngleKind::Incommensurable) => self
                .cos_theta
                .map(|c| format!("arccos({})", c.reduce().ascii())),
            (None, _) => None,
        }
    }
}

/// Classifies the rotation angle of `m`; a function of `(τ, Δ)` only.
pub fn classify_angle(m: &IntMatrix2) -> AngleClass {
    let (tau, delta) = m.trace_det();
    classify_trace_det(tau, delta)
}

pub fn classify_trace_det(tau: i64, delta: i64) -> AngleClass {
    let mut class = AngleClass {
        tau,
        delta,
        kind: AngleKind::DegenerateRealSpectrum,
        degeneracy: None,
        pi_fraction: None,
        cos_theta: None,
        cos_2theta: None,
        theta_abs: None,
    };
    if delta <= 0 {
        class.degeneracy = Some(Degeneracy::NonPositiveDeterminant);
        return class;
    }
    class.cos_theta = Some(CosRadical { tau, delta });
    class.cos_2theta = Some(Rational::from_i128(
        sq(tau) - 2 * delta as i128,
        2 * delta as i128,
    ));

    let t2 = sq(tau);
    let d = delta as i128;
    if t2 > 4 * d {
        class.degeneracy = Some(Degeneracy::DistinctRealEigenvalues);
        return class;
    }
    if t2 == 4 * d {
        let p = if tau > 0 {
            PiFraction::Zero
        } else {
            PiFraction::Whole
        };
        class.degeneracy = Some(Degeneracy::RepeatedEigenvalue);
        class.pi_fraction = Some(p);
        class.theta_abs = Some(p.radians());
        return class;
    }

    // Supplementary angle for τ < 0, since cos θ carries the sign of τ.
    let special = if t2 == 0 {
        Some(PiFraction::Half)
    } else if t2 == d {
        Some(if tau > 0 { PiFraction::Third } else { PiFraction::TwoThirds })
    } else if t2 == 2 * d {
        Some(if tau > 0 { PiFraction::Quarter } else { PiFraction::ThreeQuarters })
    } else if t2 == 3 * d {
        Some(if tau > 0 { PiFraction::Sixth } else { PiFraction::FiveSixths })
    } else {
        None
    };
    match special {
        Some(p) => {
            class.kind = AngleKind::SpecialPiFraction;
            class.pi_fraction = Some(p);
            class.theta_abs = Some(p.radians());
        }
        None => {
            class.kind = AngleKind::Incommensurable;
            let sin_num = ((4 * d - t2) as f64).sqrt();
            class.theta_abs = Some(sin_num.atan2(tau as f64));
        }
    }
    class
}

/// Niven test: `cos 2θ ∈ {0, ±1/2, ±1}`. Requires a rotational matrix.
pub fn is_commensurable(m: &IntMatrix2) -> Result<bool, GateFailure> {
    let (tau, delta) = m.trace_det();
    commensurable_trace_det(tau, delta)
}

pub fn commensurable_trace_det(tau: i64, delta: i64) -> Result<bool, GateFailure> {
    rotational_gate(tau, delta)?;
    let c = Rational::from_i128(sq(tau) - 2 * delta as i128, 2 * delta as i128);
    Ok(matches!((c.num(), c.den()), (0, 1) | (1 | -1, 2) | (1 | -1, 1)))
}

/// Rotation matrix `[[cos θ, ∓sin θ], [±sin θ, cos θ]]` with
/// `cos θ = τ/(2√Δ)` and `sin θ = √(4Δ − τ²)/(2√Δ)`. `positive` selects the
/// upper sign (counterclockwise rotation).
pub fn rotation_matrix(tau: i64, delta: i64, positive: bool) -> Result<[[f64; 2]; 2], GateFailure> {
    rotational_gate(tau, delta)?;
    let two_root = 2.0 * (delta as f64).sqrt();
    let cos = tau as f64 / two_root;
    let sin = ((4 * delta as i128 - sq(tau)) as f64).sqrt() / two_root;
    let s = if positive { sin } else { -sin };
    Ok([[cos, -s], [s, cos]])
}

/// One `(Δ, τ)` cell of an angle table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TableCell {
    pub delta: i64,
    pub tau: i64,
    pub class: AngleClass,
}

impl TableCell {
    /// `τ² > 4Δ`: no rotation angle exists.
    pub fn is_inapplicable(&self) -> bool {
        self.class.degeneracy == Some(Degeneracy::DistinctRealEigenvalues)
    }
}

/// Rows for `1 ≤ Δ ≤ det_max`, `0 ≤ τ ≤ trace_max`, ordered by `Δ` then `τ`.
pub fn angle_table(det_max: i64, trace_max: i64) -> Vec<TableCell> {
    let mut out = Vec::new();
    for delta in 1..=det_max {
        for tau in 0..=trace_max {
            out.push(TableCell {
                delta,
                tau,
                class: classify_trace_det(tau, delta),
            });
        }
    }
    out
}

/// All matrices with entries in `[-bound, bound]`, determinant `delta` and
/// trace `tau`, in lexicographic order of `(a, b, c, d)`.
pub fn enumerate_matrices(delta: i64, tau: i64, bound: i64) -> Vec<IntMatrix2> {
    let mut out = Vec::new();
    if bound < 0 {
        return out;
    }
    for a in -bound..=bound {
        let d = tau - a;
        if d.abs() > bound {
            continue;
        }
        // bc is forced by the determinant
        let bc = a * d - delta;
        for b in -bound..=bound {
            for c in -bound..=bound {
                if b * c == bc {
                    out.push(IntMatrix2::new(a, b, c, d));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_det_examples() {
        assert_eq!(IntMatrix2::new(0, -2, 1, 1).trace_det(), (1, 2));
        assert_eq!(IntMatrix2::IDENTITY.trace_det(), (2, 1));
        assert_eq!(IntMatrix2::new(1, -1, 1, 1).trace_det(), (2, 2));
    }

    #[test]
    fn rotational_gate_examples() {
        assert!(is_rotational(&IntMatrix2::new(1, -1, 1, 1)));
        assert!(!is_rotational(&IntMatrix2::new(2, 0, 0, 2)));
        assert!(!is_rotational(&IntMatrix2::new(2, 1, 1, 1)));
        assert_eq!(
            IntMatrix2::new(2, 0, 0, 2).rotational_gate(),
            Err(GateFailure::RealSpectrum { tau: 4, delta: 4 })
        );
        assert_eq!(
            IntMatrix2::new(0, 1, 1, 0).rotational_gate(),
            Err(GateFailure::NonPositiveDeterminant { delta: -1 })
        );
    }

    #[test]
    fn gate_message_names_inequality() {
        let msg = IntMatrix2::new(2, 1, 1, 1)
            .rotational_gate()
            .unwrap_err()
            .to_string();
        assert!(msg.contains("(tr A)^2 < 4 det A"), "{msg}");
        assert!(msg.contains("= 9") && msg.contains("= 4"), "{msg}");
    }

    #[test]
    fn classify_examples() {
        let c = classify_trace_det(2, 2);
        assert_eq!(c.kind, AngleKind::SpecialPiFraction);
        assert_eq!(c.pi_fraction, Some(PiFraction::Quarter));

        let c = classify_trace_det(1, 2);
        assert_eq!(c.kind, AngleKind::Incommensurable);
        assert_eq!(c.exact_label().unwrap(), "±arccos(√2/4)");
        assert!((c.theta_abs.unwrap() - (2f64.sqrt() / 4.0).acos()).abs() < 1e-15);

        let c = classify_trace_det(3, 5);
        assert_eq!(c.exact_label().unwrap(), "±arccos(3√5/10)");
        let expect = (3.0 * 5f64.sqrt() / 10.0).acos();
        assert!((c.theta_abs.unwrap() - expect).abs() < 1e-15);

        let c = classify_trace_det(-1, 1);
        assert_eq!(c.pi_fraction, Some(PiFraction::TwoThirds));
        assert!((c.theta_abs.unwrap().cos() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn negative_trace_gives_supplement() {
        for (tau, delta, frac) in [
            (0, 3, PiFraction::Half),
            (-2, 4, PiFraction::TwoThirds),
            (-2, 2, PiFraction::ThreeQuarters),
            (-3, 3, PiFraction::FiveSixths),
        ] {
            let c = classify_trace_det(tau, delta);
            assert_eq!(c.pi_fraction, Some(frac), "({tau},{delta})");
            let pos = classify_trace_det(-tau, delta).theta_abs.unwrap();
            assert!((c.theta_abs.unwrap() - (PI - pos)).abs() < 1e-15);
        }
    }

    #[test]
    fn boundary_and_degenerate() {
        let c = classify_trace_det(4, 4);
        assert_eq!(c.kind, AngleKind::DegenerateRealSpectrum);
        assert_eq!(c.pi_fraction, Some(PiFraction::Zero));
        assert_eq!(c.theta_abs, Some(0.0));
        assert_eq!(c.exact_label().as_deref(), Some("0"));

        let c = classify_trace_det(-2, 1);
        assert_eq!(c.pi_fraction, Some(PiFraction::Whole));
        assert_eq!(c.theta_abs, Some(PI));

        let c = classify_trace_det(3, 1);
        assert_eq!(c.degeneracy, Some(Degeneracy::DistinctRealEigenvalues));
        assert_eq!(c.theta_abs, None);
        assert_eq!(c.exact_label(), None);

        let c = classify_trace_det(0, -1);
        assert_eq!(c.degeneracy, Some(Degeneracy::NonPositiveDeterminant));
        assert_eq!(c.cos_2theta, None);
        let c = classify_trace_det(1, 0);
        assert_eq!(c.degeneracy, Some(Degeneracy::NonPositiveDeterminant));
    }

    #[test]
    fn radicals_reduce_to_lowest_form() {
        let r = |t, d| CosRadical { tau: t, delta: d }.reduce().unicode();
        assert_eq!(r(1, 2), "√2/4");
        assert_eq!(r(1, 3), "√3/6");
        assert_eq!(r(2, 3), "√3/3");
        assert_eq!(r(1, 4), "1/4");
        assert_eq!(r(3, 4), "3/4");
        assert_eq!(r(4, 5), "2√5/5");
        assert_eq!(r(-1, 2), "-√2/4");
        assert_eq!(r(3, 8), "3√2/8");
        assert_eq!(r(0, 7), "0");
        assert_eq!(r(2, 1), "1");
        assert_eq!(CosRadical { tau: 3, delta: 5 }.reduce().ascii(), "3*sqrt(5)/10");
    }

    #[test]
    fn commensurable_examples() {
        assert_eq!(is_commensurable(&IntMatrix2::new(0, -2, 1, 1)), Ok(false));
        assert_eq!(is_commensurable(&IntMatrix2::new(1, -1, 1, 1)), Ok(true));
        assert_eq!(commensurable_trace_det(1, 1), Ok(true));
        assert!(commensurable_trace_det(2, 1).is_err());
    }

    #[test]
    fn cos_2theta_is_reduced() {
        let c = classify_trace_det(1, 2).cos_2theta.unwrap();
        assert_eq!((c.num(), c.den()), (-3, 4));
        let c = classify_trace_det(2, 2).cos_2theta.unwrap();
        assert_eq!(c, Rational::ZERO);
        assert_eq!(Rational::new(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn table_small_cases() {
        let t = angle_table(1, 0);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].class.pi_fraction, Some(PiFraction::Half));
        let t = angle_table(4, 4);
        let last = t.last().unwrap();
        assert_eq!((last.delta, last.tau), (4, 4));
        assert_eq!(last.class.theta_abs, Some(0.0));
        assert!(!last.is_inapplicable());
        assert!(t.iter().any(|c| c.delta == 1 && c.tau == 3 && c.is_inapplicable()));
    }

    #[test]
    fn enumerate_examples() {
        assert!(enumerate_matrices(2, 1, 2).contains(&IntMatrix2::new(0, -2, 1, 1)));
        assert!(enumerate_matrices(1, 2, 1).contains(&IntMatrix2::IDENTITY));
        let got = enumerate_matrices(2, 2, 1);
        assert!(got.contains(&IntMatrix2::new(1, -1, 1, 1)));
        // exhaustive scan over all 3^4 tuples
        let mut scan = Vec::new();
        for a in -1..=1 {
            for b in -1..=1 {
                for c in -1..=1 {
                    for d in -1..=1 {
                        let m = IntMatrix2::new(a, b, c, d);
                        if m.trace_det() == (2, 2) {
                            scan.push(m);
                        }
                    }
                }
            }
        }
        assert_eq!(got, scan);
    }

    #[test]
    fn parse_matrix_text() {
        assert_eq!("0,-2;1,1".parse(), Ok(IntMatrix2::new(0, -2, 1, 1)));
        assert_eq!(" 1, 0 ; 0, 1 ".parse(), Ok(IntMatrix2::IDENTITY));
        assert_eq!(
            "1,x;0,1".parse::<IntMatrix2>(),
            Err(ParseMatrixError::Token {
                token: "x".into(),
                row: 1,
                col: 2
            })
        );
        assert!(matches!(
            "1,2,3;4,5".parse::<IntMatrix2>(),
            Err(ParseMatrixError::ColumnCount { row: 1, found: 3 })
        ));
        assert!(matches!(
            "1,2".parse::<IntMatrix2>(),
            Err(ParseMatrixError::RowCount(1))
        ));
        assert_eq!(IntMatrix2::new(0, -2, 1, 1).to_string(), "0,-2;1,1");
    }
}

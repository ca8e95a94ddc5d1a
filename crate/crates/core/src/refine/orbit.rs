use std::f64::consts::TAU;

/// `{jθ mod 2π : j = 1..N}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    pub theta: f64,
    pub angles: Vec<f64>,
}

pub fn orbit_angles(theta: f64, n: usize) -> Orbit {
    let angles = (1..=n)
        .map(|j| {
            let r = (j as f64 * theta).rem_euclid(TAU);
            if r >= TAU {
                0.0
            } else {
                r
            }
        })
        .collect();
    Orbit { theta, angles }
}

impl Orbit {
    fn sorted(&self) -> Vec<f64> {
        let mut s = self.angles.clone();
        s.sort_by(f64::total_cmp);
        s
    }

    /// Largest gap between circularly consecutive angles, including the
    /// wrap-around from the last angle back to the first.
    pub fn max_gap(&self) -> f64 {
        let s = self.sorted();
        match (s.first(), s.last()) {
            (Some(first), Some(last)) => s
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(first + TAU - last, f64::max),
            _ => TAU,
        }
    }

    /// Smallest gap between circularly consecutive angles.
    pub fn min_gap(&self) -> f64 {
        let s = self.sorted();
        match (s.first(), s.last()) {
            (Some(first), Some(last)) if s.len() > 1 => s
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(first + TAU - last, f64::min),
            _ => TAU,
        }
    }
}

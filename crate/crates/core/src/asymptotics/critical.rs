//! Stationary points of `γ φ(θ) - θ`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::{EFFECTIVE_SPEED, RADIUS};

/// Angles where `γ φ'(θ) = 1`, in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoints {
    pub thetas: Vec<f64>,
    /// Set when `γ` is within `1e-9` of `c*`, where the points merge pairwise.
    pub degenerate: bool,
}

/// Solves `γ φ'(θ) = 1`. From `φ' = sin θ/(2r sin φ)` and `2r cos φ = cos θ`
/// this is `cos²θ = (4r² - γ²)/(1 - γ²)`, which has real solutions on the real
/// arcs exactly when `γ ≤ c*`.
pub fn critical_points(gamma: f64) -> CriticalPoints {
    if (gamma - EFFECTIVE_SPEED).abs() < 1e-9 {
        return CriticalPoints {
            thetas: vec![FRAC_PI_2, 3.0 * FRAC_PI_2],
            degenerate: true,
        };
    }
    let r2 = 4.0 * RADIUS * RADIUS;
    if !(gamma > 0.0 && gamma < EFFECTIVE_SPEED) {
        return CriticalPoints {
            thetas: Vec::new(),
            degenerate: false,
        };
    }
    let c2 = (r2 - gamma * gamma) / (1.0 - gamma * gamma);
    let t1 = c2.sqrt().acos();
    CriticalPoints {
        thetas: vec![t1, PI - t1, PI + t1, TAU - t1],
        degenerate: false,
    }
}

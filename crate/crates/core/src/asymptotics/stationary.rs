//! Leading-order stationary phase for `ψ_j(k, d)` when `0 < d/k < c*`.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::critical::critical_points;
use super::phase::phase_eval;
use super::AsymptoticError;
use crate::green::Orientation;
use crate::series::g_from;
use crate::{EFFECTIVE_SPEED, RADIUS};

/// Margin kept from both ends of `(0, c*)`.
pub const BAND_MARGIN: f64 = 0.05;

/// `Σ_c g_j(r e^{iθ_c}) e^{ik(γφ(θ_c) - θ_c)} e^{iσ_c π/4} / √(2πk |γφ''(θ_c)|)`
/// over the four critical points, with `γ = d/k` and `σ_c` the sign of `φ''`.
pub fn stationary_phase_estimate(j: Orientation, k: usize, d: usize) -> Result<Complex64, AsymptoticError> {
    let (lo, hi) = (BAND_MARGIN, EFFECTIVE_SPEED - BAND_MARGIN);
    let gamma = if k == 0 { f64::NAN } else { d as f64 / k as f64 };
    if !(gamma > lo && gamma < hi) {
        return Err(AsymptoticError::OutOfRegime { gamma, lo, hi });
    }
    let kf = k as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for theta in critical_points(gamma).thetas {
        let p = phase_eval(theta);
        let phi = p.phi.re;
        let curvature = gamma * p.d2phi.re;
        let x = Complex64::from_polar(RADIUS, theta);
        let g = g_from(x, Complex64::from_polar(1.0, phi))[j.slot()];
        let phase = kf * (gamma * phi - theta) + curvature.signum() * FRAC_PI_4;
        total += g * Complex64::from_polar(1.0, phase) / (2.0 * PI * kf * curvature.abs()).sqrt();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::quadrature::{psi_quadrature, RadiusPolicy};

    #[test]
    fn band_is_enforced() {
        assert!(matches!(
            stationary_phase_estimate(Orientation::Onward, 100, 2),
            Err(AsymptoticError::OutOfRegime { .. })
        ));
        assert!(stationary_phase_estimate(Orientation::Onward, 100, 92).is_err());
        assert!(stationary_phase_estimate(Orientation::Onward, 100, 50).is_ok());
    }

    #[test]
    fn error_is_of_order_k_to_minus_three_halves() {
        // The leading term is O(k^{-1/2}); the remainder oscillates but stays O(k^{-3/2}).
        for j in Orientation::ALL {
            for k in [100, 200, 400, 800] {
                let d = if j.admits(k, k / 2) { k / 2 } else { k / 2 + 1 };
                let q = psi_quadrature(j, k, d, RadiusPolicy::Interior).unwrap();
                let err = (stationary_phase_estimate(j, k, d).unwrap() - q).norm();
                assert!(err * (k as f64).powf(1.5) < 3.0, "j={j} k={k}: {err}");
            }
        }
    }

    #[test]
    fn parity_zeros_are_reproduced() {
        let v = stationary_phase_estimate(Orientation::Facing, 400, 200).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn amplitude_halves_when_time_quadruples() {
        let a = stationary_phase_estimate(Orientation::Onward, 400, 200).unwrap();
        let terms = |k: usize| -> f64 {
            let gamma = 0.5;
            critical_points(gamma)
                .thetas
                .iter()
                .map(|&t| {
                    let p = phase_eval(t);
                    let g = g_from(Complex64::from_polar(RADIUS, t), Complex64::from_polar(1.0, p.phi.re))[0];
                    g.norm() / (2.0 * PI * k as f64 * (gamma * p.d2phi.re).abs()).sqrt()
                })
                .sum()
        };
        assert!((terms(400) / terms(1600) - 2.0).abs() < 1e-12);
        assert!(a.norm() <= terms(400) + 1e-15);
    }
}

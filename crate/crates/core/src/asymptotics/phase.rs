//! The phase `φ(θ)` defined by `2r cos φ(θ) = cos θ`, with `φ(θ₀) = 0`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::BRANCH_ANGLE;
use crate::RADIUS;

/// `φ`, `φ'` and `φ''` at one angle. At the four branch angles the
/// derivatives are infinite; they are then reported as NaN with `singular` set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSample {
    pub theta: f64,
    pub phi: Complex64,
    pub dphi: Complex64,
    pub d2phi: Complex64,
    pub singular: bool,
}

/// The angles `θ₀, π-θ₀, π+θ₀, 2π-θ₀` where `z₋` has a branch point.
pub fn singular_angles() -> [f64; 4] {
    [BRANCH_ANGLE, PI - BRANCH_ANGLE, PI + BRANCH_ANGLE, TAU - BRANCH_ANGLE]
}

/// Whether `φ(θ)` is real, i.e. `|cos θ| ≤ 2r`.
pub fn is_real_arc(theta: f64) -> bool {
    let t = reduce(theta);
    (BRANCH_ANGLE..=PI - BRANCH_ANGLE).contains(&t) || (PI + BRANCH_ANGLE..=TAU - BRANCH_ANGLE).contains(&t)
}

fn reduce(theta: f64) -> f64 {
    if (0.0..=TAU).contains(&theta) {
        theta
    } else {
        theta.rem_euclid(TAU)
    }
}

/// `φ(θ)` on `[0, 2π]`; other angles are reduced modulo `2π`.
pub fn phi(theta: f64) -> Complex64 {
    let t = reduce(theta);
    let c = t.cos() / (2.0 * RADIUS);
    let acosh = |v: f64| v.abs().max(1.0).acosh();
    let acos = |v: f64| v.clamp(-1.0, 1.0).acos();
    if t <= BRANCH_ANGLE {
        Complex64::new(0.0, acosh(c))
    } else if t <= PI - BRANCH_ANGLE {
        Complex64::new(acos(c), 0.0)
    } else if t <= PI + BRANCH_ANGLE {
        Complex64::new(PI, acosh(c))
    } else if t <= TAU - BRANCH_ANGLE {
        Complex64::new(PI + acos(-c), 0.0)
    } else {
        Complex64::new(TAU, acosh(c))
    }
}

/// Evaluates the phase and its first two derivatives.
///
/// Differentiating `2r cos φ = cos θ` gives `φ' = sin θ / (2r sin φ)` and
/// `4r² sin³φ φ'' = -cos θ (1/(2r) - 2r)`.
pub fn phase_eval(theta: f64) -> PhaseSample {
    let t = reduce(theta);
    let phi = phi(t);
    let singular = singular_angles().iter().any(|s| (t - s).abs() < 1e-12);
    if singular {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        return PhaseSample {
            theta,
            phi,
            dphi: nan,
            d2phi: nan,
            singular,
        };
    }
    let s = phi.sin();
    let r2 = 2.0 * RADIUS;
    PhaseSample {
        theta,
        phi,
        dphi: t.sin() / (r2 * s),
        d2phi: -t.cos() * (1.0 / r2 - r2) / (r2 * r2 * s * s * s),
        singular,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn reference_values() {
        let p = phase_eval(FRAC_PI_2);
        assert!((p.phi.re - FRAC_PI_2).abs() < 1e-15 && p.phi.im == 0.0);
        assert!((p.dphi.re - 3.0 / (2.0 * 2f64.sqrt())).abs() < 1e-14);
        assert!(p.d2phi.norm() < 1e-15);
        assert!(phi(BRANCH_ANGLE).norm() < 1e-7);
        assert!((phi(3.0 * FRAC_PI_2).re - 3.0 * FRAC_PI_2).abs() < 1e-14);
        assert!(phase_eval(BRANCH_ANGLE).singular);
        assert!(phase_eval(PI + BRANCH_ANGLE).dphi.re.is_nan());
    }

    #[test]
    fn defining_identity_holds() {
        let n = 10_000;
        for i in 0..=n {
            let t = TAU * i as f64 / n as f64;
            let v = 2.0 * RADIUS * phi(t).cos();
            assert!((v - t.cos()).norm() < 1e-12, "θ={t}");
            assert!(phi(t).im >= 0.0);
            if is_real_arc(t) {
                assert_eq!(phi(t).im, 0.0, "θ={t}");
            } else {
                assert!(phi(t).im > 0.0, "θ={t}");
            }
        }
    }

    #[test]
    fn shift_by_pi_and_continuity() {
        let n = 2000;
        let mut prev = phi(0.0);
        for i in 1..=n {
            let t = TAU * i as f64 / n as f64;
            let cur = phi(t);
            assert!((cur - prev).norm() < 0.1, "jump at θ={t}");
            prev = cur;
            if t < PI {
                assert!((phi(t + PI) - phi(t) - PI).norm() < 1e-12, "θ={t}");
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for t in [0.1, 0.2, 0.5, 1.0, 1.4, 2.0, 2.9, 3.3, 4.0, 5.0, 6.1] {
            let p = phase_eval(t);
            let fd1 = (phi(t + h) - phi(t - h)) / (2.0 * h);
            let fd2 = (phi(t + h) - 2.0 * phi(t) + phi(t - h)) / (h * h);
            assert!((p.dphi - fd1).norm() < 1e-7 * (1.0 + fd1.norm()), "θ={t}");
            assert!((p.d2phi - fd2).norm() < 1e-3 * (1.0 + fd2.norm()), "θ={t}");
        }
    }

    #[test]
    fn derivative_bounds_on_real_arc() {
        let min = 1.0 / (2.0 * RADIUS);
        let n = 1000;
        for i in 1..n {
            let t = BRANCH_ANGLE + (PI - 2.0 * BRANCH_ANGLE) * i as f64 / n as f64;
            let p = phase_eval(t);
            assert!(p.dphi.re >= min - 1e-12);
            if (t - FRAC_PI_2).abs() > 1e-3 {
                assert!(p.dphi.re > min);
                assert_eq!(p.d2phi.re < 0.0, t < FRAC_PI_2, "θ={t}");
            }
        }
    }
}

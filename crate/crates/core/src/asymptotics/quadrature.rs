//! Contour quadrature for `ψ_j(k, d) = (r^k/2πi) ∮ g_j(ζ) z₋(μ(ζ))^d ζ^{-k-1} dζ`.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::phase::phi;
use super::{AsymptoticError, BRANCH_ANGLE};
use crate::green::Orientation;
use crate::series::{boundary_residues, g_from, g_interior};
use crate::RADIUS;

/// Where the contour is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusPolicy {
    /// Circle of radius `r(1 - 1/max(k, 8))` with the trapezoidal rule.
    Interior,
    /// The circle `|ζ| = r` itself, split at the branch angles.
    Boundary,
}

/// Agreement required between refinements and between the two policies.
pub const CONSISTENCY_TOL: f64 = 1e-6;

pub fn psi_quadrature(
    j: Orientation,
    k: usize,
    d: usize,
    policy: RadiusPolicy,
) -> Result<Complex64, AsymptoticError> {
    match policy {
        RadiusPolicy::Interior => Ok(interior(j, k, d)),
        RadiusPolicy::Boundary => boundary(j, k, d),
    }
}

/// Interior value, after checking it against the boundary evaluation.
pub fn psi_cross_checked(j: Orientation, k: usize, d: usize) -> Result<Complex64, AsymptoticError> {
    let a = interior(j, k, d);
    let b = boundary(j, k, d)?;
    if (a - b).norm() > CONSISTENCY_TOL {
        return Err(AsymptoticError::NonConvergent(format!(
            "interior {a} and boundary {b} disagree at j={j} k={k} d={d}"
        )));
    }
    Ok(a)
}

fn interior(j: Orientation, k: usize, d: usize) -> Complex64 {
    let m = k.max(8);
    let rho = RADIUS * (1.0 - 1.0 / m as f64);
    let n = 32 * m;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let t = TAU * i as f64 / n as f64;
        let x = Complex64::from_polar(rho, t);
        let (g, z) = g_interior(x);
        acc += g[j.slot()] * z.powu(d as u32) * Complex64::from_polar(1.0, -(k as f64) * t);
    }
    acc / n as f64 * (RADIUS / rho).powi(k as i32)
}

/// Contribution of the two boundary poles `x = ±r` of `g_j`, which the
/// interior integral sees as the geometric series of `c/(x ∓ r)`.
///
/// This part is real and does not decay in `k`: it is `(-c₊ + (-1)^k c₋)/r`
/// with `c± = Res_{±r}(g_j) z₋(±r)^d` and `z₋(±r) = ±1/√2`.
pub fn localized_component(j: Orientation, k: usize, d: usize) -> f64 {
    let (cp, cm) = pole_weights(j, d);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    (-cp.re + sign * cm.re) / RADIUS
}

fn pole_weights(j: Orientation, d: usize) -> (Complex64, Complex64) {
    let res = boundary_residues();
    let zd = SQRT_2.powi(-(d as i32));
    let sd = if d.is_multiple_of(2) { 1.0 } else { -1.0 };
    (res[0][j.slot()] * zd, res[1][j.slot()] * zd * sd)
}

fn gauss_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        GaussLegendre::new(NonZeroUsize::new(16).expect("nonzero"))
            .as_node_weight_pairs()
            .to_vec()
    })
}

/// Pieces `(s, e)` of `[0, 2π]` with the square-root singularity at `s`.
fn pieces() -> [(f64, f64); 8] {
    let t0 = BRANCH_ANGLE;
    [
        (t0, 0.0),
        (t0, FRAC_PI_2),
        (PI - t0, FRAC_PI_2),
        (PI - t0, PI),
        (PI + t0, PI),
        (PI + t0, 3.0 * FRAC_PI_2),
        (TAU - t0, 3.0 * FRAC_PI_2),
        (TAU - t0, TAU),
    ]
}

/// `(1/2π) ∫ [g_j z^d - c₊/(x-r) - c₋/(x+r)] e^{-ikθ} dθ` over the circle,
/// with `θ = s + (e - s)u²` on each piece and `panels` Gauss panels in `u`.
fn boundary_regular_part(j: Orientation, k: usize, d: usize, scale: usize) -> Complex64 {
    let (cp, cm) = pole_weights(j, d);
    let rule = gauss_rule();
    let integrand = |t: f64| -> Complex64 {
        let x = Complex64::from_polar(RADIUS, t);
        let z = (Complex64::i() * phi(t)).exp();
        let g = g_from(x, z)[j.slot()];
        (g * z.powu(d as u32) - cp / (x - RADIUS) - cm / (x + RADIUS)) * Complex64::from_polar(1.0, -(k as f64) * t)
    };
    let mut total = Complex64::new(0.0, 0.0);
    for (s, e) in pieces() {
        let len = (e - s).abs();
        let panels = scale * (4 + ((k + 2 * d) as f64 * len / 2.0).ceil() as usize);
        let h = 1.0 / panels as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let a = p as f64 * h;
            for &(node, w) in rule {
                let u = a + 0.5 * h * (node + 1.0);
                acc += integrand(s + (e - s) * u * u) * (w * 0.5 * h * u);
            }
        }
        total += acc * (2.0 * len);
    }
    total / TAU
}

fn boundary(j: Orientation, k: usize, d: usize) -> Result<Complex64, AsymptoticError> {
    let coarse = boundary_regular_part(j, k, d, 1);
    let fine = boundary_regular_part(j, k, d, 2);
    if (coarse - fine).norm() > CONSISTENCY_TOL {
        return Err(AsymptoticError::NonConvergent(format!(
            "boundary refinement changed the value by {} at j={j} k={k} d={d}",
            (coarse - fine).norm()
        )));
    }
    Ok(fine + localized_component(j, k, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ExactRecurrence;

    #[test]
    fn small_examples() {
        let v = psi_quadrature(Orientation::Facing, 1, 0, RadiusPolicy::Interior).unwrap();
        assert!((v.re + 1.0 / 3.0).abs() < 1e-10 && v.im.abs() < 1e-10);
        let v = psi_quadrature(Orientation::Onward, 2, 2, RadiusPolicy::Interior).unwrap();
        assert!((v.re - 8.0 / 9.0).abs() < 1e-10);
        let v = psi_quadrature(Orientation::Onward, 40, 41, RadiusPolicy::Interior).unwrap();
        assert!(v.norm() < 1e-10);
    }

    #[test]
    fn interior_matches_exact_values() {
        let mut worst = 0.0f64;
        for layer in ExactRecurrence::new(24).skip(1) {
            let t = layer.to_table();
            let k = layer.k();
            for d in 0..=k + 1 {
                for j in Orientation::ALL {
                    let q = psi_quadrature(j, k, d, RadiusPolicy::Interior).unwrap();
                    worst = worst.max((q - t.psi(d, j).to_f64()).norm());
                }
            }
        }
        assert!(worst < 1e-10, "{worst}");
    }

    #[test]
    fn boundary_policy_agrees() {
        for (k, d) in [(1, 0), (5, 3), (12, 0), (20, 7), (30, 30), (33, 12)] {
            for j in Orientation::ALL {
                let a = psi_quadrature(j, k, d, RadiusPolicy::Interior).unwrap();
                let b = psi_quadrature(j, k, d, RadiusPolicy::Boundary).unwrap();
                assert!((a - b).norm() < 1e-8, "j={j} k={k} d={d}: {a} vs {b}");
                psi_cross_checked(j, k, d).unwrap();
            }
        }
    }

    #[test]
    fn localized_part_of_return_amplitude() {
        // Facing pair at distance zero: the reflected pulse never fully leaves.
        assert!((localized_component(Orientation::Onward, 10, 0) - 1.0 / 3.0).abs() < 1e-12);
        assert!((localized_component(Orientation::Facing, 11, 0) + 1.0 / 3.0).abs() < 1e-12);
        assert!(localized_component(Orientation::Onward, 11, 0).abs() < 1e-12);
        for d in 0..6 {
            let want = 2f64.powf(-(d as f64) / 2.0) / 3.0;
            assert!((localized_component(Orientation::Onward, 20 + d, d) - want).abs() < 1e-12);
        }
    }
}

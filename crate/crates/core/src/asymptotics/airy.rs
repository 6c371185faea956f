//! The Airy function `Ai` on the real line.

use std::f64::consts::{FRAC_PI_4, PI};

/// `Ai(0)`.
pub const AI0: f64 = 0.355_028_053_887_817_2;
/// `-Ai'(0)`.
const AIP0: f64 = 0.258_819_403_792_806_8;

/// Switch between the Maclaurin series and the asymptotic expansions.
const SERIES_LIMIT: f64 = 6.0;

/// `Ai(t)`, accurate to about `1e-10` absolute for `|t| ≤ 20`.
pub fn airy_ai(t: f64) -> f64 {
    if t.abs() <= SERIES_LIMIT {
        maclaurin(t)
    } else if t > 0.0 {
        decaying(t)
    } else {
        oscillating(-t)
    }
}

fn maclaurin(t: f64) -> f64 {
    let t3 = t * t * t;
    let (mut f, mut g) = (1.0, t);
    let (mut a, mut b) = (1.0, t);
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        a *= t3 / ((k3 - 1.0) * k3);
        b *= t3 / (k3 * (k3 + 1.0));
        f += a;
        g += b;
        if a.abs() < 1e-18 * f.abs().max(1.0) && b.abs() < 1e-18 * g.abs().max(1.0) {
            break;
        }
    }
    AI0 * f - AIP0 * g
}

/// Coefficients `u_k` of the large-argument expansions, taken until the
/// terms `u_k/ζ^k` stop decreasing.
fn expansion_terms(zeta: f64) -> Vec<f64> {
    let mut terms = vec![1.0];
    let mut u = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let term = u / zeta.powi(k);
        if term.abs() >= terms.last().map_or(f64::INFINITY, |t: &f64| t.abs()) || term.abs() < 1e-17 {
            break;
        }
        terms.push(term);
    }
    terms
}

fn decaying(t: f64) -> f64 {
    let zeta = 2.0 / 3.0 * t.powf(1.5);
    let sum: f64 = expansion_terms(zeta)
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { *v } else { -*v })
        .sum();
    (-zeta).exp() / (2.0 * PI.sqrt() * t.powf(0.25)) * sum
}

fn oscillating(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (mut even, mut odd) = (0.0, 0.0);
    for (k, v) in expansion_terms(zeta).into_iter().enumerate() {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            even += sign * v;
        } else {
            odd += sign * v;
        }
    }
    let w = zeta - FRAC_PI_4;
    (w.cos() * even + w.sin() * odd) / (PI.sqrt() * x.powf(0.25))
}

//! Regime classification and ladder diagnostics along rays `d ≈ γ k`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::airy::airy_ai;
use super::critical::critical_points;
use super::envelope::{block_maxima, exponential_rate, power_slope};
use super::quadrature::{localized_component, psi_quadrature, RadiusPolicy};
use super::stationary::{stationary_phase_estimate, BAND_MARGIN};
use super::{AsymptoticError, AIRY_RHO, TRANSITION_BAND};
use crate::combinatorics::FloatRecurrence;
use crate::green::{FloatLayer, Orientation};
use crate::{EFFECTIVE_SPEED, RADIUS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `d/k > c*`: exponentially small amplitudes.
    Supersonic,
    /// `0 < d/k < c*`: oscillating amplitudes of order `k^{-1/2}`.
    Bulk,
    /// `d/k` close to `c*`: Airy profile of order `k^{-1/3}`.
    Transition,
    /// `d = 0`.
    Return,
}

impl Regime {
    pub fn classify(k: usize, d: usize) -> Self {
        let gamma = d as f64 / k as f64;
        if d == 0 {
            Regime::Return
        } else if (gamma - EFFECTIVE_SPEED).abs() < TRANSITION_BAND {
            Regime::Transition
        } else if gamma > EFFECTIVE_SPEED {
            Regime::Supersonic
        } else {
            Regime::Bulk
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub gamma: f64,
    pub regime: Regime,
    pub critical_thetas: Vec<f64>,
    /// Supersonic: fitted rate `a` of `e^{-ak}`. Otherwise: fitted exponent of
    /// `k` in the envelope of `|ψ|`.
    pub decay_estimate: Option<f64>,
    pub details: BTreeMap<String, f64>,
}

/// Samples `|ψ_j|` along a range of times.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    pub ks: Vec<usize>,
    pub values: Vec<f64>,
}

impl Ladder {
    pub fn envelope(&self) -> Vec<(usize, f64)> {
        block_maxima(&self.ks, &self.values)
    }

    /// Ladder of `k^p v`.
    pub fn scaled(&self, p: f64) -> Ladder {
        Ladder {
            ks: self.ks.clone(),
            values: self.ks.iter().zip(&self.values).map(|(k, v)| (*k as f64).powf(p) * v).collect(),
        }
    }
}

/// Streams the float recurrence once and records `f(layer)` for `k ∈ [k_lo, k_hi]`.
pub fn sample_layers<T>(k_lo: usize, k_hi: usize, mut f: impl FnMut(&FloatLayer) -> T) -> Vec<(usize, T)> {
    FloatRecurrence::new(k_hi)
        .filter(|l| l.k() >= k_lo)
        .map(|l| (l.k(), f(&l)))
        .collect()
}

/// The distance closest to `t` at which `ψ_j(k, ·)` is not forced to vanish
/// by parity; ties go to the smaller distance.
pub fn nearest_admissible(j: Orientation, k: usize, t: f64) -> usize {
    let f = t.floor().max(0.0) as usize;
    (f.saturating_sub(1)..=f + 2)
        .filter(|&d| j.admits(k, d))
        .min_by(|&a, &b| (a as f64 - t).abs().total_cmp(&(b as f64 - t).abs()).then(a.cmp(&b)))
        .expect("two consecutive distances include an admissible one")
}

/// `log |ψ_j|` at the non-integer distance `t`, interpolated linearly between
/// the admissible distances on either side.
pub fn interpolated_log_psi(layer: &FloatLayer, j: Orientation, t: f64) -> f64 {
    let mut lo = t.floor() as usize;
    if !j.admits(layer.k(), lo) {
        lo = lo.saturating_sub(1);
    }
    let w = (t - lo as f64) / 2.0;
    let a = layer.psi(lo, j).abs().ln();
    let b = layer.psi(lo + 2, j).abs().ln();
    (1.0 - w) * a + w * b
}

fn from_samples(samples: Vec<(usize, f64)>) -> Ladder {
    let (ks, values) = samples.into_iter().unzip();
    Ladder { ks, values }
}

/// `|ψ_j(k, d)|` at the admissible `d` nearest to `γ k`.
pub fn ray_ladder(j: Orientation, gamma: f64, k_lo: usize, k_hi: usize) -> Ladder {
    from_samples(sample_layers(k_lo, k_hi, |l| {
        l.psi(nearest_admissible(j, l.k(), gamma * l.k() as f64), j).abs()
    }))
}

/// `|ψ_j|` at exactly `d = γ k`, log-interpolated between admissible distances.
pub fn interpolated_ladder(j: Orientation, gamma: f64, k_lo: usize, k_hi: usize) -> Ladder {
    from_samples(sample_layers(k_lo, k_hi, |l| {
        interpolated_log_psi(l, j, gamma * l.k() as f64).exp()
    }))
}

/// `|ψ_j(k, 0)|`, and the same with the localized component removed.
pub fn return_ladders(j: Orientation, k_lo: usize, k_hi: usize) -> (Ladder, Ladder) {
    let samples = sample_layers(k_lo, k_hi, |l| {
        let v = l.psi(0, j);
        (v.abs(), (v - localized_component(j, l.k(), 0)).abs())
    });
    let full = samples.iter().map(|(k, (a, _))| (*k, *a)).collect();
    let disp = samples.iter().map(|(k, (_, b))| (*k, *b)).collect();
    (from_samples(full), from_samples(disp))
}

fn strictly_decreasing(env: &[(usize, f64)]) -> bool {
    env.windows(2).all(|w| w[1].1 < w[0].1)
}

fn band_stats(details: &mut BTreeMap<String, f64>, ladder: &Ladder) {
    let env = ladder.envelope();
    let min = env.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
    let max = ladder.values.iter().copied().fold(0.0, f64::max);
    details.insert("scaled_envelope_min".into(), min);
    details.insert("scaled_max".into(), max);
}

/// Classifies `(k, d)` and attaches the diagnostics of its regime, computed
/// on a ladder of times around `k` at fixed `γ = d/k`.
pub fn regime_report(j: Orientation, k: usize, d: usize) -> Result<RegimeReport, AsymptoticError> {
    if k < 8 {
        return Err(AsymptoticError::InvalidArgument(format!("k={k} must be at least 8")));
    }
    if d > k + 1 {
        return Err(AsymptoticError::InvalidArgument(format!("d={d} exceeds k+1={}", k + 1)));
    }
    let gamma = d as f64 / k as f64;
    let regime = Regime::classify(k, d);
    let mut details = BTreeMap::new();
    let psi = psi_quadrature(j, k, d, RadiusPolicy::Interior)?;
    details.insert("psi_re".into(), psi.re);
    details.insert("psi_abs".into(), psi.norm());
    let decay_estimate = match regime {
        Regime::Supersonic => {
            let ladder = interpolated_ladder(j, gamma, (k / 4).max(8), k);
            let env = ladder.envelope();
            details.insert("envelope_strictly_decreasing".into(), f64::from(u8::from(strictly_decreasing(&env))));
            details.insert("ladder_k_min".into(), ladder.ks[0] as f64);
            exponential_rate(&env)
        }
        Regime::Bulk => {
            let ladder = ray_ladder(j, gamma, k / 2, 5 * k);
            band_stats(&mut details, &ladder.scaled(0.5));
            if let Ok(sp) = stationary_phase_estimate(j, k, d) {
                details.insert("stationary_phase_abs".into(), sp.norm());
                if psi.norm() > 1e-12 {
                    details.insert("stationary_phase_relative_error".into(), (sp - psi).norm() / psi.norm());
                }
            }
            power_slope(&ladder.envelope())
        }
        Regime::Transition => {
            let delta = gamma - EFFECTIVE_SPEED;
            let zeta = 2.0 * RADIUS / AIRY_RHO * delta;
            let scale = k as f64 * AIRY_RHO;
            let arg = scale.powf(2.0 / 3.0) * zeta;
            details.insert("rho".into(), AIRY_RHO);
            details.insert("delta".into(), delta);
            details.insert("zeta".into(), zeta);
            details.insert("tau".into(), 0.0);
            details.insert("airy_argument".into(), arg);
            details.insert("airy_value".into(), airy_ai(arg));
            details.insert("airy_scale".into(), scale.powf(-1.0 / 3.0));
            let ladder = ray_ladder(j, gamma, k / 4, 5 * k);
            band_stats(&mut details, &ladder.scaled(1.0 / 3.0));
            power_slope(&ladder.envelope())
        }
        Regime::Return => {
            let (full, disp) = return_ladders(j, k / 2, 5 * k);
            details.insert("localized_amplitude".into(), localized_component(j, k, 0));
            if let Some(s) = power_slope(&disp.envelope()) {
                details.insert("dispersive_slope".into(), s);
            }
            power_slope(&full.envelope())
        }
    };
    details.insert("stationary_band_margin".into(), BAND_MARGIN);
    Ok(RegimeReport {
        gamma,
        regime,
        critical_thetas: critical_points(gamma).thetas,
        decay_estimate,
        details,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(Regime::classify(400, 0), Regime::Return);
        assert_eq!(Regime::classify(400, 392), Regime::Supersonic);
        assert_eq!(Regime::classify(400, 377), Regime::Transition);
        assert_eq!(Regime::classify(400, 200), Regime::Bulk);
    }

    #[test]
    fn admissible_distances() {
        assert_eq!(nearest_admissible(Orientation::Onward, 100, 50.0), 50);
        assert_eq!(nearest_admissible(Orientation::Facing, 100, 50.0), 49);
        assert_eq!(nearest_admissible(Orientation::Facing, 100, 50.6), 51);
        assert_eq!(nearest_admissible(Orientation::Facing, 100, 0.0), 1);
    }

    #[test]
    fn supersonic_report_decays() {
        let r = regime_report(Orientation::Onward, 200, 196).unwrap();
        assert_eq!(r.regime, Regime::Supersonic);
        assert!(r.critical_thetas.is_empty());
        assert!(r.decay_estimate.unwrap() > 0.001);
    }

    #[test]
    fn bulk_report_has_four_critical_points() {
        let r = regime_report(Orientation::Facing, 100, 51).unwrap();
        assert_eq!(r.regime, Regime::Bulk);
        assert_eq!(r.critical_thetas.len(), 4);
        assert!(r.details["scaled_max"] < 10.0);
        let slope = r.decay_estimate.unwrap();
        assert!((slope + 0.5).abs() < 0.2, "{slope}");
    }

    #[test]
    fn transition_report_carries_airy_parameters() {
        let r = regime_report(Orientation::Onward, 100, 94).unwrap();
        assert_eq!(r.regime, Regime::Transition);
        assert_eq!(r.details["rho"], 0.0625);
        assert!(r.details.contains_key("airy_argument"));
    }

    #[test]
    fn argument_checks() {
        assert!(regime_report(Orientation::Onward, 4, 0).is_err());
        assert!(regime_report(Orientation::Onward, 10, 12).is_err());
    }
}

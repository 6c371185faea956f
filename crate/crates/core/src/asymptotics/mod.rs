//! Large-time behaviour of `ψ_j(k, d) = (√2)^d G_j(k, d)`.
//!
//! By Cauchy's formula `ψ_j(k, d)` is the `k`-th Taylor coefficient of
//! `g_j(x) z₋(μ(x))^d` rescaled to the circle `|x| = r`. On that circle
//! `z₋ = e^{iφ(θ)}` for an explicit phase `φ`, so `ψ` is an oscillatory
//! integral with phase `d φ(θ) - k θ`. Its stationary points exist only for
//! `d/k ≤ c* = 2r`, which makes `c*` the effective speed of propagation.

use thiserror::Error;

pub mod airy;
pub mod critical;
pub mod energy;
pub mod envelope;
pub mod phase;
pub mod quadrature;
pub mod regime;
pub mod stationary;

pub use airy::airy_ai;
pub use critical::{critical_points, CriticalPoints};
pub use energy::{energy_profile, EnergyProfile, Profile};
pub use phase::{phase_eval, PhaseSample};
pub use quadrature::{localized_component, psi_cross_checked, psi_quadrature, RadiusPolicy};
pub use regime::{regime_report, Regime, RegimeReport};
pub use stationary::stationary_phase_estimate;

/// `θ₀ = arccos(2r)`: the phase is real exactly on `[θ₀, π-θ₀] ∪ [π+θ₀, 2π-θ₀]`.
pub const BRANCH_ANGLE: f64 = 0.339_836_909_454_121_65;

/// `ρ = (1/(4r²) - 1)/2 = 1/16`, the curvature scale of the Airy transition.
pub const AIRY_RHO: f64 = 0.0625;

/// Half-width of the band `|d/k - c*|` reported as the Airy transition.
pub const TRANSITION_BAND: f64 = 0.02;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticError {
    #[error("quadrature did not converge: {0}")]
    NonConvergent(String),
    #[error("d/k = {gamma} is outside the stationary-phase band ({lo}, {hi})")]
    OutOfRegime { gamma: f64, lo: f64, hi: f64 },
    #[error("{mode} energy profile supports k ≤ {limit}, got {k}")]
    KTooLarge { k: usize, limit: usize, mode: &'static str },
    #[error("energy is not conserved at k={0}")]
    EnergyNotConserved(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

//! Green function of the wave operator on the 2-regular Bethe lattice.
//!
//! A unit Dirac pulse travelling along a fixed oriented edge splits at every
//! node into a reflected part (coefficient -1/3) and two transmitted parts
//! (coefficient 2/3). At integer times the wave is a finite sum of Dirac masses
//! sitting on the edge midpoints, so the dynamics is the power of a unitary
//! matrix on oriented edges. The amplitude on an oriented edge depends only on
//! the distance `d` between midpoints and on one of four relative orientations.
//!
//! The crate computes these coefficients `G_j(k, d)` by three independent exact
//! routes and studies their large-time behaviour:
//!
//! * [`lattice`]: direct simulation on an addressed tree.
//! * [`combinatorics`]: signed path counts and a weighted recurrence.
//! * [`series`]: truncated bivariate generating functions and closed forms.
//! * [`asymptotics`]: phase function, contour quadrature, stationary phase,
//!   Airy transition, energy profiles and regime diagnostics.
//! * [`verify`]: the cross-oracle and invariant checks behind `bethe-green verify`.

pub mod asymptotics;
pub mod combinatorics;
pub mod green;
pub mod lattice;
pub mod series;
pub mod verify;

pub use green::{FloatLayer, GreenTable, Orientation, ScaledRational};

/// Radius of convergence `r = √2/3` of the generating functions in the scaled variable.
pub const RADIUS: f64 = std::f64::consts::SQRT_2 / 3.0;

/// Effective speed of energy propagation `c* = 2r = 2√2/3`.
pub const EFFECTIVE_SPEED: f64 = 2.0 * RADIUS;

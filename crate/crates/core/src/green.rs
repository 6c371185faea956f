//! Tables of Green coefficients `G_j(k, d)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Relative orientation of a pair of oriented edges `(A, B)` with respect to the
/// geodesic joining their midpoints.
///
/// | type | `A` points | `B` points |
/// |------|-----------|-----------|
/// | 1 `Onward`   | toward `m(B)` | away from `m(A)` |
/// | 2 `Facing`   | toward `m(B)` | toward `m(A)` |
/// | 3 `Backward` | away from `m(B)` | toward `m(A)` |
/// | 4 `Apart`    | away from `m(B)` | away from `m(A)` |
///
/// At distance zero, `B = A` is counted both as type 1 and type 3 and
/// `B = -A` both as type 2 and type 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Onward,
    Facing,
    Backward,
    Apart,
}

impl Orientation {
    pub const ALL: [Orientation; 4] = [
        Orientation::Onward,
        Orientation::Facing,
        Orientation::Backward,
        Orientation::Apart,
    ];

    /// The conventional label `j ∈ {1, 2, 3, 4}`.
    pub fn index(self) -> usize {
        self.slot() + 1
    }

    pub fn from_index(j: usize) -> Option<Self> {
        match j {
            1 => Some(Orientation::Onward),
            2 => Some(Orientation::Facing),
            3 => Some(Orientation::Backward),
            4 => Some(Orientation::Apart),
            _ => None,
        }
    }

    /// Zero-based position, used to index `[T; 4]` rows.
    pub fn slot(self) -> usize {
        match self {
            Orientation::Onward => 0,
            Orientation::Facing => 1,
            Orientation::Backward => 2,
            Orientation::Apart => 3,
        }
    }

    /// Type obtained when the second edge of the pair is reversed.
    pub fn with_target_reversed(self) -> Self {
        match self {
            Orientation::Onward => Orientation::Facing,
            Orientation::Facing => Orientation::Onward,
            Orientation::Backward => Orientation::Apart,
            Orientation::Apart => Orientation::Backward,
        }
    }

    /// Parity of `k + d` for which `G_j(k, d)` can be nonzero: types 1 and 3
    /// need `k + d` even, types 2 and 4 need it odd.
    pub fn parity(self) -> usize {
        match self {
            Orientation::Onward | Orientation::Backward => 0,
            Orientation::Facing | Orientation::Apart => 1,
        }
    }

    /// Whether `G_j(k, d)` is allowed to be nonzero by parity.
    pub fn admits(self, k: usize, d: usize) -> bool {
        (k + d) % 2 == self.parity()
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A rational multiplied by a power of `√2`: `value · (√2)^sqrt2_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRational {
    pub value: BigRational,
    pub sqrt2_power: u32,
}

impl ScaledRational {
    /// The square, which is always rational.
    pub fn square(&self) -> BigRational {
        let two_pow = BigRational::from_integer(BigInt::one() << self.sqrt2_power as usize);
        &self.value * &self.value * two_pow
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.value) * std::f64::consts::SQRT_2.powi(self.sqrt2_power as i32)
    }
}

/// Exact Green coefficients at one time `k`, stored for `d ∈ [0, width)`.
///
/// Entries beyond the stored width are zero. Tables produced by the weighted
/// recurrence keep a width larger than `k + 1` so that the finite-speed
/// property is observable rather than built into the layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenTable {
    k: usize,
    values: Vec<[BigRational; 4]>,
}

impl GreenTable {
    pub fn zeros(k: usize, width: usize) -> Self {
        let row = || std::array::from_fn(|_| BigRational::zero());
        Self {
            k,
            values: (0..width).map(|_| row()).collect(),
        }
    }

    pub fn from_rows(k: usize, values: Vec<[BigRational; 4]>) -> Self {
        Self { k, values }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of stored distances.
    pub fn width(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, d: usize, j: Orientation) -> BigRational {
        self.values
            .get(d)
            .map(|row| row[j.slot()].clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn get_ref(&self, d: usize, j: Orientation) -> Option<&BigRational> {
        self.values.get(d).map(|row| &row[j.slot()])
    }

    pub fn set(&mut self, d: usize, j: Orientation, value: BigRational) {
        if d >= self.values.len() {
            let row = || std::array::from_fn(|_| BigRational::zero());
            self.values.resize_with(d + 1, row);
        }
        self.values[d][j.slot()] = value;
    }

    /// `ψ_j(k, d) = (√2)^d G_j(k, d)`.
    pub fn psi(&self, d: usize, j: Orientation) -> ScaledRational {
        ScaledRational {
            value: self.get(d, j),
            sqrt2_power: d as u32,
        }
    }

    pub fn rows(&self) -> &[[BigRational; 4]] {
        &self.values
    }

    /// Copy restricted (or zero-padded) to `d ∈ [0, width)`.
    pub fn with_width(&self, width: usize) -> Self {
        let mut out = Self::zeros(self.k, width);
        for (d, row) in self.values.iter().enumerate().take(width) {
            out.values[d] = row.clone();
        }
        out
    }

    /// Largest stored `d` holding a nonzero entry.
    pub fn support_radius(&self) -> Option<usize> {
        self.values
            .iter()
            .rposition(|row| row.iter().any(|v| !v.is_zero()))
    }

    /// Energy carried at distance `d`, with the distance-zero duplicates
    /// counted once: `E(k, 0) = G_1² + G_2²`, `E(k, d) = 2^d Σ_j G_j²`.
    pub fn energy_at(&self, d: usize) -> BigRational {
        energy_components(self, d).into_iter().sum()
    }

    /// `Σ_d E(k, d)`; equals one for every table of the unitary evolution.
    pub fn total_energy(&self) -> BigRational {
        (0..self.values.len()).map(|d| self.energy_at(d)).sum()
    }
}

/// Per-type energy `E_j(k, d)`; at `d = 0` the types 3 and 4 are reported as
/// zero since they duplicate types 1 and 2.
pub(crate) fn energy_components(table: &GreenTable, d: usize) -> [BigRational; 4] {
    let Some(row) = table.values.get(d) else {
        return std::array::from_fn(|_| BigRational::zero());
    };
    if d == 0 {
        return [
            &row[0] * &row[0],
            &row[1] * &row[1],
            BigRational::zero(),
            BigRational::zero(),
        ];
    }
    let weight = BigRational::from_integer(BigInt::one() << d);
    std::array::from_fn(|s| &row[s] * &row[s] * &weight)
}

/// Floating-point layer of the weighted recurrence, stored as the rescaled
/// amplitudes `ψ_j(k, d) = (√2)^d G_j(k, d)` which stay of order one where
/// `G` itself would underflow.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatLayer {
    pub(crate) k: usize,
    pub(crate) psi: Vec<[f64; 4]>,
}

impl FloatLayer {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn width(&self) -> usize {
        self.psi.len()
    }

    pub fn psi(&self, d: usize, j: Orientation) -> f64 {
        self.psi.get(d).map_or(0.0, |row| row[j.slot()])
    }

    pub fn green(&self, d: usize, j: Orientation) -> f64 {
        self.psi(d, j) * (-0.5 * d as f64 * std::f64::consts::LN_2).exp()
    }

    pub fn rows(&self) -> &[[f64; 4]] {
        &self.psi
    }

    pub fn energy_components(&self, d: usize) -> [f64; 4] {
        let Some(row) = self.psi.get(d) else {
            return [0.0; 4];
        };
        if d == 0 {
            [row[0] * row[0], row[1] * row[1], 0.0, 0.0]
        } else {
            row.map(|p| p * p)
        }
    }

    pub fn energy_at(&self, d: usize) -> f64 {
        self.energy_components(d).iter().sum()
    }

    pub fn total_energy(&self) -> f64 {
        (0..self.psi.len()).map(|d| self.energy_at(d)).sum()
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Numerator and denominator may overflow f64 separately.
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000) as usize;
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let m = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn orientation_labels_round_trip() {
        for j in 1..=4 {
            assert_eq!(Orientation::from_index(j).unwrap().index(), j);
        }
        assert!(Orientation::from_index(0).is_none());
        assert!(Orientation::from_index(5).is_none());
    }

    #[test]
    fn reversing_target_is_an_involution() {
        for o in Orientation::ALL {
            assert_eq!(o.with_target_reversed().with_target_reversed(), o);
            assert_ne!(o.with_target_reversed(), o);
        }
    }

    #[test]
    fn psi_square_is_rational() {
        let s = ScaledRational {
            value: q(2, 3),
            sqrt2_power: 3,
        };
        assert_eq!(s.square(), q(32, 9));
        assert!((s.to_f64() - 2.0 / 3.0 * 2f64.powf(1.5)).abs() < 1e-15);
    }

    #[test]
    fn energy_dedups_distance_zero() {
        let mut t = GreenTable::zeros(1, 3);
        t.set(0, Orientation::Facing, q(-1, 3));
        t.set(0, Orientation::Apart, q(-1, 3));
        t.set(1, Orientation::Onward, q(2, 3));
        assert_eq!(t.energy_at(0), q(1, 9));
        assert_eq!(t.energy_at(1), q(8, 9));
        assert_eq!(t.total_energy(), q(1, 1));
        assert_eq!(t.support_radius(), Some(1));
    }

    #[test]
    fn huge_rationals_convert() {
        let big = BigInt::one() << 3000usize;
        let v = BigRational::new(big.clone() * 3, big * 4);
        assert_eq!(rational_to_f64(&v), 0.75);
    }
}

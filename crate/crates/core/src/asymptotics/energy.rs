//! Energy profiles `E(k, d)`: the share of the unit energy carried at distance `d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::AsymptoticError;
use crate::combinatorics::{float_layer, ExactRecurrence, Mode};
use crate::green::{rational_to_f64, Orientation};

pub const EXACT_LIMIT: usize = 256;
pub const FLOAT_LIMIT: usize = 5000;

/// Per-type energies `E_j(k, d) = 2^d G_j(k, d)²` for `d ∈ [0, k]`. At `d = 0`
/// the duplicated types 3 and 4 are stored as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyProfile<T> {
    pub k: usize,
    pub per_type: Vec<[T; 4]>,
}

impl<T: Clone + std::iter::Sum<T>> EnergyProfile<T> {
    /// `E(k, d)`.
    pub fn total(&self, d: usize) -> T {
        self.per_type[d].iter().cloned().sum()
    }

    pub fn totals(&self) -> Vec<T> {
        (0..self.per_type.len()).map(|d| self.total(d)).collect()
    }

    pub fn sum(&self) -> T {
        self.totals().into_iter().sum()
    }

    pub fn component(&self, d: usize, j: Orientation) -> T {
        self.per_type[d][j.slot()].clone()
    }
}

impl EnergyProfile<f64> {
    /// Distance carrying the most energy.
    pub fn argmax(&self) -> usize {
        self.totals()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map_or(0, |(d, _)| d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Exact(EnergyProfile<BigRational>),
    Float(EnergyProfile<f64>),
}

impl Profile {
    pub fn k(&self) -> usize {
        match self {
            Profile::Exact(p) => p.k,
            Profile::Float(p) => p.k,
        }
    }

    pub fn to_float(&self) -> EnergyProfile<f64> {
        match self {
            Profile::Exact(p) => EnergyProfile {
                k: p.k,
                per_type: p.per_type.iter().map(|row| row.each_ref().map(rational_to_f64)).collect(),
            },
            Profile::Float(p) => p.clone(),
        }
    }
}

/// Energy profile at time `k`. Exact mode checks `Σ_d E(k, d) = 1` as a
/// rational identity.
pub fn energy_profile(k: usize, mode: Mode) -> Result<Profile, AsymptoticError> {
    match mode {
        Mode::Exact => {
            if k > EXACT_LIMIT {
                return Err(AsymptoticError::KTooLarge { k, limit: EXACT_LIMIT, mode: "exact" });
            }
            let layer = ExactRecurrence::new(k).last().expect("at least one layer");
            if !layer.conserves_energy() {
                return Err(AsymptoticError::EnergyNotConserved(k));
            }
            let denom = BigInt::from(9u32).pow(k as u32);
            let per_type = (0..=k)
                .map(|d| {
                    std::array::from_fn(|s| {
                        if d == 0 && s >= 2 {
                            return BigRational::zero();
                        }
                        let h = layer.numerator(d, Orientation::ALL[s]).expect("within width");
                        BigRational::new((h * h) << d, denom.clone())
                    })
                })
                .collect();
            let profile = EnergyProfile { k, per_type };
            if profile.sum() != BigRational::one() {
                return Err(AsymptoticError::EnergyNotConserved(k));
            }
            Ok(Profile::Exact(profile))
        }
        Mode::Float => {
            if k > FLOAT_LIMIT {
                return Err(AsymptoticError::KTooLarge { k, limit: FLOAT_LIMIT, mode: "float" });
            }
            let layer = float_layer(k);
            Ok(Profile::Float(EnergyProfile {
                k,
                per_type: (0..=k).map(|d| layer.energy_components(d)).collect(),
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::EFFECTIVE_SPEED;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn first_profiles() {
        let Profile::Exact(p) = energy_profile(1, Mode::Exact).unwrap() else { panic!() };
        assert_eq!(p.totals(), vec![q(1, 9), q(8, 9)]);
        let Profile::Exact(p) = energy_profile(0, Mode::Exact).unwrap() else { panic!() };
        assert_eq!(p.totals(), vec![q(1, 1)]);
        assert_eq!(p.component(0, Orientation::Onward), q(1, 1));
    }

    #[test]
    fn exact_and_float_agree() {
        let e = energy_profile(60, Mode::Exact).unwrap().to_float();
        let f = energy_profile(60, Mode::Float).unwrap().to_float();
        for d in 0..=60 {
            assert!((e.total(d) - f.total(d)).abs() < 1e-14);
        }
        assert!((f.sum() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(energy_profile(257, Mode::Exact), Err(AsymptoticError::KTooLarge { .. })));
        assert!(matches!(energy_profile(5001, Mode::Float), Err(AsymptoticError::KTooLarge { .. })));
    }

    #[test]
    fn bulk_of_energy_travels_near_effective_speed() {
        let f = energy_profile(300, Mode::Float).unwrap().to_float();
        let near: f64 = (0..=300)
            .filter(|&d| (d as f64 / 300.0 - EFFECTIVE_SPEED).abs() < 0.1)
            .map(|d| f.total(d))
            .sum();
        assert!(near > 0.3, "{near}");
    }
}

//! Signed path counts `Γ_{k,r}(d, j)` and the weighted recurrence for `G_j(k, d)`.
//!
//! A path of length `k` from the base edge picks at each step either the
//! reversed edge (an inversion, weight `α = -1/3`) or one of the two onward
//! edges (weight `β = 2/3`). Grouping paths by the number of inversions `r` and
//! by the class of their final edge gives the counts `Γ`. The counts keep the
//! duplicated convention at distance zero: `Γ(0,1) = Γ(0,3)`, `Γ(0,2) = Γ(0,4)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::green::{FloatLayer, GreenTable, Orientation};

/// Dense table of counts `Γ[k][r][d][j]` for `0 ≤ r, d ≤ k ≤ kmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountTable {
    kmax: usize,
    layers: Vec<Vec<BigUint>>,
}

impl PathCountTable {
    pub fn kmax(&self) -> usize {
        self.kmax
    }

    fn index(k: usize, r: usize, d: usize, j: Orientation) -> usize {
        (r * (k + 1) + d) * 4 + j.slot()
    }

    /// `Γ_{k,r}(d, j)`, zero outside `r ≤ k`, `d ≤ k`, `k ≤ kmax`.
    pub fn get(&self, k: usize, r: usize, d: usize, j: Orientation) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        if k > self.kmax || r > k || d > k {
            return ZERO.get_or_init(BigUint::zero);
        }
        &self.layers[k][Self::index(k, r, d, j)]
    }

    /// Nonzero entries as `(k, r, d, j, count)` in ascending order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, Orientation, &BigUint)> {
        (0..=self.kmax).flat_map(move |k| {
            (0..=k).flat_map(move |r| {
                (0..=k).flat_map(move |d| {
                    Orientation::ALL.into_iter().filter_map(move |j| {
                        let c = self.get(k, r, d, j);
                        (!c.is_zero()).then_some((k, r, d, j, c))
                    })
                })
            })
        })
    }

    /// `Σ_{r,j,d≥1} 2^d Γ + Σ_r (Γ(0,1) + Γ(0,2))`: the number of paths of length `k`.
    pub fn total_paths(&self, k: usize) -> BigUint {
        let mut total = BigUint::zero();
        for r in 0..=k {
            total += self.get(k, r, 0, Orientation::Onward);
            total += self.get(k, r, 0, Orientation::Facing);
            for d in 1..=k {
                for j in Orientation::ALL {
                    total += self.get(k, r, d, j) << d;
                }
            }
        }
        total
    }
}

/// Fills the count table by the inversion-counting recurrences.
pub fn build_gamma(kmax: usize) -> PathCountTable {
    use Orientation::*;
    let mut layers: Vec<Vec<BigUint>> = Vec::with_capacity(kmax + 1);
    let mut first = vec![BigUint::zero(); 4];
    first[PathCountTable::index(0, 0, 0, Onward)] = BigUint::one();
    first[PathCountTable::index(0, 0, 0, Backward)] = BigUint::one();
    layers.push(first);

    for k in 1..=kmax {
        let prev = &layers[k - 1];
        let zero = BigUint::zero();
        // Entry of layer k-1; `r` is offset by one so that `r - 1` may be -1.
        let p = |r1: usize, d: usize, j: Orientation| -> &BigUint {
            if r1 == 0 || r1 - 1 > k - 1 || d > k - 1 {
                &zero
            } else {
                &prev[PathCountTable::index(k - 1, r1 - 1, d, j)]
            }
        };
        let mut layer = vec![BigUint::zero(); (k + 1) * (k + 1) * 4];
        for r in 0..=k {
            let (inv, keep) = (r, r + 1);
            for d in 0..=k {
                let vals: [BigUint; 4] = if d == 0 {
                    [
                        p(inv, 0, Facing) + (p(keep, 1, Backward) << 1),
                        p(inv, 0, Onward) + (p(keep, 1, Facing) << 1),
                        p(inv, 0, Apart) + (p(keep, 1, Backward) << 1),
                        p(inv, 0, Backward) + (p(keep, 1, Facing) << 1),
                    ]
                } else {
                    [
                        p(inv, d, Facing) + p(keep, d - 1, Onward) + p(keep, d, Facing),
                        p(inv, d, Onward) + (p(keep, d + 1, Facing) << 1),
                        p(inv, d, Apart) + (p(keep, d + 1, Backward) << 1),
                        p(inv, d, Backward) + p(keep, d - 1, Apart) + p(keep, d, Backward),
                    ]
                };
                for (j, v) in Orientation::ALL.into_iter().zip(vals) {
                    layer[PathCountTable::index(k, r, d, j)] = v;
                }
            }
        }
        layers.push(layer);
    }
    PathCountTable { kmax, layers }
}

/// `G_j(k, d) = Σ_r α^r β^{k-r} Γ_{k,r}(d, j) = 3^{-k} Σ_r (-1)^r 2^{k-r} Γ_{k,r}(d, j)`.
///
/// # Panics
/// If `k > table.kmax()`.
pub fn green_from_counts(table: &PathCountTable, k: usize) -> GreenTable {
    assert!(k <= table.kmax(), "k={k} exceeds table kmax={}", table.kmax());
    let denom = BigInt::from(3u32).pow(k as u32);
    let mut out = GreenTable::zeros(k, k + 1);
    for d in 0..=k {
        for j in Orientation::ALL {
            let mut num = BigInt::zero();
            for r in 0..=k {
                let term = BigInt::from(table.get(k, r, d, j).clone()) << (k - r);
                if r % 2 == 0 {
                    num += term;
                } else {
                    num -= term;
                }
            }
            out.set(d, j, BigRational::new(num, denom.clone()));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// One layer of the exact weighted recurrence, held as the integers
/// `H_j(k, d) = 3^k G_j(k, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledLayer {
    k: usize,
    h: Vec<[BigInt; 4]>,
}

impl ScaledLayer {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn width(&self) -> usize {
        self.h.len()
    }

    /// `3^k G_j(k, d)`.
    pub fn numerator(&self, d: usize, j: Orientation) -> Option<&BigInt> {
        self.h.get(d).map(|row| &row[j.slot()])
    }

    pub fn to_table(&self) -> GreenTable {
        let denom = BigInt::from(3u32).pow(self.k as u32);
        let rows = self
            .h
            .iter()
            .map(|row| std::array::from_fn(|s| BigRational::new(row[s].clone(), denom.clone())))
            .collect();
        GreenTable::from_rows(self.k, rows)
    }

    /// `Σ_{d≥1,j} 2^d H² + H_1(0)² + H_2(0)²`, which equals `9^k` when energy is conserved.
    pub fn weighted_square_sum(&self) -> BigInt {
        let mut total = BigInt::zero();
        for (d, row) in self.h.iter().enumerate() {
            if d == 0 {
                total += &row[0] * &row[0] + &row[1] * &row[1];
            } else {
                for v in row {
                    total += (v * v) << d;
                }
            }
        }
        total
    }

    pub fn conserves_energy(&self) -> bool {
        self.weighted_square_sum() == BigInt::from(9u32).pow(self.k as u32)
    }
}

/// Exact weighted recurrence. Each step multiplies by 3 so that every entry
/// stays an integer: the inversion terms carry `-1` and the others `2`.
#[derive(Debug, Clone)]
pub struct ExactRecurrence {
    next: Option<ScaledLayer>,
    kmax: usize,
}

impl ExactRecurrence {
    /// Layers `k = 0..=kmax`, each stored on `d ∈ [0, kmax + 2)`.
    pub fn new(kmax: usize) -> Self {
        let mut h = vec![std::array::from_fn(|_| BigInt::zero()); kmax + 2];
        h[0][Orientation::Onward.slot()] = BigInt::one();
        h[0][Orientation::Backward.slot()] = BigInt::one();
        Self {
            next: Some(ScaledLayer { k: 0, h }),
            kmax,
        }
    }

    fn advance(prev: &ScaledLayer) -> ScaledLayer {
        let w = prev.h.len();
        let zero = BigInt::zero();
        let at = |d: usize, s: usize| prev.h.get(d).map_or(&zero, |row| &row[s]);
        let mut h = Vec::with_capacity(w);
        for d in 0..w {
            let row: [BigInt; 4] = if d == 0 {
                [
                    -at(0, 1) + (at(1, 2) << 2),
                    -at(0, 0) + (at(1, 1) << 2),
                    -at(0, 3) + (at(1, 2) << 2),
                    -at(0, 2) + (at(1, 1) << 2),
                ]
            } else {
                [
                    -at(d, 1) + ((at(d - 1, 0) + at(d, 1)) << 1),
                    -at(d, 0) + (at(d + 1, 1) << 2),
                    -at(d, 3) + (at(d + 1, 2) << 2),
                    -at(d, 2) + ((at(d - 1, 3) + at(d, 2)) << 1),
                ]
            };
            h.push(row);
        }
        ScaledLayer { k: prev.k + 1, h }
    }
}

impl Iterator for ExactRecurrence {
    type Item = ScaledLayer;

    fn next(&mut self) -> Option<ScaledLayer> {
        let cur = self.next.take()?;
        if cur.k < self.kmax {
            self.next = Some(Self::advance(&cur));
        }
        Some(cur)
    }
}

/// Double-precision weighted recurrence on `ψ_j(k, d) = (√2)^d G_j(k, d)`.
#[derive(Debug, Clone)]
pub struct FloatRecurrence {
    next: Option<FloatLayer>,
    kmax: usize,
}

impl FloatRecurrence {
    /// Layers `k = 0..=kmax`, each stored on `d ∈ [0, kmax + 2)`.
    pub fn new(kmax: usize) -> Self {
        Self::with_width(kmax, kmax + 2)
    }

    pub fn with_width(kmax: usize, width: usize) -> Self {
        let mut psi = vec![[0.0; 4]; width.max(2)];
        psi[0] = [1.0, 0.0, 1.0, 0.0];
        Self {
            next: Some(FloatLayer { k: 0, psi }),
            kmax,
        }
    }

    fn advance(prev: &FloatLayer) -> FloatLayer {
        const A: f64 = -1.0 / 3.0;
        const B: f64 = 2.0 / 3.0;
        let s = std::f64::consts::SQRT_2 * B;
        let p = &prev.psi;
        let w = p.len();
        let at = |d: usize, j: usize| p.get(d).map_or(0.0, |row| row[j]);
        let mut psi = vec![[0.0; 4]; w];
        psi[0] = [
            A * p[0][1] + s * at(1, 2),
            A * p[0][0] + s * at(1, 1),
            A * p[0][3] + s * at(1, 2),
            A * p[0][2] + s * at(1, 1),
        ];
        for d in 1..w {
            psi[d] = [
                A * p[d][1] + s * p[d - 1][0] + B * p[d][1],
                A * p[d][0] + s * at(d + 1, 1),
                A * p[d][3] + s * at(d + 1, 2),
                A * p[d][2] + s * p[d - 1][3] + B * p[d][2],
            ];
        }
        FloatLayer { k: prev.k + 1, psi }
    }
}

impl Iterator for FloatRecurrence {
    type Item = FloatLayer;

    fn next(&mut self) -> Option<FloatLayer> {
        let cur = self.next.take()?;
        if cur.k < self.kmax {
            self.next = Some(Self::advance(&cur));
        }
        Some(cur)
    }
}

#[derive(Debug, Clone)]
pub enum WeightedTables {
    Exact(Vec<GreenTable>),
    Float(Vec<FloatLayer>),
}

/// All layers `k = 0..=kmax` of the weighted recurrence. For large `kmax` in
/// float mode prefer streaming through [`FloatRecurrence`].
pub fn green_weighted_recurrence(kmax: usize, mode: Mode) -> WeightedTables {
    match mode {
        Mode::Exact => WeightedTables::Exact(ExactRecurrence::new(kmax).map(|l| l.to_table()).collect()),
        Mode::Float => WeightedTables::Float(FloatRecurrence::new(kmax).collect()),
    }
}

/// The float layer at time `k` alone.
pub fn float_layer(k: usize) -> FloatLayer {
    FloatRecurrence::new(k).last().expect("at least one layer")
}

//! Generating functions of the Green coefficients.
//!
//! With `F_j(X, Z) = Σ_{k,d} (3/2)^k G_j(k, d) X^k Z^d`, the path-count
//! recurrences become a linear system involving the operator
//! `Θ(F) = F - (2X/Z)(F - F|_{Z=0})`. The system has rational coefficients in
//! the variables `X, Z`, so it is solved here exactly as truncated power
//! series. The same functions in the rescaled variables `x = X/√2`,
//! `z = Z/√2` have closed forms built from the root `z₋(μ)` of
//! `z² - z/μ + 1 = 0` inside the unit disc; those are evaluated in floating
//! point.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::green::{rational_to_f64, Orientation};
use crate::RADIUS;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("coefficient (k={k}, d={d}) lies beyond truncation order {order}")]
    TruncationExceeded { k: usize, d: usize, order: usize },
    #[error("|x| = {0} is not inside the disc of radius √2/3")]
    OutsideDomain(f64),
    #[error("x = {0} is a branch point of z₋(μ(x))")]
    BranchPoint(Complex64),
}

/// Truncated power series `Σ c_{a,b} X^a Z^b` with `a, b ≤ order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![BigRational::zero(); (order + 1) * (order + 1)],
        }
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        Self::monomial(order, 0, 0, c)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    /// `c X^a Z^b`, or zero if the monomial is truncated away.
    pub fn monomial(order: usize, a: usize, b: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        if a <= order && b <= order {
            s.coeffs[a * (order + 1) + b] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn idx(&self, a: usize, b: usize) -> usize {
        a * (self.order + 1) + b
    }

    /// Coefficient of `X^a Z^b`, zero beyond the truncation.
    pub fn coeff(&self, a: usize, b: usize) -> BigRational {
        self.coeff_ref(a, b).cloned().unwrap_or_else(BigRational::zero)
    }

    fn coeff_ref(&self, a: usize, b: usize) -> Option<&BigRational> {
        (a <= self.order && b <= self.order).then(|| &self.coeffs[self.idx(a, b)])
    }

    pub fn set(&mut self, a: usize, b: usize, c: BigRational) {
        let i = self.idx(a, b);
        self.coeffs[i] = c;
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order, other.order, "series orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other);
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let n = self.order;
        let mut out = Self::zero(n);
        for a1 in 0..=n {
            for b1 in 0..=n {
                let c1 = &self.coeffs[self.idx(a1, b1)];
                if c1.is_zero() {
                    continue;
                }
                for a2 in 0..=n - a1 {
                    for b2 in 0..=n - b1 {
                        let c2 = &other.coeffs[other.idx(a2, b2)];
                        if !c2.is_zero() {
                            let i = out.idx(a1 + a2, b1 + b2);
                            out.coeffs[i] += c1 * c2;
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplication by `X^da Z^db`.
    pub fn shift(&self, da: usize, db: usize) -> Self {
        let n = self.order;
        let mut out = Self::zero(n);
        for a in da..=n {
            for b in db..=n {
                let i = out.idx(a, b);
                out.coeffs[i] = self.coeffs[self.idx(a - da, b - db)].clone();
            }
        }
        out
    }

    /// `F|_{Z=0}` as a series.
    pub fn at_z0(&self) -> Self {
        let mut out = Self::zero(self.order);
        for a in 0..=self.order {
            out.set(a, 0, self.coeff(a, 0));
        }
        out
    }

    /// `∂_Z F |_{Z=0}` as a series.
    pub fn dz_at_z0(&self) -> Self {
        let mut out = Self::zero(self.order);
        for a in 0..=self.order {
            out.set(a, 0, self.coeff(a, 1));
        }
        out
    }

    /// `Θ(F) = F - (2X/Z)(F - F|_{Z=0})`.
    pub fn theta(&self) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        let mut out = self.clone();
        for a in 1..=self.order {
            for b in 0..self.order {
                let i = out.idx(a, b);
                out.coeffs[i] -= &two * &self.coeffs[self.idx(a - 1, b + 1)];
            }
        }
        out
    }

    /// The unique `F` with `Θ(F) = self`; its `Z^n` coefficient is
    /// `Σ_{p≥0} (2X)^p G_{n+p}`.
    pub fn theta_inverse(&self) -> Self {
        let n = self.order;
        let two = BigRational::from_integer(BigInt::from(2));
        let mut out = self.clone();
        for a in 1..=n {
            for b in (0..n).rev() {
                let carry = &two * &out.coeffs[out.idx(a - 1, b + 1)];
                let i = out.idx(a, b);
                out.coeffs[i] += carry;
            }
        }
        out
    }

    /// Evaluates the truncated series at complex `(X, Z)`.
    pub fn eval(&self, x: Complex64, z: Complex64) -> Complex64 {
        let mut total = Complex64::zero();
        let mut xa = Complex64::one();
        for a in 0..=self.order {
            let mut inner = Complex64::zero();
            for b in (0..=self.order).rev() {
                inner = inner * z + rational_to_f64(&self.coeffs[self.idx(a, b)]);
            }
            total += inner * xa;
            xa *= x;
        }
        total
    }

    /// Evaluates in the rescaled variables: `F(√2 x, √2 z)`.
    pub fn eval_scaled(&self, x: Complex64, z: Complex64) -> Complex64 {
        let s = std::f64::consts::SQRT_2;
        self.eval(x * s, z * s)
    }
}

/// The four generating functions, solved to a common truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSystem {
    order: usize,
    f: [BivariateSeries; 4],
}

impl GeneratingSystem {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn series(&self, j: Orientation) -> &BivariateSeries {
        &self.f[j.slot()]
    }

    /// `F̃_j(x, z) = F_j(√2 x, √2 z)` from the truncated series.
    pub fn eval_scaled(&self, j: Orientation, x: Complex64, z: Complex64) -> Complex64 {
        self.f[j.slot()].eval_scaled(x, z)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Solves the generating-function system to order `order` in `X`.
///
/// `F_1` and `F_4` solve the coupled fixed point
/// `F_1 = 1 + N(F_1) + Q(F_4)`, `F_4 = -X/2 + N(F_4) + Q(F_1)` with
/// `N(F) = XZ F - (X²/4) Θ⁻¹F + (X²/2) Θ⁻¹(F)|_{Z=0}` and
/// `Q(F) = -X² ∂_Z Θ⁻¹(F)|_{Z=0}`. Both operators raise the `X`-degree, so
/// `order + 1` sweeps reach the exact truncated solution. Then
/// `F_2 = -(X/2) Θ⁻¹(F_1)` and `F_3 = 1 - (X/2) Θ⁻¹(F_4)`.
pub fn solve_generating_system(order: usize) -> GeneratingSystem {
    let n = order;
    let quarter = rat(1, 4);
    let half = rat(1, 2);
    let minus_half = rat(-1, 2);

    let nop = |f: &BivariateSeries| -> BivariateSeries {
        let ti = f.theta_inverse();
        f.shift(1, 1)
            .sub(&ti.shift(2, 0).scale(&quarter))
            .add(&ti.at_z0().shift(2, 0).scale(&half))
    };
    let qop = |f: &BivariateSeries| -> BivariateSeries {
        f.theta_inverse().dz_at_z0().shift(2, 0).scale(&rat(-1, 1))
    };

    let one = BivariateSeries::one(n);
    let minus_x_half = BivariateSeries::monomial(n, 1, 0, minus_half.clone());
    let mut f1 = one.clone();
    let mut f4 = minus_x_half.clone();
    for _ in 0..=n {
        let n1 = one.add(&nop(&f1)).add(&qop(&f4));
        let n4 = minus_x_half.add(&nop(&f4)).add(&qop(&f1));
        f1 = n1;
        f4 = n4;
    }
    let f2 = f1.theta_inverse().shift(1, 0).scale(&minus_half);
    let f3 = one.add(&f4.theta_inverse().shift(1, 0).scale(&minus_half));
    GeneratingSystem { order, f: [f1, f2, f3, f4] }
}

/// `G_j(k, d) = (2/3)^k [X^k Z^d] F_j`.
pub fn green_from_series(
    system: &GeneratingSystem,
    k: usize,
    d: usize,
    j: Orientation,
) -> Result<BigRational, SeriesError> {
    if k > system.order || d > system.order {
        return Err(SeriesError::TruncationExceeded {
            k,
            d,
            order: system.order,
        });
    }
    let scale = BigRational::new(BigInt::from(2).pow(k as u32), BigInt::from(3).pow(k as u32));
    Ok(system.series(j).coeff(k, d) * scale)
}

/// `μ(x) = 2x / (1 + x²/r²)`.
pub fn mu_of(x: Complex64) -> Complex64 {
    2.0 * x / (1.0 + x * x / (RADIUS * RADIUS))
}

/// Root of `z² - z/μ + 1 = 0` with `|z| < 1`, via the principal square root.
pub fn zminus(mu: Complex64) -> Complex64 {
    zminus_over_mu(mu) * mu
}

/// `z₋(μ)/μ`, regular at `μ = 0`.
fn zminus_over_mu(mu: Complex64) -> Complex64 {
    let m2 = mu * mu;
    if mu.norm() < 1e-4 {
        1.0 + m2 * (1.0 + m2 * (2.0 + 5.0 * m2))
    } else {
        2.0 / (1.0 + (1.0 - 4.0 * m2).sqrt())
    }
}

/// The four points `±r e^{±iθ₀}` where `1 - 4μ²` vanishes.
pub fn branch_points() -> [Complex64; 4] {
    let t0 = crate::asymptotics::BRANCH_ANGLE;
    [t0, -t0, std::f64::consts::PI - t0, std::f64::consts::PI + t0].map(|t| Complex64::from_polar(RADIUS, t))
}

/// Closed forms at one point of the disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormPoint {
    pub x: Complex64,
    pub mu: Complex64,
    pub zminus: Complex64,
    pub g: [Complex64; 4],
    pub a_coef: Complex64,
    pub b_coef: Complex64,
}

impl ClosedFormPoint {
    pub fn g(&self, j: Orientation) -> Complex64 {
        self.g[j.slot()]
    }

    /// `F̃_j(x, z) = g_j(x) / (1 - z z₋) (+1 for type 3)`.
    pub fn ftilde(&self, j: Orientation, z: Complex64) -> Complex64 {
        let base = self.g(j) / (1.0 - z * self.zminus);
        if j == Orientation::Backward {
            base + 1.0
        } else {
            base
        }
    }
}

/// `(1 - (5/2) x z)² - (x²/2) z⁴`, the common denominator of the `g_j`.
pub fn denominator(x: Complex64, z: Complex64) -> Complex64 {
    let u = 1.0 - 2.5 * x * z;
    u * u - x * x * 0.5 * z.powi(4)
}

/// `g_1..g_4` at `x` given `z = z₋(μ(x))` and `q = z/(2x)`.
fn g_with_ratio(x: Complex64, z: Complex64, q: Complex64) -> [Complex64; 4] {
    let den = denominator(x, z);
    let u = 1.0 - 2.5 * x * z;
    let n1 = u + x * x * 0.5 * z * z;
    let n2 = u + z * z;
    let s = 2.0 * std::f64::consts::SQRT_2;
    let onward = 1.0 - 2.0 * x * z;
    [
        q * onward * n1 / den,
        -z / s * n1 / den,
        x * z / 4.0 * n2 / den,
        -z / s * onward * n2 / den,
    ]
}

/// `g_1..g_4` at a nonzero `x` for a given value of the root `z`; used on the
/// boundary circle where `z` comes from the phase function.
pub fn g_from(x: Complex64, z: Complex64) -> [Complex64; 4] {
    g_with_ratio(x, z, z / (2.0 * x))
}

/// `g_1..g_4` on the open disc, without domain checks.
pub(crate) fn g_interior(x: Complex64) -> ([Complex64; 4], Complex64) {
    let mu = mu_of(x);
    let ratio = zminus_over_mu(mu);
    let z = ratio * mu;
    let q = ratio / (1.0 + x * x / (RADIUS * RADIUS));
    (g_with_ratio(x, z, q), z)
}

/// Evaluates `μ`, `z₋`, `g_j`, `A` and `B` at `x` with `|x| < r`.
pub fn eval_closed_forms(x: Complex64) -> Result<ClosedFormPoint, SeriesError> {
    if let Some(bp) = branch_points().into_iter().find(|b| (x - b).norm() < 1e-9) {
        return Err(SeriesError::BranchPoint(bp));
    }
    if x.norm() >= RADIUS {
        return Err(SeriesError::OutsideDomain(x.norm()));
    }
    let mu = mu_of(x);
    let (g, z) = g_interior(x);
    let u = 1.0 - 2.5 * x * z;
    let den = denominator(x, z) * (1.0 + x * x / (RADIUS * RADIUS));
    Ok(ClosedFormPoint {
        x,
        mu,
        zminus: z,
        g,
        a_coef: (u + x * x * 0.5 * z * z) / den,
        b_coef: -x / std::f64::consts::SQRT_2 * (u + z * z) / den,
    })
}

/// Largest deviation between the truncated series `F̃_j(x, z)` and the closed
/// forms over the sample points and all four types.
pub fn closed_vs_series_check(
    system: &GeneratingSystem,
    samples: &[(Complex64, Complex64)],
) -> Result<f64, SeriesError> {
    let mut worst = 0.0f64;
    for &(x, z) in samples {
        let point = eval_closed_forms(x)?;
        for j in Orientation::ALL {
            let dev = (system.eval_scaled(j, x, z) - point.ftilde(j, z)).norm();
            worst = worst.max(dev);
        }
    }
    Ok(worst)
}

/// Residues of `g_1..g_4` at the boundary points `x = r` and `x = -r`, where
/// the common denominator vanishes.
///
/// Returned as `[at +r, at -r]`, each indexed by type.
pub fn boundary_residues() -> &'static [[Complex64; 4]; 2] {
    static CACHE: OnceLock<[[Complex64; 4]; 2]> = OnceLock::new();
    CACHE.get_or_init(|| {
        const EPS: f64 = 0.05;
        const NODES: usize = 128;
        [1.0, -1.0].map(|sign| {
            let centre = Complex64::new(sign * RADIUS, 0.0);
            let mut acc = [Complex64::zero(); 4];
            for n in 0..NODES {
                let w = Complex64::from_polar(EPS, std::f64::consts::TAU * n as f64 / NODES as f64);
                let (g, _) = g_interior(centre + w);
                for (a, v) in acc.iter_mut().zip(g) {
                    *a += v * w;
                }
            }
            acc.map(|a| a / NODES as f64)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theta_inverse_examples() {
        let one = BivariateSeries::one(6);
        assert_eq!(one.theta_inverse(), one);
        let z = BivariateSeries::monomial(6, 0, 1, rat(1, 1));
        let expected = z.add(&BivariateSeries::monomial(6, 1, 0, rat(2, 1)));
        assert_eq!(z.theta_inverse(), expected);
        assert_eq!(expected.theta(), z);
    }

    #[test]
    fn product_and_shift_agree() {
        let mut s = BivariateSeries::zero(5);
        s.set(1, 0, rat(3, 2));
        s.set(2, 1, rat(-1, 3));
        let xz = BivariateSeries::monomial(5, 1, 1, rat(1, 1));
        assert_eq!(s.mul(&xz), s.shift(1, 1));
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(2, 0), rat(9, 4));
        assert_eq!(sq.coeff(3, 1), rat(-1, 1));
        assert_eq!(sq.coeff(4, 2), rat(1, 9));
    }

    fn arb_series() -> impl Strategy<Value = BivariateSeries> {
        prop::collection::vec((0usize..=8, 0usize..=8, -9i64..=9, 1i64..=5), 0..10).prop_map(|terms| {
            let mut s = BivariateSeries::zero(8);
            for (a, b, n, d) in terms {
                // Z-degree at most X-degree, as for every generating function here.
                let b = b.min(a);
                let prev = s.coeff(a, b);
                s.set(a, b, prev + rat(n, d));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn theta_round_trip(g in arb_series()) {
            prop_assert_eq!(g.theta_inverse().theta(), g.clone());
            prop_assert_eq!(g.theta().theta_inverse(), g);
        }
    }

    #[test]
    fn system_constant_and_linear_terms() {
        let s = solve_generating_system(4);
        use Orientation::*;
        assert_eq!(s.series(Onward).coeff(0, 0), rat(1, 1));
        assert_eq!(s.series(Backward).coeff(0, 0), rat(1, 1));
        assert!(s.series(Facing).coeff(0, 0).is_zero());
        assert!(s.series(Apart).coeff(0, 0).is_zero());
        assert_eq!(s.series(Facing).coeff(1, 0), rat(-1, 2));
        assert_eq!(s.series(Onward).coeff(1, 1), rat(1, 1));
    }

    #[test]
    fn series_extraction_examples() {
        let s = solve_generating_system(3);
        assert_eq!(green_from_series(&s, 1, 0, Orientation::Facing).unwrap(), rat(-1, 3));
        assert_eq!(green_from_series(&s, 0, 0, Orientation::Onward).unwrap(), rat(1, 1));
        assert_eq!(green_from_series(&s, 2, 2, Orientation::Onward).unwrap(), rat(4, 9));
        assert!(matches!(
            green_from_series(&s, 4, 0, Orientation::Onward),
            Err(SeriesError::TruncationExceeded { .. })
        ));
    }

    #[test]
    fn series_matches_counts() {
        let s = solve_generating_system(12);
        let t = crate::combinatorics::build_gamma(12);
        for k in 0..=12 {
            let g = crate::combinatorics::green_from_counts(&t, k);
            for d in 0..=k {
                for j in Orientation::ALL {
                    assert_eq!(green_from_series(&s, k, d, j).unwrap(), g.get(d, j), "k={k} d={d} j={j}");
                }
            }
        }
    }

    #[test]
    fn closed_form_at_origin() {
        let p = eval_closed_forms(Complex64::zero()).unwrap();
        assert_eq!(p.mu, Complex64::zero());
        assert_eq!(p.zminus, Complex64::zero());
        assert_eq!(p.g[0], c(1.0, 0.0));
        assert!(p.g[1..].iter().all(|g| g.norm() == 0.0));
    }

    #[test]
    fn closed_form_at_real_point() {
        let p = eval_closed_forms(c(0.1, 0.0)).unwrap();
        assert!((p.mu.re - 0.191_388).abs() < 1e-6);
        assert!((p.zminus.re - 0.198_964).abs() < 1e-6);
        let resid = p.zminus * p.zminus - p.zminus / p.mu + 1.0;
        assert!(resid.norm() < 1e-12);
        assert!(eval_closed_forms(c(0.0, 0.1)).unwrap().zminus.norm() < 1.0);
    }

    #[test]
    fn closed_form_domain_errors() {
        assert!(matches!(eval_closed_forms(c(0.5, 0.0)), Err(SeriesError::OutsideDomain(_))));
        assert!(matches!(
            eval_closed_forms(branch_points()[2]),
            Err(SeriesError::BranchPoint(_))
        ));
    }

    #[test]
    fn small_mu_fallback_is_continuous() {
        for m in [9.9e-5, 1.01e-4] {
            for phase in [0.0, 1.0, 2.5] {
                let mu = Complex64::from_polar(m, phase);
                let z = zminus(mu);
                let resid = z * z - z / mu + 1.0;
                assert!((resid * mu).norm() < 1e-15, "{mu}");
            }
        }
    }

    #[test]
    fn root_properties_on_random_points() {
        // Deterministic quasi-random sample of |x| < 0.95 r.
        let mut worst = 0.0f64;
        for n in 0..1000 {
            let rad = 0.95 * RADIUS * ((n as f64 * 0.618_033_988_75).fract()).sqrt();
            let x = Complex64::from_polar(rad, n as f64 * 2.399_963);
            let mu = mu_of(x);
            let z = zminus(mu);
            assert!(z.norm() < 1.0);
            if mu.norm() > 1e-8 {
                worst = worst.max((z * z - z / mu + 1.0).norm());
            }
        }
        assert!(worst < 1e-12, "{worst}");
        let x = c(1e-3, 2e-3);
        let z = zminus(mu_of(x));
        assert!((z - mu_of(x)).norm() < 2.0 * mu_of(x).norm().powi(3));
    }

    #[test]
    fn boundary_map_of_mu() {
        for t in [0.1, 0.7, 1.2, 2.0, 3.0, 4.0, 5.5] {
            let mu = mu_of(Complex64::from_polar(RADIUS, t));
            assert!((mu - RADIUS / f64::cos(t)).norm() < 1e-12, "θ={t}");
        }
    }

    #[test]
    fn closed_forms_match_series() {
        let s = solve_generating_system(40);
        let dev = closed_vs_series_check(&s, &[(c(0.2, 0.0), c(0.5, 0.0)), (c(0.0, 0.3), c(-0.4, 0.0))]).unwrap();
        assert!(dev < 1e-8, "{dev}");
        let dev0 = closed_vs_series_check(&s, &[(Complex64::zero(), c(0.7, 0.2))]).unwrap();
        assert!(dev0 < 1e-15);
    }

    #[test]
    fn denominator_vanishes_only_at_real_boundary_points() {
        let bps = branch_points();
        let mut min_away = f64::INFINITY;
        for a in 0..100 {
            for b in 0..100 {
                let rad = RADIUS * (a as f64 + 1.0) / 100.5;
                let x = Complex64::from_polar(rad, std::f64::consts::TAU * b as f64 / 100.0);
                let near_branch = bps.iter().any(|p| (x - p).norm() < 0.02);
                let near_pole = (x.re.abs() - RADIUS).abs() < 0.02 && x.im.abs() < 0.02;
                if near_branch || near_pole {
                    continue;
                }
                let (_, z) = g_interior(x);
                min_away = min_away.min(denominator(x, z).norm());
            }
        }
        assert!(min_away > 1e-6, "{min_away}");
        for sign in [1.0, -1.0] {
            let x = c(sign * RADIUS, 0.0);
            let (_, z) = g_interior(x);
            assert!((z - sign * std::f64::consts::FRAC_1_SQRT_2).norm() < 1e-12);
            assert!(denominator(x, z).norm() < 1e-12);
        }
    }

    #[test]
    fn boundary_residues_have_modulus_r_over_six() {
        let res = boundary_residues();
        let signs = [[-1.0, 1.0], [1.0, 1.0], [-1.0, 1.0], [1.0, 1.0]];
        for (j, s) in signs.iter().enumerate() {
            for side in 0..2 {
                let v = res[side][j];
                assert!((v.re - s[side] * RADIUS / 6.0).abs() < 1e-12, "j={} side={side} {v}", j + 1);
                assert!(v.im.abs() < 1e-12);
            }
        }
    }
}

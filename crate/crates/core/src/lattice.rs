//! Direct simulation of the scattering dynamics on an addressed tree.
//!
//! The tree is rooted at a base edge joining two nodes `(Left, "")` and
//! `(Right, "")`. Every other node is reached from one of them by a finite
//! string of child choices, so a node is a side plus a bit string. Each node has
//! two children and one parent; the parent of a root is the other root.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::green::{GreenTable, Orientation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("nodes {0} and {1} are not adjacent")]
    NotAdjacent(NodeAddress, NodeAddress),
    #[error("class inconsistency at d={d}, j={j}: {detail}")]
    ClassInconsistency { d: usize, j: usize, detail: String },
    #[error("path depth {0} exceeds the supported maximum {max}", max = NodeAddress::MAX_DEPTH)]
    TooDeep(usize),
    #[error("the addressed tree is binary but the coefficients use branching {0}")]
    BranchingMismatch(u32),
}

/// Reflection and transmission coefficients at a node with `N` forward edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScatteringCoefficients {
    branching: u32,
    alpha: BigRational,
    beta: BigRational,
}

impl ScatteringCoefficients {
    /// Kirchhoff coefficients `α = -(N-1)/(N+1)`, `β = 2/(N+1)`.
    ///
    /// # Panics
    /// If `branching == 0`.
    pub fn new(branching: u32) -> Self {
        assert!(branching > 0, "branching must be positive");
        let n = BigInt::from(branching);
        let den: BigInt = &n + 1u32;
        Self {
            branching,
            alpha: BigRational::new(-(n - BigInt::one()), den.clone()),
            beta: BigRational::new(BigInt::from(2), den),
        }
    }

    /// The coefficients of the 2-regular lattice: `α = -1/3`, `β = 2/3`.
    pub fn binary() -> Self {
        Self::new(2)
    }

    pub fn branching(&self) -> u32 {
        self.branching
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    /// `α + N β`, which equals one.
    pub fn charge(&self) -> BigRational {
        &self.alpha + &self.beta * BigInt::from(self.branching)
    }

    /// `α² + N β²`, which equals one.
    pub fn energy(&self) -> BigRational {
        &self.alpha * &self.alpha + &self.beta * &self.beta * BigInt::from(self.branching)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A node of the tree. The path is packed into the low `depth` bits of
/// `bits`, first choice in the highest of those bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeAddress {
    side: Side,
    depth: u8,
    bits: u64,
}

impl NodeAddress {
    pub const MAX_DEPTH: usize = 63;

    pub fn root(side: Side) -> Self {
        Self {
            side,
            depth: 0,
            bits: 0,
        }
    }

    pub fn new(side: Side, path: &[bool]) -> Result<Self, LatticeError> {
        path.iter().try_fold(Self::root(side), |node, &b| node.child(b))
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn depth(&self) -> usize {
        self.depth as usize
    }

    pub fn path(&self) -> Vec<bool> {
        (0..self.depth)
            .rev()
            .map(|i| (self.bits >> i) & 1 == 1)
            .collect()
    }

    pub fn child(&self, bit: bool) -> Result<Self, LatticeError> {
        if self.depth() >= Self::MAX_DEPTH {
            return Err(LatticeError::TooDeep(self.depth() + 1));
        }
        Ok(Self {
            side: self.side,
            depth: self.depth + 1,
            bits: (self.bits << 1) | bit as u64,
        })
    }

    pub fn parent(&self) -> Self {
        if self.depth == 0 {
            Self::root(self.side.other())
        } else {
            Self {
                side: self.side,
                depth: self.depth - 1,
                bits: self.bits >> 1,
            }
        }
    }

    /// The three neighbours: both children, then the parent.
    pub fn neighbours(&self) -> Result<[Self; 3], LatticeError> {
        Ok([self.child(false)?, self.child(true)?, self.parent()])
    }

    pub fn is_adjacent(&self, other: &Self) -> bool {
        self.parent() == *other || other.parent() == *self
    }

    /// Graph distance between nodes.
    pub fn distance(&self, other: &Self) -> usize {
        let (p, q) = (self.depth(), other.depth());
        if self.side != other.side {
            return p + q + 1;
        }
        let m = p.min(q);
        let (a, b) = (self.bits >> (p - m), other.bits >> (q - m));
        let diff = a ^ b;
        let common = if diff == 0 {
            m
        } else {
            m - (64 - diff.leading_zeros() as usize)
        };
        p + q - 2 * common
    }
}

impl fmt::Display for NodeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Left => 'L',
            Side::Right => 'R',
        };
        write!(f, "{side}:")?;
        for b in self.path() {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

/// An edge with a direction of traversal, from `tail` to `head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedEdge {
    tail: NodeAddress,
    head: NodeAddress,
}

impl OrientedEdge {
    pub fn new(tail: NodeAddress, head: NodeAddress) -> Result<Self, LatticeError> {
        if !tail.is_adjacent(&head) {
            return Err(LatticeError::NotAdjacent(tail, head));
        }
        Ok(Self { tail, head })
    }

    /// The base edge, oriented from the left root to the right root.
    pub fn base() -> Self {
        Self {
            tail: NodeAddress::root(Side::Left),
            head: NodeAddress::root(Side::Right),
        }
    }

    pub fn tail(&self) -> NodeAddress {
        self.tail
    }

    pub fn head(&self) -> NodeAddress {
        self.head
    }

    pub fn reversed(&self) -> Self {
        Self {
            tail: self.head,
            head: self.tail,
        }
    }

    pub fn same_edge(&self, other: &Self) -> bool {
        self == other || *self == other.reversed()
    }
}

impl fmt::Display for OrientedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

/// Distance between midpoints and orientation type of a pair of oriented edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairClass {
    pub d: usize,
    pub j: Orientation,
}

/// Classifies `(a, b)`. At distance zero only types 1 (`b = a`) and 2
/// (`b = -a`) are reported.
pub fn classify_pair(a: &OrientedEdge, b: &OrientedEdge) -> PairClass {
    if a.same_edge(b) {
        let j = if a == b {
            Orientation::Onward
        } else {
            Orientation::Facing
        };
        return PairClass { d: 0, j };
    }
    // The closest endpoints are unique because the graph is a tree.
    let (m, near_a, near_b) = [a.tail, a.head]
        .into_iter()
        .flat_map(|x| [b.tail, b.head].into_iter().map(move |y| (x.distance(&y), x, y)))
        .min_by_key(|t| t.0)
        .expect("four candidate pairs");
    let toward = a.head == near_a;
    let away = b.tail == near_b;
    let j = match (toward, away) {
        (true, true) => Orientation::Onward,
        (true, false) => Orientation::Facing,
        (false, false) => Orientation::Backward,
        (false, true) => Orientation::Apart,
    };
    PairClass { d: m + 1, j }
}

/// Number of oriented edges `b` in class `(d, j)` relative to a fixed `a`,
/// under the reporting convention of [`classify_pair`].
pub fn class_size(class: PairClass) -> usize {
    match (class.d, class.j) {
        (0, Orientation::Onward | Orientation::Facing) => 1,
        (0, _) => 0,
        (d, _) => 1usize << d,
    }
}

/// A finitely supported field of exact amplitudes on oriented edges.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AmplitudeField {
    entries: HashMap<OrientedEdge, BigRational>,
}

impl AmplitudeField {
    pub fn new() -> Self {
        Self::default()
    }

    /// Unit amplitude on a single edge.
    pub fn delta(edge: OrientedEdge) -> Self {
        let mut f = Self::new();
        f.add(edge, BigRational::one());
        f
    }

    /// Adds `value` to the amplitude on `edge`, dropping entries that cancel.
    pub fn add(&mut self, edge: OrientedEdge, value: BigRational) {
        let slot = self.entries.entry(edge).or_insert_with(BigRational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&edge);
        }
    }

    pub fn get(&self, edge: &OrientedEdge) -> BigRational {
        self.entries.get(edge).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrientedEdge, &BigRational)> {
        self.entries.iter()
    }

    /// `Σ x²` over all entries.
    pub fn norm_squared(&self) -> BigRational {
        self.entries.values().map(|x| x * x).sum()
    }
}

/// One time unit of the dynamics: the amplitude on `t -> h` is reflected onto
/// `h -> t` with weight `α` and transmitted onto each `h -> n`, `n ≠ t`, with
/// weight `β`.
pub fn scatter_step(
    field: &AmplitudeField,
    coeffs: &ScatteringCoefficients,
) -> Result<AmplitudeField, LatticeError> {
    if coeffs.branching() != 2 {
        return Err(LatticeError::BranchingMismatch(coeffs.branching()));
    }
    let mut out = AmplitudeField::new();
    for (edge, x) in field.iter() {
        out.add(edge.reversed(), coeffs.alpha() * x);
        let onward = coeffs.beta() * x;
        for n in edge.head.neighbours()? {
            if n != edge.tail {
                out.add(
                    OrientedEdge {
                        tail: edge.head,
                        head: n,
                    },
                    onward.clone(),
                );
            }
        }
    }
    Ok(out)
}

/// Evolves a unit pulse on the base edge for `k` steps and tabulates the
/// amplitudes by class, checking that every class is uniformly populated.
///
/// The returned table follows the duplicated convention at distance zero:
/// entries of types 3 and 4 repeat those of types 1 and 2.
pub fn green_sim(k: usize) -> Result<GreenTable, LatticeError> {
    if k + 1 > NodeAddress::MAX_DEPTH {
        return Err(LatticeError::TooDeep(k + 1));
    }
    let coeffs = ScatteringCoefficients::binary();
    let base = OrientedEdge::base();
    let mut field = AmplitudeField::delta(base);
    for _ in 0..k {
        field = scatter_step(&field, &coeffs)?;
    }

    let mut classes: HashMap<PairClass, (BigRational, usize)> = HashMap::new();
    for (edge, x) in field.iter() {
        let class = classify_pair(&base, edge);
        match classes.get_mut(&class) {
            Some((v, n)) => {
                if v != x {
                    return Err(LatticeError::ClassInconsistency {
                        d: class.d,
                        j: class.j.index(),
                        detail: format!("amplitudes {v} and {x} differ"),
                    });
                }
                *n += 1;
            }
            None => {
                classes.insert(class, (x.clone(), 1));
            }
        }
    }

    let mut table = GreenTable::zeros(k, k + 1);
    for (class, (value, count)) in classes {
        if count != class_size(class) {
            return Err(LatticeError::ClassInconsistency {
                d: class.d,
                j: class.j.index(),
                detail: format!("{count} edges carry amplitude, expected {}", class_size(class)),
            });
        }
        if class.d > k {
            return Err(LatticeError::ClassInconsistency {
                d: class.d,
                j: class.j.index(),
                detail: format!("nonzero amplitude beyond distance {k}"),
            });
        }
        table.set(class.d, class.j, value.clone());
        if class.d == 0 {
            let dup = match class.j {
                Orientation::Onward => Orientation::Backward,
                _ => Orientation::Apart,
            };
            table.set(0, dup, value);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn node(side: Side, path: &str) -> NodeAddress {
        let bits: Vec<bool> = path.chars().map(|c| c == '1').collect();
        NodeAddress::new(side, &bits).unwrap()
    }

    fn edge(t: NodeAddress, h: NodeAddress) -> OrientedEdge {
        OrientedEdge::new(t, h).unwrap()
    }

    #[test]
    fn kirchhoff_coefficients() {
        let c = ScatteringCoefficients::binary();
        assert_eq!(c.alpha(), &q(-1, 3));
        assert_eq!(c.beta(), &q(2, 3));
        for n in 1..10 {
            let c = ScatteringCoefficients::new(n);
            assert_eq!(c.charge(), q(1, 1));
            assert_eq!(c.energy(), q(1, 1));
        }
    }

    #[test]
    fn addressing_is_canonical() {
        let a = node(Side::Left, "0110");
        assert_eq!(a.path(), vec![false, true, true, false]);
        assert_eq!(a.to_string(), "L:0110");
        assert_eq!(a.parent(), node(Side::Left, "011"));
        assert_eq!(node(Side::Right, "").parent(), node(Side::Left, ""));
        assert_ne!(node(Side::Left, "0"), node(Side::Left, "00"));
        assert!(matches!(
            OrientedEdge::new(node(Side::Left, "0"), node(Side::Left, "1")),
            Err(LatticeError::NotAdjacent(..))
        ));
    }

    #[test]
    fn node_distances() {
        let l = |p| node(Side::Left, p);
        let r = |p| node(Side::Right, p);
        assert_eq!(l("").distance(&r("")), 1);
        assert_eq!(l("01").distance(&l("00")), 2);
        assert_eq!(l("01").distance(&l("1")), 3);
        assert_eq!(l("011").distance(&l("0")), 2);
        assert_eq!(l("0").distance(&r("10")), 4);
        assert_eq!(l("101").distance(&l("101")), 0);
    }

    /// Breadth-first distance through the neighbour relation.
    fn bfs_distance(a: NodeAddress, b: NodeAddress) -> usize {
        let mut frontier = vec![a];
        let mut seen = std::collections::HashSet::from([a]);
        for dist in 0.. {
            if frontier.contains(&b) {
                return dist;
            }
            let mut next = Vec::new();
            for n in frontier {
                for m in n.neighbours().unwrap() {
                    if seen.insert(m) {
                        next.push(m);
                    }
                }
            }
            frontier = next;
        }
        unreachable!()
    }

    #[test]
    fn distance_matches_breadth_first_search() {
        let nodes: Vec<NodeAddress> = ["", "0", "1", "01", "110", "0010"]
            .iter()
            .flat_map(|p| [node(Side::Left, p), node(Side::Right, p)])
            .collect();
        for a in &nodes {
            for b in &nodes {
                assert_eq!(a.distance(b), bfs_distance(*a, *b), "{a} {b}");
            }
        }
    }

    #[test]
    fn classification_examples() {
        let a = OrientedEdge::base();
        assert_eq!(classify_pair(&a, &a), PairClass { d: 0, j: Orientation::Onward });
        assert_eq!(
            classify_pair(&a, &a.reversed()),
            PairClass { d: 0, j: Orientation::Facing }
        );
        let onward = edge(node(Side::Right, ""), node(Side::Right, "1"));
        assert_eq!(classify_pair(&a, &onward), PairClass { d: 1, j: Orientation::Onward });
        assert_eq!(
            classify_pair(&a, &onward.reversed()),
            PairClass { d: 1, j: Orientation::Facing }
        );
        let behind = edge(node(Side::Left, "0"), node(Side::Left, ""));
        assert_eq!(classify_pair(&a, &behind), PairClass { d: 1, j: Orientation::Backward });
        assert_eq!(
            classify_pair(&a, &behind.reversed()),
            PairClass { d: 1, j: Orientation::Apart }
        );
    }

    #[test]
    fn scatter_unit_pulse() {
        let a = OrientedEdge::base();
        let out = scatter_step(&AmplitudeField::delta(a), &ScatteringCoefficients::binary()).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out.get(&a.reversed()), q(-1, 3));
        for bit in [false, true] {
            let b = edge(a.head(), a.head().child(bit).unwrap());
            assert_eq!(out.get(&b), q(2, 3));
        }
        let zero = scatter_step(&AmplitudeField::new(), &ScatteringCoefficients::binary()).unwrap();
        assert!(zero.is_empty());
        assert!(matches!(
            scatter_step(&out, &ScatteringCoefficients::new(3)),
            Err(LatticeError::BranchingMismatch(3))
        ));
    }

    #[test]
    fn small_green_tables() {
        let g0 = green_sim(0).unwrap();
        assert_eq!(g0.get(0, Orientation::Onward), q(1, 1));
        assert_eq!(g0.get(0, Orientation::Facing), q(0, 1));

        let g1 = green_sim(1).unwrap();
        assert_eq!(g1.get(1, Orientation::Onward), q(2, 3));
        assert_eq!(g1.get(0, Orientation::Facing), q(-1, 3));
        assert_eq!(g1.get(0, Orientation::Apart), q(-1, 3));
        assert_eq!(g1.get(0, Orientation::Onward), q(0, 1));
        assert_eq!(g1.get(1, Orientation::Backward), q(0, 1));

        let g2 = green_sim(2).unwrap();
        assert_eq!(g2.get(0, Orientation::Onward), q(1, 9));
        assert_eq!(g2.get(2, Orientation::Onward), q(4, 9));
    }

    #[test]
    fn simulation_conserves_energy_and_speed() {
        for k in 0..=10 {
            let t = green_sim(k).unwrap();
            assert_eq!(t.total_energy(), q(1, 1), "k={k}");
            assert!(t.support_radius().unwrap() <= k);
        }
    }

    #[test]
    fn twelve_steps_are_unitary() {
        let coeffs = ScatteringCoefficients::binary();
        let mut f = AmplitudeField::delta(OrientedEdge::base());
        f.add(edge(node(Side::Left, "1"), node(Side::Left, "10")), q(-5, 7));
        let n0 = f.norm_squared();
        for _ in 0..12 {
            f = scatter_step(&f, &coeffs).unwrap();
        }
        assert_eq!(f.norm_squared(), n0);
    }

    fn arb_edge() -> impl Strategy<Value = OrientedEdge> {
        (any::<bool>(), prop::collection::vec(any::<bool>(), 0..5), 0usize..3).prop_map(
            |(left, path, which)| {
                let side = if left { Side::Left } else { Side::Right };
                let t = NodeAddress::new(side, &path).unwrap();
                let h = t.neighbours().unwrap()[which];
                OrientedEdge::new(t, h).unwrap()
            },
        )
    }

    fn arb_field() -> impl Strategy<Value = AmplitudeField> {
        prop::collection::vec((arb_edge(), -20i64..20, 1i64..10), 1..5).prop_map(|entries| {
            let mut f = AmplitudeField::new();
            for (e, n, d) in entries {
                f.add(e, q(n, d));
            }
            f
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn scattering_is_unitary(f in arb_field(), k in 0usize..7) {
            let coeffs = ScatteringCoefficients::binary();
            let n0 = f.norm_squared();
            let mut g = f;
            for _ in 0..k {
                g = scatter_step(&g, &coeffs).unwrap();
            }
            prop_assert_eq!(g.norm_squared(), n0);
        }

        #[test]
        fn reversing_target_flips_type(a in arb_edge(), b in arb_edge()) {
            let c = classify_pair(&a, &b);
            let r = classify_pair(&a, &b.reversed());
            prop_assert_eq!(r.d, c.d);
            prop_assert_eq!(r.j, c.j.with_target_reversed());
        }

        #[test]
        fn classification_is_symmetric_in_distance(a in arb_edge(), b in arb_edge()) {
            prop_assert_eq!(classify_pair(&a, &b).d, classify_pair(&b, &a).d);
        }
    }
}

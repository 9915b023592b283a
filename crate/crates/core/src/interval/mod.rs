//! Interval representations and multiset defenses on interval graphs.
//!
//! Instances are generic over the endpoint scalar. Every comparison is exact,
//! so only ordered exact types make sense: [`Rational`] for decimal input and
//! `i64` for generated or normalized instances.

mod greedy;
pub mod io;

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Vertex, VertexMultiset, VertexSet};

pub use greedy::{greedy_defense, greedy_defense_reference};

/// Exact rational endpoint.
pub type Rational = Ratio<i64>;

/// Scalar usable as an interval endpoint.
pub trait Endpoint: Clone + Ord + Debug + Display + Num + FromPrimitive + Send + Sync {
    /// Parses `[-]digits[.digits]` or `a/b` with decimal `a`, `b`. Fails when
    /// the value is not exactly representable in `Self`.
    fn parse_decimal(s: &str) -> Option<Self> {
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => {
                let (an, ad) = decimal_parts(a)?;
                let (bn, bd) = decimal_parts(b)?;
                (an.checked_mul(bd)?, ad.checked_mul(bn)?)
            }
            None => decimal_parts(s)?,
        };
        if den == 0 {
            return None;
        }
        let (num, den) = if den < 0 {
            (num.checked_neg()?, -den)
        } else {
            (num, den)
        };
        let value = Self::from_i64(num)? / Self::from_i64(den)?;
        (value.clone() * Self::from_i64(den)? == Self::from_i64(num)?).then_some(value)
    }
}

impl Endpoint for i64 {}
impl Endpoint for Rational {}

/// `"-12.50"` → `(-1250, 100)`.
fn decimal_parts(s: &str) -> Option<(i64, i64)> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut num: i64 = 0;
    for c in int.chars().chain(frac.chars()) {
        num = num.checked_mul(10)?.checked_add(c.to_digit(10)? as i64)?;
    }
    let den = 10i64.checked_pow(frac.len() as u32)?;
    Some((if neg { -num } else { num }, den))
}

/// Closed interval `[left, right]`, `left <= right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    pub left: T,
    pub right: T,
}

impl<T: Endpoint> Interval<T> {
    pub fn new(left: T, right: T) -> Result<Self> {
        if left > right {
            return Err(Error::InvalidParameter(format!(
                "interval [{left}, {right}] is reversed"
            )));
        }
        Ok(Interval { left, right })
    }

    pub fn contains_point(&self, x: &T) -> bool {
        &self.left <= x && x <= &self.right
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.left <= self.left && self.right <= other.right
    }

    /// `self ⊊ other`.
    pub fn is_proper_subset_of(&self, other: &Self) -> bool {
        self.is_subset_of(other) && self != other
    }
}

/// Vertex `v` is represented by the interval at index `v - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalInstance<T> {
    intervals: Vec<Interval<T>>,
}

/// `B_{x,i}`: the `i` members of `V_x = {v : right(v) <= x}` with the largest
/// left endpoints, listed by descending left endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block<T> {
    pub x: T,
    pub members: Vec<Vertex>,
}

impl<T> Block<T> {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn member_set(&self) -> VertexSet {
        self.members.iter().copied().collect()
    }
}

impl<T: Endpoint> IntervalInstance<T> {
    pub fn new(intervals: Vec<Interval<T>>) -> Self {
        IntervalInstance { intervals }
    }

    pub fn from_pairs<I: IntoIterator<Item = (T, T)>>(pairs: I) -> Result<Self> {
        pairs
            .into_iter()
            .map(|(l, r)| Interval::new(l, r))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn interval(&self, v: Vertex) -> &Interval<T> {
        &self.intervals[v - 1]
    }

    pub fn intervals(&self) -> &[Interval<T>] {
        &self.intervals
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.len()
    }

    /// Endpoints sorted by value, then vertex, with left before right.
    fn endpoint_events(&self) -> Vec<(&T, Vertex, bool)> {
        let mut ev: Vec<(&T, Vertex, bool)> = self
            .intervals
            .iter()
            .enumerate()
            .flat_map(|(i, iv)| [(&iv.left, i + 1, false), (&iv.right, i + 1, true)])
            .collect();
        ev.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        ev
    }

    /// Accepts iff no two distinct intervals share an endpoint value.
    pub fn validate(&self) -> Result<()> {
        let ev = self.endpoint_events();
        for w in ev.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 != w[1].1 {
                return Err(Error::SharedEndpoint {
                    first: w[0].1,
                    second: w[1].1,
                    value: w[0].0.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Order-preserving perturbation to distinct integer endpoints: endpoints
    /// are replaced by their rank, ties broken by vertex identity (a point
    /// interval keeps a single rank). The result is accepted only if its
    /// intersection graph equals the original one; otherwise the first pair
    /// whose adjacency changed is reported.
    pub fn normalize(&self) -> Result<IntervalInstance<i64>> {
        let ev = self.endpoint_events();
        let mut ranks = vec![(0i64, 0i64); self.len()];
        let mut rank = -1i64;
        let mut prev: Option<(&T, Vertex)> = None;
        for &(value, v, is_right) in &ev {
            // the right end of a point interval directly follows its left end
            if !(is_right && prev == Some((value, v))) {
                rank += 1;
            }
            if is_right {
                ranks[v - 1].1 = rank;
            } else {
                ranks[v - 1].0 = rank;
            }
            prev = Some((value, v));
        }
        let normalized = IntervalInstance::from_pairs(ranks)?;
        for u in self.vertices() {
            for v in u + 1..=self.len() {
                let before = self.interval(u).intersects(self.interval(v));
                if before != normalized.interval(u).intersects(normalized.interval(v)) {
                    let (a, b) = (self.interval(u), self.interval(v));
                    let shared = [&a.left, &a.right]
                        .into_iter()
                        .find(|x| *x == &b.left || *x == &b.right)
                        .unwrap_or(&a.left);
                    return Err(Error::SharedEndpoint {
                        first: u,
                        second: v,
                        value: shared.to_string(),
                    });
                }
            }
        }
        Ok(normalized)
    }

    /// The intersection graph, by a sweep over endpoints (left before right at
    /// equal coordinates, since intervals are closed).
    pub fn intersection_graph(&self) -> Graph {
        let mut ev: Vec<(&T, bool, Vertex)> = self
            .intervals
            .iter()
            .enumerate()
            .flat_map(|(i, iv)| [(&iv.left, false, i + 1), (&iv.right, true, i + 1)])
            .collect();
        ev.sort();
        let mut b = GraphBuilder::with_vertices(self.len());
        let mut active: Vec<Vertex> = Vec::new();
        let mut slot = vec![usize::MAX; self.len() + 1];
        for (_, is_right, v) in ev {
            if is_right {
                let i = slot[v];
                active.swap_remove(i);
                if i < active.len() {
                    slot[active[i]] = i;
                }
            } else {
                for &u in &active {
                    b.add_edge(u, v);
                }
                slot[v] = active.len();
                active.push(v);
            }
        }
        b.build()
    }

    /// Repeatedly moves every copy of a defender whose interval is properly
    /// contained in another defender's interval onto that defender, until no
    /// such pair remains. Size is preserved and the result is proper.
    pub fn properize(&self, d: &VertexMultiset) -> VertexMultiset {
        let mut d = d.clone();
        loop {
            let support: Vec<Vertex> = d.support().into_iter().collect();
            let pair = support.iter().find_map(|&u| {
                support
                    .iter()
                    .find(|&&v| self.interval(u).is_proper_subset_of(self.interval(v)))
                    .map(|&v| (u, v))
            });
            let Some((u, v)) = pair else {
                return d;
            };
            let moved = d.remove(u, usize::MAX);
            d.insert(v, moved);
        }
    }

    /// `true` iff no defender's interval properly contains another's.
    pub fn is_proper(&self, d: &VertexMultiset) -> bool {
        let support = d.support();
        support.iter().all(|&u| {
            support
                .iter()
                .all(|&v| !self.interval(u).is_proper_subset_of(self.interval(v)))
        })
    }

    /// `V_x` sorted by descending left endpoint (ties by vertex).
    fn ending_by(&self, x: &T) -> Vec<Vertex> {
        let mut vx: Vec<Vertex> = self
            .vertices()
            .filter(|&v| &self.interval(v).right <= x)
            .collect();
        vx.sort_by(|&a, &b| self.interval(b).left.cmp(&self.interval(a).left).then(a.cmp(&b)));
        vx
    }

    pub fn block(&self, x: &T, i: usize) -> Result<Block<T>> {
        if !self.intervals.iter().any(|iv| &iv.right == x) {
            return Err(Error::InvalidParameter(format!("{x} is not a right endpoint")));
        }
        let vx = self.ending_by(x);
        if i == 0 || i > vx.len() {
            return Err(Error::InvalidParameter(format!(
                "block size {i} outside 1..={}",
                vx.len()
            )));
        }
        Ok(Block {
            x: x.clone(),
            members: vx[..i].to_vec(),
        })
    }

    /// `true` iff `#_D(N[B_{x,i}]) >= i` for every right endpoint `x` and
    /// every `i <= min(|V_x|, k)`.
    pub fn is_block_defense(&self, d: &VertexMultiset, k: usize) -> bool {
        let g = self.intersection_graph();
        let mut rights: Vec<&T> = self.intervals.iter().map(|iv| &iv.right).collect();
        rights.sort();
        rights.dedup();
        rights.into_iter().all(|x| {
            let vx = self.ending_by(x);
            (1..=vx.len().min(k)).all(|i| {
                let b: VertexSet = vx[..i].iter().copied().collect();
                let nb = g.closed_neighborhood(&b).expect("block vertices exist");
                d.count_in(&nb) >= i
            })
        })
    }

    /// The union of the members' intervals as disjoint closed intervals in
    /// ascending order.
    pub fn union_span(&self, s: &VertexSet) -> Vec<Interval<T>> {
        let mut ivs: Vec<&Interval<T>> = s.iter().map(|&v| self.interval(v)).collect();
        ivs.sort_by(|a, b| a.left.cmp(&b.left));
        let mut out: Vec<Interval<T>> = Vec::new();
        for iv in ivs {
            match out.last_mut() {
                Some(last) if iv.left <= last.right => {
                    if iv.right > last.right {
                        last.right = iv.right.clone();
                    }
                }
                _ => out.push(iv.clone()),
            }
        }
        out
    }
}

/// `true` iff the union `inner` is contained in the union `outer` (both as
/// returned by [`IntervalInstance::union_span`]).
pub fn span_within<T: Endpoint>(inner: &[Interval<T>], outer: &[Interval<T>]) -> bool {
    inner.iter().all(|iv| outer.iter().any(|o| iv.is_subset_of(o)))
}

/// Random instance on `n` vertices whose `2n` endpoints are a shuffle of
/// `0..2n`, so all endpoints are distinct.
pub fn random_instance(n: usize, seed: u64) -> IntervalInstance<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<i64> = (0..2 * n as i64).collect();
    pts.shuffle(&mut rng);
    IntervalInstance::new(
        pts.chunks(2)
            .map(|c| Interval {
                left: c[0].min(c[1]),
                right: c[0].max(c[1]),
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    fn q(s: &str) -> Rational {
        Rational::parse_decimal(s).unwrap()
    }

    fn rat(pairs: &[(&str, &str)]) -> IntervalInstance<Rational> {
        IntervalInstance::from_pairs(pairs.iter().map(|&(l, r)| (q(l), q(r)))).unwrap()
    }

    pub(crate) fn star_instance() -> IntervalInstance<Rational> {
        rat(&[
            ("0", "10"),
            ("1", "2"),
            ("3", "4"),
            ("5", "6"),
            ("7", "8"),
            ("8.5", "9"),
        ])
    }

    #[test]
    fn parses_decimals() {
        assert_eq!(q("0.5"), Rational::new(1, 2));
        assert_eq!(q("-1.25"), Rational::new(-5, 4));
        assert_eq!(q("3/4"), Rational::new(3, 4));
        assert_eq!(q("1.5/3"), Rational::new(1, 2));
        assert_eq!(i64::parse_decimal("7"), Some(7));
        assert_eq!(i64::parse_decimal("7.5"), None);
        assert_eq!(i64::parse_decimal("4/2"), Some(2));
        assert!(Rational::parse_decimal("x").is_none());
        assert!(Rational::parse_decimal("1/0").is_none());
        assert!(Rational::parse_decimal(".").is_none());
    }

    #[test]
    fn validate_examples() {
        assert!(rat(&[("0", "2"), ("1", "3")]).validate().is_ok());

        let touching = rat(&[("0", "2"), ("2", "3")]);
        assert!(touching.validate().is_err());
        match touching.normalize() {
            Err(Error::SharedEndpoint {
                first: 1,
                second: 2,
                value,
            }) => assert_eq!(value, "2"),
            other => panic!("unexpected {other:?}"),
        }

        let shared_left = rat(&[("0", "1"), ("0", "2")]);
        assert!(matches!(
            shared_left.validate(),
            Err(Error::SharedEndpoint {
                first: 1,
                second: 2,
                ..
            })
        ));
        let fixed = shared_left.normalize().unwrap();
        assert!(fixed.validate().is_ok());
        assert_eq!(fixed.intersection_graph(), shared_left.intersection_graph());

        let point = rat(&[("1", "1"), ("0", "2")]);
        assert!(point.validate().is_ok());
        assert_eq!(
            point.normalize().unwrap().interval(1).left,
            point.normalize().unwrap().interval(1).right
        );
    }

    #[test]
    fn intersection_graph_examples() {
        assert_eq!(star_instance().intersection_graph(), generate::star(5));
        let disjoint = IntervalInstance::from_pairs((0..5).map(|i| (2 * i, 2 * i + 1))).unwrap();
        assert_eq!(disjoint.intersection_graph().edge_count(), 0);
        let chain = IntervalInstance::from_pairs([(0, 3), (2, 5), (4, 7)]).unwrap();
        assert_eq!(chain.intersection_graph(), generate::path(3));
    }

    #[test]
    fn sweep_matches_pairwise() {
        for seed in 0..50 {
            let inst = random_instance(12, seed);
            let g = inst.intersection_graph();
            for u in inst.vertices() {
                for v in u + 1..=inst.len() {
                    assert_eq!(g.adjacent(u, v), inst.interval(u).intersects(inst.interval(v)));
                }
            }
        }
    }

    #[test]
    fn properize_examples() {
        let incomparable = IntervalInstance::from_pairs([(0, 2), (1, 3), (2, 4)]).unwrap();
        let d = VertexMultiset::from_counts([(1, 1), (2, 2)]);
        assert_eq!(incomparable.properize(&d), d);

        // a = [1,2] inside b = [0,3]
        let nested = IntervalInstance::from_pairs([(1, 2), (0, 3)]).unwrap();
        assert_eq!(
            nested.properize(&VertexMultiset::from_counts([(1, 2), (2, 0)])),
            VertexMultiset::from_counts([(1, 2)]),
        );
        assert_eq!(
            nested.properize(&VertexMultiset::from_counts([(1, 2), (2, 1)])),
            VertexMultiset::from_counts([(2, 3)]),
        );

        // chain 1 ⊂ 2 ⊂ 3 with defenders only on 1 and 2: 3 holds no defender,
        // so the rule stops at {2:2}
        let chain = IntervalInstance::from_pairs([(2, 3), (1, 4), (0, 5)]).unwrap();
        let out = chain.properize(&VertexMultiset::from_counts([(1, 1), (2, 1)]));
        assert_eq!(out, VertexMultiset::from_counts([(2, 2)]));
        assert!(chain.is_proper(&out));
    }

    #[test]
    fn block_examples() {
        // a = [0,10], b = [2,3], c = [5,6]
        let inst = IntervalInstance::from_pairs([(0, 10), (2, 3), (5, 6)]).unwrap();
        assert_eq!(inst.block(&6, 1).unwrap().members, vec![3]);
        assert_eq!(inst.block(&6, 2).unwrap().members, vec![3, 2]);
        assert_eq!(inst.block(&3, 1).unwrap().members, vec![2]);
        assert!(inst.block(&4, 1).is_err());
        assert!(inst.block(&6, 3).is_err());
        assert!(inst.block(&6, 0).is_err());
        let b = inst.block(&10, 3).unwrap();
        assert_eq!(b.member_set(), VertexSet::from([1, 2, 3]));
    }

    #[test]
    fn blocks_are_nested() {
        let inst = random_instance(10, 4);
        for v in inst.vertices() {
            let x = inst.interval(v).right;
            let c = inst.intervals().iter().filter(|iv| iv.right <= x).count();
            for i in 1..c {
                let small = inst.block(&x, i).unwrap().member_set();
                let big = inst.block(&x, i + 1).unwrap().member_set();
                assert!(small.is_subset(&big));
                assert_eq!(big.len(), i + 1);
            }
        }
    }

    #[test]
    fn block_defense_examples() {
        let star = star_instance();
        let full: VertexMultiset = star.vertices().collect();
        assert!(star.is_block_defense(&full, 3));
        assert!(star.is_block_defense(&VertexMultiset::from_counts([(1, 2)]), 2));
        let disjoint = IntervalInstance::from_pairs((0..4).map(|i| (2 * i, 2 * i + 1))).unwrap();
        assert!(!disjoint.is_block_defense(&VertexMultiset::new(), 1));
    }

    #[test]
    fn union_span_merges() {
        let inst = IntervalInstance::from_pairs([(0, 2), (1, 3), (5, 6)]).unwrap();
        let span = inst.union_span(&VertexSet::from([1, 2, 3]));
        assert_eq!(
            span,
            vec![Interval { left: 0, right: 3 }, Interval { left: 5, right: 6 }]
        );
        assert!(span_within(&inst.union_span(&VertexSet::from([2])), &span));
        assert!(!span_within(&span, &inst.union_span(&VertexSet::from([1]))));
    }
}

//! Defense verification through Hall's condition.
//!
//! A defense `D` counters every `k`-attack iff no attack `A` with `|A| <= k`
//! has positive deficiency `|A| - #_D(N[A])`. Searching for such a violator is
//! the hard direction; two strategies are provided:
//!
//! * [`Strategy::Exhaustive`] scans every subset by increasing size in
//!   lexicographic order and returns the first violator.
//! * [`Strategy::Pruned`] looks for violators of size exactly `m` for
//!   `m = 1..=k`. A vertex `v` with `#_D(N[v]) >= m` cannot belong to a
//!   size-`m` violator, and a minimum-size violator has a connected closed
//!   neighborhood (otherwise the deficiency splits over the components and one
//!   part is a smaller violator). `N[A]` is connected iff `A` is connected in
//!   the square graph, so only connected sets of the square graph restricted
//!   to the surviving candidates are enumerated.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexMultiset, VertexSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    #[default]
    Pruned,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "pruned" => Ok(Strategy::Pruned),
            _ => Err(Error::InvalidParameter(format!("unknown strategy `{s}`"))),
        }
    }
}

/// An attack the defense fails to counter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violator {
    pub attack: VertexSet,
    /// `|attack| - #_D(N[attack])`, always positive.
    pub deficiency: usize,
}

impl Violator {
    pub fn size(&self) -> usize {
        self.attack.len()
    }
}

/// `|A| - #_D(N[A])`; positive means `A` witnesses a Hall violation.
pub fn hall_deficiency(g: &Graph, d: &VertexMultiset, a: &VertexSet) -> Result<i64> {
    let covered = d.count_in(&g.closed_neighborhood(a)?);
    Ok(a.len() as i64 - covered as i64)
}

/// Some attack of size at most `k` that `d` does not counter, if any.
pub fn find_violator(g: &Graph, d: &VertexMultiset, k: usize, strategy: Strategy) -> Option<Violator> {
    let ctx = Context::new(g, d);
    let k = k.min(g.n());
    match strategy {
        Strategy::Exhaustive => ctx.exhaustive(k),
        Strategy::Pruned => ctx.pruned(k),
    }
}

/// `true` iff `d` counters every attack of size at most `k`.
pub fn good_defense(g: &Graph, d: &VertexMultiset, k: usize) -> bool {
    find_violator(g, d, k, Strategy::Pruned).is_none()
}

/// Some `X ⊆ U` with `|N(X)| < |X| <= k`, scanning by increasing size in
/// lexicographic order. `(u, w)` must be a bipartition of `g`.
pub fn hall_set(g: &Graph, u: &VertexSet, w: &VertexSet, k: usize) -> Result<Option<VertexSet>> {
    g.check_set(u)?;
    g.check_set(w)?;
    let covers = u.len() + w.len() == g.n() && u.is_disjoint(w);
    let independent = |side: &VertexSet| {
        side.iter()
            .all(|&v| g.neighbors(v).iter().all(|x| !side.contains(x)))
    };
    if !covers || !independent(u) || !independent(w) {
        return Err(Error::Precondition(
            "graph is not bipartite with the given classes".into(),
        ));
    }
    for size in 1..=k.min(u.len()) {
        for x in u.iter().copied().combinations(size) {
            let x: VertexSet = x.into_iter().collect();
            if g.open_neighborhood(&x)?.len() < size {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

/// Per-query precomputation: defender counts and closed neighborhoods as
/// bitsets over `0..n`.
struct Context {
    counts: Vec<usize>,
    nbhd: Vec<FixedBitSet>,
}

impl Context {
    fn new(g: &Graph, d: &VertexMultiset) -> Self {
        Context {
            counts: d.dense_counts(g.n()),
            nbhd: g.vertices().map(|v| g.closed_neighborhood_bits(v)).collect(),
        }
    }

    fn covered(&self, union: &FixedBitSet) -> usize {
        union.ones().map(|i| self.counts[i]).sum()
    }

    fn violator(&self, members: &[usize], union: &FixedBitSet) -> Option<Violator> {
        let covered = self.covered(union);
        (members.len() > covered).then(|| Violator {
            attack: members.iter().map(|&i| i + 1).collect(),
            deficiency: members.len() - covered,
        })
    }

    fn exhaustive(&self, k: usize) -> Option<Violator> {
        let n = self.nbhd.len();
        (1..=k).find_map(|m| {
            let mut members = Vec::with_capacity(m);
            self.lex_subsets(0, m, &mut members, &FixedBitSet::with_capacity(n))
        })
    }

    fn lex_subsets(
        &self,
        start: usize,
        m: usize,
        members: &mut Vec<usize>,
        union: &FixedBitSet,
    ) -> Option<Violator> {
        if members.len() == m {
            return self.violator(members, union);
        }
        let n = self.nbhd.len();
        for v in start..=n - (m - members.len()) {
            let mut next = union.clone();
            next.union_with(&self.nbhd[v]);
            members.push(v);
            if let Some(found) = self.lex_subsets(v + 1, m, members, &next) {
                return Some(found);
            }
            members.pop();
        }
        None
    }

    fn pruned(&self, k: usize) -> Option<Violator> {
        let n = self.nbhd.len();
        let point: Vec<usize> = self.nbhd.iter().map(|b| self.covered(b)).collect();
        // candidates for the largest size; every smaller size filters this further
        let cand: Vec<usize> = (0..n).filter(|&v| point[v] < k).collect();
        let mut square = vec![FixedBitSet::with_capacity(n); n];
        for (i, &u) in cand.iter().enumerate() {
            for &v in &cand[i + 1..] {
                if !self.nbhd[u].is_disjoint(&self.nbhd[v]) {
                    square[u].insert(v);
                    square[v].insert(u);
                }
            }
        }

        (1..=k).find_map(|m| {
            let mut allowed = FixedBitSet::with_capacity(n);
            allowed.extend(cand.iter().copied().filter(|&v| point[v] < m));
            let roots: Vec<usize> = allowed.ones().collect();
            let search = ConnectedSearch {
                ctx: self,
                square: &square,
                allowed: &allowed,
                size: m,
            };
            roots.par_iter().find_map_first(|&r| search.search_root(r))
        })
    }
}

/// Enumerates connected vertex sets of a fixed size in the square graph, each
/// exactly once, by growing from the smallest member (ESU scheme).
struct ConnectedSearch<'a> {
    ctx: &'a Context,
    square: &'a [FixedBitSet],
    allowed: &'a FixedBitSet,
    size: usize,
}

impl ConnectedSearch<'_> {
    fn search_root(&self, root: usize) -> Option<Violator> {
        let n = self.allowed.len();
        let mut ext = FixedBitSet::with_capacity(n);
        for u in self.square[root].ones() {
            if u > root && self.allowed.contains(u) {
                ext.insert(u);
            }
        }
        let mut closed = self.square[root].clone();
        closed.insert(root);
        self.extend(root, &mut vec![root], &self.ctx.nbhd[root], ext, &closed)
    }

    fn extend(
        &self,
        root: usize,
        members: &mut Vec<usize>,
        union: &FixedBitSet,
        mut ext: FixedBitSet,
        closed: &FixedBitSet,
    ) -> Option<Violator> {
        if members.len() == self.size {
            return self.ctx.violator(members, union);
        }
        while let Some(w) = ext.ones().next() {
            ext.set(w, false);
            let mut next_ext = ext.clone();
            for u in self.square[w].ones() {
                if u > root && self.allowed.contains(u) && !closed.contains(u) {
                    next_ext.insert(u);
                }
            }
            let mut next_closed = closed.clone();
            next_closed.union_with(&self.square[w]);
            let mut next_union = union.clone();
            next_union.union_with(&self.ctx.nbhd[w]);
            members.push(w);
            if let Some(found) = self.extend(root, members, &next_union, next_ext, &next_closed) {
                return Some(found);
            }
            members.pop();
        }
        None
    }
}

/// `true` iff every subset of `a` has non-positive deficiency. Exponential in
/// `|a|`; the Hall-side counterpart of [`crate::matching::counters`].
pub fn hall_condition_holds(g: &Graph, d: &VertexMultiset, a: &VertexSet) -> bool {
    let members: Vec<Vertex> = a.iter().copied().collect();
    members
        .iter()
        .copied()
        .powerset()
        .all(|sub| hall_deficiency(g, d, &sub.into_iter().collect()).is_ok_and(|x| x <= 0))
}

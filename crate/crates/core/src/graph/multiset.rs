use std::collections::BTreeMap;
use std::fmt;

use super::{Graph, Vertex, VertexSet};
use crate::error::{Error, Result};

/// Multiset of vertices with positive multiplicities. A set defense is a
/// multiset whose multiplicities are all one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexMultiset {
    counts: BTreeMap<Vertex, usize>,
}

impl VertexMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// One copy of every member of `s`.
    pub fn from_set(s: &VertexSet) -> Self {
        s.iter().copied().collect()
    }

    /// From `(vertex, multiplicity)` pairs; zero multiplicities are dropped
    /// and repeated vertices accumulate.
    pub fn from_counts<I: IntoIterator<Item = (Vertex, usize)>>(pairs: I) -> Self {
        let mut m = Self::new();
        for (v, c) in pairs {
            m.insert(v, c);
        }
        m
    }

    pub fn insert(&mut self, v: Vertex, copies: usize) {
        if copies > 0 {
            *self.counts.entry(v).or_insert(0) += copies;
        }
    }

    /// Removes up to `copies` copies of `v`; returns how many were removed.
    pub fn remove(&mut self, v: Vertex, copies: usize) -> usize {
        let Some(c) = self.counts.get_mut(&v) else {
            return 0;
        };
        let taken = copies.min(*c);
        *c -= taken;
        if *c == 0 {
            self.counts.remove(&v);
        }
        taken
    }

    pub fn multiplicity(&self, v: Vertex) -> usize {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    /// Total size counting multiplicities.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `#_D(X)`: copies of `D` that lie in `x`.
    pub fn count_in(&self, x: &VertexSet) -> usize {
        if x.len() < self.counts.len() {
            x.iter().map(|&v| self.multiplicity(v)).sum()
        } else {
            self.counts
                .iter()
                .filter(|(v, _)| x.contains(v))
                .map(|(_, &c)| c)
                .sum()
        }
    }

    /// Distinct vertices carrying at least one copy.
    pub fn support(&self) -> VertexSet {
        self.counts.keys().copied().collect()
    }

    /// `(vertex, multiplicity)` in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    /// Every copy as its own entry, ascending.
    pub fn copies(&self) -> Vec<Vertex> {
        self.iter().flat_map(|(v, c)| std::iter::repeat_n(v, c)).collect()
    }

    pub fn is_set(&self) -> bool {
        self.counts.values().all(|&c| c == 1)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.counts.values().copied().max().unwrap_or(0)
    }

    /// Componentwise `self <= other`.
    pub fn is_submultiset_of(&self, other: &VertexMultiset) -> bool {
        self.iter().all(|(v, c)| other.multiplicity(v) >= c)
    }

    /// Per-vertex multiplicities indexed by `v - 1`.
    pub fn dense_counts(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for (v, c) in self.iter() {
            if v >= 1 && v <= n {
                out[v - 1] = c;
            }
        }
        out
    }

    pub fn check_against(&self, g: &Graph) -> Result<()> {
        match self.counts.keys().find(|&&v| !g.contains(v)) {
            Some(&v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }
}

impl FromIterator<Vertex> for VertexMultiset {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut m = Self::new();
        for v in iter {
            m.insert(v, 1);
        }
        m
    }
}

impl fmt::Display for VertexMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}:{c}")?;
        }
        write!(f, "}}")
    }
}

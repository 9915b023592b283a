//! Finite simple graphs with vertex identities `1..=n`.

mod clique;
pub mod generate;
pub mod io;
mod multiset;

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use multiset::VertexMultiset;

/// Vertex identity, always in `1..=n`.
pub type Vertex = usize;

/// A set of vertex identities, iterated in ascending order.
pub type VertexSet = BTreeSet<Vertex>;

/// Finite simple undirected graph with optional per-vertex role labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    // adj[v - 1] holds the sorted neighbors of v
    adj: Vec<Vec<Vertex>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut b = GraphBuilder::with_vertices(n);
        for (u, v) in edges {
            if u == 0 || u > n {
                return Err(Error::UnknownVertex(u));
            }
            if v == 0 || v > n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    /// Attaches one label per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n()
    }

    /// Sorted open neighborhood of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u - 1].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, ns)| {
            let u = i + 1;
            ns.iter().copied().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v - 1].as_str())
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        s.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// `N[S]`, the union of closed neighborhoods of the members of `s`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        let mut out = VertexSet::new();
        for &v in s {
            out.insert(v);
            out.extend(self.neighbors(v).iter().copied());
        }
        Ok(out)
    }

    /// `N(S) = N[S] \ S`.
    pub fn open_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        let mut out = self.closed_neighborhood(s)?;
        out.retain(|v| !s.contains(v));
        Ok(out)
    }

    /// Closed neighborhood of a single vertex as a bitset indexed by `v - 1`.
    pub(crate) fn closed_neighborhood_bits(&self, v: Vertex) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.n());
        bits.insert(v - 1);
        for &u in self.neighbors(v) {
            bits.insert(u - 1);
        }
        bits
    }

    /// `true` iff the members of `s` are pairwise adjacent.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let members: Vec<_> = s.iter().copied().collect();
        members.iter().all(|&v| self.contains(v))
            && members
                .iter()
                .enumerate()
                .all(|(i, &u)| members[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// Induced subgraph on `keep`. Returns the subgraph and the table mapping
    /// each new identity `i` (at index `i - 1`) back to its old identity.
    /// Labels are carried over.
    pub fn induced(&self, keep: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        self.check_set(keep)?;
        let old: Vec<Vertex> = keep.iter().copied().collect();
        let mut new_id = vec![0usize; self.n() + 1];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i + 1;
        }
        let adj = old
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|&u| (new_id[u] != 0).then_some(new_id[u]))
                    .collect()
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| old.iter().map(|&v| l[v - 1].clone()).collect());
        Ok((Graph { adj, labels }, old))
    }

    /// `G \ X` with identities re-mapped to `1..=n-|X|` in ascending order of
    /// the surviving vertices.
    pub fn delete_vertices(&self, x: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        self.check_set(x)?;
        let keep: VertexSet = self.vertices().filter(|v| !x.contains(v)).collect();
        self.induced(&keep)
    }

    /// Some `t` pairwise adjacent vertices, or `None` if `G` has no `K_t`.
    ///
    /// Exact branch and bound: vertices outside the `(t-1)`-core are
    /// discarded, then each vertex in ascending order seeds a search over its
    /// higher-numbered neighbors, pruned by a greedy coloring bound.
    pub fn has_clique(&self, t: usize) -> Option<VertexSet> {
        clique::find_clique(self, t)
    }
}

/// Incremental construction of a [`Graph`], used by generators and reductions.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    adj: Vec<Vec<Vertex>>,
    labels: Vec<Option<String>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        GraphBuilder {
            adj: vec![Vec::new(); n],
            labels: vec![None; n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Vertex {
        self.adj.push(Vec::new());
        self.labels.push(Some(label.into()));
        self.adj.len()
    }

    /// Adds `count` vertices labeled `prefix#1..prefix#count`.
    pub fn add_group(&mut self, prefix: &str, count: usize) -> Vec<Vertex> {
        (1..=count)
            .map(|i| self.add_vertex(format!("{prefix}#{i}")))
            .collect()
    }

    pub fn set_label(&mut self, v: Vertex, label: impl Into<String>) {
        self.labels[v - 1] = Some(label.into());
    }

    /// Panics on a self-loop or unknown vertex; duplicates are merged at build.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert!(u != v, "self-loop at vertex {u}");
        self.adj[u - 1].push(v);
        self.adj[v - 1].push(u);
    }

    pub fn add_clique(&mut self, vs: &[Vertex]) {
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                self.add_edge(u, v);
            }
        }
    }

    pub fn add_biclique(&mut self, left: &[Vertex], right: &[Vertex]) {
        for &u in left {
            for &v in right {
                self.add_edge(u, v);
            }
        }
    }

    /// Finalizes adjacency. Labels are attached only if every vertex has one.
    pub fn build(mut self) -> Graph {
        for ns in &mut self.adj {
            ns.sort_unstable();
            ns.dedup();
        }
        let labels = if !self.labels.is_empty() && self.labels.iter().all(Option::is_some) {
            Some(self.labels.into_iter().map(Option::unwrap).collect())
        } else {
            None
        };
        Graph {
            adj: self.adj,
            labels,
        }
    }
}

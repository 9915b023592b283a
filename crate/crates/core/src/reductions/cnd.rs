//! Clique node deletion: delete at most `s` vertices so that no `K_t` remains.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq)]
pub struct CndInstance {
    pub graph: Graph,
    /// Deletion budget.
    pub s: usize,
    /// Forbidden clique size.
    pub t: usize,
}

impl CndInstance {
    pub fn new(graph: Graph, s: usize, t: usize) -> Result<Self> {
        if s == 0 || t == 0 || s > graph.n() {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= s <= n and t >= 1 (s = {s}, t = {t}, n = {})",
                graph.n()
            )));
        }
        Ok(CndInstance { graph, s, t })
    }

    /// `true` iff `x` fits the budget and leaves no `K_t`.
    pub fn is_solution(&self, x: &VertexSet) -> Result<bool> {
        self.graph.check_set(x)?;
        Ok(x.len() <= self.s && self.graph.delete_vertices(x)?.0.has_clique(self.t).is_none())
    }

    /// Lexicographically least among the smallest valid deletion sets, or
    /// `None` if every set of at most `s` vertices leaves a `K_t`.
    pub fn solve_bruteforce(&self) -> Option<VertexSet> {
        (0..=self.s).find_map(|size| {
            self.graph
                .vertices()
                .combinations(size)
                .map(|c| c.into_iter().collect::<VertexSet>())
                .find(|x| self.is_solution(x).expect("vertices in range"))
        })
    }
}

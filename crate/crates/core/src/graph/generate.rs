//! Deterministic graph generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

/// Generator kinds accepted by [`generate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphKind {
    Complete(usize),
    /// `K_{1,t}`: center 1, leaves `2..=t+1`.
    Star(usize),
    Path(usize),
    Cycle(usize),
    /// `G(n, p)`; requires a seed.
    Random {
        n: usize,
        p: f64,
    },
}

pub fn generate(kind: GraphKind, seed: Option<u64>) -> Result<Graph> {
    match kind {
        GraphKind::Complete(n) => Ok(complete(n)),
        GraphKind::Star(t) => Ok(star(t)),
        GraphKind::Path(n) => Ok(path(n)),
        GraphKind::Cycle(n) => cycle(n),
        GraphKind::Random { n, p } => {
            let seed = seed.ok_or_else(|| Error::InvalidParameter("random graphs need a seed".into()))?;
            random(n, p, seed)
        }
    }
}

pub fn complete(n: usize) -> Graph {
    let mut b = GraphBuilder::with_vertices(n);
    let all: Vec<_> = (1..=n).collect();
    b.add_clique(&all);
    b.build()
}

pub fn star(t: usize) -> Graph {
    let mut b = GraphBuilder::with_vertices(t + 1);
    for leaf in 2..=t + 1 {
        b.add_edge(1, leaf);
    }
    b.build()
}

pub fn path(n: usize) -> Graph {
    let mut b = GraphBuilder::with_vertices(n);
    for v in 2..=n {
        b.add_edge(v - 1, v);
    }
    b.build()
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut b = GraphBuilder::with_vertices(n);
    for v in 2..=n {
        b.add_edge(v - 1, v);
    }
    b.add_edge(n, 1);
    Ok(b.build())
}

/// Erdős–Rényi graph; every pair is an edge independently with probability `p`.
pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::with_vertices(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    Ok(b.build())
}

/// The Petersen graph: outer 5-cycle 1..5, inner pentagram 6..10.
pub fn petersen() -> Graph {
    let mut b = GraphBuilder::with_vertices(10);
    for i in 0..5 {
        b.add_edge(1 + i, 1 + (i + 1) % 5);
        b.add_edge(6 + i, 6 + (i + 2) % 5);
        b.add_edge(1 + i, 6 + i);
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_shape() {
        let g = star(3);
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 3);
        assert!(g.edges().all(|(u, _)| u == 1));
    }

    #[test]
    fn complete_edges() {
        assert_eq!(complete(4).edge_count(), 6);
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random(10, 0.5, 7).unwrap(), random(10, 0.5, 7).unwrap());
        assert!(random(3, 1.5, 0).is_err());
        assert!(generate(GraphKind::Random { n: 3, p: 0.5 }, None).is_err());
    }

    #[test]
    fn petersen_is_cubic() {
        let g = petersen();
        assert_eq!(g.edge_count(), 15);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }

    #[test]
    fn cycle_params() {
        assert!(cycle(2).is_err());
        assert_eq!(cycle(4).unwrap().edge_count(), 4);
    }
}

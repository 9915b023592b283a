//! Bipartite maximum matching and the matching semantics of "defense counters
//! attack".

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMultiset, VertexSet};

const FREE: usize = usize::MAX;

/// Bipartite incidence between `left` and `right` tokens, given by index.
#[derive(Clone, Debug)]
pub struct BipartiteInstance {
    right: usize,
    adj: Vec<Vec<usize>>,
}

/// A maximum matching as `(left, right)` pairs sorted by left index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub size: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl BipartiteInstance {
    pub fn new(left: usize, right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); left];
        for &(l, r) in edges {
            if l >= left || r >= right {
                return Err(Error::InvalidParameter(format!(
                    "edge ({l}, {r}) outside {left} x {right}"
                )));
            }
            if adj[l].contains(&r) {
                return Err(Error::InvalidParameter(format!("duplicate edge ({l}, {r})")));
            }
            adj[l].push(r);
        }
        Ok(BipartiteInstance { right, adj })
    }

    pub fn left_len(&self) -> usize {
        self.adj.len()
    }

    pub fn right_len(&self) -> usize {
        self.right
    }

    /// Hopcroft–Karp: BFS layering from free left tokens, then vertex-disjoint
    /// shortest augmenting paths by DFS, until no augmenting path remains.
    pub fn max_matching(&self) -> Matching {
        let left = self.adj.len();
        let mut match_l = vec![FREE; left];
        let mut match_r = vec![FREE; self.right];
        let mut dist = vec![0usize; left];
        let mut size = 0;

        loop {
            let mut queue = VecDeque::new();
            for l in 0..left {
                if match_l[l] == FREE {
                    dist[l] = 0;
                    queue.push_back(l);
                } else {
                    dist[l] = usize::MAX;
                }
            }
            let mut reachable_free = false;
            while let Some(l) = queue.pop_front() {
                for &r in &self.adj[l] {
                    match match_r[r] {
                        FREE => reachable_free = true,
                        l2 if dist[l2] == usize::MAX => {
                            dist[l2] = dist[l] + 1;
                            queue.push_back(l2);
                        }
                        _ => {}
                    }
                }
            }
            if !reachable_free {
                break;
            }
            for l in 0..left {
                if match_l[l] == FREE && self.augment(l, &mut match_l, &mut match_r, &mut dist) {
                    size += 1;
                }
            }
        }

        let pairs = match_l
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != FREE)
            .map(|(l, &r)| (l, r))
            .collect();
        Matching { size, pairs }
    }

    fn augment(&self, l: usize, match_l: &mut [usize], match_r: &mut [usize], dist: &mut [usize]) -> bool {
        for &r in &self.adj[l] {
            let next = match_r[r];
            let ok =
                next == FREE || (dist[next] == dist[l] + 1 && self.augment(next, match_l, match_r, dist));
            if ok {
                match_l[l] = r;
                match_r[r] = l;
                return true;
            }
        }
        dist[l] = usize::MAX;
        false
    }
}

/// Attackers on the left, one right token per defender copy, an edge when the
/// defender's vertex lies in the attacker's closed neighborhood.
pub fn attack_instance(g: &Graph, d: &VertexMultiset, a: &VertexSet) -> BipartiteInstance {
    let tokens = d.copies();
    let adj = a
        .iter()
        .map(|&v| {
            tokens
                .iter()
                .enumerate()
                .filter(|&(_, &u)| u == v || g.adjacent(u, v))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    BipartiteInstance {
        right: tokens.len(),
        adj,
    }
}

/// `true` iff every attacked vertex can be matched to a distinct defender copy
/// on itself or a neighbor. `a` and the support of `d` must lie in `g`.
pub fn counters(g: &Graph, d: &VertexMultiset, a: &VertexSet) -> bool {
    if a.len() > d.total() {
        return false;
    }
    attack_instance(g, d, a).max_matching().size == a.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn brute_force(left: usize, right: usize, edges: &[(usize, usize)]) -> usize {
        // every injective partial assignment, by recursion over left tokens
        fn go(l: usize, left: usize, used: &mut Vec<bool>, adj: &[Vec<usize>]) -> usize {
            if l == left {
                return 0;
            }
            let mut best = go(l + 1, left, used, adj);
            for &r in &adj[l] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + go(l + 1, left, used, adj));
                    used[r] = false;
                }
            }
            best
        }
        let mut adj = vec![Vec::new(); left];
        for &(l, r) in edges {
            adj[l].push(r);
        }
        go(0, left, &mut vec![false; right], &adj)
    }

    #[test]
    fn examples() {
        let k22 = BipartiteInstance::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(k22.max_matching().size, 2);
        let fan = BipartiteInstance::new(1, 3, &[(0, 0), (0, 1), (0, 2)]).unwrap();
        assert_eq!(fan.max_matching().size, 1);
        // a-x, b-x, c-y
        let edges = [(0, 0), (1, 0), (2, 1)];
        assert_eq!(brute_force(3, 2, &edges), 2);
        let m = BipartiteInstance::new(3, 2, &edges).unwrap().max_matching();
        assert_eq!(m.size, 2);
        assert_eq!(m.pairs.len(), 2);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(BipartiteInstance::new(1, 1, &[(0, 1)]).is_err());
        assert!(BipartiteInstance::new(1, 1, &[(0, 0), (0, 0)]).is_err());
    }

    #[test]
    fn counters_examples() {
        let star = generate::star(5);
        let d = VertexMultiset::from_counts([(1, 2)]);
        assert!(counters(&star, &d, &VertexSet::new()));
        assert!(counters(&star, &d, &VertexSet::from([2, 3])));
        assert!(!counters(&star, &d, &VertexSet::from([2, 3, 4])));
        let p3 = generate::path(3);
        let d = VertexMultiset::from_counts([(2, 1)]);
        assert!(!counters(&p3, &d, &VertexSet::from([1, 3])));
        assert_eq!(
            attack_instance(&p3, &d, &VertexSet::from([1, 3]))
                .max_matching()
                .size,
            1
        );
    }

    proptest! {
        #[test]
        fn matching_is_maximum_and_valid(
            left in 0usize..6,
            right in 0usize..6,
            bits in proptest::collection::vec(any::<bool>(), 36),
        ) {
            let edges: Vec<_> = (0..left)
                .cartesian_product(0..right)
                .filter(|&(l, r)| bits[l * 6 + r])
                .collect();
            let m = BipartiteInstance::new(left, right, &edges).unwrap().max_matching();
            prop_assert_eq!(m.size, brute_force(left, right, &edges));
            prop_assert_eq!(m.pairs.len(), m.size);
            prop_assert!(m.pairs.iter().all(|p| edges.contains(p)));
            prop_assert!(m.pairs.iter().map(|p| p.1).all_unique());
        }

        #[test]
        fn size_ignores_edge_order(
            bits in proptest::collection::vec(any::<bool>(), 25),
            perm in Just((0..25usize).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let edges: Vec<_> = (0..25).filter(|&i| bits[i]).map(|i| (i / 5, i % 5)).collect();
            let shuffled: Vec<_> = perm.iter().filter(|&&i| bits[i]).map(|&i| (i / 5, i % 5)).collect();
            let a = BipartiteInstance::new(5, 5, &edges).unwrap().max_matching().size;
            let b = BipartiteInstance::new(5, 5, &shuffled).unwrap().max_matching().size;
            prop_assert_eq!(a, b);
        }
    }
}

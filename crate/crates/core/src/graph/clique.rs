use fixedbitset::FixedBitSet;

use super::{Graph, VertexSet};

pub(super) fn find_clique(g: &Graph, t: usize) -> Option<VertexSet> {
    if t == 0 {
        return Some(VertexSet::new());
    }
    if t == 1 {
        return (g.n() >= 1).then(|| VertexSet::from([1]));
    }

    // (t-1)-core: a vertex of a K_t keeps degree >= t-1 inside any superset of it
    let mut alive = vec![true; g.n()];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = (0..g.n()).filter(|&i| deg[i] + 1 < t).collect();
    for &i in &stack {
        alive[i] = false;
    }
    while let Some(i) = stack.pop() {
        for &u in g.neighbors(i + 1) {
            let j = u - 1;
            if alive[j] {
                deg[j] -= 1;
                if deg[j] + 1 < t {
                    alive[j] = false;
                    stack.push(j);
                }
            }
        }
    }

    let ids: Vec<usize> = (0..g.n()).filter(|&i| alive[i]).map(|i| i + 1).collect();
    if ids.len() < t {
        return None;
    }
    let mut local = vec![usize::MAX; g.n() + 1];
    for (i, &v) in ids.iter().enumerate() {
        local[v] = i;
    }
    let m = ids.len();
    let adj: Vec<FixedBitSet> = ids
        .iter()
        .map(|&v| {
            let mut bits = FixedBitSet::with_capacity(m);
            for &u in g.neighbors(v) {
                if local[u] != usize::MAX {
                    bits.insert(local[u]);
                }
            }
            bits
        })
        .collect();

    let mut search = Search {
        adj: &adj,
        target: t,
        clique: Vec::with_capacity(t),
    };
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    if search.expand(all) {
        Some(search.clique.iter().map(|&i| ids[i]).collect())
    } else {
        None
    }
}

struct Search<'a> {
    adj: &'a [FixedBitSet],
    target: usize,
    clique: Vec<usize>,
}

impl Search<'_> {
    fn expand(&mut self, mut cand: FixedBitSet) -> bool {
        let need = self.target - self.clique.len();
        if need == 0 {
            return true;
        }
        if cand.count_ones(..) < need || self.color_bound(&cand) < need {
            return false;
        }
        let order: Vec<usize> = cand.ones().collect();
        let mut remaining = order.len();
        for v in order {
            if self.clique.len() + remaining < self.target {
                return false;
            }
            let mut next = cand.clone();
            next.intersect_with(&self.adj[v]);
            self.clique.push(v);
            if self.expand(next) {
                return true;
            }
            self.clique.pop();
            cand.set(v, false);
            remaining -= 1;
        }
        false
    }

    /// Number of colors in a greedy coloring of `cand`; an upper bound on the
    /// largest clique inside it.
    fn color_bound(&self, cand: &FixedBitSet) -> usize {
        let mut uncolored = cand.clone();
        let mut colors = 0;
        while uncolored.count_ones(..) > 0 {
            colors += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.ones().next() {
                avail.set(v, false);
                avail.difference_with(&self.adj[v]);
                uncolored.set(v, false);
            }
        }
        colors
    }
}

#[cfg(test)]
mod tests {
    use super::super::generate;
    use super::*;
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive(g: &Graph, t: usize) -> bool {
        g.vertices()
            .combinations(t)
            .any(|c| g.is_clique(&c.into_iter().collect()))
    }

    #[test]
    fn examples() {
        let k4 = generate::complete(4);
        assert_eq!(k4.has_clique(4), Some(VertexSet::from([1, 2, 3, 4])));
        assert_eq!(generate::cycle(5).unwrap().has_clique(3), None);
        assert_eq!(generate::petersen().has_clique(3), None);
        assert!(generate::petersen().has_clique(2).is_some());
        assert_eq!(Graph::empty(0).has_clique(1), None);
        assert_eq!(Graph::empty(3).has_clique(0), Some(VertexSet::new()));
    }

    #[test]
    fn petersen_triangle_free_by_enumeration() {
        assert!(!naive(&generate::petersen(), 3));
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.1..0.9);
            let g = generate::random(n, p, rng.gen()).unwrap();
            for t in 1..=n.min(6) {
                let found = g.has_clique(t);
                assert_eq!(found.is_some(), naive(&g, t), "n={n} t={t}");
                if let Some(w) = found {
                    assert_eq!(w.len(), t);
                    assert!(g.is_clique(&w));
                }
            }
        }
    }

    #[test]
    fn deletion_never_creates_cliques() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(3..=11);
            let g = generate::random(n, 0.6, rng.gen()).unwrap();
            let t = rng.gen_range(2..=5);
            let mut x = VertexSet::new();
            let mut prev = g.has_clique(t).is_some();
            for v in g.vertices() {
                if rng.gen_bool(0.5) {
                    x.insert(v);
                    let now = g.delete_vertices(&x).unwrap().0.has_clique(t).is_some();
                    assert!(prev || !now);
                    prev = now;
                }
            }
        }
    }
}

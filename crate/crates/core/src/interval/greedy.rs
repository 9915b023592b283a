//! Greedy minimum multiset `k`-defense on interval graphs.
//!
//! Intervals are visited by ascending right endpoint `x`. For each block
//! `B_{x,m}`, `m <= k`, that is still short of defenders, the missing copies go
//! onto the interval containing `x` that reaches furthest right.
//!
//! The fast path never materializes neighborhoods. With all defenders placed
//! so far having left endpoint `<= x`, a defender `d` misses `N[B_{x,m}]`
//! exactly when `r(d) < L_m` or (`r(d) > x` and `l(d) > R_m`), where `L_m` is
//! the `m`-th largest left endpoint in `V_x` and `R_m` the largest right
//! endpoint among those top `m`. Defenders are appended with strictly
//! increasing left and right endpoints, and `L_m`, `R_m` and `x` only grow, so
//! one forward pointer per `m` over the defender list answers each count in
//! amortized constant time: `O(n log n + nk)` overall.

use super::{Endpoint, IntervalInstance};
use crate::error::Result;
use crate::graph::{Vertex, VertexMultiset};

/// Index of the interval with `left <= x` maximizing `right`, among `order`
/// (sorted by left) up to the advancing cursor.
struct Furthest<'a, T> {
    inst: &'a IntervalInstance<T>,
    by_left: Vec<Vertex>,
    cursor: usize,
    best: Option<Vertex>,
}

impl<'a, T: Endpoint> Furthest<'a, T> {
    fn new(inst: &'a IntervalInstance<T>) -> Self {
        let mut by_left: Vec<Vertex> = inst.vertices().collect();
        by_left.sort_by(|&a, &b| inst.interval(a).left.cmp(&inst.interval(b).left));
        Furthest {
            inst,
            by_left,
            cursor: 0,
            best: None,
        }
    }

    fn upto(&mut self, x: &T) -> Vertex {
        while let Some(&v) = self.by_left.get(self.cursor) {
            if &self.inst.interval(v).left > x {
                break;
            }
            if self
                .best
                .is_none_or(|b| self.inst.interval(v).right > self.inst.interval(b).right)
            {
                self.best = Some(v);
            }
            self.cursor += 1;
        }
        self.best.expect("the interval ending at x starts at or before x")
    }
}

fn by_right<T: Endpoint>(inst: &IntervalInstance<T>) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = inst.vertices().collect();
    order.sort_by(|&a, &b| inst.interval(a).right.cmp(&inst.interval(b).right));
    order
}

/// Straightforward version: materializes every block and counts defenders
/// meeting it by direct interval tests. `O(n^2 k)`; kept as the reference for
/// differential testing.
pub fn greedy_defense_reference<T: Endpoint>(inst: &IntervalInstance<T>, k: usize) -> Result<VertexMultiset> {
    inst.validate()?;
    let mut d = VertexMultiset::new();
    let mut furthest = Furthest::new(inst);
    for (idx, v) in by_right(inst).into_iter().enumerate() {
        let x = inst.interval(v).right.clone();
        for m in 1..=(idx + 1).min(k) {
            let block = inst.block(&x, m)?;
            let covered: usize = d
                .iter()
                .filter(|&(u, _)| {
                    block
                        .members
                        .iter()
                        .any(|&b| inst.interval(u).intersects(inst.interval(b)))
                })
                .map(|(_, c)| c)
                .sum();
            if covered < m {
                d.insert(furthest.upto(&x), m - covered);
            }
        }
    }
    Ok(d)
}

struct Placed<T> {
    vertex: Vertex,
    left: T,
    right: T,
}

/// Fast sweep; output identical to [`greedy_defense_reference`].
pub fn greedy_defense<T: Endpoint>(inst: &IntervalInstance<T>, k: usize) -> Result<VertexMultiset> {
    inst.validate()?;
    let mut furthest = Furthest::new(inst);
    // top-k members of V_x by left endpoint, descending
    let mut top: Vec<Vertex> = Vec::with_capacity(k + 1);
    let mut placed: Vec<Placed<T>> = Vec::new();
    // copies on placed[..j] is before[j]; one more slot than `placed`
    let mut before: Vec<usize> = vec![0];
    let mut short_ptr = vec![0usize; k + 1];
    let mut far_ptr = vec![0usize; k + 1];
    let mut beyond_x = 0usize;

    let left = |v: Vertex| &inst.interval(v).left;
    for (idx, v) in by_right(inst).into_iter().enumerate() {
        let x = inst.interval(v).right.clone();
        if top.len() < k || top.last().is_some_and(|&t| left(v) > left(t)) {
            let at = top.partition_point(|&t| left(t) > left(v));
            top.insert(at, v);
            top.truncate(k);
        }

        let mut reach: Option<&T> = None;
        for m in 1..=(idx + 1).min(k) {
            let lm = left(top[m - 1]);
            let rm = &inst.interval(top[m - 1]).right;
            let r_max = match reach {
                Some(r) if r >= rm => r,
                _ => rm,
            };
            reach = Some(r_max);

            let total = *before.last().unwrap();
            while short_ptr[m] < placed.len() && &placed[short_ptr[m]].right < lm {
                short_ptr[m] += 1;
            }
            while far_ptr[m] < placed.len() && &placed[far_ptr[m]].left <= r_max {
                far_ptr[m] += 1;
            }
            while beyond_x < placed.len() && placed[beyond_x].right <= x {
                beyond_x += 1;
            }
            let missing_short = before[short_ptr[m]];
            let missing_far = total - before[far_ptr[m].max(beyond_x)];
            let covered = total - missing_short - missing_far;
            if covered < m {
                let need = m - covered;
                let f = furthest.upto(&x);
                match placed.last() {
                    Some(p) if p.vertex == f => {}
                    _ => {
                        placed.push(Placed {
                            vertex: f,
                            left: inst.interval(f).left.clone(),
                            right: inst.interval(f).right.clone(),
                        });
                        before.push(total);
                    }
                }
                *before.last_mut().unwrap() = total + need;
            }
        }
    }

    let mut d = VertexMultiset::new();
    for (j, p) in placed.iter().enumerate() {
        d.insert(p.vertex, before[j + 1] - before[j]);
    }
    Ok(d)
}

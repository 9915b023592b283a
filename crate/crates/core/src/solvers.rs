//! Exact minimum defenses by exhaustive search, for desk-scale graphs.
//!
//! Candidates are enumerated by ascending size and, within one size, in
//! lexicographic order of their sorted copy sequence, so the first accepted
//! candidate is the canonical optimum.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::defense::good_defense;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexMultiset, VertexSet};
use crate::matching::counters;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    /// Minimum defense size `ℓ`.
    pub optimum: usize,
    pub witness: VertexMultiset,
    /// Number of complete candidates checked.
    pub explored: u64,
}

/// Smallest set defense (multiplicities one) countering every `k`-attack.
pub fn min_set_defense(g: &Graph, k: usize) -> SolveResult {
    search_min(g, k, 1)
}

/// Smallest multiset defense countering every `k`-attack. More than `k`
/// copies on one vertex can never be matched, so multiplicities are capped at
/// `k`.
pub fn min_multiset_defense(g: &Graph, k: usize) -> SolveResult {
    search_min(g, k, k.max(1))
}

/// Minimum dominating set, i.e. the set defense for `k = 1`.
pub fn domination_number(g: &Graph) -> SolveResult {
    min_set_defense(g, 1)
}

/// Smallest `D` with `lower ⊆ D ⊆ upper` countering every listed attack, or
/// `None` when even `upper` fails.
pub fn min_constrained_multiset(
    g: &Graph,
    attacks: &[VertexSet],
    lower: &VertexMultiset,
    upper: &VertexMultiset,
) -> Result<Option<SolveResult>> {
    lower.check_against(g)?;
    upper.check_against(g)?;
    for a in attacks {
        g.check_set(a)?;
    }
    if !lower.is_submultiset_of(upper) {
        return Err(Error::Precondition(
            "lower bound is not contained in upper bound".into(),
        ));
    }
    let counters_all = |d: &VertexMultiset| attacks.iter().all(|a| counters(g, d, a));
    if !counters_all(upper) {
        return Ok(None);
    }

    let slack: Vec<(Vertex, usize)> = upper
        .iter()
        .map(|(v, c)| (v, c - lower.multiplicity(v)))
        .filter(|&(_, c)| c > 0)
        .collect();
    let mut explored = 0u64;
    let mut extra = vec![0usize; slack.len()];
    for size in 0..=slack.iter().map(|s| s.1).sum() {
        let mut accept = |extra: &[usize]| {
            explored += 1;
            let mut d = lower.clone();
            for (&(v, _), &c) in slack.iter().zip(extra) {
                d.insert(v, c);
            }
            counters_all(&d).then_some(d)
        };
        let caps: Vec<usize> = slack.iter().map(|s| s.1).collect();
        if let Some(d) = lex_multisets(&caps, 0, size, &mut extra, &mut accept) {
            return Ok(Some(SolveResult {
                optimum: d.total(),
                witness: d,
                explored,
            }));
        }
    }
    unreachable!("upper bound counters every attack")
}

fn search_min(g: &Graph, k: usize, cap: usize) -> SolveResult {
    let checker = AttackFamily::new(g, k);
    let caps = vec![cap; g.n()];
    let mut counts = vec![0usize; g.n()];
    let mut explored = 0u64;
    for size in 0..=g.n() * cap {
        let mut accept = |counts: &[usize]| {
            explored += 1;
            checker
                .satisfied_by(counts)
                .then(|| VertexMultiset::from_counts(counts.iter().enumerate().map(|(i, &c)| (i + 1, c))))
        };
        if let Some(witness) = lex_multisets(&caps, 0, size, &mut counts, &mut accept) {
            assert!(good_defense(g, &witness, k), "solver witness failed verification");
            return SolveResult {
                optimum: size,
                witness,
                explored,
            };
        }
    }
    unreachable!("one copy per vertex counters every attack")
}

/// Visits count vectors with `counts[i] <= caps[i]` summing to `remaining`
/// in lexicographic order of the sorted copy sequence (more copies on earlier
/// positions first), stopping at the first accepted one.
fn lex_multisets<T>(
    caps: &[usize],
    pos: usize,
    remaining: usize,
    counts: &mut [usize],
    accept: &mut impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if pos == caps.len() {
        return if remaining == 0 { accept(counts) } else { None };
    }
    let room: usize = caps[pos + 1..].iter().sum();
    let hi = caps[pos].min(remaining);
    let lo = remaining.saturating_sub(room);
    for c in (lo..=hi).rev() {
        counts[pos] = c;
        if let Some(found) = lex_multisets(caps, pos + 1, remaining - c, counts, accept) {
            counts[pos] = 0;
            return Some(found);
        }
    }
    counts[pos] = 0;
    None
}

/// Every attack of size at most `k`, reduced to one constraint
/// `#_D(N[A]) >= |A|` per distinct closed neighborhood (keeping the largest
/// `|A|`). Checking a candidate is then a sum over each neighborhood.
struct AttackFamily {
    constraints: Vec<(usize, Vec<usize>)>,
}

impl AttackFamily {
    fn new(g: &Graph, k: usize) -> Self {
        let n = g.n();
        let nbhd: Vec<FixedBitSet> = g.vertices().map(|v| g.closed_neighborhood_bits(v)).collect();
        let mut best: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut stack = vec![(0usize, 0usize, FixedBitSet::with_capacity(n))];
        while let Some((start, size, union)) = stack.pop() {
            if size > 0 {
                let e = best.entry(union.clone()).or_insert(0);
                *e = (*e).max(size);
            }
            if size < k {
                for v in start..n {
                    let mut next = union.clone();
                    next.union_with(&nbhd[v]);
                    stack.push((v + 1, size + 1, next));
                }
            }
        }
        let mut constraints: Vec<(usize, Vec<usize>)> = best
            .into_iter()
            .map(|(mask, need)| (need, mask.ones().collect()))
            .collect();
        constraints.sort();
        AttackFamily { constraints }
    }

    fn satisfied_by(&self, counts: &[usize]) -> bool {
        self.constraints
            .iter()
            .all(|(need, members)| members.iter().map(|&i| counts[i]).sum::<usize>() >= *need)
    }
}

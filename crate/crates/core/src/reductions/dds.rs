//! From clique node deletion `(G, s, t)` to defensive domination
//! `(G', k, ell)`.
//!
//! Vertex groups of `G'` and their labels:
//!
//! | group | size | label |
//! |---|---|---|
//! | `V` | `2n` | `v'(v)`, `v''(v)` |
//! | `E` | `m` | `e'(u,v)` |
//! | `I1`, `I4`, `Q1`, `Q4` | `n+s` | `I1#i` ... |
//! | `I2` | `n+s-C(t,2)` | `I2#i` |
//! | `I3` | `n+s+ell` | `I3#i` |
//! | `Q2` | `n+s-(t+1)` | `Q2#i` |
//! | `I_v`, `I'_v` per `v` | `C(t,2)`, `t` | `Iv(v)#i`, `I'v(v)#i` |
//!
//! `Q1`, `Q2`, `Q4` are cliques; `e'(u,v)` sees `u', u'', v', v''`; complete
//! bipartite joins `(I1, Q1)`, `(Q2, Q1 ∪ I2 ∪ E ∪ I_V)`, `(V, Q4 ∪ I3)`,
//! `(Q4, I4)`, `({v', v''}, I_v)` and `(I_v, I'_v)`.

use std::str::FromStr;

use itertools::Itertools;

use super::cnd::CndInstance;
use crate::defense::good_defense;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Vertex, VertexMultiset, VertexSet};

fn choose2(t: usize) -> usize {
    t * t.saturating_sub(1) / 2
}

/// Which defense bound to emit. The two differ by 2; see
/// [`ell_for`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EllMode {
    /// `4(n+s) + nt - (t+1)`: the size of the defense built in the forward
    /// direction, and the budget the backward direction counts with.
    #[default]
    ProofConsistent,
    /// `4(n+s) + nt - (t-1)`, as the bound is written in the construction.
    Literal,
}

impl FromStr for EllMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proof" | "proof-consistent" => Ok(EllMode::ProofConsistent),
            "literal" => Ok(EllMode::Literal),
            _ => Err(Error::InvalidParameter(format!("unknown ell mode `{s}`"))),
        }
    }
}

pub fn ell_for(n: usize, s: usize, t: usize, mode: EllMode) -> usize {
    let base = 4 * (n + s) + n * t;
    match mode {
        EllMode::ProofConsistent => base - (t + 1),
        EllMode::Literal => base - (t - 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdsLayout {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    /// `v'` and `v''` of source vertex `v` at index `v - 1`.
    pub v1: Vec<Vertex>,
    pub v2: Vec<Vertex>,
    /// `e'` with its source edge `(u, v)`, `u < v`.
    pub e: Vec<(Vertex, (Vertex, Vertex))>,
    pub i1: Vec<Vertex>,
    pub i2: Vec<Vertex>,
    pub i3: Vec<Vertex>,
    pub i4: Vec<Vertex>,
    pub q1: Vec<Vertex>,
    pub q2: Vec<Vertex>,
    pub q4: Vec<Vertex>,
    pub iv: Vec<Vec<Vertex>>,
    pub ipv: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DdsInstance {
    pub graph: Graph,
    pub k: usize,
    pub ell: usize,
    pub layout: DdsLayout,
}

/// Output of [`DdsInstance::extract_deletion_set`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub deletion_set: VertexSet,
    /// The defense after the three normalization moves.
    pub normalized: VertexMultiset,
    /// Whether the input defense was verified to counter every `k`-attack.
    pub audited: bool,
}

pub fn cnd_to_dds(inst: &CndInstance, mode: EllMode) -> Result<DdsInstance> {
    let (g, s, t) = (&inst.graph, inst.s, inst.t);
    let n = g.n();
    if t < 4 {
        return Err(Error::Precondition(format!("t >= 4 required, got t = {t}")));
    }
    if n + s < choose2(t) {
        return Err(Error::Precondition(format!(
            "n + s >= C(t,2) required, got {} < {}",
            n + s,
            choose2(t)
        )));
    }
    if n + s < t + 1 {
        return Err(Error::Precondition(format!(
            "n + s >= t + 1 required, got {} < {}",
            n + s,
            t + 1
        )));
    }
    let k = n + s;
    let ell = ell_for(n, s, t, mode);

    let mut b = GraphBuilder::new();
    let mut v1 = Vec::with_capacity(n);
    let mut v2 = Vec::with_capacity(n);
    for v in g.vertices() {
        v1.push(b.add_vertex(format!("v'({v})")));
        v2.push(b.add_vertex(format!("v''({v})")));
    }
    let e: Vec<(Vertex, (Vertex, Vertex))> = g
        .edges()
        .map(|(u, v)| (b.add_vertex(format!("e'({u},{v})")), (u, v)))
        .collect();
    let i1 = b.add_group("I1", k);
    let i2 = b.add_group("I2", k - choose2(t));
    let i3 = b.add_group("I3", k + ell);
    let i4 = b.add_group("I4", k);
    let q1 = b.add_group("Q1", k);
    let q2 = b.add_group("Q2", k - (t + 1));
    let q4 = b.add_group("Q4", k);
    let mut iv = Vec::with_capacity(n);
    let mut ipv = Vec::with_capacity(n);
    for v in g.vertices() {
        iv.push(b.add_group(&format!("Iv({v})"), choose2(t)));
        ipv.push(b.add_group(&format!("I'v({v})"), t));
    }

    for &(ev, (u, v)) in &e {
        b.add_biclique(&[ev], &[v1[u - 1], v2[u - 1], v1[v - 1], v2[v - 1]]);
    }
    b.add_clique(&q1);
    b.add_clique(&q2);
    b.add_clique(&q4);
    b.add_biclique(&i1, &q1);
    let all_iv: Vec<Vertex> = iv.iter().flatten().copied().collect();
    let evs: Vec<Vertex> = e.iter().map(|p| p.0).collect();
    b.add_biclique(&q2, &[&q1[..], &i2, &evs, &all_iv].concat());
    let vgroup: Vec<Vertex> = v1.iter().chain(&v2).copied().collect();
    b.add_biclique(&vgroup, &[&q4[..], &i3].concat());
    b.add_biclique(&q4, &i4);
    for v in 0..n {
        b.add_biclique(&[v1[v], v2[v]], &iv[v]);
        b.add_biclique(&iv[v], &ipv[v]);
    }

    Ok(DdsInstance {
        graph: b.build(),
        k,
        ell,
        layout: DdsLayout {
            n,
            s,
            t,
            v1,
            v2,
            e,
            i1,
            i2,
            i3,
            i4,
            q1,
            q2,
            q4,
            iv,
            ipv,
        },
    })
}

fn parse_source(label: &str, prefix: &str, suffix: &str) -> Option<usize> {
    label.strip_prefix(prefix)?.strip_suffix(suffix)?.parse().ok()
}

impl DdsLayout {
    /// Recovers the layout from role labels; `k = n + s` fixes `s`.
    pub fn from_graph(g: &Graph, k: usize) -> Result<Self> {
        let labels = g
            .labels()
            .ok_or_else(|| Error::InvalidParameter("graph carries no role labels".into()))?;
        let mut v1 = Vec::new();
        let mut v2 = Vec::new();
        let mut e = Vec::new();
        let mut groups: [Vec<Vertex>; 7] = Default::default();
        let mut iv: Vec<(usize, Vertex)> = Vec::new();
        let mut ipv: Vec<(usize, Vertex)> = Vec::new();
        let bad = |l: &str| Error::InvalidParameter(format!("unrecognized role label `{l}`"));
        for (i, l) in labels.iter().enumerate() {
            let v = i + 1;
            if let Some(src) = parse_source(l, "v''(", ")") {
                v2.push((src, v));
            } else if let Some(src) = parse_source(l, "v'(", ")") {
                v1.push((src, v));
            } else if let Some(body) = l.strip_prefix("e'(").and_then(|r| r.strip_suffix(')')) {
                let (a, c) = body.split_once(',').ok_or_else(|| bad(l))?;
                let pair = (a.parse().map_err(|_| bad(l))?, c.parse().map_err(|_| bad(l))?);
                e.push((v, pair));
            } else if let Some((head, _)) = l.split_once('#') {
                if let Some(src) = parse_source(head, "I'v(", ")") {
                    ipv.push((src, v));
                } else if let Some(src) = parse_source(head, "Iv(", ")") {
                    iv.push((src, v));
                } else {
                    let slot = ["I1", "I2", "I3", "I4", "Q1", "Q2", "Q4"]
                        .iter()
                        .position(|&p| p == head)
                        .ok_or_else(|| bad(l))?;
                    groups[slot].push(v);
                }
            } else {
                return Err(bad(l));
            }
        }
        let n = v1.len();
        let per_source = |pairs: Vec<(usize, Vertex)>, what: &str| -> Result<Vec<Vec<Vertex>>> {
            let mut out = vec![Vec::new(); n];
            for (src, v) in pairs {
                if src == 0 || src > n {
                    return Err(Error::InvalidParameter(format!(
                        "{what} of unknown source vertex {src}"
                    )));
                }
                out[src - 1].push(v);
            }
            Ok(out)
        };
        let one_each = |pairs: Vec<(usize, Vertex)>, what: &str| -> Result<Vec<Vertex>> {
            per_source(pairs, what)?
                .into_iter()
                .enumerate()
                .map(|(i, vs)| match vs[..] {
                    [v] => Ok(v),
                    _ => Err(Error::InvalidParameter(format!(
                        "source vertex {} needs one {what}",
                        i + 1
                    ))),
                })
                .collect()
        };
        let iv = per_source(iv, "Iv")?;
        let ipv = per_source(ipv, "I'v")?;
        let t = ipv.first().map_or(0, Vec::len);
        let s = k
            .checked_sub(n)
            .ok_or_else(|| Error::InvalidParameter(format!("k = {k} is smaller than n = {n}")))?;
        let [i1, i2, i3, i4, q1, q2, q4] = groups;
        Ok(DdsLayout {
            n,
            s,
            t,
            v1: one_each(v1, "v'")?,
            v2: one_each(v2, "v''")?,
            e,
            i1,
            i2,
            i3,
            i4,
            q1,
            q2,
            q4,
            iv,
            ipv,
        })
    }

    pub fn v_group(&self) -> Vec<Vertex> {
        self.v1.iter().chain(&self.v2).copied().collect()
    }

    /// The source graph, read off the `e'` vertices.
    pub fn source_graph(&self) -> Result<Graph> {
        Graph::from_edges(self.n, self.e.iter().map(|p| p.1))
    }
}

impl DdsInstance {
    /// Rebuilds an instance from a labeled graph file with its `k` and `ell`.
    pub fn from_graph(graph: Graph, k: usize, ell: usize) -> Result<Self> {
        let layout = DdsLayout::from_graph(&graph, k)?;
        Ok(DdsInstance {
            graph,
            k,
            ell,
            layout,
        })
    }

    /// Every violated construction invariant, as a readable line. Group sizes
    /// and each complete join are checked directly; the total edge count then
    /// rules out stray edges.
    pub fn construction_violations(&self) -> Vec<String> {
        let l = &self.layout;
        let (n, s, t) = (l.n, l.s, l.t);
        let g = &self.graph;
        let mut out = Vec::new();
        let mut size = |name: &str, got: usize, want: usize| {
            if got != want {
                out.push(format!("|{name}| = {got}, expected {want}"));
            }
        };
        size("I1", l.i1.len(), n + s);
        size("I4", l.i4.len(), n + s);
        size("Q1", l.q1.len(), n + s);
        size("Q4", l.q4.len(), n + s);
        size("I2", l.i2.len(), (n + s).saturating_sub(choose2(t)));
        size("Q2", l.q2.len(), (n + s).saturating_sub(t + 1));
        size("I3", l.i3.len(), n + s + self.ell);
        size("E", l.e.len(), l.source_graph().map_or(0, |sg| sg.edge_count()));
        for v in 0..n {
            size(&format!("Iv({})", v + 1), l.iv[v].len(), choose2(t));
            size(&format!("I'v({})", v + 1), l.ipv[v].len(), t);
        }
        if self.k != n + s {
            out.push(format!("k = {}, expected n + s = {}", self.k, n + s));
        }

        let mut join = |name: &str, a: &[Vertex], b: &[Vertex]| {
            if let Some((u, v)) = a.iter().cartesian_product(b).find(|(u, v)| !g.adjacent(**u, **v)) {
                out.push(format!("{name}: missing edge {u}-{v}"));
            }
        };
        let all_iv: Vec<Vertex> = l.iv.iter().flatten().copied().collect();
        let evs: Vec<Vertex> = l.e.iter().map(|p| p.0).collect();
        let vg = l.v_group();
        join("(I1,Q1)", &l.i1, &l.q1);
        join(
            "(Q2,Q1∪I2∪E∪I_V)",
            &l.q2,
            &[&l.q1[..], &l.i2, &evs, &all_iv].concat(),
        );
        join("(V,Q4∪I3)", &vg, &[&l.q4[..], &l.i3].concat());
        join("(Q4,I4)", &l.q4, &l.i4);
        for v in 0..n {
            join("({v',v''},I_v)", &[l.v1[v], l.v2[v]], &l.iv[v]);
            join("(I_v,I'_v)", &l.iv[v], &l.ipv[v]);
        }
        for q in [&l.q1, &l.q2, &l.q4] {
            if !g.is_clique(&q.iter().copied().collect()) {
                out.push("Q group is not a clique".into());
            }
        }
        for &(ev, (a, b)) in &l.e {
            let mut want: Vec<Vertex> = [l.v1[a - 1], l.v2[a - 1], l.v1[b - 1], l.v2[b - 1]]
                .into_iter()
                .chain(l.q2.iter().copied())
                .collect();
            want.sort_unstable();
            if g.neighbors(ev) != want.as_slice() {
                out.push(format!(
                    "e'({a},{b}) has neighbors {:?}, expected {want:?}",
                    g.neighbors(ev)
                ));
            }
        }

        let (q1, q2, q4) = (l.q1.len(), l.q2.len(), l.q4.len());
        let c2 = |x: usize| x * x.saturating_sub(1) / 2;
        let expected = c2(q1)
            + c2(q2)
            + c2(q4)
            + l.i1.len() * q1
            + q2 * (q1 + l.i2.len() + l.e.len() + all_iv.len())
            + vg.len() * (q4 + l.i3.len())
            + q4 * l.i4.len()
            + 2 * all_iv.len()
            + l.iv
                .iter()
                .zip(&l.ipv)
                .map(|(a, b)| a.len() * b.len())
                .sum::<usize>()
            + 4 * l.e.len();
        if g.edge_count() != expected {
            out.push(format!("{} edges, expected {expected}", g.edge_count()));
        }
        out
    }

    /// `Q1 ∪ Q2 ∪ Q4 ∪ I'_V ∪ {v'} ∪ {v'' : v ∈ X}` for a deletion set of size
    /// exactly `s`.
    pub fn proof_defense(&self, x: &VertexSet) -> Result<VertexMultiset> {
        let l = &self.layout;
        if x.len() != l.s {
            return Err(Error::InvalidParameter(format!(
                "deletion set has {} vertices, expected s = {}",
                x.len(),
                l.s
            )));
        }
        if let Some(&v) = x.iter().find(|&&v| v == 0 || v > l.n) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(l.q1
            .iter()
            .chain(&l.q2)
            .chain(&l.q4)
            .chain(l.ipv.iter().flatten())
            .chain(&l.v1)
            .copied()
            .chain(x.iter().map(|&v| l.v2[v - 1]))
            .collect())
    }

    /// Every `I2 ∪ S` with `S` a `C(t,2)`-subset of the `E` group, in
    /// lexicographic order of `S`.
    pub fn serious_attacks(&self) -> impl Iterator<Item = VertexSet> + '_ {
        let l = &self.layout;
        l.e.iter()
            .map(|p| p.0)
            .combinations(choose2(l.t))
            .map(move |s| l.i2.iter().copied().chain(s).collect())
    }

    /// The serious attack `I2 ∪ {e' : e ⊆ Q}` built from a source clique `Q`.
    pub fn serious_attack_for_clique(&self, q: &VertexSet) -> VertexSet {
        let l = &self.layout;
        l.i2.iter()
            .copied()
            .chain(
                l.e.iter()
                    .filter(|(_, (a, b))| q.contains(a) && q.contains(b))
                    .map(|p| p.0),
            )
            .collect()
    }

    /// Recovers a deletion set from a defense by the backward-direction moves:
    /// (1) a source vertex with no defender on `v'`, `v''` takes one from
    /// `I_v` onto `v'`; (2) defenders on `I2 ∪ E` move to `Q2`; (3) while `V`
    /// holds more than `n + s` defenders, the smallest doubly defended `v`
    /// gives its `v''` defender to `Q2`. Then `X = {v : v', v'' defended}`.
    pub fn extract_deletion_set(&self, d: &VertexMultiset) -> Result<Extraction> {
        let l = &self.layout;
        d.check_against(&self.graph)?;
        if d.total() > self.ell {
            return Err(Error::Precondition(format!(
                "defense has {} defenders, bound is {}",
                d.total(),
                self.ell
            )));
        }
        let mut d = d.clone();
        for v in 0..l.n {
            if d.multiplicity(l.v1[v]) == 0 && d.multiplicity(l.v2[v]) == 0 {
                let src = l.iv[v]
                    .iter()
                    .copied()
                    .find(|&u| d.multiplicity(u) > 0)
                    .ok_or_else(|| {
                        Error::Precondition(format!(
                            "defense violates backward-direction observation: no defender in I_v ∪ {{v', v''}} for source vertex {}",
                            v + 1
                        ))
                    })?;
                d.remove(src, 1);
                d.insert(l.v1[v], 1);
            }
        }

        let to_q2 = |d: &mut VertexMultiset, copies: usize| -> Result<()> {
            let mut left = copies;
            for &q in &l.q2 {
                if left == 0 {
                    break;
                }
                if d.multiplicity(q) == 0 {
                    d.insert(q, 1);
                    left -= 1;
                }
            }
            if left > 0 {
                let &q = l
                    .q2
                    .first()
                    .ok_or_else(|| Error::Precondition("Q2 is empty, cannot relocate defenders".into()))?;
                d.insert(q, left);
            }
            Ok(())
        };
        let moved: usize =
            l.i2.iter()
                .copied()
                .chain(l.e.iter().map(|p| p.0))
                .map(|u| d.remove(u, usize::MAX))
                .sum();
        to_q2(&mut d, moved)?;

        let in_v = |d: &VertexMultiset| l.v_group().iter().map(|&u| d.multiplicity(u)).sum::<usize>();
        while in_v(&d) > l.n + l.s {
            let Some(v) = (0..l.n).find(|&v| d.multiplicity(l.v1[v]) > 0 && d.multiplicity(l.v2[v]) > 0)
            else {
                break;
            };
            d.remove(l.v2[v], 1);
            to_q2(&mut d, 1)?;
        }

        let deletion_set = (0..l.n)
            .filter(|&v| d.multiplicity(l.v1[v]) > 0 && d.multiplicity(l.v2[v]) > 0)
            .map(|v| v + 1)
            .collect();
        Ok(Extraction {
            deletion_set,
            normalized: d,
            audited: false,
        })
    }

    /// As [`Self::extract_deletion_set`], after checking that `d` counters
    /// every `k`-attack.
    pub fn extract_deletion_set_audited(&self, d: &VertexMultiset) -> Result<Extraction> {
        d.check_against(&self.graph)?;
        if !good_defense(&self.graph, d, self.k) {
            return Err(Error::Precondition(
                "defense does not counter every k-attack".into(),
            ));
        }
        let mut out = self.extract_deletion_set(d)?;
        out.audited = true;
        Ok(out)
    }
}

//! From `∃x ¬∃y φ` (3-CNF, `c` clauses) to clique node deletion with
//! `s = ac + 3c` and `t = b + c`.
//!
//! Role labels:
//!
//! - `x{i}+{j}`, `x{i}-{j}`: positive / negative vertex `j` of the `x_i` gadget
//! - `y{j}+`, `y{j}-`: the two vertices of the `y_j` gadget
//! - `C{k}:xgood{o}`, `C{k}:ygood{o}`: good vertex of occurrence `o` in clause `k`
//! - `C{k}:ugly`, `C{k}:bad2`, `C{k}:bad3`: bad vertices of clause `k`
//! - `fill4:<u>|<v>#r`: the `K_t` completing gadget edge `uv`
//! - `fill5:C{k}#r`: the clause clique of clause `k`

use std::collections::BTreeMap;
use std::fmt;

use super::cnd::CndInstance;
use super::formula::E2Formula;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CndRole {
    XPos { i: usize, j: usize },
    XNeg { i: usize, j: usize },
    YPos { j: usize },
    YNeg { j: usize },
    Good { k: usize, o: usize, y: bool },
    Bad { k: usize, o: usize },
    EdgeFiller,
    ClauseFiller { k: usize },
}

impl CndRole {
    pub fn parse(label: &str) -> Option<Self> {
        if label.starts_with("fill4:") {
            return Some(CndRole::EdgeFiller);
        }
        if let Some(rest) = label.strip_prefix("fill5:C") {
            let (k, _) = rest.split_once('#')?;
            return Some(CndRole::ClauseFiller { k: k.parse().ok()? });
        }
        if let Some(rest) = label.strip_prefix('C') {
            let (k, what) = rest.split_once(':')?;
            let k = k.parse().ok()?;
            return if let Some(o) = what.strip_prefix("xgood") {
                Some(CndRole::Good {
                    k,
                    o: o.parse().ok()?,
                    y: false,
                })
            } else if let Some(o) = what.strip_prefix("ygood") {
                Some(CndRole::Good {
                    k,
                    o: o.parse().ok()?,
                    y: true,
                })
            } else if what == "ugly" {
                Some(CndRole::Bad { k, o: 1 })
            } else {
                Some(CndRole::Bad {
                    k,
                    o: what.strip_prefix("bad")?.parse().ok()?,
                })
            };
        }
        if let Some(rest) = label.strip_prefix('y') {
            let (j, sign) = rest.split_at(rest.len().checked_sub(1)?);
            let j = j.parse().ok()?;
            return match sign {
                "+" => Some(CndRole::YPos { j }),
                "-" => Some(CndRole::YNeg { j }),
                _ => None,
            };
        }
        if let Some(rest) = label.strip_prefix('x') {
            let at = rest.find(['+', '-'])?;
            let (i, j) = (rest[..at].parse().ok()?, rest[at + 1..].parse().ok()?);
            return Some(if &rest[at..=at] == "+" {
                CndRole::XPos { i, j }
            } else {
                CndRole::XNeg { i, j }
            });
        }
        None
    }

    fn is_y_side(self) -> bool {
        matches!(
            self,
            CndRole::YPos { .. } | CndRole::YNeg { .. } | CndRole::Bad { .. } | CndRole::Good { y: true, .. }
        )
    }
}

/// Roles of every vertex of a labeled graph.
pub fn roles(g: &Graph) -> Result<Vec<CndRole>> {
    let labels = g
        .labels()
        .ok_or_else(|| Error::InvalidParameter("graph carries no role labels".into()))?;
    labels
        .iter()
        .map(|l| {
            CndRole::parse(l).ok_or_else(|| Error::InvalidParameter(format!("unrecognized role label `{l}`")))
        })
        .collect()
}

/// Vertex identities of the gadgets of a complete construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CndLayout {
    /// `x_pos[i-1][j-1]` is `x{i}+{j}`.
    pub x_pos: Vec<Vec<Vertex>>,
    pub x_neg: Vec<Vec<Vertex>>,
    pub y_pos: Vec<Vertex>,
    pub y_neg: Vec<Vertex>,
    /// Good vertex of occurrence `o` of clause `k` at `[k-1][o-1]`.
    pub good: Vec<[Vertex; 3]>,
    /// Bad vertices of clause `k`; index 0 is the ugly one.
    pub bad: Vec<[Vertex; 3]>,
}

impl CndLayout {
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let roles = roles(g)?;
        let mut xs: BTreeMap<(usize, bool, usize), Vertex> = BTreeMap::new();
        let mut ys: BTreeMap<(usize, bool), Vertex> = BTreeMap::new();
        let mut cl: BTreeMap<(usize, bool, usize), Vertex> = BTreeMap::new();
        for (idx, r) in roles.into_iter().enumerate() {
            let v = idx + 1;
            match r {
                CndRole::XPos { i, j } => xs.insert((i, true, j), v),
                CndRole::XNeg { i, j } => xs.insert((i, false, j), v),
                CndRole::YPos { j } => ys.insert((j, true), v),
                CndRole::YNeg { j } => ys.insert((j, false), v),
                CndRole::Good { k, o, .. } => cl.insert((k, true, o), v),
                CndRole::Bad { k, o } => cl.insert((k, false, o), v),
                _ => None,
            };
        }
        let a = xs.keys().map(|x| x.0).max().unwrap_or(0);
        let cx = xs.keys().map(|x| x.2).max().unwrap_or(0);
        let b = ys.keys().map(|y| y.0).max().unwrap_or(0);
        let c = cl.keys().map(|x| x.0).max().unwrap_or(0);
        let missing = |what: String| Error::InvalidParameter(format!("construction lacks {what}"));
        let x_class = |positive: bool| -> Result<Vec<Vec<Vertex>>> {
            (1..=a)
                .map(|i| {
                    (1..=cx)
                        .map(|j| {
                            let sign = if positive { '+' } else { '-' };
                            xs.get(&(i, positive, j))
                                .copied()
                                .ok_or_else(|| missing(format!("x{i}{sign}{j}")))
                        })
                        .collect()
                })
                .collect()
        };
        let y_side = |positive: bool| -> Result<Vec<Vertex>> {
            (1..=b)
                .map(|j| {
                    ys.get(&(j, positive))
                        .copied()
                        .ok_or_else(|| missing(format!("a vertex of y{j}")))
                })
                .collect()
        };
        let clause = |good: bool| -> Result<Vec<[Vertex; 3]>> {
            (1..=c)
                .map(|k| {
                    let get = |o| {
                        cl.get(&(k, good, o))
                            .copied()
                            .ok_or_else(|| missing(format!("a vertex of C{k}")))
                    };
                    Ok([get(1)?, get(2)?, get(3)?])
                })
                .collect()
        };
        Ok(CndLayout {
            x_pos: x_class(true)?,
            x_neg: x_class(false)?,
            y_pos: y_side(true)?,
            y_neg: y_side(false)?,
            good: clause(true)?,
            bad: clause(false)?,
        })
    }

    fn check_shape(&self, f: &E2Formula) -> Result<()> {
        let ok = self.x_pos.len() == f.a
            && self.x_pos.iter().all(|cls| cls.len() == f.c())
            && self.y_pos.len() == f.b
            && self.good.len() == f.c();
        ok.then_some(()).ok_or_else(|| {
            Error::InvalidParameter("construction does not match the formula's a, b, c".into())
        })
    }
}

/// Full construction; requires `c > 6`.
pub fn e2sat_to_cnd(f: &E2Formula) -> Result<CndInstance> {
    if f.c() <= 6 {
        return Err(Error::Precondition(format!("c > 6 required, got c = {}", f.c())));
    }
    build(f)
}

/// The same construction without the `c > 6` requirement. Only meant for
/// cross-checking the audits on graphs small enough for generic search.
pub fn e2sat_to_cnd_downscaled(f: &E2Formula) -> Result<CndInstance> {
    build(f)
}

fn build(f: &E2Formula) -> Result<CndInstance> {
    let (a, b, c) = (f.a, f.b, f.c());
    let t = b + c;
    let s = a * c + 3 * c;
    let max_g = f
        .clauses
        .iter()
        .map(|cl| cl.iter().filter(|l| f.is_x(l.var)).count())
        .max()
        .unwrap_or(0);
    if t < 2 || t < max_g + 1 {
        return Err(Error::Precondition(format!(
            "t = b + c = {t} is too small for the gadgets (need t >= 2 and t >= g + 1 = {})",
            max_g + 1
        )));
    }

    let mut gb = GraphBuilder::new();
    // step 1
    let mut x_pos = Vec::new();
    let mut x_neg = Vec::new();
    for i in 1..=a {
        let p: Vec<Vertex> = (1..=c).map(|j| gb.add_vertex(format!("x{i}+{j}"))).collect();
        let q: Vec<Vertex> = (1..=c).map(|j| gb.add_vertex(format!("x{i}-{j}"))).collect();
        gb.add_biclique(&p, &q);
        x_pos.push(p);
        x_neg.push(q);
    }
    // step 2
    let y_pos: Vec<Vertex> = (1..=b).map(|j| gb.add_vertex(format!("y{j}+"))).collect();
    let y_neg: Vec<Vertex> = (1..=b).map(|j| gb.add_vertex(format!("y{j}-"))).collect();
    let y_pair: Vec<Vec<Vertex>> = (0..b).map(|j| vec![y_pos[j], y_neg[j]]).collect();
    // step 3
    let mut good = Vec::new();
    let mut bad = Vec::new();
    for (k0, cl) in f.clauses.iter().enumerate() {
        let k = k0 + 1;
        let g: Vec<Vertex> = (0..3)
            .map(|o| {
                let kind = if f.is_x(cl[o].var) { "x" } else { "y" };
                gb.add_vertex(format!("C{k}:{kind}good{}", o + 1))
            })
            .collect();
        let bd: Vec<Vertex> = ["ugly", "bad2", "bad3"]
            .iter()
            .map(|name| gb.add_vertex(format!("C{k}:{name}")))
            .collect();
        gb.add_biclique(&g, &bd);
        good.push([g[0], g[1], g[2]]);
        bad.push([bd[0], bd[1], bd[2]]);
    }
    // step 4
    let mut gadget_edges: Vec<(Vertex, Vertex, String)> = Vec::new();
    for i in 0..a {
        for j in 0..c {
            for j2 in 0..c {
                let tag = format!("x{}+{}|x{}-{}", i + 1, j + 1, i + 1, j2 + 1);
                gadget_edges.push((x_pos[i][j], x_neg[i][j2], tag));
            }
        }
    }
    for k in 0..c {
        for (o, &u) in good[k].iter().enumerate() {
            for (r, &v) in bad[k].iter().enumerate() {
                gadget_edges.push((u, v, format!("C{}:g{}|C{}:b{}", k + 1, o + 1, k + 1, r + 1)));
            }
        }
    }
    for (u, v, tag) in gadget_edges {
        let mut members = vec![u, v];
        for r in 1..=t - 2 {
            members.push(gb.add_vertex(format!("fill4:{tag}#{r}")));
        }
        gb.add_clique(&members);
    }
    // step 5
    for (k0, cl) in f.clauses.iter().enumerate() {
        let mut z: Vec<Vertex> = Vec::new();
        for (o, l) in cl.iter().enumerate() {
            if f.is_x(l.var) {
                z.push(good[k0][o]);
                let class = if l.positive { &x_pos } else { &x_neg };
                z.push(class[l.var - 1][k0]);
            }
        }
        let g = z.len() / 2;
        for r in 1..=t - 1 - g {
            z.push(gb.add_vertex(format!("fill5:C{}#{r}", k0 + 1)));
        }
        gb.add_clique(&z);
    }
    // step 6
    for (k0, cl) in f.clauses.iter().enumerate() {
        for (o, l) in cl.iter().enumerate() {
            if f.is_x(l.var) {
                continue;
            }
            let u = good[k0][o];
            let j = f.y_index(l.var) - 1;
            gb.add_edge(u, if l.positive { y_pos[j] } else { y_neg[j] });
            for (j2, pair) in y_pair.iter().enumerate() {
                if j2 != j {
                    gb.add_biclique(&[u], pair);
                }
            }
        }
    }
    // step 7
    for bd in &bad {
        for pair in &y_pair {
            gb.add_biclique(&[bd[0]], pair);
        }
    }
    // step 8
    for j in 0..b {
        for j2 in j + 1..b {
            gb.add_biclique(&y_pair[j], &y_pair[j2]);
        }
    }
    // step 9
    let bad_or_ygood = |k0: usize| -> Vec<Vertex> {
        let mut out: Vec<Vertex> = bad[k0].to_vec();
        out.extend(
            (0..3)
                .filter(|&o| !f.is_x(f.clauses[k0][o].var))
                .map(|o| good[k0][o]),
        );
        out
    };
    for k in 0..c {
        for k2 in k + 1..c {
            gb.add_biclique(&bad_or_ygood(k), &bad_or_ygood(k2));
        }
    }

    CndInstance::new(gb.build(), s, t)
}

fn check_nu(f: &E2Formula, nu: &[bool]) -> Result<()> {
    (nu.len() == f.a).then_some(()).ok_or_else(|| {
        Error::InvalidParameter(format!("x-assignment has {} values, expected {}", nu.len(), f.a))
    })
}

/// Per `x_i` the negative class if `nu_i` holds, else the positive class; per
/// clause its good vertices if `nu` satisfies it, else its bad vertices.
pub fn valuation_to_deletion(f: &E2Formula, layout: &CndLayout, nu: &[bool]) -> Result<VertexSet> {
    check_nu(f, nu)?;
    layout.check_shape(f)?;
    let mut x = VertexSet::new();
    for (i, &v) in nu.iter().enumerate() {
        x.extend(if v { &layout.x_neg[i] } else { &layout.x_pos[i] });
    }
    for k in 0..f.c() {
        x.extend(if f.x_satisfies(k, nu) {
            layout.good[k]
        } else {
            layout.bad[k]
        });
    }
    Ok(x)
}

/// Reads an x-assignment off a deletion set: `nu_i` holds iff the whole
/// negative class of `x_i` is deleted. Sets that leave a positive/negative
/// pair of some gadget, or a good/bad pair of some clause, or exceed the
/// budget are rejected.
pub fn deletion_to_valuation(
    f: &E2Formula,
    cnd: &CndInstance,
    layout: &CndLayout,
    x: &VertexSet,
) -> Result<Vec<bool>> {
    layout.check_shape(f)?;
    cnd.graph.check_set(x)?;
    if x.len() > cnd.s {
        return Err(Error::Precondition(format!(
            "deletion set has {} > s = {} vertices",
            x.len(),
            cnd.s
        )));
    }
    let full = |class: &[Vertex]| class.iter().all(|v| x.contains(v));
    for k in 0..f.c() {
        if !full(&layout.good[k]) && !full(&layout.bad[k]) {
            return Err(Error::Precondition(format!(
                "clause {} keeps a good/bad pair: all 3 good or all 3 bad vertices must be deleted",
                k + 1
            )));
        }
    }
    (0..f.a)
        .map(|i| {
            if full(&layout.x_neg[i]) {
                Ok(true)
            } else if full(&layout.x_pos[i]) {
                Ok(false)
            } else {
                Err(Error::Precondition(format!(
                    "gadget of x{} keeps a positive/negative pair: a full class of {} vertices must be deleted",
                    i + 1,
                    f.c()
                )))
            }
        })
        .collect()
}

/// The `K_t` that survives deleting `valuation_to_deletion(nu)` when `mu`
/// satisfies every clause under `(nu, mu)`: per `y_j` the vertex matching
/// `mu_j`, per clause its ugly vertex if `nu` satisfies it, else the y-good
/// vertex of its first true y-occurrence.
pub fn kt_witness_from_y(
    f: &E2Formula,
    cnd: &CndInstance,
    layout: &CndLayout,
    nu: &[bool],
    mu: &[bool],
) -> Result<VertexSet> {
    if mu.len() != f.b {
        return Err(Error::InvalidParameter(format!(
            "y-assignment has {} values, expected {}",
            mu.len(),
            f.b
        )));
    }
    let x = valuation_to_deletion(f, layout, nu)?;
    let mut q: VertexSet = (0..f.b)
        .map(|j| if mu[j] { layout.y_pos[j] } else { layout.y_neg[j] })
        .collect();
    for k in 0..f.c() {
        if f.x_satisfies(k, nu) {
            q.insert(layout.bad[k][0]);
            continue;
        }
        let o = (0..3)
            .find(|&o| {
                let l = f.clauses[k][o];
                !f.is_x(l.var) && mu[f.y_index(l.var) - 1] == l.positive
            })
            .ok_or_else(|| {
                Error::Precondition(format!("the y-assignment does not satisfy clause {}", k + 1))
            })?;
        q.insert(layout.good[k][o]);
    }
    if q.iter().any(|v| x.contains(v)) || !cnd.graph.is_clique(&q) || q.len() != cnd.t {
        return Err(Error::Precondition(
            "selected vertices do not form a surviving K_t".into(),
        ));
    }
    Ok(q)
}

/// The four kinds of `K_t` in a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliqueType {
    /// Holds a positive and a negative vertex of one `x` gadget.
    A,
    /// Holds a good and a bad vertex of one clause.
    B,
    /// Holds an x-good vertex but no bad vertex of its clause.
    C,
    /// Only `y`, bad and y-good vertices.
    D,
}

impl fmt::Display for CliqueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedClique {
    pub kind: CliqueType,
    pub members: VertexSet,
}

/// A `size`-clique inside `cand`, in `g`'s identities.
fn clique_within(g: &Graph, cand: &VertexSet, size: usize) -> Option<VertexSet> {
    if cand.len() < size {
        return None;
    }
    let (sub, old) = g.induced(cand).expect("candidates are vertices");
    sub.has_clique(size)
        .map(|c| c.into_iter().map(|v| old[v - 1]).collect())
}

fn common(g: &Graph, u: Vertex, v: Vertex) -> VertexSet {
    let nv = g.neighbors(v);
    g.neighbors(u)
        .iter()
        .copied()
        .filter(|w| nv.binary_search(w).is_ok())
        .collect()
}

/// Searches a labeled construction (possibly after deletions) for a `K_t`,
/// one clique type at a time. Each type is searched in the true local
/// neighborhood of its anchor pair or vertex, so the answer is exact: the
/// four types cover every `K_t` of a construction.
pub fn typed_clique_audit(g: &Graph, t: usize) -> Result<Option<TypedClique>> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!(
            "typed audit needs t >= 2, got {t}"
        )));
    }
    let roles = roles(g)?;
    let role = |v: Vertex| roles[v - 1];
    let found = |kind, members| Ok(Some(TypedClique { kind, members }));

    for u in g.vertices() {
        for &v in g.neighbors(u) {
            let kind = match (role(u), role(v)) {
                (CndRole::XPos { i, .. }, CndRole::XNeg { i: i2, .. }) if i == i2 => CliqueType::A,
                (CndRole::Good { k, .. }, CndRole::Bad { k: k2, .. }) if k == k2 => CliqueType::B,
                _ => continue,
            };
            if let Some(mut q) = clique_within(g, &common(g, u, v), t - 2) {
                q.extend([u, v]);
                return found(kind, q);
            }
        }
    }
    for u in g.vertices() {
        if let CndRole::Good { k, y: false, .. } = role(u) {
            let cand: VertexSet = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !matches!(role(w), CndRole::Bad { k: k2, .. } if k2 == k))
                .collect();
            if let Some(mut q) = clique_within(g, &cand, t - 1) {
                q.insert(u);
                return found(CliqueType::C, q);
            }
        }
    }
    let cand: VertexSet = g.vertices().filter(|&v| role(v).is_y_side()).collect();
    if let Some(q) = clique_within(g, &cand, t) {
        return found(CliqueType::D, q);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::formula::{parse_formula, E2Outcome, Literal};
    use super::*;

    fn lit(l: i64) -> Literal {
        Literal::from_dimacs(l).unwrap()
    }

    fn formula(a: usize, b: usize, cls: &[[i64; 3]]) -> E2Formula {
        E2Formula::new(a, b, cls.iter().map(|c| c.map(lit)).collect()).unwrap()
    }

    /// a=2, b=1 and seven clauses.
    fn seven() -> E2Formula {
        formula(
            2,
            1,
            &[
                [1, 2, 3],
                [-1, 2, 3],
                [1, -2, -3],
                [-1, -2, 3],
                [1, 2, -3],
                [-1, 2, -3],
                [1, -2, 3],
            ],
        )
    }

    #[test]
    fn labels_parse() {
        assert_eq!(CndRole::parse("x12+3"), Some(CndRole::XPos { i: 12, j: 3 }));
        assert_eq!(CndRole::parse("x1-7"), Some(CndRole::XNeg { i: 1, j: 7 }));
        assert_eq!(CndRole::parse("y4-"), Some(CndRole::YNeg { j: 4 }));
        assert_eq!(
            CndRole::parse("C3:ygood2"),
            Some(CndRole::Good { k: 3, o: 2, y: true })
        );
        assert_eq!(CndRole::parse("C3:ugly"), Some(CndRole::Bad { k: 3, o: 1 }));
        assert_eq!(CndRole::parse("C3:bad3"), Some(CndRole::Bad { k: 3, o: 3 }));
        assert_eq!(CndRole::parse("fill4:x1+1|x1-2#5"), Some(CndRole::EdgeFiller));
        assert_eq!(CndRole::parse("fill5:C2#1"), Some(CndRole::ClauseFiller { k: 2 }));
        assert_eq!(CndRole::parse("Q2#1"), None);
        assert_eq!(CndRole::parse("y"), None);
    }

    #[test]
    fn parameters_and_sizes() {
        let f = seven();
        let cnd = e2sat_to_cnd(&f).unwrap();
        assert_eq!((cnd.s, cnd.t), (35, 8));
        let roles = roles(&cnd.graph).unwrap();
        let count = |p: fn(&CndRole) -> bool| roles.iter().filter(|r| p(r)).count();
        assert_eq!(
            count(|r| matches!(r, CndRole::XPos { .. } | CndRole::XNeg { .. })),
            2 * 2 * 7
        );
        assert_eq!(count(|r| matches!(r, CndRole::Bad { o: 1, .. })), 7);
        // c^2 (t-2) fillers per x gadget, 9 (t-2) per clause
        assert_eq!(
            count(|r| matches!(r, CndRole::EdgeFiller)),
            2 * 49 * 6 + 7 * 9 * 6
        );
        let layout = CndLayout::from_graph(&cnd.graph).unwrap();
        assert_eq!(layout.x_pos.len(), 2);
        assert!(e2sat_to_cnd(&formula(1, 2, &[[1, 2, 3]])).is_err());
    }

    #[test]
    fn clause_clique_shape() {
        let f = seven();
        let cnd = e2sat_to_cnd(&f).unwrap();
        let layout = CndLayout::from_graph(&cnd.graph).unwrap();
        // clause 1 = (x1 ∨ x2 ∨ y1): Z = two x-good vertices, x1+1, x2+1
        let z = VertexSet::from([
            layout.good[0][0],
            layout.good[0][1],
            layout.x_pos[0][0],
            layout.x_pos[1][0],
        ]);
        assert!(cnd.graph.is_clique(&z));
        assert!(!cnd.graph.adjacent(layout.good[0][0], layout.x_neg[0][0]));
        // y-good vertex of y1+ sees y1+ but not y1-
        assert!(cnd.graph.adjacent(layout.good[0][2], layout.y_pos[0]));
        assert!(!cnd.graph.adjacent(layout.good[0][2], layout.y_neg[0]));
        assert!(cnd.graph.adjacent(layout.bad[0][0], layout.y_neg[0]));
        assert!(!cnd.graph.adjacent(layout.bad[0][1], layout.y_neg[0]));
    }

    #[test]
    fn transformers_round_trip() {
        let f = seven();
        let cnd = e2sat_to_cnd(&f).unwrap();
        let layout = CndLayout::from_graph(&cnd.graph).unwrap();
        for nu in [[false, false], [false, true], [true, false], [true, true]] {
            let x = valuation_to_deletion(&f, &layout, &nu).unwrap();
            assert_eq!(x.len(), cnd.s);
            assert_eq!(deletion_to_valuation(&f, &cnd, &layout, &x).unwrap(), nu.to_vec());
        }
        let all_true = valuation_to_deletion(&f, &layout, &[true, true]).unwrap();
        assert!(layout.x_neg.iter().flatten().all(|v| all_true.contains(v)));
        // clause 1 is satisfied by x1 = true: its ugly vertex stays
        assert!(!all_true.contains(&layout.bad[0][0]));

        let mut broken = all_true.clone();
        broken.remove(&layout.x_neg[0][3]);
        assert!(deletion_to_valuation(&f, &cnd, &layout, &broken).is_err());
    }

    #[test]
    fn forward_and_backward_on_seven() {
        let f = seven();
        let cnd = e2sat_to_cnd(&f).unwrap();
        let layout = CndLayout::from_graph(&cnd.graph).unwrap();
        assert_eq!(
            typed_clique_audit(&cnd.graph, cnd.t).unwrap().unwrap().kind,
            CliqueType::A
        );
        match f.solve().unwrap() {
            E2Outcome::Yes { nu } => {
                let x = valuation_to_deletion(&f, &layout, &nu).unwrap();
                let (rest, _) = cnd.graph.delete_vertices(&x).unwrap();
                assert_eq!(typed_clique_audit(&rest, cnd.t).unwrap(), None);
            }
            E2Outcome::No { pairs } => {
                for (nu, mu) in pairs {
                    let q = kt_witness_from_y(&f, &cnd, &layout, &nu, &mu).unwrap();
                    assert_eq!(q.len(), cnd.t);
                    assert!(cnd.graph.is_clique(&q));
                }
            }
        }
    }

    #[test]
    fn typed_audit_matches_generic_search() {
        let small = [
            "p e2cnf 1 2 2\n1 2 3 0\n-1 -2 3 0\n",
            "p e2cnf 1 2 3\n1 2 3 0\n-1 2 -3 0\n1 -2 -3 0\n",
            "p e2cnf 2 1 2\n1 2 3 0\n-1 -2 -3 0\n",
            "p e2cnf 1 3 2\n2 3 4 0\n-2 -3 -4 0\n",
            "p e2cnf 3 0 4\n1 2 3 0\n-1 -2 -3 0\n1 -2 3 0\n-1 2 -3 0\n",
        ];
        let mut cases = 0;
        for text in small {
            let f = parse_formula(text).unwrap();
            let cnd = e2sat_to_cnd_downscaled(&f).unwrap();
            let layout = CndLayout::from_graph(&cnd.graph).unwrap();
            let mut deletions = vec![VertexSet::new()];
            for code in 0..1u32 << f.a {
                let nu: Vec<bool> = (0..f.a).map(|i| code >> i & 1 == 1).collect();
                let x = valuation_to_deletion(&f, &layout, &nu).unwrap();
                let mut partial = x.clone();
                let first = *x.iter().next().unwrap();
                partial.remove(&first);
                deletions.extend([x, partial]);
            }
            for x in deletions {
                let (rest, _) = cnd.graph.delete_vertices(&x).unwrap();
                let typed = typed_clique_audit(&rest, cnd.t).unwrap();
                if let Some(tc) = &typed {
                    assert!(rest.is_clique(&tc.members) && tc.members.len() == cnd.t);
                }
                assert_eq!(typed.is_some(), rest.has_clique(cnd.t).is_some(), "{text}");
                cases += 1;
            }
        }
        assert!(cases >= 20);
    }

    #[test]
    fn witness_rejects_unsatisfying_mu() {
        let f = seven();
        let cnd = e2sat_to_cnd(&f).unwrap();
        let layout = CndLayout::from_graph(&cnd.graph).unwrap();
        let nu = [false, false];
        let bad_mu = (0..2).map(|m| vec![m == 1]).find(|mu| !f.satisfies_all(&nu, mu));
        if let Some(mu) = bad_mu {
            assert!(kt_witness_from_y(&f, &cnd, &layout, &nu, &mu).is_err());
        }
    }
}

//! Line-based text formats.
//!
//! Graph files:
//!
//! ```text
//! c any comment
//! p dds <n> <m>
//! e <u> <v>            (m lines, 1 <= u < v <= n)
//! c role <v> <label>   (optional, all-or-nothing)
//! c params <key> <value> ...
//! ```
//!
//! Vertex-set files hold one identity per line; multiset files hold
//! `<v> <count>` lines (a bare `<v>` counts once); attack-list files hold one
//! attack per line as whitespace-separated identities. Lines starting with `c`
//! are comments in all of them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Graph, GraphBuilder, Vertex, VertexMultiset, VertexSet};
use crate::error::{parse_err, Result};

/// A parsed graph file: the graph (labeled if role lines were present) and
/// any `c params` key/value pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphFile {
    pub graph: Graph,
    pub params: BTreeMap<String, usize>,
}

fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ") || line.starts_with("c\t")
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what}")))
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut header: Option<(usize, usize)> = None;
    let mut builder = GraphBuilder::new();
    let mut seen = std::collections::HashSet::new();
    let mut roles: BTreeMap<Vertex, String> = BTreeMap::new();
    let mut role_lines = Vec::new();
    let mut params = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if is_comment(line) {
            let rest = line[1..].trim_start();
            if let Some(r) = rest.strip_prefix("role ") {
                let r = r.trim_start();
                let (v, label) = r.split_once(char::is_whitespace).unwrap_or((r, ""));
                let v: Vertex = num(Some(v), lineno, "role vertex")?;
                let label = label.trim();
                if label.is_empty() {
                    return Err(parse_err(lineno, "empty role label"));
                }
                role_lines.push((lineno, v, label.to_string()));
            } else if let Some(r) = rest.strip_prefix("params") {
                let toks: Vec<&str> = r.split_whitespace().collect();
                if !toks.len().is_multiple_of(2) {
                    return Err(parse_err(lineno, "params must be key/value pairs"));
                }
                for kv in toks.chunks(2) {
                    params.insert(kv[0].to_string(), num(Some(kv[1]), lineno, "param value")?);
                }
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate header"));
                }
                if toks.next() != Some("dds") {
                    return Err(parse_err(lineno, "expected `p dds <n> <m>`"));
                }
                let n = num(toks.next(), lineno, "vertex count")?;
                let m = num(toks.next(), lineno, "edge count")?;
                header = Some((n, m));
                builder = GraphBuilder::with_vertices(n);
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err(lineno, "edge before header"))?;
                let u: Vertex = num(toks.next(), lineno, "edge endpoint")?;
                let v: Vertex = num(toks.next(), lineno, "edge endpoint")?;
                if !(1 <= u && u < v && v <= n) {
                    return Err(parse_err(lineno, format!("edge {u} {v} needs 1 <= u < v <= {n}")));
                }
                if !seen.insert((u, v)) {
                    return Err(parse_err(lineno, format!("duplicate edge {u} {v}")));
                }
                builder.add_edge(u, v);
            }
            _ => return Err(parse_err(lineno, format!("unrecognized line `{line}`"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens"));
        }
    }

    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `p dds` header"))?;
    if seen.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges, found {}", seen.len()),
        ));
    }
    for (lineno, v, label) in role_lines {
        if v == 0 || v > n {
            return Err(parse_err(lineno, format!("role for unknown vertex {v}")));
        }
        if roles.insert(v, label).is_some() {
            return Err(parse_err(lineno, format!("second role for vertex {v}")));
        }
    }
    let mut graph = builder.build();
    if !roles.is_empty() {
        if roles.len() != n {
            let missing = (1..=n).find(|v| !roles.contains_key(v)).unwrap_or(0);
            return Err(parse_err(0, format!("vertex {missing} has no role")));
        }
        graph = graph.with_labels(roles.into_values().collect())?;
    }
    Ok(GraphFile { graph, params })
}

pub fn write_graph(g: &Graph, params: &[(&str, usize)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p dds {} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    if let Some(labels) = g.labels() {
        for (i, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "c role {} {}", i + 1, l);
        }
    }
    if !params.is_empty() {
        out.push_str("c params");
        for (k, v) in params {
            let _ = write!(out, " {k} {v}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_vertex_set(text: &str) -> Result<VertexSet> {
    let mut set = VertexSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let v: Vertex = num(Some(line), i + 1, "vertex identity")?;
        if v == 0 {
            return Err(parse_err(i + 1, "vertex identities start at 1"));
        }
        if !set.insert(v) {
            return Err(parse_err(i + 1, format!("duplicate vertex {v}")));
        }
    }
    Ok(set)
}

pub fn write_vertex_set(s: &VertexSet) -> String {
    s.iter().map(|v| format!("{v}\n")).collect()
}

pub fn parse_multiset(text: &str) -> Result<VertexMultiset> {
    let mut m = VertexMultiset::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let mut toks = line.split_whitespace();
        let v: Vertex = num(toks.next(), i + 1, "vertex identity")?;
        let c: usize = match toks.next() {
            None => 1,
            tok => num(tok, i + 1, "multiplicity")?,
        };
        if toks.next().is_some() {
            return Err(parse_err(i + 1, "expected `<v> <count>`"));
        }
        if v == 0 || c == 0 {
            return Err(parse_err(i + 1, "vertex and multiplicity must be positive"));
        }
        m.insert(v, c);
    }
    Ok(m)
}

pub fn write_multiset(m: &VertexMultiset) -> String {
    m.iter().map(|(v, c)| format!("{v} {c}\n")).collect()
}

pub fn parse_attacks(text: &str) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let mut a = VertexSet::new();
        for tok in line.split_whitespace() {
            let v: Vertex = num(Some(tok), i + 1, "vertex identity")?;
            if v == 0 || !a.insert(v) {
                return Err(parse_err(i + 1, format!("invalid or repeated vertex {v}")));
            }
        }
        out.push(a);
    }
    Ok(out)
}

pub fn write_attacks(attacks: &[VertexSet]) -> String {
    attacks
        .iter()
        .map(|a| {
            format!(
                "{}\n",
                a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            )
        })
        .collect()
}

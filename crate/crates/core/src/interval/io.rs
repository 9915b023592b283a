//! Interval files:
//!
//! ```text
//! c any comment
//! p intervals <n>
//! <id> <left> <right>   (n lines, ids 1..=n each exactly once)
//! ```
//!
//! Endpoints are decimals (`2`, `-0.75`) or fractions (`3/4`).

use std::fmt::Write as _;

use super::{Endpoint, Interval, IntervalInstance};
use crate::error::{parse_err, Result};

/// Parses without the distinct-endpoint check.
pub fn parse_intervals_raw<T: Endpoint>(text: &str) -> Result<IntervalInstance<T>> {
    let mut n: Option<usize> = None;
    let mut slots: Vec<Option<Interval<T>>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "p" {
            if n.is_some() {
                return Err(parse_err(lineno, "duplicate header"));
            }
            if toks.len() != 3 || toks[1] != "intervals" {
                return Err(parse_err(lineno, "expected `p intervals <n>`"));
            }
            let count: usize = toks[2]
                .parse()
                .map_err(|_| parse_err(lineno, "invalid interval count"))?;
            n = Some(count);
            slots = vec![None; count];
            continue;
        }
        let count = n.ok_or_else(|| parse_err(lineno, "interval before header"))?;
        if toks.len() != 3 {
            return Err(parse_err(lineno, "expected `<id> <left> <right>`"));
        }
        let id: usize = toks[0]
            .parse()
            .map_err(|_| parse_err(lineno, "invalid vertex identity"))?;
        if id == 0 || id > count {
            return Err(parse_err(lineno, format!("vertex {id} outside 1..={count}")));
        }
        let end =
            |s: &str| T::parse_decimal(s).ok_or_else(|| parse_err(lineno, format!("invalid endpoint `{s}`")));
        let (l, r) = (end(toks[1])?, end(toks[2])?);
        if l > r {
            return Err(parse_err(lineno, format!("left endpoint {l} exceeds right {r}")));
        }
        if slots[id - 1].is_some() {
            return Err(parse_err(lineno, format!("vertex {id} listed twice")));
        }
        slots[id - 1] = Some(Interval { left: l, right: r });
    }
    n.ok_or_else(|| parse_err(0, "missing `p intervals` header"))?;
    let intervals = slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| parse_err(0, format!("vertex {} has no interval", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntervalInstance::new(intervals))
}

/// Parses and requires all endpoints to be distinct.
pub fn parse_intervals<T: Endpoint>(text: &str) -> Result<IntervalInstance<T>> {
    let inst = parse_intervals_raw(text)?;
    inst.validate()?;
    Ok(inst)
}

pub fn write_intervals<T: Endpoint>(inst: &IntervalInstance<T>) -> String {
    let mut out = format!("p intervals {}\n", inst.len());
    for (i, iv) in inst.intervals().iter().enumerate() {
        let _ = writeln!(out, "{} {} {}", i + 1, iv.left, iv.right);
    }
    out
}

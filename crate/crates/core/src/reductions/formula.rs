//! Two-level 3-CNF formulas `∃x ¬∃y φ(x, y)` and a brute-force decider.
//!
//! File format:
//!
//! ```text
//! c any comment
//! p e2cnf <a> <b> <c>
//! <l1> <l2> <l3> 0      (c lines; variables 1..=a are x, a+1..=a+b are y)
//! ```

use std::fmt;

use crate::error::{parse_err, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    /// 1-based over `x_1..x_a, y_1..y_b`.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn from_dimacs(l: i64) -> Option<Self> {
        (l != 0).then(|| Literal {
            var: l.unsigned_abs() as usize,
            positive: l > 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Formula {
    pub a: usize,
    pub b: usize,
    pub clauses: Vec<Clause>,
}

/// Outcome of deciding `∃x ¬∃y φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum E2Outcome {
    /// `nu` is the first x-assignment (in enumeration order) under which no
    /// y-assignment satisfies every clause.
    Yes { nu: Vec<bool> },
    /// For every x-assignment, in enumeration order, a y-assignment satisfying
    /// every clause.
    No { pairs: Vec<(Vec<bool>, Vec<bool>)> },
}

impl E2Formula {
    pub fn new(a: usize, b: usize, clauses: Vec<Clause>) -> Result<Self> {
        for (k, cl) in clauses.iter().enumerate() {
            for (o, l) in cl.iter().enumerate() {
                if l.var == 0 || l.var > a + b {
                    return Err(Error::InvalidParameter(format!(
                        "clause {} uses variable {} outside 1..={}",
                        k + 1,
                        l.var,
                        a + b
                    )));
                }
                if cl[..o].iter().any(|m| m.var == l.var) {
                    return Err(Error::InvalidParameter(format!(
                        "clause {} repeats variable {}",
                        k + 1,
                        l.var
                    )));
                }
            }
        }
        Ok(E2Formula { a, b, clauses })
    }

    pub fn c(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_x(&self, var: usize) -> bool {
        var <= self.a
    }

    /// Index of a y-variable among `y_1..y_b` (1-based).
    pub fn y_index(&self, var: usize) -> usize {
        var - self.a
    }

    fn value(&self, l: Literal, nu: &[bool], mu: &[bool]) -> bool {
        let v = if self.is_x(l.var) {
            nu[l.var - 1]
        } else {
            mu[l.var - self.a - 1]
        };
        v == l.positive
    }

    /// `true` iff some x-literal of clause `k` (0-based) is true under `nu`.
    pub fn x_satisfies(&self, k: usize, nu: &[bool]) -> bool {
        self.clauses[k]
            .iter()
            .any(|&l| self.is_x(l.var) && self.value(l, nu, &[]))
    }

    pub fn satisfies(&self, k: usize, nu: &[bool], mu: &[bool]) -> bool {
        self.clauses[k].iter().any(|&l| self.value(l, nu, mu))
    }

    pub fn satisfies_all(&self, nu: &[bool], mu: &[bool]) -> bool {
        (0..self.c()).all(|k| self.satisfies(k, nu, mu))
    }

    /// Exhaustive decision. Assignments are enumerated as binary counters with
    /// the first variable most significant, all-false first.
    pub fn solve(&self) -> Result<E2Outcome> {
        if self.a + self.b > 40 {
            return Err(Error::InvalidParameter(format!(
                "{} variables is beyond brute force",
                self.a + self.b
            )));
        }
        // clause as (positive mask, negative mask) over a+b bits, bit var-1
        let masks: Vec<(u64, u64)> = self
            .clauses
            .iter()
            .map(|cl| {
                cl.iter().fold((0, 0), |(p, n), l| {
                    let bit = 1u64 << (l.var - 1);
                    if l.positive {
                        (p | bit, n)
                    } else {
                        (p, n | bit)
                    }
                })
            })
            .collect();
        let decode = |code: u64, len: usize| -> Vec<bool> {
            (0..len).map(|i| code >> (len - 1 - i) & 1 == 1).collect()
        };
        let mut pairs = Vec::new();
        for xcode in 0..1u64 << self.a {
            let nu = decode(xcode, self.a);
            let xbits = nu
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &v)| acc | (v as u64) << i);
            let found = (0..1u64 << self.b).find(|&ycode| {
                let mut bits = xbits;
                for (j, v) in decode(ycode, self.b).into_iter().enumerate() {
                    bits |= (v as u64) << (self.a + j);
                }
                masks.iter().all(|&(p, n)| bits & p != 0 || !bits & n != 0)
            });
            match found {
                None => return Ok(E2Outcome::Yes { nu }),
                Some(ycode) => pairs.push((nu, decode(ycode, self.b))),
            }
        }
        Ok(E2Outcome::No { pairs })
    }
}

impl fmt::Display for E2Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p e2cnf {} {} {}", self.a, self.b, self.c())?;
        for cl in &self.clauses {
            writeln!(
                f,
                "{} {} {} 0",
                cl[0].to_dimacs(),
                cl[1].to_dimacs(),
                cl[2].to_dimacs()
            )?;
        }
        Ok(())
    }
}

/// Random formula with `c` clauses, each over three distinct variables with
/// random signs. Needs `a + b >= 3`.
pub fn random_formula(a: usize, b: usize, c: usize, seed: u64) -> Result<E2Formula> {
    use rand::seq::index::sample;
    use rand::{Rng, SeedableRng};
    if a + b < 3 {
        return Err(Error::InvalidParameter(
            "a + b >= 3 needed for 3-literal clauses".into(),
        ));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..c)
        .map(|_| {
            let vars = sample(&mut rng, a + b, 3);
            [0, 1, 2].map(|i| Literal {
                var: vars.index(i) + 1,
                positive: rng.gen(),
            })
        })
        .collect();
    E2Formula::new(a, b, clauses)
}

pub fn parse_formula(text: &str) -> Result<E2Formula> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "p" {
            if header.is_some() {
                return Err(parse_err(lineno, "duplicate header"));
            }
            if toks.len() != 5 || toks[1] != "e2cnf" {
                return Err(parse_err(lineno, "expected `p e2cnf <a> <b> <c>`"));
            }
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("invalid count `{s}`")))
            };
            header = Some((num(toks[2])?, num(toks[3])?, num(toks[4])?));
            continue;
        }
        if header.is_none() {
            return Err(parse_err(lineno, "clause before header"));
        }
        let lits: Vec<i64> = toks
            .iter()
            .map(|s| {
                s.parse()
                    .map_err(|_| parse_err(lineno, format!("invalid literal `{s}`")))
            })
            .collect::<Result<_>>()?;
        if lits.len() != 4 || lits[3] != 0 || lits[..3].contains(&0) {
            return Err(parse_err(
                lineno,
                "a clause is three nonzero literals followed by 0",
            ));
        }
        let lit = |l: i64| Literal::from_dimacs(l).expect("nonzero");
        clauses.push([lit(lits[0]), lit(lits[1]), lit(lits[2])]);
    }
    let (a, b, c) = header.ok_or_else(|| parse_err(0, "missing `p e2cnf` header"))?;
    if clauses.len() != c {
        return Err(parse_err(
            0,
            format!("header declares {c} clauses, found {}", clauses.len()),
        ));
    }
    E2Formula::new(a, b, clauses)
}

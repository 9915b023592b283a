use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use log::info;

use defdom::defense::{find_violator, Strategy};
use defdom::graph::generate;
use defdom::graph::io::{
    parse_attacks, parse_graph, parse_multiset, parse_vertex_set, write_graph, write_multiset,
    write_vertex_set, GraphFile,
};
use defdom::interval::io::{parse_intervals_raw, write_intervals};
use defdom::interval::{greedy_defense, random_instance, Endpoint, IntervalInstance, Rational};
use defdom::matching::counters;
use defdom::reductions::appendix::{
    deletion_to_valuation, e2sat_to_cnd, e2sat_to_cnd_downscaled, kt_witness_from_y, typed_clique_audit,
    valuation_to_deletion, CndLayout,
};
use defdom::reductions::{cnd_to_dds, parse_formula, random_formula, CndInstance, E2Outcome, EllMode};
use defdom::solvers::{min_constrained_multiset, min_multiset_defense, min_set_defense};
use defdom::{Graph, VertexMultiset, VertexSet};

use crate::{
    AuditCommand, CliqueArgs, CndInput, Command, E2satArgs, GenArgs, GenKind, GreedyArgs, Outcome,
    ReduceCommand, SolveCndArgs, SolveExactArgs, VerifyArgs,
};

pub fn run(command: Command) -> Result<Outcome> {
    let start = Instant::now();
    let out = match command {
        Command::Verify(a) => verify(a),
        Command::SolveExact(a) => solve_exact(a),
        Command::Greedy(a) => greedy(a),
        Command::Reduce(r) => reduce(r),
        Command::Audit(a) => audit(a),
        Command::E2sat(a) => e2sat(a),
        Command::SolveCnd(a) => solve_cnd(a),
        Command::Clique(a) => clique(a),
        Command::Gen(a) => gen(a),
    };
    info!("wall time {:.3} s", start.elapsed().as_secs_f64());
    out
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
}

/// Writes `content` to `path` if given and returns the path for the summary.
fn emit(path: Option<PathBuf>, content: impl FnOnce() -> String) -> Result<Option<PathBuf>> {
    if let Some(p) = &path {
        write(p, &content())?;
    }
    Ok(path)
}

fn load_graph(path: &Path) -> Result<GraphFile> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn join(s: &VertexSet) -> String {
    if s.is_empty() {
        return "none".into();
    }
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn describe(g: &Graph, s: &VertexSet) -> String {
    s.iter()
        .map(|&v| match g.label(v) {
            Some(l) => format!("{v}[{l}]"),
            None => v.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn load_cnd(input: &CndInput) -> Result<CndInstance> {
    let file = load_graph(&input.graph)?;
    let param = |flag: Option<usize>, key: &str| {
        flag.or_else(|| file.params.get(key).copied())
            .ok_or_else(|| anyhow!("`{key}` missing: pass --{key} or add `c params {key} <value>`"))
    };
    let (s, t) = (param(input.s, "s")?, param(input.t, "t")?);
    Ok(CndInstance::new(file.graph, s, t)?)
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?.graph;
    let d = parse_multiset(&read(&a.defense)?).context("parsing defense")?;
    d.check_against(&g)?;
    if a.k == 0 {
        bail!("k must be at least 1");
    }
    let strategy: Strategy = a.strategy.parse()?;
    info!(
        "{} defense of size {} on {} vertices, k = {}",
        if a.multiset || !d.is_set() {
            "multiset"
        } else {
            "set"
        },
        d.total(),
        g.n(),
        a.k
    );
    match find_violator(&g, &d, a.k, strategy) {
        None => {
            info!("GOOD: every attack of size at most {} is countered", a.k);
            Ok(Outcome::new("good", d.total(), 0))
        }
        Some(v) => {
            info!(
                "BAD: attack {} has deficiency {}",
                describe(&g, &v.attack),
                v.deficiency
            );
            let cert = emit(a.emit, || write_vertex_set(&v.attack))?;
            Ok(Outcome::new("bad", join(&v.attack), 1).with_certificate(cert))
        }
    }
}

fn solve_exact(a: SolveExactArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?.graph;
    let result = if let Some(path) = &a.attacks {
        let attacks = parse_attacks(&read(path)?).context("parsing attacks")?;
        let lower = match &a.lower {
            Some(p) => parse_multiset(&read(p)?).context("parsing lower bound")?,
            None => VertexMultiset::new(),
        };
        let upper = match &a.upper {
            Some(p) => parse_multiset(&read(p)?).context("parsing upper bound")?,
            None => {
                let cap = attacks.iter().map(|x| x.len()).max().unwrap_or(0).max(1);
                VertexMultiset::from_counts(g.vertices().map(|v| (v, cap)))
            }
        };
        info!("{} explicit attacks, bounds {lower} ⊆ D ⊆ {upper}", attacks.len());
        match min_constrained_multiset(&g, &attacks, &lower, &upper)? {
            Some(r) => r,
            None => {
                info!("no defense within the bounds counters every listed attack");
                return Ok(Outcome::new("none", "-", 1));
            }
        }
    } else {
        if a.lower.is_some() || a.upper.is_some() {
            bail!("--lower and --upper need --attacks");
        }
        let k = a.k.ok_or_else(|| anyhow!("-k is required without --attacks"))?;
        if k == 0 {
            bail!("k must be at least 1");
        }
        if a.multiset {
            min_multiset_defense(&g, k)
        } else {
            min_set_defense(&g, k)
        }
    };
    info!(
        "optimum {} with witness {} ({} candidates checked)",
        result.optimum, result.witness, result.explored
    );
    let cert = emit(a.emit, || write_multiset(&result.witness))?;
    Ok(Outcome::new("optimal", result.optimum, 0).with_certificate(cert))
}

fn greedy(a: GreedyArgs) -> Result<Outcome> {
    let raw: IntervalInstance<Rational> =
        parse_intervals_raw(&read(&a.intervals)?).context("parsing intervals")?;
    if a.normalize {
        let inst = raw.normalize()?;
        info!("normalized to distinct integer endpoints");
        greedy_on(&inst, a)
    } else {
        raw.validate()?;
        greedy_on(&raw, a)
    }
}

fn greedy_on<T: Endpoint>(inst: &IntervalInstance<T>, a: GreedyArgs) -> Result<Outcome> {
    if a.k == 0 {
        bail!("k must be at least 1");
    }
    let start = Instant::now();
    let d = greedy_defense(inst, a.k)?;
    info!(
        "greedy defense of size {} on {} intervals in {:.3} s: {d}",
        d.total(),
        inst.len(),
        start.elapsed().as_secs_f64()
    );
    if a.check {
        let g = inst.intersection_graph();
        if let Some(v) = find_violator(&g, &d, a.k, Strategy::Pruned) {
            info!("check FAILED: attack {} uncountered", join(&v.attack));
            return Ok(Outcome::new("bad", join(&v.attack), 1));
        }
        info!("check: GOOD");
    }
    let cert = emit(a.emit_defense, || write_multiset(&d))?;
    Ok(Outcome::new("optimal", d.total(), 0).with_certificate(cert))
}

fn reduce(r: ReduceCommand) -> Result<Outcome> {
    match r {
        ReduceCommand::CndToDds {
            input,
            ell_mode,
            output,
        } => {
            let inst = load_cnd(&input)?;
            let dds = cnd_to_dds(&inst, ell_mode.parse()?)?;
            let l = &dds.layout;
            info!(
                "G' has {} vertices and {} edges; k = {}, ell = {}; |I2| = {}, |Q2| = {}, |I3| = {}",
                dds.graph.n(),
                dds.graph.edge_count(),
                dds.k,
                dds.ell,
                l.i2.len(),
                l.q2.len(),
                l.i3.len()
            );
            write(
                &output,
                &write_graph(&dds.graph, &[("k", dds.k), ("ell", dds.ell)]),
            )?;
            Ok(Outcome::new("built", format!("k:{},ell:{}", dds.k, dds.ell), 0)
                .with_certificate(Some(output)))
        }
        ReduceCommand::E2satToCnd {
            formula,
            output,
            downscaled,
        } => {
            let f = parse_formula(&read(&formula)?).context("parsing formula")?;
            let cnd = if downscaled {
                e2sat_to_cnd_downscaled(&f)?
            } else {
                e2sat_to_cnd(&f)?
            };
            info!(
                "G has {} vertices and {} edges; s = {}, t = {}",
                cnd.graph.n(),
                cnd.graph.edge_count(),
                cnd.s,
                cnd.t
            );
            write(&output, &write_graph(&cnd.graph, &[("s", cnd.s), ("t", cnd.t)]))?;
            Ok(Outcome::new("built", format!("s:{},t:{}", cnd.s, cnd.t), 0).with_certificate(Some(output)))
        }
    }
}

/// Pads `x` with the smallest unused vertices up to `s`.
fn pad(x: &VertexSet, s: usize, n: usize) -> VertexSet {
    let mut out = x.clone();
    for v in 1..=n {
        if out.len() >= s {
            break;
        }
        out.insert(v);
    }
    if out.len() > x.len() {
        info!("deletion set padded to s = {s} vertices: {}", join(&out));
    }
    out
}

fn audit(a: AuditCommand) -> Result<Outcome> {
    match a {
        AuditCommand::DdsForward {
            input,
            deletion,
            ell_mode,
            emit_defense,
        } => {
            let inst = load_cnd(&input)?;
            let x = parse_vertex_set(&read(&deletion)?).context("parsing deletion set")?;
            inst.graph.check_set(&x)?;
            let dds = cnd_to_dds(&inst, ell_mode.parse::<EllMode>()?)?;
            let x = pad(&x, inst.s, inst.graph.n());
            let d = dds.proof_defense(&x)?;
            info!(
                "defense of size {} (ell = {}) from X = {}",
                d.total(),
                dds.ell,
                join(&x)
            );
            let mut serious = 0usize;
            for atk in dds.serious_attacks() {
                serious += 1;
                if !counters(&dds.graph, &d, &atk) {
                    info!(
                        "FAIL: serious attack {} is not countered",
                        describe(&dds.graph, &atk)
                    );
                    return Ok(Outcome::new("fail", join(&atk), 1));
                }
            }
            info!("all {serious} serious attacks countered");
            if let Some(v) = find_violator(&dds.graph, &d, dds.k, Strategy::Pruned) {
                info!(
                    "FAIL: attack {} has deficiency {}",
                    describe(&dds.graph, &v.attack),
                    v.deficiency
                );
                return Ok(Outcome::new("fail", join(&v.attack), 1));
            }
            info!("PASS: no attack of size at most {} violates the defense", dds.k);
            let cert = emit(emit_defense, || write_multiset(&d))?;
            Ok(Outcome::new("pass", d.total(), 0).with_certificate(cert))
        }
        AuditCommand::DdsRoundtrip {
            input,
            deletion,
            ell_mode,
            defense,
        } => {
            let inst = load_cnd(&input)?;
            let x = parse_vertex_set(&read(&deletion)?).context("parsing deletion set")?;
            inst.graph.check_set(&x)?;
            let dds = cnd_to_dds(&inst, ell_mode.parse::<EllMode>()?)?;
            let x = pad(&x, inst.s, inst.graph.n());
            let (d, expect) = match &defense {
                Some(p) => (parse_multiset(&read(p)?).context("parsing defense")?, None),
                None => (dds.proof_defense(&x)?, Some(x.clone())),
            };
            let ex = dds.extract_deletion_set(&d)?;
            info!("extracted X = {}", join(&ex.deletion_set));
            let ok = match expect {
                Some(x) => ex.deletion_set == x,
                None => inst.is_solution(&ex.deletion_set)?,
            };
            if ok {
                info!("PASS");
                Ok(Outcome::new("pass", join(&ex.deletion_set), 0))
            } else {
                info!("FAIL: extracted set does not match / is not a valid deletion set");
                Ok(Outcome::new("fail", join(&ex.deletion_set), 1))
            }
        }
        AuditCommand::CndCertificate {
            formula,
            nu,
            downscaled,
        } => {
            let f = parse_formula(&read(&formula)?).context("parsing formula")?;
            let cnd = if downscaled {
                e2sat_to_cnd_downscaled(&f)?
            } else {
                e2sat_to_cnd(&f)?
            };
            let layout = CndLayout::from_graph(&cnd.graph)?;
            let nu: Vec<bool> = match nu {
                Some(s) => s
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(anyhow!("--nu takes a string of 0 and 1")),
                    })
                    .collect::<Result<_>>()?,
                None => match f.solve()? {
                    E2Outcome::Yes { nu } => nu,
                    E2Outcome::No { pairs } => pairs[0].0.clone(),
                },
            };
            let x = valuation_to_deletion(&f, &layout, &nu)?;
            let back = deletion_to_valuation(&f, &cnd, &layout, &x)?;
            if back != nu {
                bail!("valuation round trip changed {} into {}", bits(&nu), bits(&back));
            }
            let mu = (0..1u64 << f.b)
                .map(|code| {
                    (0..f.b)
                        .map(|j| code >> (f.b - 1 - j) & 1 == 1)
                        .collect::<Vec<_>>()
                })
                .find(|mu| f.satisfies_all(&nu, mu));
            let (rest, old) = cnd.graph.delete_vertices(&x)?;
            let typed = typed_clique_audit(&rest, cnd.t)?;
            match (mu, typed) {
                (None, None) => {
                    info!(
                        "PASS: nu = {} wins and G minus X ({} vertices) has no K_{}",
                        bits(&nu),
                        x.len(),
                        cnd.t
                    );
                    Ok(Outcome::new("pass", bits(&nu), 0))
                }
                (Some(mu), typed) => {
                    let q = kt_witness_from_y(&f, &cnd, &layout, &nu, &mu)?;
                    info!(
                        "FAIL: nu = {} loses to mu = {}; K_{} survives: {}",
                        bits(&nu),
                        bits(&mu),
                        cnd.t,
                        describe(&cnd.graph, &q)
                    );
                    if typed.is_none() {
                        bail!("typed audit missed the surviving clique");
                    }
                    Ok(Outcome::new("fail", join(&q), 1))
                }
                (None, Some(tc)) => {
                    let q: VertexSet = tc.members.iter().map(|&v| old[v - 1]).collect();
                    bail!(
                        "nu = {} wins yet a type-{} K_t survives: {}",
                        bits(&nu),
                        tc.kind,
                        join(&q)
                    );
                }
            }
        }
        AuditCommand::CliqueTyped {
            graph,
            t,
            deletion,
            no_compare,
        } => {
            let file = load_graph(&graph)?;
            let t = t
                .or_else(|| file.params.get("t").copied())
                .ok_or_else(|| anyhow!("`t` missing: pass --t or add `c params t <value>`"))?;
            let x = match &deletion {
                Some(p) => parse_vertex_set(&read(p)?).context("parsing deletion set")?,
                None => VertexSet::new(),
            };
            let (rest, old) = file.graph.delete_vertices(&x)?;
            let typed = typed_clique_audit(&rest, t)?;
            let value = match &typed {
                Some(tc) => {
                    let q: VertexSet = tc.members.iter().map(|&v| old[v - 1]).collect();
                    info!("type-{} K_{t}: {}", tc.kind, describe(&file.graph, &q));
                    format!("{}:{}", tc.kind, join(&q))
                }
                None => {
                    info!("no K_{t}");
                    "none".to_string()
                }
            };
            if no_compare {
                return Ok(Outcome::new("typed", value, 0));
            }
            let generic = rest.has_clique(t).is_some();
            if generic == typed.is_some() {
                info!("PASS: generic clique search agrees");
                Ok(Outcome::new("pass", value, 0))
            } else {
                info!("FAIL: generic clique search says {generic}");
                Ok(Outcome::new("fail", value, 1))
            }
        }
    }
}

fn e2sat(a: E2satArgs) -> Result<Outcome> {
    let f = parse_formula(&read(&a.formula)?).context("parsing formula")?;
    info!("a = {}, b = {}, c = {}", f.a, f.b, f.c());
    match f.solve()? {
        E2Outcome::Yes { nu } => {
            info!(
                "YES: no y-assignment satisfies every clause under nu = {}",
                bits(&nu)
            );
            let cert = emit(a.emit, || format!("nu {}\n", bits(&nu)))?;
            Ok(Outcome::new("yes", bits(&nu), 0).with_certificate(cert))
        }
        E2Outcome::No { pairs } => {
            for (nu, mu) in &pairs {
                info!("nu = {} is answered by mu = {}", bits(nu), bits(mu));
            }
            let cert = emit(a.emit, || {
                pairs
                    .iter()
                    .map(|(nu, mu)| format!("nu {} mu {}\n", bits(nu), bits(mu)))
                    .collect()
            })?;
            Ok(Outcome::new("no", "-", 1).with_certificate(cert))
        }
    }
}

fn solve_cnd(a: SolveCndArgs) -> Result<Outcome> {
    let inst = load_cnd(&a.input)?;
    match inst.solve_bruteforce() {
        Some(x) => {
            info!("deleting {} leaves no K_{}", join(&x), inst.t);
            let cert = emit(a.emit, || write_vertex_set(&x))?;
            Ok(Outcome::new("yes", x.len(), 0).with_certificate(cert))
        }
        None => {
            info!("every set of at most {} vertices leaves a K_{}", inst.s, inst.t);
            Ok(Outcome::new("no", "-", 1))
        }
    }
}

fn clique(a: CliqueArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?.graph;
    match g.has_clique(a.t) {
        Some(q) => {
            info!("K_{}: {}", a.t, describe(&g, &q));
            let cert = emit(a.emit, || write_vertex_set(&q))?;
            Ok(Outcome::new("yes", join(&q), 0).with_certificate(cert))
        }
        None => {
            info!("no K_{}", a.t);
            Ok(Outcome::new("no", "-", 1))
        }
    }
}

fn gen(a: GenArgs) -> Result<Outcome> {
    let seed = a.seed.unwrap_or_else(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_nanos() as u64)
    });
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("--{name} is required"));
    let content = match a.kind {
        GenKind::Complete => write_graph(&generate::complete(need(a.n, "n")?), &[]),
        GenKind::Star => write_graph(&generate::star(need(a.n, "n")?), &[]),
        GenKind::Path => write_graph(&generate::path(need(a.n, "n")?), &[]),
        GenKind::Cycle => write_graph(&generate::cycle(need(a.n, "n")?)?, &[]),
        GenKind::Petersen => write_graph(&generate::petersen(), &[]),
        GenKind::Random => {
            let p = a.p.ok_or_else(|| anyhow!("--p is required"))?;
            info!("seed {seed}");
            write_graph(&generate::random(need(a.n, "n")?, p, seed)?, &[])
        }
        GenKind::Interval => {
            info!("seed {seed}");
            write_intervals(&random_instance(need(a.n, "n")?, seed))
        }
        GenKind::Formula => {
            info!("seed {seed}");
            random_formula(need(a.a, "a")?, need(a.b, "b")?, need(a.c, "c")?, seed)?.to_string()
        }
    };
    write(&a.output, &content)?;
    let seeded = matches!(a.kind, GenKind::Random | GenKind::Interval | GenKind::Formula);
    let value = if seeded { seed.to_string() } else { "-".to_string() };
    Ok(Outcome::new("generated", value, 0).with_certificate(Some(a.output)))
}

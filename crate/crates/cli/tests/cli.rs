use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

struct Run {
    code: i32,
    summary: String,
}

impl Run {
    fn field(&self, key: &str) -> &str {
        self.summary
            .split_whitespace()
            .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
            .unwrap_or_else(|| panic!("no `{key}` in `{}`", self.summary))
    }
}

fn defdom(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_defdom"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("run defdom");
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().expect("exit code"),
        summary: stdout.lines().last().unwrap_or("").to_string(),
    }
}

fn file(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, content).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const STAR5: &str = "p dds 6 5\ne 1 2\ne 1 3\ne 1 4\ne 1 5\ne 1 6\n";
const K4_PENDANT: &str = "p dds 5 7\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\ne 4 5\nc params s 1 t 4\n";

#[test]
fn verify_verdicts() {
    let dir = TempDir::new().unwrap();
    let star = file(&dir, "star.g", STAR5);
    let centre = file(&dir, "d.ms", "1 2\n");
    let r = defdom(&["verify", s(&star), s(&centre), "-k", "2"]);
    assert_eq!((r.code, r.field("verdict")), (0, "good"));
    assert_eq!(r.field("value"), "2");

    let p3 = file(&dir, "p3.g", "p dds 3 2\ne 1 2\ne 2 3\n");
    let one = file(&dir, "one.ms", "2\n");
    let cert = dir.path().join("attack.set");
    let r = defdom(&["verify", s(&p3), s(&one), "-k", "2", "--emit", s(&cert)]);
    assert_eq!((r.code, r.field("verdict")), (1, "bad"));
    assert_eq!(r.field("certificate"), s(&cert));
    assert!(std::fs::read_to_string(&cert).unwrap().lines().count() >= 2);

    let malformed = file(&dir, "bad.ms", "1 x\n");
    assert_eq!(defdom(&["verify", s(&star), s(&malformed), "-k", "2"]).code, 2);
    let out_of_range = file(&dir, "oor.ms", "9 1\n");
    assert_eq!(defdom(&["verify", s(&star), s(&out_of_range), "-k", "2"]).code, 2);
}

#[test]
fn solve_exact_star_contrast() {
    let dir = TempDir::new().unwrap();
    let star = file(&dir, "star.g", STAR5);
    let r = defdom(&["solve-exact", s(&star), "-k", "2"]);
    assert_eq!((r.code, r.field("value")), (0, "5"));
    let witness = dir.path().join("w.ms");
    let r = defdom(&[
        "solve-exact",
        s(&star),
        "-k",
        "2",
        "--multiset",
        "--emit",
        s(&witness),
    ]);
    assert_eq!((r.code, r.field("value")), (0, "2"));
    // the emitted witness re-verifies
    assert_eq!(defdom(&["verify", s(&star), s(&witness), "-k", "2"]).code, 0);

    let c4 = file(&dir, "c4.g", "p dds 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n");
    assert_eq!(defdom(&["solve-exact", s(&c4), "-k", "1"]).field("value"), "2");
}

#[test]
fn solve_exact_with_attack_list() {
    let dir = TempDir::new().unwrap();
    let star = file(&dir, "star.g", STAR5);
    let attacks = file(&dir, "a.txt", "2 3\n4 5\n");
    let r = defdom(&["solve-exact", s(&star), "--attacks", s(&attacks)]);
    assert_eq!(
        (r.code, r.field("verdict"), r.field("value")),
        (0, "optimal", "2")
    );

    let lower = file(&dir, "lo.ms", "2 1\n");
    let upper = file(&dir, "up.ms", "2 1\n3 1\n");
    let r = defdom(&[
        "solve-exact",
        s(&star),
        "--attacks",
        s(&attacks),
        "--lower",
        s(&lower),
        "--upper",
        s(&upper),
    ]);
    assert_eq!((r.code, r.field("verdict")), (1, "none"));

    let wide = file(&dir, "wide.ms", "1 1\n4 1\n");
    let r = defdom(&[
        "solve-exact",
        s(&star),
        "--attacks",
        s(&attacks),
        "--lower",
        s(&wide),
        "--upper",
        s(&upper),
    ]);
    assert_eq!(r.code, 2);
    assert_eq!(defdom(&["solve-exact", s(&star)]).code, 2);
}

#[test]
fn greedy_examples() {
    let dir = TempDir::new().unwrap();
    let star = file(&dir, "star.iv", "p intervals 4\n1 0 10\n2 1 2\n3 3 4\n4 5 6\n");
    let out = dir.path().join("d.ms");
    let r = defdom(&[
        "greedy",
        s(&star),
        "-k",
        "2",
        "--emit-defense",
        s(&out),
        "--check",
    ]);
    assert_eq!((r.code, r.field("value")), (0, "2"));
    assert_eq!(std::fs::read_to_string(&out).unwrap().trim(), "1 2");

    let disjoint = file(
        &dir,
        "dis.iv",
        "p intervals 5\n1 0 1\n2 2 3\n3 4 5\n4 6 7\n5 8 9\n",
    );
    assert_eq!(defdom(&["greedy", s(&disjoint), "-k", "1"]).field("value"), "5");

    let shared = file(&dir, "shared.iv", "p intervals 2\n1 0 2\n2 2 3\n");
    assert_eq!(defdom(&["greedy", s(&shared), "-k", "1"]).code, 2);
    // touching intervals must keep their intersection, so normalizing fails too
    assert_eq!(defdom(&["greedy", s(&shared), "-k", "1", "--normalize"]).code, 2);

    let fractional = file(&dir, "frac.iv", "p intervals 2\n1 0.5 1/3\n2 2 3\n");
    assert_eq!(defdom(&["greedy", s(&fractional), "-k", "1"]).code, 2);
}

#[test]
fn greedy_random_with_check() {
    let dir = TempDir::new().unwrap();
    let iv = dir.path().join("r.iv");
    assert_eq!(
        defdom(&["gen", "interval", "-n", "10", "--seed", "5", "-o", s(&iv)]).code,
        0
    );
    for k in 1..=3 {
        let r = defdom(&["greedy", s(&iv), "-k", &k.to_string(), "--check"]);
        assert_eq!((r.code, r.field("verdict")), (0, "optimal"), "k = {k}");
    }
}

#[test]
fn reduce_and_audit_k4_pendant() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k4p.g", K4_PENDANT);
    let out = dir.path().join("dds.g");
    let r = defdom(&["reduce", "cnd-to-dds", s(&g), "-o", s(&out)]);
    assert_eq!((r.code, r.field("value")), (0, "k:6,ell:39"));
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.contains("c params") && written.starts_with("p dds 137"));

    let r = defdom(&[
        "reduce",
        "cnd-to-dds",
        s(&g),
        "--ell-mode",
        "literal",
        "-o",
        s(&out),
    ]);
    assert_eq!(r.field("value"), "k:6,ell:41");
    let r = defdom(&["reduce", "cnd-to-dds", s(&g), "--t", "3", "-o", s(&out)]);
    assert_eq!(r.code, 2);

    let one = file(&dir, "x1.set", "1\n");
    let defense = dir.path().join("d.ms");
    let r = defdom(&[
        "audit",
        "dds-forward",
        s(&g),
        s(&one),
        "--emit-defense",
        s(&defense),
    ]);
    assert_eq!((r.code, r.field("verdict"), r.field("value")), (0, "pass", "39"));

    let pendant = file(&dir, "x5.set", "5\n");
    let r = defdom(&["audit", "dds-forward", s(&g), s(&pendant)]);
    assert_eq!((r.code, r.field("verdict")), (1, "fail"));
    assert_eq!(r.field("value").split(',').count(), 6);

    let r = defdom(&["audit", "dds-roundtrip", s(&g), s(&one)]);
    assert_eq!((r.code, r.field("value")), (0, "1"));
    let r = defdom(&["audit", "dds-roundtrip", s(&g), s(&one), "--defense", s(&defense)]);
    assert_eq!(r.code, 0);

    let unlabeled = file(
        &dir,
        "plain.g",
        K4_PENDANT.replace("c params s 1 t 4\n", "").as_str(),
    );
    assert_eq!(defdom(&["audit", "dds-forward", s(&unlabeled), s(&one)]).code, 2);
}

const SEVEN_SAME: &str = "p e2cnf 2 1 7\n1 2 3 0\n1 2 3 0\n1 2 3 0\n1 2 3 0\n1 2 3 0\n1 2 3 0\n1 2 3 0\n";
const YES_FORMULA: &str =
    "p e2cnf 1 2 7\n1 2 3 0\n1 -2 3 0\n1 2 -3 0\n1 -2 -3 0\n-1 2 3 0\n-1 2 3 0\n-1 -2 3 0\n";

#[test]
fn e2sat_examples() {
    let dir = TempDir::new().unwrap();
    let no = file(&dir, "no.cnf", SEVEN_SAME);
    let r = defdom(&["e2sat", s(&no)]);
    assert_eq!((r.code, r.field("verdict")), (1, "no"));

    let yes = file(&dir, "yes.cnf", YES_FORMULA);
    let r = defdom(&["e2sat", s(&yes)]);
    assert_eq!((r.code, r.field("verdict"), r.field("value")), (0, "yes", "0"));

    let repeated = file(&dir, "rep.cnf", "p e2cnf 1 1 1\n1 -1 2 0\n");
    assert_eq!(defdom(&["e2sat", s(&repeated)]).code, 2);
}

#[test]
fn e2sat_to_cnd_and_certificates() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "f.cnf", YES_FORMULA);
    let out = dir.path().join("cnd.g");
    let r = defdom(&["reduce", "e2sat-to-cnd", s(&f), "-o", s(&out)]);
    assert_eq!((r.code, r.field("value")), (0, "s:28,t:9"));

    let r = defdom(&["audit", "cnd-certificate", s(&f)]);
    assert_eq!((r.code, r.field("verdict")), (0, "pass"));
    let r = defdom(&["audit", "cnd-certificate", s(&f), "--nu", "1"]);
    assert_eq!((r.code, r.field("verdict")), (1, "fail"));
    assert_eq!(r.field("value").split(',').count(), 9);

    let r = defdom(&["audit", "clique-typed", s(&out)]);
    assert_eq!((r.code, r.field("verdict")), (0, "pass"));
    assert!(r.field("value").starts_with('A'));

    let seven = file(&dir, "a2b1.cnf", SEVEN_SAME);
    let r = defdom(&["reduce", "e2sat-to-cnd", s(&seven), "-o", s(&out)]);
    assert_eq!(r.field("value"), "s:35,t:8");

    let five = file(
        &dir,
        "c5.cnf",
        "p e2cnf 2 1 5\n1 2 3 0\n1 2 3 0\n1 2 3 0\n1 2 3 0\n1 2 3 0\n",
    );
    assert_eq!(
        defdom(&["reduce", "e2sat-to-cnd", s(&five), "-o", s(&out)]).code,
        2
    );
}

#[test]
fn cnd_and_clique() {
    let dir = TempDir::new().unwrap();
    let k5 = dir.path().join("k5.g");
    defdom(&["gen", "complete", "-n", "5", "-o", s(&k5)]);
    let x = dir.path().join("x.set");
    let r = defdom(&["solve-cnd", s(&k5), "--s", "2", "--t", "4", "--emit", s(&x)]);
    assert_eq!((r.code, r.field("value")), (0, "2"));
    assert_eq!(
        std::fs::read_to_string(&x)
            .unwrap()
            .split_whitespace()
            .collect::<Vec<_>>(),
        ["1", "2"]
    );
    assert_eq!(defdom(&["solve-cnd", s(&k5), "--s", "1", "--t", "4"]).code, 1);

    assert_eq!(defdom(&["clique", s(&k5), "-t", "5"]).code, 0);
    assert_eq!(defdom(&["clique", s(&k5), "-t", "6"]).code, 1);
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.iv"), dir.path().join("b.iv"));
    let r = defdom(&["gen", "interval", "-n", "10", "--seed", "1", "-o", s(&a)]);
    assert_eq!((r.code, r.field("value")), (0, "1"));
    defdom(&["gen", "interval", "-n", "10", "--seed", "1", "-o", s(&b)]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let star = dir.path().join("star.g");
    defdom(&["gen", "star", "-n", "5", "-o", s(&star)]);
    assert!(std::fs::read_to_string(&star).unwrap().starts_with("p dds 6 5"));

    let random = dir.path().join("r.g");
    assert_eq!(
        defdom(&[
            "gen",
            "random",
            "-n",
            "10",
            "-p",
            "0.4",
            "--seed",
            "3",
            "-o",
            s(&random)
        ])
        .code,
        0
    );
    assert!(std::fs::read_to_string(&random).unwrap().starts_with("p dds 10 "));
    assert_eq!(defdom(&["gen", "random", "-n", "10", "-o", s(&random)]).code, 2);
}

#[test]
fn usage_errors_and_time_limit() {
    let r = defdom(&["verify"]);
    assert_eq!((r.code, r.field("verdict")), (2, "error"));
    assert_eq!(defdom(&["no-such-command"]).code, 2);

    let dir = TempDir::new().unwrap();
    let g = dir.path().join("big.g");
    defdom(&[
        "gen",
        "random",
        "-n",
        "40",
        "-p",
        "0.2",
        "--seed",
        "1",
        "-o",
        s(&g),
    ]);
    let r = defdom(&[
        "--time-limit",
        "0.2",
        "solve-exact",
        s(&g),
        "-k",
        "3",
        "--multiset",
    ]);
    assert_eq!((r.code, r.field("verdict")), (3, "timeout"));
}

#[test]
fn jobs_do_not_change_results() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.g");
    defdom(&["gen", "petersen", "-o", s(&g)]);
    let d = file(&dir, "d.ms", "1 1\n2 1\n3 1\n");
    let one = defdom(&["--jobs", "1", "verify", s(&g), s(&d), "-k", "3"]);
    let four = defdom(&["--jobs", "4", "verify", s(&g), s(&d), "-k", "3"]);
    assert_eq!(one.summary, four.summary);
    assert_eq!(one.code, 1);
}

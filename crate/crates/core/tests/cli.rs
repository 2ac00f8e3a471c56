use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use diskspan::cli::{EXIT_INVARIANT, EXIT_OK, EXIT_PARSE, EXIT_USAGE};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diskspan")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_single_point() {
    let o = bin(&["gen", "--n", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).starts_with("2 1\n"));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn gen_is_seeded() {
    let a = bin(&["gen", "--n", "50", "--seed", "11", "--dist", "clustered"]);
    let b = bin(&["gen", "--n", "50", "--seed", "11", "--dist", "clustered"]);
    let c = bin(&["gen", "--n", "50", "--seed", "12", "--dist", "clustered"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn gen_loguniform_radii_in_range() {
    let o = bin(&["gen", "--n", "200", "--radii", "loguniform:0.01", "--seed", "3"]);
    let text = stdout(&o);
    for line in text.lines().skip(1) {
        let r: f64 = line.split_whitespace().nth(2).unwrap().parse().unwrap();
        assert!((0.01..=1.0).contains(&r), "{r}");
    }
}

#[test]
fn gen_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("i.txt");
    let o = bin(&["gen", "--n", "5", "--out", s(&p)]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&p).unwrap().starts_with("2 5\n"));
}

#[test]
fn build_two_points() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.txt", "2 2\n0 0 1\n1.5 0 1\n");
    for algo in ["udg", "dg", "yao"] {
        let o = bin(&["build", "--algo", algo, "--eps", "1/4", "--in", s(&inst)]);
        assert_eq!(o.status.code(), Some(EXIT_OK), "{algo}");
        let text = stdout(&o);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("2 1"));
        let e: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
        assert_eq!((e[0], e[1], e[2]), ("0", "1", "1.5"));
    }
}

#[test]
fn build_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let unit = write(dir.path(), "u.txt", "2 2\n0 0 1\n1 0 1\n");
    let mixed = write(dir.path(), "m.txt", "2 2\n0 0 1\n1 0 0.5\n");
    let dup = write(dir.path(), "d.txt", "2 2\n0 0 1\n0 0 1\n");
    let garbage = write(dir.path(), "g.txt", "2 1\n0 zero 1\n");
    let code = |args: &[&str]| bin(args).status.code();
    assert_eq!(code(&["build", "--algo", "udg", "--eps", "0.3", "--in", s(&unit)]), Some(EXIT_USAGE));
    assert_eq!(code(&["build", "--algo", "udg", "--eps", "1/4", "--in", s(&mixed)]), Some(EXIT_USAGE));
    assert_eq!(code(&["build", "--algo", "dg", "--eps", "1/4", "--in", s(&dup)]), Some(EXIT_PARSE));
    assert_eq!(code(&["build", "--algo", "dg", "--eps", "1/4", "--in", s(&garbage)]), Some(EXIT_PARSE));
    assert_eq!(code(&["build", "--algo", "dg", "--eps", "1/4", "--in", "/nonexistent/x"]), Some(EXIT_PARSE));
    assert_eq!(code(&["frobnicate"]), Some(EXIT_USAGE));
    assert_eq!(code(&["--help"]), Some(EXIT_OK));
}

#[test]
fn pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("i.txt");
    let sp = dir.path().join("s.txt");
    let tree = dir.path().join("t.txt");
    assert!(bin(&["gen", "--n", "300", "--seed", "5", "--out", s(&inst)]).status.success());
    assert!(bin(&["build", "--algo", "udg", "--eps", "1/4", "--in", s(&inst), "--out", s(&sp)]).status.success());

    let o = bin(&["verify", "--graph", s(&sp), "--spanner", s(&sp), "--bound", "1"]);
    let text = stdout(&o);
    assert!(text.starts_with("maxRatio 1\nwitness ") && text.ends_with("PASS\n"), "{text}");

    let o = bin(&["verify", "--in", s(&inst), "--spanner", s(&sp), "--bound", "3"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).ends_with("PASS\n"));
    let o = bin(&["verify", "--in", s(&inst), "--spanner", s(&sp), "--bound", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_INVARIANT));
    assert!(stdout(&o).ends_with("FAIL\n"));

    let o = bin(&["separate", "--spanner", s(&sp), "--in", s(&inst), "--out", s(&tree)]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).ends_with("PASS\n"));
    assert!(std::fs::read_to_string(&tree).unwrap().starts_with("nodes "));

    let o = bin(&["diameter", "--spanner", s(&sp), "--in", s(&inst), "--exact", "--per-component"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    let ratio: f64 = text.lines().last().unwrap().strip_prefix("ratio ").unwrap().parse().unwrap();
    assert!((2.0 / 3.0..=1.0 + 1e-12).contains(&ratio));

    let o = bin(&["stats", "--spanner", s(&sp), "--in", s(&inst), "--eps", "1/4"]);
    let text = stdout(&o);
    assert!(text.starts_with("n,m,eps,rho,maxDegree,edgesPerN\n300,"));
    assert!(text.contains("\ndepth,count\n"));
}

#[test]
fn spanner_size_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.txt", "2 2\n0 0 1\n1 0 1\n");
    let sp = write(dir.path(), "s.txt", "3 0\n");
    let o = bin(&["stats", "--spanner", s(&sp), "--in", s(&inst), "--eps", "1/4"]);
    assert_eq!(o.status.code(), Some(EXIT_PARSE));
}

#[test]
fn diameter_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.txt", "2 2\n0 0 1\n1.25 0 1\n");
    let sp = write(dir.path(), "s.txt", "2 1\n0 1 1.25 -1\n");
    let o = bin(&["diameter", "--spanner", s(&sp), "--in", s(&inst), "--exact"]);
    assert_eq!(stdout(&o), "dia 1.25\ndelta 1.25\nratio 1\n");
}

#[test]
fn diameter_needs_connected_spanner() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.txt", "2 3\n0 0 1\n1 0 1\n10 0 1\n");
    let sp = write(dir.path(), "s.txt", "3 1\n0 1 1 -1\n");
    let o = bin(&["diameter", "--spanner", s(&sp), "--in", s(&inst)]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    let o = bin(&["diameter", "--spanner", s(&sp), "--in", s(&inst), "--per-component"]);
    assert_eq!(stdout(&o), "dia 1\ncomponents 2\n");
}

#[test]
fn stats_empty_spanner() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "i.txt", "2 2\n0 0 1\n5 0 1\n");
    let sp = write(dir.path(), "s.txt", "2 0\n");
    let o = bin(&["stats", "--spanner", s(&sp), "--in", s(&inst), "--eps", "1/8"]);
    assert_eq!(stdout(&o), "n,m,eps,rho,maxDegree,edgesPerN\n2,0,0.125,1,0,0\ndepth,count\n");
}

#[test]
fn in_process_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = diskspan::cli::run(["diskspan", "gen", "--n", "20", "--seed", "9"], &mut out, &mut err);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, bin(&["gen", "--n", "20", "--seed", "9"]).stdout);
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn xre(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xre")).args(args).output().expect("run xre")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn match_engines() {
    assert_eq!(stdout(&xre(&["match", "--engine", "thompson", "--pattern", "(ab)*", "--text", "abab"])), "true\n");
    assert_eq!(stdout(&xre(&["match", "--engine", "ere", "--pattern", "(aa)*&(aaa)*", "--text", "aaaa"])), "false\n");
    assert_eq!(
        stdout(&xre(&["match", "--engine", "rewb", "--pattern", "(?<1>[ab]*)\\1\\1", "--text", "ababab"])),
        "true\n"
    );
    let o = xre(&["--alphabet", "ab", "match", "--engine", "ere", "--pattern", "~(a*)", "--text", ""]);
    assert_eq!(stdout(&o), "false\n");
    let o = xre(&["--alphabet", "ab", "match", "--engine", "ere", "--pattern", "~(a*)", "--text", "b"]);
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn match_errors() {
    let o = xre(&["match", "--engine", "thompson", "--pattern", "~a", "--text", "a"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot run"));
    let o = xre(&["--alphabet", "a", "match", "--engine", "ere", "--pattern", "b", "--text", "a"]);
    assert!(!o.status.success());
    let o = xre(&["match", "--engine", "ere", "--pattern", "(a", "--text", "a"]);
    assert!(!o.status.success());
    let o = xre(&["match", "--engine", "grep", "--pattern", "a", "--text", "a"]);
    assert!(!o.status.success());
}

#[test]
fn gen_reduce_match_oracle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ov = path(dir.path(), "ov.txt");
    let (text, pattern) = (path(dir.path(), "w.txt"), path(dir.path(), "r.txt"));
    for seed in ["1", "2", "3"] {
        stdout(&xre(&["--seed", seed, "gen", "ov", "--n", "4", "--d", "3", "--out", &ov]));
        let expected = stdout(&xre(&["oracle", "ov", "--in", &ov]));
        for (construction, engine, sigma) in [("ov-semiere", "ere", "01#$"), ("ov-rewb", "rewb", "01#$@")] {
            let meta =
                stdout(&xre(&["reduce", construction, "--in", &ov, "--out-text", &text, "--out-pattern", &pattern]));
            assert!(meta.contains(&format!("construction={construction}")));
            let got = stdout(&xre(&[
                "--alphabet",
                sigma,
                "match",
                "--engine",
                engine,
                "--pattern-file",
                &pattern,
                "--text-file",
                &text,
            ]));
            assert_eq!(got, expected, "{construction} seed {seed}");
        }
    }
}

#[test]
fn clique_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.txt");
    let (text, pattern) = (path(dir.path(), "w.txt"), path(dir.path(), "r.txt"));
    fs::write(&g, "3 3\n0 1\n1 2\n0 2\n").unwrap();
    assert_eq!(stdout(&xre(&["oracle", "clique", "--in", &g, "--k", "1"])), "true\n");
    stdout(&xre(&["reduce", "clique-ere", "--in", &g, "--k", "1", "--out-text", &text, "--out-pattern", &pattern]));
    let w = fs::read_to_string(&text).unwrap();
    assert_eq!(w, "#00%#01%#10%#$#%%00@00%#%%10@01%#%%01@10%#$#%%00#%%10#%%01#\n");
    let args = ["--alphabet", "01%#$@", "match", "--engine", "ere", "--pattern-file", &pattern, "--text-file", &text];
    assert_eq!(stdout(&xre(&args)), "true\n");
    // Reference matcher on the same pair.
    let args = ["--alphabet", "01%#$@", "oracle", "match", "--pattern-file", &pattern, "--text-file", &text];
    assert_eq!(stdout(&xre(&args)), "true\n");

    fs::write(&g, "3 2\n0 1\n1 2\n").unwrap();
    assert_eq!(stdout(&xre(&["oracle", "clique", "--in", &g])), "false\n");
    stdout(&xre(&["reduce", "clique-ere", "--in", &g, "--out-text", &text, "--out-pattern", &pattern]));
    let args = ["--alphabet", "01%#$@", "match", "--engine", "ere", "--pattern-file", &pattern, "--text-file", &text];
    assert_eq!(stdout(&xre(&args)), "false\n");
}

#[test]
fn gen_is_deterministic_and_validated() {
    let a = stdout(&xre(&["--seed", "5", "gen", "graph", "--n", "6", "--p", "0.3", "--plant-clique", "3"]));
    let b = stdout(&xre(&["--seed", "5", "gen", "graph", "--n", "6", "--p", "0.3", "--plant-clique", "3"]));
    assert_eq!(a, b);
    assert!(a.starts_with("6 "));
    assert!(!xre(&["gen", "graph", "--n", "3", "--plant-clique", "4"]).status.success());
    let ov = stdout(&xre(&["gen", "ov", "--n", "8", "--c", "2"]));
    assert!(ov.starts_with("8 6\n"));
    let p = stdout(&xre(&["--seed", "3", "gen", "pattern", "--dialect", "rewb", "--depth", "4"]));
    assert!(!p.trim().is_empty());
}

#[test]
fn verify_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let report = path(dir.path(), "report.csv");
    let out = stdout(&xre(&[
        "--seed",
        "9",
        "verify",
        "ov-rewb",
        "--trials",
        "20",
        "--max-n",
        "3",
        "--max-d",
        "3",
        "--spot-checks",
        "4",
        "--exhaustive-n",
        "1",
        "--exhaustive-d",
        "1",
        "--report",
        &report,
    ]));
    assert!(out.contains("24/24 agree (100.00%), 4 spot checks"), "{out}");
    let csv = fs::read_to_string(&report).unwrap();
    assert_eq!(csv.lines().count(), 25);
    assert!(csv.lines().next().unwrap().ends_with(",engine_ns"));
    let one = stdout(&xre(&[
        "--seed",
        "9",
        "verify",
        "ov-rewb",
        "--trials",
        "20",
        "--max-n",
        "3",
        "--max-d",
        "3",
        "--spot-checks",
        "4",
        "--exhaustive-n",
        "1",
        "--exhaustive-d",
        "1",
        "--trial",
        "10",
    ]));
    assert!(one.contains("1/1 agree"));
    let o = xre(&["verify", "ov-semiere", "--engine", "rewb"]);
    assert!(!o.status.success());
}

#[test]
fn bench_csv() {
    let out = stdout(&xre(&["bench", "--engine", "thompson", "--family", "plain", "--sizes", "64,128,256"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "engine,construction,n,m,reps,median_ns,slope_hint");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("thompson,plain,256,17,3,"));
    assert!(!xre(&["bench", "--engine", "ere", "--family", "plain", "--reps", "1"]).status.success());
    let out = stdout(&xre(&[
        "--budget-seconds",
        "0",
        "bench",
        "--engine",
        "ere",
        "--family",
        "complement",
        "--sizes",
        "32,64,128",
    ]));
    assert!(out.trim_end().ends_with("truncated"), "{out}");
}

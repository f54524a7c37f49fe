mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::fixture;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quditsynth")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn synth_stab_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let stab = fixture("nine_five.stab");
    let base = dir.path().join("nf");
    let logdir = dir.path().join("log");
    let o = run(&["synth-stab", path(&stab), "-o", path(&base), "--log", path(&logdir)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "adds=24 singles=41 pivots=1,2,3,4 add_bound=26");
    assert!(logdir.join("row4_A.stab").exists());

    let enc = dir.path().join("nf.enc");
    let o = run(&["verify", path(&stab), "--encoder", path(&enc)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("result=pass samples=10"));

    let o = run(&["gatecount", path(&enc)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("add=24"));
    assert!(stdout(&o).contains("within_bound=true"));
}

#[test]
fn verify_reports_a_broken_encoder() {
    let dir = tempfile::tempdir().unwrap();
    let stab = fixture("nine_five.stab");
    let base = dir.path().join("nf");
    assert_eq!(run(&["synth-stab", path(&stab), "-o", path(&base)]).status.code(), Some(0));
    let enc = dir.path().join("nf.enc");
    let text = std::fs::read_to_string(&enc).unwrap();
    let broken: Vec<&str> = text.lines().filter(|l| *l != "ADD c=1 t=3").collect();
    assert_eq!(broken.len() + 1, text.lines().count());
    let bad = dir.path().join("bad.enc");
    std::fs::write(&bad, broken.join("\n")).unwrap();
    let o = run(&["verify", path(&stab), "--encoder", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("result=fail kind="), "{out}");
    assert!(out.contains("message="));
}

#[test]
fn normalize_writes_a_passing_encoder() {
    let dir = tempfile::tempdir().unwrap();
    let stab = fixture("five_one.stab");
    let base = dir.path().join("c");
    assert_eq!(run(&["synth-stab", path(&stab), "-o", path(&base), "--variant", "z"]).status.code(), Some(0));
    let out = dir.path().join("norm.enc");
    let o =
        run(&["verify", path(&stab), "--encoder", path(&dir.path().join("c.enc")), "--normalize", "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["verify", path(&stab), "--encoder", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    for l in stdout(&o).lines().skip(1) {
        assert!(l.ends_with("exponent=0"), "{l}");
    }
}

#[test]
fn synth_css_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("css.enc");
    let g = fixture("seven_three_g.mat");
    let h = fixture("seven_three_h.mat");
    let o = run(&["synth-css", "--g", path(&g), "--h", path(&h), "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "fourier=2 adds=16 mults=28 swapped=false bounds=2,20,26");
    let o = run(&["synth-css", "--g", path(&g), "--h", path(&h), "-o", path(&out), "--merge-mult"]);
    assert!(stdout(&o).contains("mults=16"));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# direction=encoder"));
    assert!(text.contains("# pivots=1,2,6,7"));
}

#[test]
fn distance_and_kl() {
    let o = run(&["distance", path(&fixture("five_one.stab"))]);
    assert_eq!(stdout(&o).trim(), "d=3");
    let o = run(&["distance", path(&fixture("five_one_mutated.stab"))]);
    assert_eq!(stdout(&o).trim(), "d=1");

    let o = run(&["kl-check", path(&fixture("five_one.stab")), "--t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "result=pass codewords=2 errors=16");
    let o = run(&["kl-check", path(&fixture("five_one_mutated.stab")), "--t", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("result=fail violations="));
}

#[test]
fn simulate_prints_amplitudes() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.circ");
    std::fs::write(&c, "field p=3 m=1 poly=0,1\nF q1\nADD c=1 t=2\n").unwrap();
    let o = run(&["simulate", path(&c), "--input", "00"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("|00> 0.577350"));
    assert!(lines[1].starts_with("|11> 0.577350"));
    assert!(lines[2].starts_with("|22> 0.577350"));
}

#[test]
fn input_errors_exit_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.stab");
    std::fs::write(&bad, "field p=3 m=1 poly=0,1\ncode n=2 k=1\nrow 1 0 | 0 7\n").unwrap();
    let o = run(&["distance", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).trim(), format!("{}: 3: z: value 7 is not a field element for q = 3", path(&bad)));

    let o = run(&["distance", path(&dir.path().join("missing.stab"))]);
    assert_eq!(o.status.code(), Some(2));

    let noncomm = dir.path().join("nc.stab");
    std::fs::write(&noncomm, "field p=2 m=1 poly=0,1\ncode n=2 k=0\n").unwrap();
    assert_eq!(run(&["distance", path(&noncomm)]).status.code(), Some(2));

    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn help_documents_formats() {
    let o = run(&["--help"]);
    let text = stdout(&o);
    for needle in ["field p=<p> m=<m> poly=", "code n=<n> k=<k>", "matrix rows=<r> cols=<n>", "ADD c=<i> t=<j>"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

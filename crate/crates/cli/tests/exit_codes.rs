use std::path::Path;
use std::process::{Command, Output};

fn dgres(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dgres"));
    cmd.args(args).current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("inputs"));
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn parse_errors_exit_2_with_position() {
    let o = dgres(&["validate", "bad_expression.toml"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5, column 25"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(dgres(&["bar", "e1.toml"], &[]).status.code(), Some(2));
    assert_eq!(dgres(&["lift", "e1.toml", "--module", "nope"], &[]).status.code(), Some(2));
    assert_eq!(dgres(&["semifree", "missing.toml"], &[]).status.code(), Some(2));
    assert_eq!(dgres(&["frobnicate", "e1.toml"], &[]).status.code(), Some(2));
    assert_eq!(dgres(&["semifree", "e1.toml", "--format", "xml"], &[]).status.code(), Some(2));
    assert_eq!(dgres(&["homology", "e1.toml", "--max-degree", "0"], &[]).status.code(), Some(2));
}

#[test]
fn check_failures_exit_1() {
    let o = dgres(&["validate", "bad_degree.toml"], &[]);
    assert_eq!(o.status.code(), Some(1));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("FAIL  dg.differential_degree_minus_one"));
    assert!(out.contains("d(e) has degree 2, expected 1"));
    let o = dgres(&["derivations", "corrupted_derivation.toml", "--max-degree", "4"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stdout).unwrap().contains("ObstructionNonzero"));
}

#[test]
fn flags_override_file_options() {
    let o = dgres(&["semifree", "e3.toml", "--max-degree", "5", "--seed", "11"], &[]);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("command: dgres semifree e3.toml --max-degree 5 --samples 50 --seed 11\n"));
    assert!(out.contains("\nseed: 11\n"));
}

#[test]
fn thread_cap_does_not_change_reports() {
    let a = dgres(&["semifree", "e2.toml"], &[("DGRES_THREADS", "1")]);
    let b = dgres(&["semifree", "e2.toml"], &[("DGRES_THREADS", "4")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(dgres(&["semifree", "e2.toml"], &[("DGRES_THREADS", "0")]).status.code(), Some(2));
}

//! Byte-exact comparison of reports against `tests/golden/`. Set
//! `DGRES_BLESS=1` to rewrite the expected files.

use std::path::{Path, PathBuf};
use std::process::Command;

struct Case {
    name: String,
    code: i32,
    args: Vec<String>,
}

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).to_path_buf()
}

fn cases() -> Vec<Case> {
    let manifest = std::fs::read_to_string(dir().join("tests/golden/commands.txt")).unwrap();
    manifest
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.split('|').map(str::trim).collect();
            Case {
                name: parts[0].to_string(),
                code: parts[1].parse().unwrap(),
                args: parts[2].split_whitespace().map(String::from).collect(),
            }
        })
        .collect()
}

fn run(case: &Case) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_dgres"))
        .args(&case.args)
        .current_dir(dir().join("inputs"))
        .output()
        .unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn reports_match_goldens() {
    let bless = std::env::var_os("DGRES_BLESS").is_some();
    let mut mismatched = Vec::new();
    for case in cases() {
        let (stdout, code) = run(&case);
        assert_eq!(code, case.code, "{}: exit code", case.name);
        let path = dir().join("tests/golden").join(format!("{}.out", case.name));
        if bless {
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
        if expected != stdout {
            mismatched.push(case.name.clone());
        }
    }
    assert!(mismatched.is_empty(), "reports differ from goldens: {mismatched:?}");
}

#[test]
fn reruns_are_byte_identical() {
    for case in cases() {
        assert_eq!(run(&case), run(&case), "{}", case.name);
    }
}

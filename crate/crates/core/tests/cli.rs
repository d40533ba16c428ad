//! Golden-file tests for the command line. Set `HERMRANK_BLESS=1` to rewrite the
//! expected outputs after an intended change.

use std::path::{Path, PathBuf};

use hermrank::quadrics::construct_map;
use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_str().unwrap().to_string()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hermrank").chain(args.iter().copied());
    let code = hermrank::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn check_golden(name: &str, args: &[&str]) {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{name}: {err}");
    let path = golden_path(name);
    if std::env::var_os("HERMRANK_BLESS").is_some() {
        std::fs::write(&path, &out).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, want, "{name} differs from {}", path.display());
    let (_, again, _) = run(args);
    assert_eq!(out, again, "{name} is not deterministic");
}

#[test]
fn bounds() {
    check_golden("macaulay_6_2", &["macaulay", "6", "2"]);
    check_golden("bound_g", &["bound", "g", "2", "3", "7"]);
    check_golden("bound_compose", &["bound", "compose", "1", "3", "4"]);
    check_golden("bound_hermitian", &["bound", "hermitian", "1", "2", "3"]);
    check_golden("bound_stability", &["bound", "stability", "4", "2", "9", "8"]);
    assert_eq!(run(&["bound", "k", "2", "3"]).1, "6\n");
    assert_eq!(run(&["bound", "rigidity", "2", "1", "1"]).1, "3\n");
}

#[test]
fn forms() {
    let sq = data("quadric21_squared.form");
    check_golden("form_rank", &["form", "rank", &sq]);
    check_golden("form_inertia", &["form", "inertia", &sq]);
    check_golden("form_decompose", &["form", "decompose", &sq]);
    check_golden("form_decompose_twisted", &["form", "decompose", &data("twisted.form")]);
}

#[test]
fn restrictions() {
    let sq = data("quadric21_squared.form");
    check_golden("restrict_generic", &["restrict", "generic", &sq, "--dim", "2"]);
    check_golden("restrict_max", &["restrict", "max", &sq, "--dim", "1", "--samples", "5"]);
    let (_, quiet, _) = run(&["--quiet", "--seed", "7", "restrict", "generic", &sq, "--dim", "1"]);
    assert_eq!(quiet, "1\n");
}

#[test]
fn quadrics() {
    let id = data("identity21.map");
    assert_eq!(run(&["quadric", "verify", &id]), (0, "true\n".into(), String::new()));
    assert_eq!(run(&["quadric", "verify", &data("printed_tensor21.map")]).1, "false\n");
    check_golden("quadric_tensor", &["quadric", "tensor", &id, "--component", "2"]);
    check_golden("quadric_dehomogenize", &["quadric", "dehomogenize", &data("s_times_x1.realpoly")]);
    check_golden("quadric_admissible", &["quadric", "admissible", &data("s_times_x1.realpoly")]);
    assert_eq!(run(&["--quiet", "quadric", "admissible", &data("not_admissible.realpoly")]).1, "false\n");
    check_golden("quadric_construct_2233", &["quadric", "construct", "2", "2", "3", "3"]);
    check_golden("quadric_region_4_2_20", &["quadric", "region", "4", "2", "--max", "20"]);
}

#[test]
fn region_marks_exactly_the_constructible_points() {
    let (_, out, _) = run(&["quadric", "region", "4", "2", "--max", "20"]);
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with("B=")).collect();
    assert_eq!(rows.len(), 21);
    for (i, row) in rows.iter().enumerate() {
        let big_b = 20 - i;
        let cells: Vec<char> = row[6..].chars().collect();
        assert_eq!(cells.len(), 21);
        for (big_a, &c) in cells.iter().enumerate() {
            let ok = construct_map(4, 2, big_a, big_b, 100_000).is_ok();
            assert_eq!(c == '@', ok, "({big_a}, {big_b}) drawn as {c:?}");
        }
    }
}

#[test]
fn json_documents() {
    let (code, out, _) = run(&["--json", "bound", "k", "2", "3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["value"], "6");
    let (_, out, _) = run(&["--json", "form", "inertia", &data("quadric21_squared.form")]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["pos"].as_u64(), v["neg"].as_u64(), v["rank"].as_u64()), (Some(4), Some(2), Some(6)));
    let (_, out, _) = run(&["--json", "quadric", "construct", "4", "2", "9", "8"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["target"], serde_json::json!([9, 8]));
    assert_eq!(v["components"].as_array().unwrap().len(), 17);
    assert_eq!(v["verified"], true);
    let (_, out, _) = run(&["--json", "quadric", "region", "4", "2", "--max", "10"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
}

#[test]
fn errors_and_exit_codes() {
    let (code, _, err) = run(&["form", "rank", &data("bad_exponents.form")]);
    assert_eq!(code, 2);
    assert!(err.contains("ParseError") && err.contains(":3: expected 3 exponents"), "{err}");
    let (code, _, err) = run(&["form", "rank", &data("nonreal_diagonal.form")]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: NonRealDiagonal:"), "{err}");
    assert_eq!(err.lines().count(), 2);
    let (code, _, err) = run(&["quadric", "construct", "4", "2", "30", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("NotReached") && err.contains("outside"), "{err}");
    let (code, _, err) = run(&["--budget", "3", "quadric", "construct", "4", "2", "12", "12"]);
    assert_eq!(code, 1);
    assert!(err.contains("--budget"), "{err}");
    assert_eq!(run(&["bound", "stability", "4", "1", "9", "9"]).0, 1);
    assert_eq!(run(&["quadric", "tensor", &data("identity21.map"), "--component", "9"]).0, 1);
    assert_eq!(run(&["form", "rank", &data("missing.form")]).0, 2);
    assert_eq!(run(&["bound", "k", "2"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("quadric"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hermrank");
    let ok = std::process::Command::new(bin).args(["bound", "k", "2", "3"]).output().unwrap();
    assert_eq!((ok.status.code(), ok.stdout.as_slice()), (Some(0), b"6\n".as_slice()));
    let parse = std::process::Command::new(bin).args(["form", "rank", &data("bad_exponents.form")]).output().unwrap();
    assert_eq!(parse.status.code(), Some(2));
    let domain = std::process::Command::new(bin).args(["bound", "k", "1", "3"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("OutOfDomain"));
}

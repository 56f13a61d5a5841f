use std::path::PathBuf;
use std::process::Command;

use mccgs_cli::{emit_dot, emit_json, emit_table, run, CliError, Mode, ProblemFile, ReportBundle, Settings};

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mccgs"))
}

#[test]
fn buildtree_table_rows() {
    let out = run(&problem("two_lines.txt"), Mode::Buildtree, &Settings::default()).unwrap();
    let table = emit_table(&out.bundle);
    let mut lines = table.lines();
    assert_eq!(lines.next().unwrap(), "lpp | basis     | null cond.   | non-null cond");
    let rows: Vec<&str> = lines.skip(1).take(10).collect();
    assert_eq!(rows[0], "[1] | [1]       | []           | {c, a, a*d - b*c}");
    assert_eq!(rows[1], "[x] | [c*x + d] | [a*d - b*c]  | {c, a}");
    assert_eq!(rows[9], "[]  | []        | [d, c, b, a] | {}");
    assert_eq!(out.bundle.segments.len(), 10);
    assert_eq!(out.bundle.exit_code(), 0);
}

#[test]
fn mccgs_table_rows() {
    let out = run(&problem("two_lines.txt"), Mode::Mccgs, &Settings::default()).unwrap();
    let table = emit_table(&out.bundle);
    let rows: Vec<&str> = table.lines().skip(2).take(3).collect();
    assert!(rows[0].starts_with("[1] | [1]                  | ([], {c, a, a*d - b*c}), ([a], {c, b})"));
    assert_eq!(
        rows[1],
        "[x] | [{c*x + d, a*x + b}] | ([a*d - b*c], {c, a}), ([b, a], {c}), ([d, c], {a})"
    );
    assert_eq!(rows[2], "[]  | []                   | ([d, c, b, a], {})");
}

#[test]
fn json_round_trip_and_determinism() {
    let flags = Settings {
        seed: Some(7),
        ..Settings::default()
    };
    let a = emit_json(&run(&problem("two_lines.txt"), Mode::Mccgs, &flags).unwrap().bundle);
    let b = emit_json(&run(&problem("two_lines.txt"), Mode::Mccgs, &flags).unwrap().bundle);
    assert_eq!(a, b);
    let back: ReportBundle = serde_json::from_str(&a).unwrap();
    assert_eq!(emit_json(&back), a);
    assert_eq!(back.seed, 7);
    let keys: Vec<usize> = ["\"mode\"", "\"ring\"", "\"segments\"", "\"diagnostics\"", "\"seed\""]
        .iter()
        .map(|k| a.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn no_common_basis_json() {
    let out = run(&problem("no_common_basis.txt"), Mode::Mccgs, &Settings::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&emit_json(&out.bundle)).unwrap();
    assert_eq!(v["segments"].as_array().unwrap().len(), 2);
    assert_eq!(v["segments"][0]["basis"][0][0], "u*x + 1");
    assert_eq!(v["segments"][1]["subsegments"][0]["N"][0], "u");
    assert!(v["diagnostics"]
        .as_array()
        .unwrap()
        .iter()
        .any(|d| d == "no common reduced basis for lpp [x]"));
}

#[test]
fn dot_has_generic_node() {
    let out = run(&problem("two_lines.txt"), Mode::Buildtree, &Settings::default()).unwrap();
    let dot = emit_dot(&out.tree, &out.ring);
    assert!(dot.starts_with("digraph buildtree {"));
    assert!(dot.contains("[label=\"[1,1,1]\\nlpp [1]\"]"));
    assert!(dot.contains("style=dashed"));
    assert_eq!(dot.matches(" -> ").count(), 18);
}

#[test]
fn parse_errors_have_positions() {
    let err = ProblemFile::parse("params: a\nvars: x\nsystem:\n").unwrap_err();
    assert!(matches!(err, CliError::Parse { line: 3, .. }));
    let pf = ProblemFile::parse("params: a\nvars: x\nsystem:\n  a*x + 2a\n").unwrap();
    let ring = pf.ring().unwrap();
    let err = pf.polynomials(&ring).unwrap_err();
    assert!(matches!(err, CliError::Parse { line: 4, col: 10, .. }), "{err}");
    let err = ProblemFile::parse("params: a\nordre: lex\n").unwrap_err();
    assert!(err.to_string().contains("unknown key 'ordre'"));
    let err = ProblemFile::parse("order_vars: plex\n").unwrap_err();
    assert!(matches!(err, CliError::Parse { line: 1, col: 13, .. }));
}

#[test]
fn file_options_and_flag_override() {
    let pf = ProblemFile::parse("params: u\nvars: x\nseed: 3\nsamples: 2\nsystem: u*x\n").unwrap();
    assert_eq!(pf.options.seed, Some(3));
    assert_eq!(pf.system.len(), 1);
    let flags = Settings {
        seed: Some(9),
        ..Settings::default()
    };
    assert_eq!(flags.or(&pf.options).seed, Some(9));
    assert_eq!(flags.or(&pf.options).samples, Some(2));
}

#[test]
fn binary_exit_codes_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let dot = dir.path().join("out.dot");
    let status = bin()
        .arg(problem("two_lines.txt"))
        .args(["--mode", "buildtree", "--seed", "1", "--samples", "2"])
        .arg("--json")
        .arg(&json)
        .arg("--dot")
        .arg(&dot)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let text = String::from_utf8(status.stdout).unwrap();
    assert!(text.starts_with("lpp | basis"));
    let bundle: ReportBundle = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(bundle.mode, Mode::Buildtree);
    assert!(std::fs::read_to_string(&dot).unwrap().contains("[1,1,1]"));

    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "params: a\nvars: x\nsystem:\n").unwrap();
    assert_eq!(bin().arg(&empty).output().unwrap().status.code(), Some(1));
    assert_eq!(bin().arg("--bogus").arg(&empty).output().unwrap().status.code(), Some(1));
    assert_eq!(bin().arg(dir.path().join("missing.txt")).output().unwrap().status.code(), Some(1));
}

#[test]
fn warning_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    std::fs::write(&path, "params: a, b\nvars: x\nsystem:\n(a^2*b + b^2 + 1)*x + 1\n").unwrap();
    let out = bin()
        .arg(&path)
        .args(["--factor-degree-bound", "2"])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("WARN"), "{stdout}");
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

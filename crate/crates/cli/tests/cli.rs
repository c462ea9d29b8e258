use std::io::Write;
use std::process::Command;

use liegrowth_cli::{emit, run, Cell, Format, Report};

fn ok(args: &[&str]) -> String {
    let mut argv = vec!["liegrowth"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.status, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn status(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["liegrowth"];
    argv.extend_from_slice(args);
    let out = run(argv);
    (out.status, out.stderr)
}

#[test]
fn table_one_golden_file() {
    let out = ok(&[
        "cogrowth",
        "--alphabet",
        "y:1,x:1",
        "--generators-inline",
        "x",
        "--level",
        "2",
        "--max-degree",
        "20",
        "--engine",
        "formula",
        "--format",
        "csv",
    ]);
    assert_eq!(out, include_str!("golden/table1.csv"));
}

#[test]
fn witt_rows_end_with_cumulative_count() {
    let out = ok(&["witt", "--rank", "2", "--max-degree", "6", "--format", "csv"]);
    assert_eq!(out.lines().last(), Some("6,9,23"));
    assert_eq!(out.lines().count(), 7);
}

#[test]
fn golden_ratio_base() {
    let out = ok(&["base", "--degrees", "1,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let z0 = v["z0"].as_f64().unwrap();
    assert!((z0 - 1.6180339887).abs() < 1e-9);
    assert_eq!(v["certified"], serde_json::Value::Bool(true));
    let two = ok(&["base", "--degrees", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(two.trim()).unwrap();
    assert_eq!(v["z0"].as_f64(), Some(2.0));
    assert_eq!(v["exact"], serde_json::Value::Bool(true));
}

#[test]
fn exit_codes() {
    assert_eq!(status(&["witt", "--rank", "2", "--max-degree", "3", "--bogus"]).0, 2);
    assert_eq!(status(&["witt", "--max-degree", "0", "--rank", "2"]).0, 2);
    assert_eq!(status(&["frobnicate"]).0, 2);
    let (code, err) = status(&["growth", "--generators-inline", "[x,", "--max-degree", "4"]);
    assert_eq!(code, 1);
    assert_eq!(err.lines().count(), 1, "{err}");
    let (code, _) = status(&["growth", "--generators-inline", "x", "--generators", "g.txt", "--max-degree", "4"]);
    assert_eq!(code, 2);
    let (code, err) = status(&["growth", "--generators", "/nonexistent/gens.txt", "--max-degree", "4"]);
    assert_eq!(code, 1);
    assert!(err.contains("/nonexistent/gens.txt"));
    let (code, _) = status(&["cogrowth", "--generators-inline", "x", "--level", "3", "--max-degree", "5", "--engine", "formula"]);
    assert_eq!(code, 1);
    let (code, _) = status(&["growth", "--generators-inline", "x", "--max-degree", "13"]);
    assert_eq!(code, 1, "the exact-field cap applies without --degree-cap");
}

#[test]
fn help_and_version_succeed() {
    let help = ok(&["--help"]);
    assert!(help.contains("cogrowth"));
    assert!(ok(&["derive", "--help"]).contains("--max-steps"));
    assert!(ok(&["--version"]).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn config_file_presets_and_command_line_wins() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# shared settings\nformat = csv\nmax-degree = 4\nlevel = 2\nengine = formula").unwrap();
    let path = f.path().to_str().unwrap();
    let witt = ok(&["--config", path, "witt", "--rank", "2"]);
    assert_eq!(witt, "n,d,g\n1,2,2\n2,1,3\n3,2,5\n4,3,8\n");
    let overridden = ok(&["witt", "--config", path, "--rank", "2", "--max-degree", "2"]);
    assert_eq!(overridden, "n,d,g\n1,2,2\n2,1,3\n");
    let cog = ok(&["--config", path, "cogrowth", "--generators-inline", "x"]);
    assert_eq!(cog, "n,d,g\n1,1,1\n2,1,2\n3,1,3\n4,1,4\n");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "colour = blue").unwrap();
    assert_eq!(status(&["--config", bad.path().to_str().unwrap(), "witt", "--rank", "2"]).0, 2);
    assert_eq!(status(&["--config", "/nonexistent/cfg", "witt", "--rank", "2", "--max-degree", "2"]).0, 1);
}

#[test]
fn generator_file_and_inline_agree() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "x\n[x,y]").unwrap();
    let from_file = ok(&["growth", "--generators", f.path().to_str().unwrap(), "--max-degree", "7"]);
    let inline = ok(&["growth", "--generators-inline", "x;[x,y]", "--max-degree", "7"]);
    assert_eq!(from_file, inline);
}

#[test]
fn output_is_deterministic() {
    let args = ["cogrowth", "--generators-inline", "x", "--level", "2", "--max-degree", "9", "--format", "json"];
    let first = ok(&args);
    for _ in 0..3 {
        assert_eq!(ok(&args), first);
    }
    let lyndon = ["lyndon", "--max-degree", "6", "--format", "table"];
    assert_eq!(ok(&lyndon), ok(&lyndon));
}

#[test]
fn json_reports_round_trip() {
    let out = ok(&["cogrowth", "--generators-inline", "x", "--level", "2", "--max-degree", "12", "--field-mode", "prime", "--format", "json"]);
    let report = Report::from_json_lines(&out).unwrap();
    assert_eq!(report.columns, ["n", "d", "g", "prime"]);
    assert_eq!(report.rows.len(), 12);
    assert_eq!(emit(&report, Format::Json), out);

    let base = ok(&["base", "--degrees", "1,2", "--format", "json"]);
    assert_eq!(emit(&Report::from_json_lines(&base).unwrap(), Format::Json), base);
}

#[test]
fn empty_reports() {
    let r = Report::new(["n", "d", "g"]);
    assert_eq!(emit(&r, Format::Csv), "n,d,g\n");
    assert_eq!(emit(&r, Format::Json), "");
    let mut one = Report::new(["word", "rate"]);
    one.push(vec![Cell::text("xy"), Cell::real(1.5)]);
    assert_eq!(emit(&one, Format::Json), "{\"word\":\"xy\",\"rate\":1.5}\n");
    // nothing adjoined: the per-degree list is empty but keeps its header
    let listed = ok(&["complement", "--generators-inline", "x;y", "--max-degree", "4", "--list", "--format", "csv"]);
    assert_eq!(listed, "n,element\n");
}

#[test]
fn derive_reports_exponent_and_witness() {
    let out = ok(&["derive", "--element", "[x1,x2]", "--k", "2", "--format", "csv"]);
    let row = out.lines().nth(1).unwrap();
    assert!(row.contains(",2,50,4,"), "{row}");
    let (code, _) = status(&["derive", "--element", "[x1,", "--k", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_liegrowth"))
        .args(["avoid", "--word", "xx", "--max-degree", "6", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,d,g\n0,1,1\n1,2,3\n2,3,6\n3,5,11\n4,8,19\n5,13,32\n6,21,53\n");
    let bad = Command::new(env!("CARGO_BIN_EXE_liegrowth")).arg("--nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(String::from_utf8(bad.stderr).unwrap().lines().count(), 1);
}

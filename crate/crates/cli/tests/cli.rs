use std::process::Command;

use pcretract_cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn cli(args: &[&str]) -> pcretract_cli::Outcome {
    run(std::iter::once("pcretract").chain(args.iter().copied()))
}

#[test]
fn sphere_json_run_is_green() {
    let out = cli(&["verify", "--construction", "sphere", "--dim", "3", "--norm", "p:2", "--samples", "10000", "--seed", "7", "--format", "json"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["dim"], 3);
    let reports = doc["reports"].as_array().unwrap();
    // identity, cover, ten pieces
    assert_eq!(reports.len(), 12);
    for r in reports {
        // Value sorts its keys
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["check", "max_violation", "samples", "status", "tolerance", "witness_points"]);
        assert_eq!(r["status"], "pass");
    }
}

#[test]
fn open_ball_refuses_the_line() {
    let out = cli(&["verify", "--construction", "open-ball", "--dim", "1"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("dimension must be >= 2"), "{}", out.stderr);
    let out = cli(&["verify", "--construction", "open-ball", "--dim", "1", "--allow-low-dim", "--samples", "2000"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
}

#[test]
fn literal_witness_fails_at_the_origin() {
    let out = cli(&["verify", "--construction", "sphere", "--paper-witness", "--format", "json", "--samples", "2000"]);
    assert_eq!(out.code, EXIT_FAIL);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["status"], "fail");
    let cover = doc["reports"].as_array().unwrap().iter().find(|r| r["check"] == "cover").unwrap();
    assert_eq!(cover["status"], "fail");
    assert_eq!(cover["witness_points"], serde_json::json!([[0.0, 0.0]]));
}

#[test]
fn literal_witness_only_applies_to_the_sphere() {
    assert_eq!(cli(&["verify", "--construction", "fractional", "--paper-witness"]).code, EXIT_USAGE);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--construction", "torus"][..],
        &["verify", "--construction", "sphere", "--norm", "p:0.5"],
        &["verify", "--construction", "sphere", "--norm", "l2"],
        &["verify", "--construction", "sphere", "--samples", "0"],
        &["verify", "--construction", "sphere", "--dim", "0"],
        &["verify", "--construction", "sphere", "--membership-tol", "-1"],
        &["verify", "--construction", "fractional", "--dim", "2"],
        &["verify", "--construction", "sphere", "--fields", "tan:0"],
        &["verify"],
        &["frobnicate"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn unknown_construction_lists_the_known_ones() {
    let out = cli(&["verify", "--construction", "torus"]);
    assert!(out.stderr.contains("fractional, glue, extend, const-extend, sphere, open-ball"), "{}", out.stderr);
}

#[test]
fn help_goes_to_stdout() {
    let out = cli(&["--help"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("verify"));
}

#[test]
fn witness_examples() {
    let out = cli(&["witness", "--construction", "sphere", "--n", "2"]);
    assert_eq!(out.code, EXIT_PASS);
    assert_eq!(
        out.stdout.trim(),
        r#"{"variant":"FiniteUnion","members":[{"variant":"Singleton","point":[0.0,0.0]},{"variant":"NormBand","norm":"p:2","lo":0.5,"hi":null}]}"#
    );
    let out = cli(&["witness", "--construction", "fractional", "--n", "1"]);
    assert_eq!(
        out.stdout.trim(),
        r#"{"variant":"FiniteUnion","members":[{"variant":"Interval","lo":-1.0,"hi":-0.5},{"variant":"Interval","lo":0.0,"hi":0.5},{"variant":"Interval","lo":1.0,"hi":1.5}]}"#
    );
    let out = cli(&["witness", "--construction", "open-ball", "--n", "1"]);
    assert_eq!(
        out.stdout.trim(),
        r#"{"variant":"FiniteUnion","members":[{"variant":"NormBand","norm":"p:2","lo":0.0,"hi":0.5},{"variant":"NormBand","norm":"p:2","lo":1.0,"hi":1.5}]}"#
    );
    assert_eq!(cli(&["witness", "--construction", "cube", "--n", "1"]).code, EXIT_USAGE);
}

#[test]
fn literal_witness_piece_has_no_origin() {
    let out = cli(&["witness", "--construction", "sphere", "--n", "4", "--paper-witness"]);
    assert_eq!(out.stdout.trim(), r#"{"variant":"NormBand","norm":"p:2","lo":0.25,"hi":null}"#);
}

#[test]
fn demo_table() {
    let out = cli(&["demo", "--dim", "2", "--depth", "12"]);
    assert_eq!(out.code, EXIT_PASS);
    let rows: Vec<&str> = out.stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 12);
    for row in rows {
        assert!(row.contains("1.4142135623730951e0"), "{row}");
    }
    let out = cli(&["demo", "--depth", "3", "--format", "json"]);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
    assert_eq!(doc["rows"][2]["image_v"], serde_json::json!([0.0, 1.0]));
}

#[test]
fn demo_errors() {
    let out = cli(&["demo", "--u", "1,0", "--v", "1,0"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("directions must differ"));
    let out = cli(&["demo", "--depth", "0"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("depth"));
    assert_eq!(cli(&["demo", "--u", "2,0"]).code, EXIT_USAGE);
    assert_eq!(cli(&["demo", "--u", "1,0,0"]).code, EXIT_USAGE);
    assert_eq!(cli(&["demo", "--dim", "1"]).code, EXIT_USAGE);
}

#[test]
fn demo_accepts_other_directions() {
    let out = cli(&["demo", "--dim", "3", "--u", "0,0,1", "--v", "0,0,-1", "--depth", "2"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    assert!(out.stdout.contains("2.0000000000000000e0"));
}

#[test]
fn text_numbers_have_seventeen_digits() {
    let out = cli(&["verify", "--construction", "fractional", "--samples", "500", "--max-piece", "1"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("9.9999999999999998e-13"), "{}", out.stdout);
}

#[test]
fn fields_add_operator_checks() {
    let out = cli(&["verify", "--construction", "sphere", "--samples", "2000", "--max-piece", "2", "--fields", "const:1,coord:0*coord:1,sin:0", "--format", "json"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    let names: Vec<&str> = doc["reports"].as_array().unwrap().iter().map(|r| r["check"].as_str().unwrap()).collect();
    for name in ["operator_linearity", "operator_positivity", "operator_extension", "operator_isometry"] {
        assert!(names.contains(&name), "{names:?}");
    }
    assert!(names.contains(&"composition_continuity[f=coord:0*coord:1,n=2]"), "{names:?}");
}

#[test]
fn every_construction_passes_by_default() {
    for c in ["fractional", "glue", "extend", "const-extend", "sphere", "open-ball"] {
        let out = cli(&["verify", "--construction", c, "--samples", "3000", "--seed", "5"]);
        assert_eq!(out.code, EXIT_PASS, "{c}: {}", out.stdout);
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("pcretract-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args = ["verify", "--construction", "glue", "--samples", "1000", "--format", "json"];
    let direct = cli(&args);
    let mut with_file: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    with_file.extend(["--output", p]);
    let out = cli(&with_file);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("report written to"));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seed_comes_from_the_environment() {
    let exe = env!("CARGO_BIN_EXE_pcretract");
    let base = ["verify", "--construction", "sphere", "--samples", "1000", "--max-piece", "1", "--format", "json"];
    let from_env = Command::new(exe).args(base).env("PCRETRACT_SEED", "31").output().unwrap();
    let from_flag = Command::new(exe).args(base).args(["--seed", "31"]).env_remove("PCRETRACT_SEED").output().unwrap();
    let default = Command::new(exe).args(base).env_remove("PCRETRACT_SEED").output().unwrap();
    assert_eq!(from_env.status.code(), Some(0));
    assert_eq!(from_env.stdout, from_flag.stdout);
    assert_ne!(from_env.stdout, default.stdout);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_pcretract");
    let code = |args: &[&str]| Command::new(exe).args(args).output().unwrap().status.code();
    assert_eq!(code(&["verify", "--construction", "glue", "--samples", "500"]), Some(0));
    assert_eq!(code(&["verify", "--construction", "sphere", "--paper-witness", "--samples", "500"]), Some(1));
    assert_eq!(code(&["verify", "--construction", "nope"]), Some(2));
}

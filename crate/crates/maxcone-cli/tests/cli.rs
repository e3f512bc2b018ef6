use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use maxcone_cli::run;

fn tmp(name: &str, content: &str) -> String {
    let dir = std::env::temp_dir().join(format!("maxcone-cli-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join(name);
    fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["maxcone"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let doc: Value = serde_json::from_str(&out.output).expect("JSON output");
    (out.code, doc)
}

#[test]
fn star_divergent_error_verbatim() {
    let f = tmp("two.json", r#"{"semiring":"maxtimes","rows":1,"cols":1,"data":[[2]]}"#);
    let (code, doc) = run_json(&["star", &f]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"], "divergent: lambda=2");
}

#[test]
fn member_example() {
    let y = tmp("y.json", r#"{"semiring":"maxtimes","rows":2,"cols":1,"data":[[1],[1.5]]}"#);
    let a = tmp("a.json", r#"{"semiring":"maxtimes","rows":2,"cols":2,"data":[[1,1],[1,2]]}"#);
    let (code, doc) = run_json(&["member", "--y", &y, &a]);
    assert_eq!(code, 0);
    assert_eq!(doc["member"], true);
    let x: Vec<f64> = doc["x"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 0.75).abs() < 1e-12);
}

#[test]
fn dist_cyclic_example() {
    let r1 = tmp("r1.json", r#"{"semiring":"maxtimes","rows":2,"cols":1,"data":[[1],[1]]}"#);
    let r2 = tmp("r2.json", r#"{"semiring":"maxtimes","rows":2,"cols":1,"data":[[2],[1]]}"#);
    let (code, doc) = run_json(&["dist", "--kind", "cyclic", &r1, &r2]);
    assert_eq!(code, 0);
    assert!((doc["value"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn parse_errors_are_usage_errors() {
    let ragged = tmp(
        "ragged.json",
        r#"{"semiring":"maxtimes","rows":2,"cols":2,"data":[[1,2],[3]]}"#,
    );
    let (code, doc) = run_json(&["star", &ragged]);
    assert_eq!(code, 2);
    assert!(doc["error"].as_str().unwrap().contains("cols"));

    let missing = std::env::temp_dir().join("maxcone-no-such-file.json");
    let (code, _) = run_json(&["star", missing.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn unknown_flag_rejected() {
    let out = run(vec!["maxcone", "lambda", "--frobnicate", "x.json"]);
    assert_eq!(out.code, 2);
}

#[test]
fn mixed_semirings_rejected() {
    let a = tmp("mixa.json", r#"{"semiring":"maxtimes","rows":1,"cols":1,"data":[[1]]}"#);
    let b = tmp("mixb.json", r#"{"semiring":"maxplus","rows":1,"cols":1,"data":[[0]]}"#);
    let (code, doc) = run_json(&["solve", &a, &b]);
    assert_eq!(code, 2);
    assert!(doc["error"].as_str().unwrap().contains("mixed semiring"));
}

#[test]
fn exact_csv_roundtrip() {
    let k = tmp(
        "k.json",
        r#"{"semiring":"maxtimes","rows":2,"cols":2,"data":[[1,2],["2/5",1]]}"#,
    );
    let out = run(vec!["maxcone", "star", &k, "--exact", "--format", "csv"]);
    assert_eq!(out.code, 0);
    let reparsed = tmp("k_round.csv", &out.output);
    let out2 = run(vec!["maxcone", "star", &reparsed, "--exact", "--format", "csv"]);
    assert_eq!(out2.code, 0);
    assert_eq!(out.output.trim(), out2.output.trim());
}

#[test]
fn views_agree_after_conversion() {
    // same data: maxplus entries are the logs of the maxtimes ones
    let mt = tmp(
        "vt.json",
        r#"{"semiring":"maxtimes","rows":2,"cols":2,"data":[[0.5,2],[0.5,0.5]]}"#,
    );
    let l = 0.5f64.ln();
    let mp = tmp(
        "vp.json",
        &format!(
            r#"{{"semiring":"maxplus","rows":2,"cols":2,"data":[[{l},{}],[{l},{l}]]}}"#,
            2f64.ln()
        ),
    );
    let (c1, d1) = run_json(&["lambda", &mt]);
    let (c2, d2) = run_json(&["lambda", &mp]);
    assert_eq!((c1, c2), (0, 0));
    let ll1 = d1["log_lambda"].as_f64().unwrap();
    let ll2 = d2["log_lambda"].as_f64().unwrap();
    assert!((ll1 - ll2).abs() < 1e-12 && ll1.abs() < 1e-12);
}

#[test]
fn solve_exit_codes() {
    let k = tmp(
        "sk.json",
        r#"{"semiring":"maxtimes","rows":2,"cols":2,"data":[[1,2],["2/5",1]]}"#,
    );
    let (code, doc) = run_json(&["solve", &k, &k, "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(doc["stop"]["status"], "solved");

    // disjoint positive cones: rays (1,2) and (2,1)
    let a = tmp("sa.json", r#"{"semiring":"maxplus","rows":2,"cols":1,"data":[[0],[1]]}"#);
    let b = tmp("sb.json", r#"{"semiring":"maxplus","rows":2,"cols":1,"data":[[1],[0]]}"#);
    let (code, doc) = run_json(&["solve", &a, &b, "--exact"]);
    assert_eq!(code, 3);
    assert_eq!(doc["stop"]["status"], "no_solution");
}

#[test]
fn schema_keys_stable() {
    let k = tmp(
        "gk.json",
        r#"{"semiring":"maxtimes","rows":2,"cols":2,"data":[[1,2],["2/5",1]]}"#,
    );
    let cases: &[(&[&str], &[&str])] = &[
        (&["star", &k], &["star"]),
        (&["lambda", &k], &["lambda", "log_lambda"]),
        (&["eig", &k], &["eigencone", "subeigencone"]),
        (&["basis", &k], &["basis"]),
        (&["cells", &k], &["cells", "count"]),
        (&["per", &k], &["permanent", "sigma"]),
        (&["pinv", &k], &["adjugate", "pseudoinverse"]),
        (&["essential", &k], &["basis", "dimension"]),
        (&["intersect", &k], &["trivial", "star"]),
        (&["separate", &k, &k], &["separated", "witness"]),
        (&["dist", "--cones", &k, &k], &["kind", "value", "witnesses", "method"]),
    ];
    for (args, keys) in cases {
        let (code, doc) = run_json(args);
        assert_eq!(code, 0, "verb {args:?}");
        for key in *keys {
            assert!(doc.get(key).is_some(), "verb {args:?} missing key {key}");
        }
        for key in ["verb", "diagnostics", "elapsed_ms"] {
            assert!(doc.get(key).is_some(), "verb {args:?} missing key {key}");
        }
    }
}

#[test]
fn env_tolerance_applies() {
    let k = tmp("ek.json", r#"{"semiring":"maxtimes","rows":1,"cols":1,"data":[[1]]}"#);
    std::env::set_var("MAXCONE_TOL", "0.5");
    let (_, doc) = run_json(&["lambda", &k]);
    assert_eq!(doc["diagnostics"]["tol"], 0.5);
    let (_, doc) = run_json(&["lambda", &k, "--tol", "1e-6"]);
    assert_eq!(doc["diagnostics"]["tol"], 1e-6);
    std::env::remove_var("MAXCONE_TOL");
}

#[test]
fn binary_smoke() {
    let f = tmp("bin.json", r#"{"semiring":"maxtimes","rows":1,"cols":1,"data":[[2]]}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_maxcone"))
        .args(["star", &f])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["error"], "divergent: lambda=2");

    let ok = Command::new(env!("CARGO_BIN_EXE_maxcone"))
        .args(["lambda", &f])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}

use lyndon_hilbert::cli::{dispatch, Outcome};
use serde_json::{json, Value};

fn run(args: &[&str]) -> Outcome {
    dispatch(args.iter().map(|s| s.to_string()))
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn error_kind(out: &Outcome) -> String {
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert_eq!(out.stderr.trim_end().lines().count(), 1);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    v["error"]["kind"].as_str().unwrap().to_string()
}

fn tmp(name: &str, content: &str) -> String {
    let dir = std::env::temp_dir().join(format!("lh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn lyndon_subcommands() {
    assert_eq!(
        ok_json(&["lyndon", "factorize", "1231233122123"]),
        json!({"factors": ["1231233", "122123"]})
    );
    assert_eq!(
        ok_json(&["lyndon", "shirshov", "1231233"]),
        json!({"left": "123", "right": "1233"})
    );
    let words = ok_json(&["lyndon", "list", "--alphabet", "2", "--max-len", "3"]);
    assert_eq!(words, json!({"words": ["1", "112", "12", "122", "2"]}));
    assert_eq!(
        error_kind(&run(&["lyndon", "shirshov", "1212"])),
        "invalid-argument"
    );
}

#[test]
fn nichols_dims_quantum_plane() {
    let v = ok_json(&[
        "nichols",
        "dims",
        "--space",
        "preset:quantum-plane",
        "--trunc",
        "4",
    ]);
    assert_eq!(v["coeffs"], json!([1, 2, 1, 0, 0]));
}

#[test]
fn identity_check() {
    let v = ok_json(&["tv", "identity-check", "--alphabet", "2", "--trunc", "6"]);
    assert_eq!(v["ok"], json!(true));
    assert_eq!(v["lhs"]["coeffs"], json!([1, 2, 4, 8, 16, 32, 64]));
    assert_eq!(v["rhs"], v["lhs"]);
}

#[test]
fn bracket_output_feeds_expand() {
    let b = ok_json(&[
        "bracket",
        "112",
        "--space",
        "preset:cartan-A2(q=3)",
        "--rationals",
    ]);
    let path = tmp("bracket.json", &b.to_string());
    let e = ok_json(&[
        "expand",
        &path,
        "--space",
        "preset:cartan-A2(q=3)",
        "--rationals",
    ]);
    assert_eq!(e, json!({"terms": [{"superword": ["112"], "coeff": "1"}]}));
    let d = ok_json(&[
        "bracket",
        "12",
        "--space",
        "preset:cartan-A2(q=3)",
        "--rationals",
        "--double",
    ]);
    assert_eq!(
        d,
        json!({"terms": [{"word": "12", "coeff": "1"}, {"word": "21", "coeff": "-1"}]})
    );
}

#[test]
fn factorize_exit_codes() {
    let out = run(&[
        "nichols",
        "factorize",
        "--space",
        "preset:cartan-A2",
        "--trunc",
        "6",
    ]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["ok"], json!(true));

    // s3-rack with one-dimensional letters: the product overshoots FK_3
    let out = run(&[
        "nichols",
        "factorize",
        "--space",
        "preset:s3-rack",
        "--trunc",
        "5",
    ]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["lhs"]["coeffs"], json!([1, 3, 4, 3, 1, 0]));
}

#[test]
fn factorize_full_lists_trivial_factors() {
    let args = [
        "nichols",
        "factorize",
        "--space",
        "preset:quantum-plane",
        "--trunc",
        "4",
    ];
    let short = ok_json(&args);
    let mut with_full = args.to_vec();
    with_full.push("--full");
    let full = ok_json(&with_full);
    assert_eq!(short["factors"].as_array().unwrap().len(), 2);
    assert!(full["factors"].as_array().unwrap().len() > 2);
}

#[test]
fn free_and_presented_kinds() {
    let v = ok_json(&[
        "nichols",
        "dims",
        "--space",
        "preset:generic-diagonal(2)",
        "--trunc",
        "5",
        "--kind",
        "free",
    ]);
    assert_eq!(v["coeffs"], json!([1, 2, 4, 8, 16, 32]));
    let rels = tmp(
        "rels.json",
        r#"{"relations": [{"terms": [{"word": "11", "coeff": "1"}]},
                          {"terms": [{"word": "22", "coeff": "1"}]},
                          {"terms": [{"word": "12", "coeff": "1"}, {"word": "21", "coeff": "-1"}]}]}"#,
    );
    let v = ok_json(&[
        "nichols",
        "factorize",
        "--space",
        "preset:quantum-plane",
        "--trunc",
        "4",
        "--kind",
        "presented",
        "--relations",
        &rels,
    ]);
    assert_eq!(v["ok"], json!(true));
    let bad = tmp("bad.json", r#"[{"terms": [{"word": "12", "coeff": "1"}]}]"#);
    let out = run(&[
        "nichols",
        "dims",
        "--space",
        "preset:quantum-plane",
        "--trunc",
        "4",
        "--kind",
        "presented",
        "--relations",
        &bad,
    ]);
    assert_eq!(error_kind(&out), "not-coideal");
}

#[test]
fn subquotient_pbw_nonneg() {
    let v = ok_json(&[
        "nichols",
        "subquotient",
        "--space",
        "preset:cartan-A2",
        "--word",
        "12",
        "--trunc",
        "6",
    ]);
    assert_eq!(
        v,
        json!({"u": "12", "series": {"trunc": 6, "coeffs": [1, 0, 1, 0, 1, 0, 1]}})
    );
    let v = ok_json(&[
        "nichols",
        "pbw",
        "--space",
        "preset:quantum-plane",
        "--trunc",
        "8",
    ]);
    assert_eq!(
        v["generators"],
        json!([{"u": "1", "height": 2}, {"u": "2", "height": 2}])
    );
    let v = ok_json(&[
        "nichols",
        "nonneg",
        "--space",
        "preset:cartan-A2(order=3)",
        "--word",
        "1",
        "--trunc",
        "8",
    ]);
    assert_eq!(v["ok"], json!(true));
    assert_eq!(v["height"], json!(3));
}

#[test]
fn validate_reports_failures_without_erroring() {
    let good = ok_json(&["validate", "--space", "preset:s3-rack"]);
    assert_eq!(good["ok"], json!(true));
    // flip with one extra entry breaks the braid equation
    let mut m = vec![vec!["0"; 4]; 4];
    m[0][0] = "1";
    m[1][2] = "1";
    m[2][1] = "1";
    m[3][3] = "1";
    m[3][1] = "1";
    let path = tmp(
        "bad-space.json",
        &json!({"dim": 2, "braiding": {"general": m}}).to_string(),
    );
    let out = run(&["validate", "--space", &path]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["braid_equation"], json!(false));
    assert_eq!(v["failing_triple"], json!([1, 1, 2]));
    // the same space is rejected by computations
    assert_eq!(
        error_kind(&run(&["nichols", "dims", "--space", &path, "--trunc", "3"])),
        "invalid-braiding"
    );
}

#[test]
fn errors_are_single_json_lines() {
    assert_eq!(
        error_kind(&run(&["nichols", "dims", "--trunc", "3"])),
        "invalid-argument"
    );
    assert_eq!(error_kind(&run(&["frobnicate"])), "usage");
    let junk = tmp("junk.json", "{ not json");
    assert_eq!(
        error_kind(&run(&["nichols", "dims", "--space", &junk, "--trunc", "3"])),
        "parse"
    );
    assert_eq!(
        error_kind(&run(&["bracket", "13", "--space", "preset:quantum-plane"])),
        "invalid-argument"
    );
}

#[test]
fn binary_honours_the_matrix_bound() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_lh"))
        .args([
            "nichols",
            "dims",
            "--space",
            "preset:s3-rack",
            "--trunc",
            "5",
        ])
        .env("LH_MAX_MATRIX", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], json!("resource"));

    let out = std::process::Command::new(env!("CARGO_BIN_EXE_lh"))
        .args(["tv", "identity-check", "--alphabet", "1", "--trunc", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_prime_for_files() {
    let path = tmp(
        "collapse.json",
        r#"{"dim": 2, "braiding": {"diagonal": [["10006", "1"], ["1", "10006"]]}}"#,
    );
    let plain = ok_json(&["nichols", "dims", "--space", &path, "--trunc", "4"]);
    assert_eq!(plain["coeffs"], json!([1, 2, 1, 0, 0]));
    let out = run(&[
        "nichols",
        "dims",
        "--space",
        &path,
        "--trunc",
        "4",
        "--check-prime",
    ]);
    assert_eq!(error_kind(&out), "bad-prime");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "nichols",
        "factorize",
        "--space",
        "preset:cartan-A2(order=3)",
        "--trunc",
        "8",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn pretty_output() {
    let out = run(&[
        "nichols",
        "dims",
        "--space",
        "preset:quantum-plane",
        "--trunc",
        "4",
        "--pretty",
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("1 + 2t + t^2"));
    let out = run(&["lyndon", "factorize", "1231233122123", "--pretty"]);
    assert_eq!(out.stdout.trim(), "(1231233)(122123)");
}

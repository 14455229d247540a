use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run_env(args: &[&str], color: &str) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eawg"))
        .args(args)
        .env("EAWG_COLOR", color)
        .output()
        .expect("run eawg");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, "0")
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(doc: &str, schema_name: &str) -> Value {
    let v: Value = serde_json::from_str(doc).unwrap();
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
    v
}

#[test]
fn semilattices_listings() {
    let (code, out, _) = run(&["semilattices", "--nullity", "2"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].split_whitespace().eq(["2", "2", "{},{1},{2}", "2", "-", "-", "true"]));
    assert!(rows[1].split_whitespace().eq(["3", "{},{1},{2},{1,2}", "1", "-", "-", "true"]));

    let (_, out, _) = run(&["semilattices", "--nullity", "3"]);
    let indices: Vec<&str> = out.lines().skip(1).map(|l| l.split_whitespace().rev().nth(4).unwrap()).collect();
    assert_eq!(out.lines().count(), 6);
    assert_eq!(indices.len(), 5);

    let (code, out, _) = run(&["semilattices", "--nullity", "2", "--class", "{},{1},{2}"]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().split_whitespace().eq(["2", "2", "{},{1},{2}", "2", "true"]));

    let (code, _, err) = run(&["semilattices", "--nullity", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("--class"));

    let (code, out, _) = run(&["semilattices", "--nullity", "4", "--class", "{},{1},{2},{3},{4},{1,2}"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("nu  index  supp(S)"));
    assert!(out.lines().next().unwrap().contains("n(3,4)"));

    let (code, out, _) = run(&["semilattices", "--nullity", "2", "--class", "{},{1},{1,2}"]);
    assert_eq!(code, 0);
    assert!(out.contains("lacks the singletons {2}"));

    let (code, _, _) = run(&["semilattices", "--nullity", "2", "--class", "{},{1}"]);
    assert_eq!(code, 2);
}

#[test]
fn semilattices_json() {
    let (code, out, _) = run(&["semilattices", "--format", "json"]);
    assert_eq!(code, 0);
    let v = assert_valid(&out, "semilattices.schema.json");
    let rows = v["semilattices"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[5]["nrs"], serde_json::json!([[2, 2], [1]]));
}

#[test]
fn present_examples() {
    let (code, out, _) = run(&["present", "--type", "A", "--rank", "1", "--nullity", "2", "--index", "3", "--group", "W"]);
    assert_eq!(code, 0);
    assert!(out.contains("generators: x1 y1_1 y1_2 z1_2\n"));
    assert!(out.lines().any(|l| l == "[y1_1,y1_2] = z1_2^2"));

    let (code, out, _) = run(&["present", "--type", "A", "--rank", "2", "--nullity", "1", "--group", "H"]);
    assert_eq!(code, 0);
    assert!(out.contains("generators: y1_1 y2_1\nrelators: 1\n"));

    let (code, out, _) = run(&["present", "--type", "D", "--rank", "4", "--nullity", "2", "--group", "W", "--format", "json"]);
    assert_eq!(code, 0);
    let v = assert_valid(&out, "presentation.schema.json");
    assert_eq!(v["type"], "D");
    assert_eq!(v["generators"].as_array().unwrap().len(), 4 + 8 + 1);
}

#[test]
fn present_rejects_bad_configurations() {
    // rank 2 needs the full lattice
    let (code, _, err) = run(&["present", "--type", "A", "--rank", "2", "--nullity", "2", "--index", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("lattice"));
    let (code, _, _) = run(&["present", "--nullity", "2", "--index", "2", "--class", "{},{1},{2}"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["present", "--type", "B", "--rank", "2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["present", "--type", "E", "--rank", "5"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn verify_sweep_passes() {
    let (code, out, _) = run(&["verify", "--samples", "8"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().last().unwrap().contains(" 0 failed"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_detects_injected_fault() {
    let args = ["verify", "--nullity", "2", "--index", "3", "--group", "W", "--samples", "20", "--inject-fault", "relator"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 1);
    assert!(out.contains("injected fault: W(A1, nu=2, m=3) class {},{1},{2},{1,2}: [y1_1,y1_2] = z1_2^3"));
    assert!(out.contains("failed: W relators sound [A1 nu=2 m=3]: relator [y1_1,y1_2] = z1_2^3 fails"));

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let (code, out, _) = run(&json_args);
    assert_eq!(code, 1);
    let v = assert_valid(&out, "verify.schema.json");
    assert_eq!(v["pass"], false);
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--type", "A", "--rank", "2", "--nullity", "2", "--seed", "42", "--samples", "30", "--format", "json"];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert_valid(&a, "verify.schema.json");
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(run(&seq).1, a);
    let (_, other, _) = run(&["verify", "--type", "A", "--rank", "2", "--nullity", "2", "--seed", "43", "--samples", "30", "--format", "json"]);
    assert_ne!(other, a);
}

#[test]
fn normal_form_examples() {
    let (code, out, _) = run(&["normal-form", "--nullity", "1", "--word", "y1_1 * x1"]);
    assert_eq!(code, 0);
    assert!(out.contains("finite part: x1\nn: [[-1]]\n"));
    assert!(out.ends_with("verified: true\n"));

    let (code, out, _) = run(&["normal-form", "--word", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("finite part: 1\nn: [[0]]\ncentral: []\n"));

    let (code, out, _) = run(&["normal-form", "--nullity", "2", "--index", "2", "--word", "y1_1*y1_2*y1_1^-1*y1_2^-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("central: [2]\nz: [1]\n"));

    let (code, out, _) = run(&["normal-form", "--nullity", "2", "--index", "2", "--word", "x1 * y1_1^2 * z1_2", "--format", "json"]);
    assert_eq!(code, 0);
    let v = assert_valid(&out, "normal_form.schema.json");
    assert_eq!(v["finite_part"], serde_json::json!(["s1"]));
    assert_eq!(v["n"], serde_json::json!([[2, 0]]));
    assert_eq!(v["central"], serde_json::json!([2]));
}

#[test]
fn normal_form_rejects_bad_words() {
    let (code, _, err) = run(&["normal-form", "--word", "x1 * w2"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 5"));
    let (code, _, _) = run(&["normal-form", "--word", "y1_2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["normal-form", "--group", "H", "--word", "x1"]);
    assert_eq!(code, 2);
}

#[test]
fn roots_listings() {
    let (code, out, _) = run(&["roots", "--nullity", "0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "-a1\n0\na1\n");

    let (_, out, _) = run(&["roots", "--nullity", "1", "--index", "1", "--bound", "1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines.iter().filter(|l| l.contains("a1")).count(), 6);
    assert!(lines.contains(&"-a1 + s1"));

    let (code, out, _) = run(&["roots", "--type", "A", "--rank", "2", "--nullity", "1", "--bound", "3", "--check-axioms"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with('R') && l.contains("PASS")).count(), 8);

    let (code, out, _) = run(&["roots", "--nullity", "2", "--index", "2", "--bound", "2", "--check-axioms", "--format", "json"]);
    assert_eq!(code, 0);
    let v = assert_valid(&out, "roots.schema.json");
    assert!(v["roots"].as_array().unwrap().contains(&serde_json::json!([1, 1, 0])));
    assert!(!v["roots"].as_array().unwrap().contains(&serde_json::json!([1, 1, -1])));

    let (code, _, _) = run(&["roots", "--bound", "-1"]);
    assert_eq!(code, 2);
}

#[test]
fn out_flag_and_color() {
    let path = std::env::temp_dir().join(format!("eawg-cli-{}.txt", std::process::id()));
    let (code, out, _) = run(&["semilattices", "--nullity", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, run(&["semilattices", "--nullity", "1"]).1);

    let (_, plain, _) = run(&["roots", "--nullity", "0", "--check-axioms"]);
    let (_, colored, _) = run_env(&["roots", "--nullity", "0", "--check-axioms"], "1");
    assert!(!plain.contains('\x1b'));
    assert!(colored.contains("\x1b[32mPASS\x1b[0m"));
}

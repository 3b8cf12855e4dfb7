use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn scratch(name: &str, content: &Value) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, content.to_string()).unwrap();
    path
}

fn bcring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcring")).args(args).env_remove("SPECTRA_SEED").output().unwrap()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = bcring(args);
    let report = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), report)
}

fn with_input(verb: &[&str], name: &str, input: Value) -> (i32, Value) {
    let path = scratch(name, &input);
    let mut args = verb.to_vec();
    args.extend(["--input", path.to_str().unwrap()]);
    run(&args)
}

fn sc(field: &str, unit: Value, table: Value) -> Value {
    let dim = unit.as_array().unwrap().len();
    json!({"kind": "sc", "field": field, "dim": dim, "unit": unit, "table": table})
}

fn q2() -> Value {
    sc("Q", json!(["1", "1"]), json!([[["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]]]))
}

#[test]
fn zmod_twelve_has_two_maximal_ideals() {
    let (code, r) = with_input(&["ring-mspec"], "z12.json", json!({"kind": "zmod", "n": 12}));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["mspec"], json!(["(2)", "(3)"]));
    assert_eq!(r["schema"], "bcring-report/1");
    assert!(r["property"].is_string());
}

#[test]
fn bool_ring_points() {
    let (code, r) = with_input(&["ring-mspec"], "bool.json", json!({"kind": "bool", "ground": ["a", "b"]}));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["mspec"], json!(["m_a", "m_b"]));
}

#[test]
fn circle_is_refused() {
    let circle = sc("Q", json!(["1", "0"]), json!([[["1", "0"], ["0", "1"]], [["0", "1"], ["-1", "0"]]]));
    let (code, r) = with_input(&["ring-split"], "circle.json", circle.clone());
    assert_eq!(code, 3);
    assert_eq!(r["error"], "NotKValued");
    let mut over_qi = circle;
    over_qi["field"] = json!("Qi");
    let (code, r) = with_input(&["ring-split"], "circle_qi.json", over_qi);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["characters"].as_array().unwrap().len(), 2);
    assert_eq!(r["result"]["dev_bijective"], true);
}

#[test]
fn ring_split_rejects_zmod() {
    let (code, r) = with_input(&["ring-split"], "split_zmod.json", json!({"kind": "zmod", "n": 6}));
    assert_eq!(code, 2);
    assert_eq!(r["error"], "SchemaError");
}

#[test]
fn schema_errors_exit_two() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("garbage.json");
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(run(&["ring-mspec", "--input", path.to_str().unwrap()]).0, 2);
    assert_eq!(with_input(&["ring-mspec"], "kind.json", json!({"kind": "field"})).0, 2);
    assert_eq!(run(&["ring-mspec"]).0, 2);
    assert_eq!(run(&["suite", "nope"]).0, 2);
}

#[test]
fn duality_suite_exhaustive() {
    let (code, r) = run(&["suite", "duality", "--max-size", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"][0]["passed"], true);
    assert_eq!(r["result"][0]["details"]["homs_Q"], 499);
}

#[test]
fn duality_roundtrip_on_a_map() {
    let input = json!({"source": ["a", "b", "c"], "target": ["p", "q"], "assignment": [0, 1, 1]});
    let (code, r) = with_input(&["duality-roundtrip"], "map.json", input);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["recovered"], json!([0, 1, 1]));
    assert_eq!(r["result"]["f_functor"], json!([["1", "0"], ["0", "1"], ["0", "1"]]));
}

#[test]
fn duality_roundtrip_on_a_hom() {
    // K^{p,q} → K^{a,b,c} sending a function to (f(q), f(q), f(p))
    let input = json!({"field": "Qi", "source": ["p", "q"], "target": ["a", "b", "c"],
        "matrix": [["0", "1"], ["0", "1"], ["1", "0"]]});
    let (code, r) = with_input(&["duality-roundtrip"], "hom.json", input);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["map"], json!([1, 1, 0]));
    let bad = json!({"source": ["p"], "target": ["a"], "matrix": [["2"]]});
    assert_eq!(with_input(&["duality-roundtrip"], "badhom.json", bad).0, 2);
}

#[test]
fn scc_certificate() {
    let (code, r) = with_input(&["scc"], "space.json", json!({"space": ["a", "b", "c"]}));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["barX_size"], 3);
    assert_eq!(r["result"]["targets_checked"], 36);
    assert_eq!(r["result"]["factorizations_unique"], true);
}

#[test]
fn norm_check_cases() {
    let (code, r) = with_input(&["norm-check", "--samples", "50"], "q2.json", q2());
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["result"]["violation"], Value::Null);
    // Q[t]/(t^2) has a nilpotent, so its double evaluation is not injective
    let dual = sc("Q", json!(["1", "0"]), json!([[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]));
    let (code, r) = with_input(&["norm-check"], "dual.json", dual);
    assert_eq!(code, 3);
    assert_eq!(r["error"], "NotBcRing");
}

#[test]
fn profinite_refinement() {
    let system = json!({"levels": [1, 2, 4], "transitions": [[0, 0], [0, 0, 1, 1]]});
    let cover = json!([{"level": 2, "members": [0, 1]}, {"level": 1, "members": [1]}, {"level": 2, "members": [1, 2]}]);
    let (code, r) = with_input(&["profinite-refine"], "cover.json", json!({"system": system, "cover": cover}));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["validates"], true);
    assert_eq!(r["result"]["k0"], 2);
    assert_eq!(r["result"]["rho"].as_array().unwrap().len(), 4);
    let partial = json!([{"level": 2, "members": [0]}]);
    let (code, r) = with_input(&["profinite-refine"], "partial.json", json!({"system": system, "cover": partial}));
    assert_eq!(code, 1);
    assert_eq!(r["result"]["uncovered"], "1@2");
}

#[test]
fn approx_density_and_refusal() {
    let (code, r) = run(&["approx-density", "--epsilon", "0.1", "--depth", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["level"], 5);
    assert!(r["result"]["bound"].as_f64().unwrap() < 0.1);
    let (code, r) = run(&["approx-density", "--epsilon", "0.001", "--depth", "3"]);
    assert_eq!(code, 3);
    assert_eq!(r["error"], "InsufficientDepth");
}

#[test]
fn complex_commands() {
    let qi2 = sc("Qi", json!(["1", "1"]), json!([[["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]]]));
    let (code, r) = with_input(&["complex-hermitian"], "qi2.json", qi2.clone());
    assert_eq!(code, 0);
    assert_eq!(r["result"]["hermitian_basis"].as_array().unwrap().len(), 2);
    let (code, r) = with_input(&["complex-roundtrip"], "qi2rt.json", qi2);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["eta"]["star_compatible"], true);
    let (code, r) = with_input(&["complex-roundtrip"], "q2rt.json", q2());
    assert_eq!(code, 0);
    assert_eq!(r["result"]["zeta"]["invertible"], true);
    // t^2 + i does not split over Q(i)
    let twisted = json!({"kind": "sc", "field": "Qi", "dim": 2, "unit": ["1", "0"],
        "table": [[["1", "0"], ["0", "1"]], [["0", "1"], [{"re": "0", "im": "-1"}, "0"]]]});
    let (code, r) = with_input(&["complex-hermitian"], "twisted.json", twisted);
    assert_eq!(code, 3, "{r}");
    assert_eq!(r["error"], "NotKValued");
}

#[test]
fn demos() {
    let (code, r) = run(&["demo-nonfunctorial"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["preimage"], "(0)");
    assert_eq!(r["result"]["maximal"], false);
    // a = t^2 - t vanishes at 0 and 1, b = t - 2 at 2
    let (code, r) = with_input(&["demo-nonhausdorff"], "polys.json", json!({"a": ["0", "-1", "1"], "b": ["-2", "1"]}));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["c"], 3);
    assert_eq!(r["result"]["candidates_tried"], 4);
    assert_eq!(with_input(&["demo-nonhausdorff"], "zero.json", json!({"a": [], "b": ["1"]})).0, 2);
}

#[test]
fn reports_are_deterministic_and_seed_falls_back_to_env() {
    let path = scratch("q2_seed.json", &q2());
    let p = path.to_str().unwrap();
    let a = bcring(&["norm-check", "--input", p, "--samples", "20", "--seed", "7"]);
    let b = bcring(&["norm-check", "--input", p, "--samples", "20", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_bcring"))
        .args(["norm-check", "--input", p, "--samples", "20"])
        .env("SPECTRA_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(a.stdout, env.stdout);
    let suite_a = bcring(&["suite", "refinement", "--seed", "3", "--samples", "20"]);
    let suite_b = bcring(&["suite", "refinement", "--seed", "3", "--samples", "20"]);
    assert_eq!(suite_a.stdout, suite_b.stdout);
}

#[test]
fn output_flag_writes_file() {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("report.json");
    let _ = std::fs::remove_file(&out);
    let status = bcring(&["demo-nonfunctorial", "--output", out.to_str().unwrap()]);
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["command"], "demo-nonfunctorial");
}

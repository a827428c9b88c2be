use std::io::Write;
use std::process::{Command, Output, Stdio};

use fermi_upb::json::{factorization_from_json, nvector_to_json};
use fermi_upb::{NVector, C64};
use serde_json::{json, Value};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fermi-upb"));
    cmd.args(args)
        .env_remove("FERMI_UPB_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&o.stderr))
    })
}

fn construct(args: &[&str]) -> String {
    let mut full = vec!["construct"];
    full.extend(args);
    let o = run(&full, None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn members(text: &str) -> usize {
    serde_json::from_str::<Value>(text).unwrap()["members"].as_array().unwrap().len()
}

#[test]
fn constructions_have_the_expected_sizes() {
    assert_eq!(members(&construct(&["vandermonde", "--n", "2", "--m", "5"])), 7);
    assert_eq!(members(&construct(&["slater", "--n", "2", "--m", "3"])), 3);
    assert_eq!(members(&construct(&["compose-3-3-pentagon"])), 11);
    assert_eq!(members(&construct(&["hyperplane", "--n", "3", "--m", "5"])), 9);
    assert_eq!(members(&construct(&["hyperplane-spanning", "--m", "4"])), 5);
    assert_eq!(members(&construct(&["hyperplane-spanning", "--m", "6", "--k", "3"])), 14);
    assert_eq!(members(&construct(&["block-unitary-upb", "--dims", "2,3"])), 6);
}

#[test]
fn fupb_c4_echoes_its_parameters() {
    let v: Value = serde_json::from_str(&construct(&["fupb-c4", "--b", "2"])).unwrap();
    assert_eq!(v["members"].as_array().unwrap().len(), 5);
    let d = &v["metadata"]["params"]["d"];
    assert!((d["re"].as_f64().unwrap() - 1.13631).abs() < 1e-4, "{d}");
    assert!((d["im"].as_f64().unwrap() + 0.197693).abs() < 1e-4, "{d}");
}

#[test]
fn verify_proves_the_complex_fupb() {
    let set = construct(&["fupb-c4", "--b", "2"]);
    let o = run(&["verify"], Some(&set));
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["verdict"]["unextendible"], "proven");
    assert_eq!(r["verdict"]["certificate"], "dim1-plucker");
    assert_eq!(r["seed"], 0);
}

#[test]
fn verify_refutes_a_truncated_basis_with_the_missing_member() {
    let mut v: Value = serde_json::from_str(&construct(&["slater", "--n", "2", "--m", "4"])).unwrap();
    v["members"].as_array_mut().unwrap().pop();
    let o = run(&["verify", "--in", "-"], Some(&v.to_string()));
    assert_eq!(o.status.code(), Some(2));
    let r = json_of(&o);
    assert_eq!(r["verdict"]["unextendible"], "refuted");
    let w = factorization_from_json::<C64>(&r["search"]["witness"]).unwrap().wedge_expand();
    let e34 = NVector::<C64>::slater(4, &[3, 4]).unwrap();
    let overlap = fermi_upb::inner_product(&e34, &w).unwrap().norm() / w.norm();
    assert!((overlap - 1.0).abs() < 1e-10, "{}", nvector_to_json(&w));
}

#[test]
fn non_orthogonal_claim_is_exit_3() {
    let bad = json!({
        "m": 4, "n": 2, "kind": "fupb",
        "claims": {"orthogonal": true, "independent": true},
        "members": [
            {"m": 4, "factors": [[{"re":1.0,"im":0.0},{"re":0.0,"im":0.0},{"re":0.0,"im":0.0},{"re":0.0,"im":0.0}],
                                 [{"re":0.0,"im":0.0},{"re":1.0,"im":0.0},{"re":0.0,"im":0.0},{"re":0.0,"im":0.0}]]},
            {"m": 4, "factors": [[{"re":1.0,"im":0.0},{"re":0.0,"im":0.0},{"re":1.0,"im":0.0},{"re":0.0,"im":0.0}],
                                 [{"re":0.0,"im":0.0},{"re":1.0,"im":0.0},{"re":0.0,"im":0.0},{"re":0.0,"im":0.0}]]}
        ]
    });
    let o = run(&["verify"], Some(&bad.to_string()));
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn input_errors_are_exit_4() {
    assert_eq!(run(&["verify"], Some("{not json")).status.code(), Some(4));
    assert_eq!(run(&["verify"], Some(r#"{"m": 4}"#)).status.code(), Some(4));
    assert_eq!(run(&["bounds", "--n", "2", "--m", "4", "--bogus"], None).status.code(), Some(4));
    assert_eq!(run(&["construct", "nonsense"], None).status.code(), Some(4));
    assert_eq!(run(&["construct", "vandermonde", "--n", "4", "--m", "4"], None).status.code(), Some(4));
    assert_eq!(run(&["construct", "fupb-c4", "--b", "0"], None).status.code(), Some(4));
}

#[test]
fn bounds_match_the_known_values() {
    let b = json_of(&run(&["bounds", "--n", "2", "--m", "4"], None));
    assert_eq!(b, json!({"ces_max_dim": 1, "gfupb_min": 5}));
    let b = json_of(&run(&["bounds", "--dims", "3,3"], None));
    assert_eq!(b, json!({"L": 5, "D": 9, "f_m": 5}));
    let b = json_of(&run(&["bounds", "--n", "3", "--m", "5"], None));
    assert_eq!(b, json!({"ces_max_dim": 3, "gfupb_min": 7}));
}

#[test]
fn transforms() {
    let padded = construct(&["pad"]);
    let o = run(&["transform", "dual"], Some(&padded));
    let d = json_of(&o);
    assert_eq!((d["m"].as_u64(), d["n"].as_u64()), (Some(5), Some(3)));
    assert_eq!(d["members"].as_array().unwrap().len(), 9);

    let psi = json!({"m": 4, "n": 2, "entries": [
        {"idx": [1, 2], "re": 1.0, "im": 0.0},
        {"idx": [3, 4], "re": 1.0, "im": 0.0}
    ]});
    let s = json_of(&run(&["transform", "slater-decompose"], Some(&psi.to_string())));
    let c: Vec<f64> = serde_json::from_value(s["coeffs"].clone()).unwrap();
    assert_eq!(c.len(), 2);
    assert!(c.iter().all(|x| (x - 1.0).abs() < 1e-12), "{c:?}");

    let f = json!({"m": 3, "factors": [
        [{"re": "1/1", "im": "0/1"}, {"re": "0/1", "im": "0/1"}, {"re": "0/1", "im": "0/1"}],
        [{"re": "0/1", "im": "0/1"}, {"re": "1/1", "im": "0/1"}, {"re": "0/1", "im": "0/1"}]
    ]});
    let e = json_of(&run(&["transform", "expand"], Some(&f.to_string())));
    assert_eq!(e["entries"], json!([{"idx": [1, 2], "re": "1/1", "im": "0/1"}]));
}

#[test]
fn seed_comes_from_the_environment_and_is_echoed() {
    let set = construct(&["slater", "--n", "2", "--m", "3"]);
    let o = run_env(&["verify"], Some(&set), &[("FERMI_UPB_SEED", "17")]);
    assert_eq!(json_of(&o)["seed"], 17);
    let o = run_env(&["verify", "--seed", "3"], Some(&set), &[("FERMI_UPB_SEED", "17")]);
    assert_eq!(json_of(&o)["seed"], 3);
}

#[test]
fn reports_are_reproducible_and_match_the_library() {
    let set = construct(&["vandermonde", "--n", "2", "--m", "4"]);
    let a = run(&["verify", "--restarts", "8"], Some(&set));
    let b = run(&["verify", "--restarts", "8"], Some(&set));
    assert_eq!(a.stdout, b.stdout);
    let parsed = fermi_upb::json::AnyCandidateSet::from_json(&serde_json::from_str(&set).unwrap()).unwrap();
    let fermi_upb::json::AnyCandidateSet::Exact(s) = parsed else {
        panic!("expected the exact backend");
    };
    let cfg = fermi_upb::verifier::SearchConfig {
        restarts: 8,
        ..Default::default()
    };
    let lib = fermi_upb::verifier::verify_candidate(&s, &cfg).unwrap();
    assert_eq!(json_of(&a), serde_json::to_value(&lib).unwrap());
}

#[test]
fn output_file_and_pretty_format() {
    let path = std::env::temp_dir().join(format!("fermi-upb-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = run(&["construct", "slater", "--n", "1", "--m", "2", "--out", p, "--format", "pretty"], None);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.lines().count() > 1);
    assert_eq!(members(&text), 2);
}

#[test]
fn demo_runs() {
    let o = run(&["demo", "--restarts", "16"], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    let verdicts: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["verdict"]["unextendible"].as_str().unwrap())
        .collect();
    assert_eq!(verdicts, ["proven", "proven", "refuted", "proven"]);
}

#[test]
fn search_verdicts_survive_a_json_round_trip() {
    let text = construct(&["compose-3-3-pentagon"]);
    let o = run(&["verify", "--restarts", "4", "--seed", "5"], Some(&text));
    assert_eq!(o.status.code(), Some(0));
    let s = fermi_upb::constructions::compose_3_3_pentagon().unwrap();
    let cfg = fermi_upb::verifier::SearchConfig {
        restarts: 4,
        seed: 5,
        ..Default::default()
    };
    let lib = fermi_upb::verifier::verify_candidate(&s, &cfg).unwrap();
    assert_eq!(json_of(&o), serde_json::to_value(&lib).unwrap());
}

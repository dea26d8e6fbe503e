use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

use symtrop::certify::SignedReport;
use symtrop::export::{ComplexJson, Document, FanJson};

fn symtrop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symtrop")).args(args).env_remove("SYMTROP_MAX_PAIRS").env_remove("SYMTROP_MAX_MILLIS").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap()
}

#[test]
fn enumerate_counts() {
    let o = symtrop(&["enumerate", "--n", "4", "--symmetry", "axial"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["data"]["count"], 96);
    assert_eq!(v["data"]["orderings"][0]["coarsest_subdivisions"], 9);
}

#[test]
fn complex_writes_json_dot_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cx");
    let o = symtrop(&[
        "complex",
        "--family",
        "as",
        "--n",
        "3",
        "--highlight-cs",
        "1,-2,3,-1,2,-3",
        "--highlight-as",
        "-3,-2,-1,1,2,3",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out.join("complex.json")).unwrap();
    let doc: Document<ComplexJson> = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.data.f_vector, vec![1, 13, 21]);
    assert_eq!(doc.data.highlights.len(), 2);
    let again: Document<ComplexJson> = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(again, doc);
    let dot = std::fs::read_to_string(out.join("complex.dot")).unwrap();
    assert_eq!(dot.matches(" -- ").count(), 21);

    let m = read_json(&out.join("manifest.json"));
    assert_eq!(m["command"], "complex");
    assert_eq!(m["tool"], "symtrop");
    for f in m["outputs"].as_array().unwrap() {
        let bytes = std::fs::read(out.join(f["path"].as_str().unwrap())).unwrap();
        assert_eq!(f["sha256"].as_str().unwrap(), hex::encode(Sha256::digest(&bytes)));
    }
}

#[test]
fn reruns_hash_identically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert_eq!(code(&symtrop(&["fan", "--kind", "c", "--n", "3", "-o", a.to_str().unwrap()])), 0);
    assert_eq!(code(&symtrop(&["fan", "--kind", "c", "--n", "3", "--sequential", "-o", b.to_str().unwrap()])), 0);
    let (ma, mb) = (read_json(&a.join("manifest.json")), read_json(&b.join("manifest.json")));
    assert_eq!(ma["input_sha256"], mb["input_sha256"]);
    assert_eq!(ma["outputs"], mb["outputs"]);
    let fan: Document<FanJson> = serde_json::from_value(read_json(&a.join("fan.json"))).unwrap();
    assert_eq!(fan.data.rays.len(), 13);
    assert_eq!(fan.data.cones.len(), 34);
}

#[test]
fn certify_exit_codes() {
    assert_eq!(code(&symtrop(&["certify", "--kind", "c", "--n", "3"])), 0);
    assert_eq!(code(&symtrop(&["certify", "--kind", "c", "--n", "4"])), 3);
    assert_eq!(code(&symtrop(&["certify", "--kind", "c", "--n", "3", "--max-pairs", "1"])), 3);
    assert_eq!(code(&symtrop(&["certify", "--kind", "q", "--n", "3"])), 1);
    assert_eq!(code(&symtrop(&["certify", "--kind", "c", "--n", "3", "--sign", "+,+"])), 1);
    assert_eq!(code(&symtrop(&["certify", "--kind", "c", "--n", "3", "--cones", "99"])), 1);
    // too small a degree bound leaves a cone undecided
    let o = symtrop(&["certify", "--kind", "c", "--n", "3", "--sign", "+,+,-,+,+,+", "--max-degree", "0"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&symtrop(&["--help"])), 0);
    assert_eq!(code(&symtrop(&[])), 1);
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_symtrop")).args(["certify", "--kind", "a", "--n", "5"]).env("SYMTROP_MAX_PAIRS", "2").output().unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn signed_report_round_trips() {
    let o = symtrop(&["certify", "--kind", "c", "--n", "3", "--sign", "(1,1,1,1,-1,1)"]);
    assert_eq!(code(&o), 0);
    let doc: Document<SignedReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc.data.members(), vec![1, 3, 5, 9, 10, 11, 15, 16, 21, 22, 27, 28]);
    let again: Document<SignedReport> = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(again, doc);
}

#[test]
fn probes_are_reported() {
    let o = symtrop(&["certify", "--kind", "a", "--n", "4", "--default-probes", "--probe", "-1/2,-1/2"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let probes = v["data"]["probes"].as_array().unwrap();
    let first = &probes[0];
    assert_eq!(first["weight"], serde_json::json!(["-1/2", "-1/2"]));
    assert_eq!(first["on_fan"], true);
    assert_eq!(first["in_tropicalization"], true);
    assert!(probes[1..].iter().all(|p| p["on_fan"] == false && p["in_tropicalization"] == false));
}

#[test]
fn cas_script_is_deterministic() {
    let a = symtrop(&["emit-cas", "--kind", "c", "--n", "3", "--sign", "+,+,+,+,-,+"]);
    let b = symtrop(&["emit-cas", "--kind", "c", "--n", "3", "--sign", "+,+,+,+,-,+", "--sequential"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let s = String::from_utf8(a.stdout).unwrap();
    assert!(s.starts_with("-- signed certification, type C n = 3"));
    assert_eq!(s.matches("-- expected: member").count(), 12);
    assert_eq!(s.matches("-- expected: non-member").count(), 22);
    let t = symtrop(&["emit-cas", "--kind", "a", "--n", "5"]);
    let t = String::from_utf8(t.stdout).unwrap();
    assert_eq!(t.matches("-- expected: true").count(), 25);
}

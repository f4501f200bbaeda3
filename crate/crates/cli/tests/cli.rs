use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const FIELD: &str = r#"{"field":{"kind":"rational"},"quiver":{"vertices":["1"]}}"#;
const DUAL_NUMBERS: &str = r#"{"field":{"kind":"rational"},
    "quiver":{"vertices":["1"],"arrows":[{"name":"x","from":"1","to":"1"}]},
    "relations":[["x","x"]]}"#;
const A2: &str = r#"{"field":{"kind":"rational"},
    "quiver":{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}]}}"#;
const SIMPLE_1: &str = r#"{"dims":{"1":1}}"#;
const ONE_ARROW: &str = r#"{"arrows":[{"name":"m","from":"1","to":"1"}]}"#;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        let f = Files { dir: tempfile::tempdir().unwrap() };
        for (name, text) in [
            ("k.json", FIELD),
            ("dn.json", DUAL_NUMBERS),
            ("a2.json", A2),
            ("s1.json", SIMPLE_1),
            ("m.json", ONE_ARROW),
            ("bad.json", "{ not json"),
        ] {
            std::fs::write(f.path(name), text).unwrap();
        }
        f
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn homdim(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homdim")).args(args).current_dir(cwd).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn invariants_of_small_algebras() {
    let f = Files::new();
    let cwd = f.dir.path();
    let v = json_of(&homdim(&["invariants", "dn.json"], cwd));
    assert_eq!(v["selfinjective"], json!(true));
    assert_eq!(v["phi_dim"]["value"], json!(0));
    assert_eq!(v["phi_dim"]["exact"], json!(true));

    let v = json_of(&homdim(&["invariants", "k.json"], cwd));
    for key in ["gldim", "id_right", "id_left"] {
        assert_eq!(v[key], json!(0), "{key}");
    }
    assert_eq!(v["fin_dim"]["value"], json!(0));
    assert_eq!(v["phi_dim"]["value"], json!(0));

    let v = json_of(&homdim(&["invariants", "a2.json"], cwd));
    assert_eq!((v["gldim"].clone(), v["id_right"].clone()), (json!(1), json!(1)));
    assert_eq!(v["selfinjective"], json!(false));
    assert_eq!(v["phi_dim"]["value"], json!(1));
}

#[test]
fn phi_and_resolve() {
    let f = Files::new();
    let cwd = f.dir.path();
    let v = json_of(&homdim(&["phi", "dn.json", "s1.json"], cwd));
    assert_eq!(v, json!({ "phi": 0, "trace": [1, 1] }));

    let v = json_of(&homdim(&["resolve", "a2.json", "s1.json"], cwd));
    assert_eq!(v["range"], json!([-1, 0]));
    let dims: Vec<Value> = v["terms"].as_array().unwrap().iter().map(|t| t["dims"].clone()).collect();
    assert_eq!(dims, vec![json!([0, 1]), json!([1, 1])]);

    std::fs::write(f.path("res.json"), serde_json::to_string(&v["complex"]).unwrap()).unwrap();
    let again = json_of(&homdim(&["resolve", "a2.json", "res.json"], cwd));
    assert_eq!(again["range"], v["range"]);
    assert_eq!(again["terms"], v["terms"]);

    let v = json_of(&homdim(&["phidim", "a2.json", "--mode", "gldim-finite"], cwd));
    assert_eq!(v["value"], json!(1));
}

#[test]
fn check_recollement_and_tn() {
    let f = Files::new();
    let cwd = f.dir.path();
    let out = homdim(&["check-recollement", "--b", "k.json", "--c", "k.json", "--bimodule", "m.json"], cwd);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["verdict"] == json!("verified")));
    let c1 = checks.iter().find(|c| c["name"] == json!("Thm1c")).unwrap();
    assert_eq!((c1["hypothesis"].clone(), c1["lhs"].clone(), c1["rhs"].clone()), (json!("holds"), json!(1), json!(1)));
    assert_eq!(v["quantities"]["pd_AY"], json!(1));

    let v = json_of(&homdim(&["check-tn", "--algebra", "k.json", "--n", "2"], cwd));
    assert_eq!(v["verdict"], json!("verified"));
}

#[test]
fn fuzz_is_deterministic() {
    let f = Files::new();
    let cwd = f.dir.path();
    let a = homdim(&["fuzz", "--seed", "7", "--count", "12", "--jobs", "3"], cwd);
    let b = homdim(&["fuzz", "--seed", "7", "--count", "12", "--jobs", "1"], cwd);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["reports"].as_array().unwrap().len(), 12);
    assert_eq!(v["summary"]["violations"], json!([]));

    let out = homdim(&["check-recollement", "--seed", "7", "--count", "5", "--out", "reports.json"], cwd);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&homdim(&["report", "reports.json"], cwd));
    assert_eq!(v["instances"], json!(5));
}

#[test]
fn exit_codes() {
    let f = Files::new();
    let cwd = f.dir.path();
    assert_eq!(homdim(&["invariants", "bad.json"], cwd).status.code(), Some(2));
    assert_eq!(homdim(&["invariants", "missing.json"], cwd).status.code(), Some(2));
    let bad_bimodule = homdim(&["check-recollement", "--b", "k.json", "--c", "k.json", "--bimodule", "bad.json"], cwd);
    assert_eq!(bad_bimodule.status.code(), Some(2));
    assert_eq!(homdim(&["invariants", "k.json", "--field", "7"], cwd).status.code(), Some(3));
    assert_eq!(homdim(&["invariants", "k.json", "--field", "12"], cwd).status.code(), Some(3));
    assert_eq!(homdim(&["invariants", "k.json", "--field", "101"], cwd).status.code(), Some(0));

    let strict = homdim(&["resolve", "dn.json", "s1.json", "--degrees", "3", "--strict"], cwd);
    assert_eq!(strict.status.code(), Some(4));
    let lenient = homdim(&["resolve", "dn.json", "s1.json", "--degrees", "3"], cwd);
    assert_eq!(json_of(&lenient)["complete"], json!(false));

    let violating = json!([{ "instance": "x", "checks": [{ "name": "Thm1a", "verdict": "VIOLATION" }] }]);
    std::fs::write(f.path("v.json"), violating.to_string()).unwrap();
    assert_eq!(homdim(&["report", "v.json"], cwd).status.code(), Some(5));
}

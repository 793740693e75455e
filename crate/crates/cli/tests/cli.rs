use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn lefdt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefdt"))
        .args(args)
        .env_remove("LEFDT_GUARD")
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = lefdt(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn cubical_lefschetz_of_rotated_z() {
    let v = json_of(&["lefschetz", "--theory", "cubical", &path("map_rotZ.json")]);
    assert_eq!(v["value"], 1);
    assert_eq!(v["traces"], serde_json::json!([0, 0, 1]));
}

#[test]
fn euler_characteristic_of_y() {
    let v = json_of(&["euler", "--theory", "simplicial", &path("imageY.json")]);
    assert_eq!(v["value"], -1);
    let out = lefdt(&["euler", "--theory", "simplicial", &path("imageY.json")]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("value: -1"));
}

#[test]
fn a_point_has_the_fixed_point_property() {
    assert_eq!(json_of(&["fpp", &path("point.json")])["fpp"], true);
    assert_eq!(json_of(&["fpp", &path("cycle_04.json")])["fpp"], false);
}

/// Leaves of a JSON value keyed by path; arrays without objects are leaves.
fn leaves(v: &Value, prefix: String, out: &mut BTreeMap<String, Value>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                leaves(x, p, out);
            }
        }
        Value::Array(a) if a.iter().any(Value::is_object) => {
            for (i, x) in a.iter().enumerate() {
                leaves(x, format!("{prefix}[{i}]"), out);
            }
        }
        other => {
            out.insert(prefix, other.clone());
        }
    }
}

fn parse_human(text: &str) -> BTreeMap<String, Value> {
    text.lines()
        .map(|l| {
            let (k, v) = l.split_once(": ").expect("key: value line");
            let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
            (k.to_string(), value)
        })
        .collect()
}

#[test]
fn json_and_human_output_agree() {
    let cases: Vec<Vec<String>> = vec![
        vec!["info".into(), path("robot.json")],
        vec!["simplices".into(), path("imageX.json")],
        vec!["cubes".into(), path("imageZ.json")],
        vec!["homology".into(), "--theory".into(), "cubical".into(), path("robot.json")],
        vec!["lefschetz".into(), "--theory".into(), "cubical".into(), path("map_rotY.json")],
        vec!["fixed".into(), path("map_rotX.json")],
        vec!["afp".into(), "-n".into(), "1".into(), path("map_rotZ.json")],
        vec!["classes".into(), path("cycle_06.json")],
        vec!["contractible".into(), path("cycle_04.json")],
        vec!["spectrum".into(), path("cycle_05.json")],
        vec!["afp-spectrum".into(), path("map_rotY.json")],
        vec!["thin".into(), "--mode".into(), "exhaustive".into(), path("cycle_04.json")],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let mut expected = BTreeMap::new();
        leaves(&json_of(&args), String::new(), &mut expected);
        let out = lefdt(&args);
        assert!(out.status.success());
        let human = parse_human(&String::from_utf8(out.stdout).unwrap());
        // strings that look like JSON (e.g. "[0]x[1]") parse back as values
        for (k, v) in &expected {
            let h = &human[k];
            let same = h == v || matches!(v, Value::String(s) if serde_json::from_str::<Value>(s).ok().as_ref() == Some(h));
            assert!(same, "{args:?} {k}: human {h} vs json {v}");
        }
        assert_eq!(human.len(), expected.len(), "{args:?}");
    }
}

#[test]
fn homotopic_maps_come_with_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let c8 = fs::read_to_string(fixture("cycle_08.json")).unwrap();
    fs::write(dir.path().join("c8.json"), c8).unwrap();
    let id: Vec<[usize; 2]> = (0..8).map(|i| [i, i]).collect();
    let konst: Vec<[usize; 2]> = (0..8).map(|i| [i, 0]).collect();
    for (name, a) in [("id.json", &id), ("const.json", &konst)] {
        let map = serde_json::json!({"domain": "c8.json", "codomain": "c8.json", "assignment": a});
        fs::write(dir.path().join(name), map.to_string()).unwrap();
    }
    let id = dir.path().join("id.json");
    let konst = dir.path().join("const.json");
    let v = json_of(&["homotopic", id.to_str().unwrap(), id.to_str().unwrap()]);
    assert_eq!(v["homotopic"], true);
    let v = json_of(&["homotopic", id.to_str().unwrap(), konst.to_str().unwrap()]);
    assert_eq!(v["homotopic"], false);
    assert_eq!(v["certificate"], Value::Null);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(lefdt(&["info", bad.to_str().unwrap()]).status.code(), Some(3));

    // c2 images have no cubical complex
    let c2 = dir.path().join("c2.json");
    fs::write(&c2, r#"{"dimension":2,"adjacency":"c2","points":[[0,0],[1,1]]}"#).unwrap();
    let out = lefdt(&["--json", "euler", "--theory", "cubical", c2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"]["kind"], "unsupported-adjacency");

    // a discontinuous map
    fs::write(dir.path().join("c4.json"), fs::read_to_string(fixture("cycle_04.json")).unwrap()).unwrap();
    let jump = dir.path().join("jump.json");
    fs::write(&jump, r#"{"domain":"c4.json","codomain":"c4.json","assignment":[[0,0],[1,3],[2,2],[3,3]]}"#).unwrap();
    assert_eq!(lefdt(&["lefschetz", jump.to_str().unwrap()]).status.code(), Some(2));
    let out = lefdt(&["--json", "check-map", jump.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["continuous"], false);
    assert_eq!(v["violations"].as_array().unwrap().len(), 1);

    let out = Command::new(env!("CARGO_BIN_EXE_lefdt"))
        .args(["classes", &path("cycle_08.json")])
        .env("LEFDT_GUARD", "maps=100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));

    let missing = dir.path().join("missing.json");
    assert_eq!(lefdt(&["info", missing.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn thin_writes_a_loadable_image() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reduced.json");
    let v = json_of(&["thin", "--batch", "2", "--output", out.to_str().unwrap(), &path("robot.json")]);
    assert_eq!(v["reducedSize"], 14);
    assert_eq!(v["certified"], true);
    let info = json_of(&["info", out.to_str().unwrap()]);
    assert_eq!(info["points"], 14);
    assert_eq!(info["cubicalCells"], serde_json::json!([14, 14]));
}

#[test]
fn verify_is_deterministic_and_passes() {
    let a = lefdt(&["--json", "verify"]);
    let b = lefdt(&["--json", "verify"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() > 20);
}

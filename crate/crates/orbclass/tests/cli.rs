use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn orbclass(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_orbclass"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn elliptic_input(points: Value) -> Value {
    json!({"summands": [{"a": 4, "b": 0}, {"a": 6, "b": 0}], "points": points, "a_complete": true})
}

#[test]
fn ratmap_job() {
    let job = json!({"command": "ratmap", "payload": {"n": 2, "profile": [1, 1, 1]}});
    let o = orbclass(&["job"], &job.to_string());
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["degree"], "6");
    assert_eq!(v["class_text"], "6*v1*v2");
    assert_eq!(v["stabilizer_weighted"], true);
}

#[test]
fn torus_job() {
    let job = json!({
        "command": "torus",
        "payload": {"d": 3, "characters": [[0,0,1],[0,1,1],[1,0,1],[1,1,1]], "support": [true,true,true,true]}
    });
    let v = json_out(&orbclass(&["job"], &job.to_string()));
    assert_eq!(v["class_text"], "x+y+2*z");
    assert_eq!(v["pointed"], true);
    assert_eq!(v["e_sigma"]["text"], "(x+y+2*z)/(z*(x+z)*(y+z)*(x+y+z))");
    assert_eq!(v["class"], json!({"terms": [
        {"exp": [1,0,0], "coef": "1"}, {"exp": [0,1,0], "coef": "1"}, {"exp": [0,0,1], "coef": "2"}
    ]}));
}

#[test]
fn class_job_with_weights() {
    let mut payload = elliptic_input(json!([]));
    payload["projective_weights"] = json!([2, 3]);
    let job = json!({"command": "class", "payload": payload});
    let v = json_out(&orbclass(&["job"], &job.to_string()));
    assert_eq!(v["codim"], 8);
    assert_eq!(v["degree"], "1119744");
    assert_eq!(v["stabilizer_weighted"], true);
}

#[test]
fn stabilizer_divisor_clears_flag() {
    let mut payload = elliptic_input(json!([]));
    payload["projective_weights"] = json!([2, 3]);
    payload["stabilizer_order"] = json!(2);
    let v = json_out(&orbclass(&["class"], &payload.to_string()));
    assert_eq!(v["degree"], "559872");
    assert_eq!(v["stabilizer_weighted"], false);
}

#[test]
fn text_output_is_canonical() {
    let o = orbclass(&["ratmap", "--n", "2", "--profile", "1,1,1", "--text"], "");
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("command: ratmap\nclass: 6*v1*v2\n"), "{}", s);
    assert!(s.contains("degree: 6\n"));
}

#[test]
fn elliptic_flags() {
    let o = orbclass(&["elliptic", "--n", "1", "--fiber", "1,1"], "");
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    // 2^7 3^7 (4 - 8/27)
    assert_eq!(v["degree"], "1036800");
    assert_eq!(v["fibers"][0]["kodaira"], "II");
    assert_eq!(v["fibers"][0]["c"], "1/3");
    let o = orbclass(&["elliptic", "--n", "1", "--type", "II*"], "");
    assert_eq!(json_out(&o)["fibers"][0]["contribution"], "100/27");
}

#[test]
fn ratmap_from_forms() {
    let o = orbclass(&["ratmap", "--n", "2", "--F", "1,0,0", "--G", "0,0,1", "--roots", "1:0,0:1,1:1"], "");
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["I"], "2*x+2*y");
    assert_eq!(v["J"], "x^2*y-x*y^2");
    assert_eq!(v["profile"], json!([1, 1, 1]));
}

#[test]
fn validation_errors_exit_one() {
    // F = x^2, G = x^2 + xy: J = -x^3 and I = 3x share the root [0:1]
    let o = orbclass(&["ratmap", "--n", "2", "--F", "1,0,0", "--G", "1,1,0", "--roots", "0:1^3"], "");
    assert_eq!(o.status.code(), Some(1));
    let bad = json!({"summands": [{"a": 1, "b": -1}, {"a": 2, "b": 0}], "a_complete": true});
    let o = orbclass(&["class"], &bad.to_string());
    assert_eq!(o.status.code(), Some(1));
    let over = json!({"summands": [{"a": 3, "b": 0}, {"a": 4, "b": 0}],
        "points": [{"label": "u", "orders": [4, 0]}], "a_complete": true});
    assert_eq!(orbclass(&["class"], &over.to_string()).status.code(), Some(1));
}

#[test]
fn schema_errors_name_the_field() {
    let o = orbclass(&["class"], r#"{"summands": [{"a": 4, "b": "x"}], "a_complete": true}"#);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "schema");
    assert_eq!(err["error"]["path"], "summands[0].b");
    let o = orbclass(&["class"], r#"{"summands": [{"a": 4, "b": 0}]}"#);
    assert_eq!(o.status.code(), Some(1));
    let o = orbclass(&["class"], "not json");
    assert_eq!(o.status.code(), Some(1));
    let o = orbclass(&["class", "--text"], "not json");
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error (schema): "));
}

#[test]
fn internal_failure_exits_two() {
    // the alternative second factor leaves a remainder in the final division
    let mut p = elliptic_input(json!([{"label": "u", "orders": [1, 2]}]));
    p["f_variant"] = json!("as_printed");
    let o = orbclass(&["class"], &p.to_string());
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "internal");
}

#[test]
fn verify_examples() {
    let p = elliptic_input(json!([{"label": "u", "orders": [1, 2]}]));
    let v = json_out(&orbclass(&["verify"], &p.to_string()));
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);

    let r = json!({"summands": [{"a": 3, "b": 0}, {"a": 4, "b": -1}],
        "points": [{"label": "p", "orders": [0, 2]}, {"label": "q", "orders": [0, 3]}], "a_complete": true});
    assert_eq!(json_out(&orbclass(&["verify"], &r.to_string()))["all_pass"], true);

    let o = orbclass(&["verify", "--as-printed"], &p.to_string());
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["all_pass"], false);
    let oracle = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "oracle-equality").unwrap();
    assert_eq!(oracle["pass"], false);
}

#[test]
fn polygon_round_trip() {
    let p = json!({"summands": [{"a": 3, "b": 0}, {"a": 3, "b": 1}],
        "points": [{"label": "u", "orders": [2, 0]}], "a_complete": true});
    let first = json_out(&orbclass(&["polygon"], &p.to_string()));
    let poly = &first["polygons"][0];
    assert_eq!(poly["vertices"], json!([["2/3", "0"], ["1/4", "1/4"]]));
    let again = json_out(&orbclass(&["polygon"], &poly.to_string()));
    let back = &again["polygons"][0];
    for key in ["vertices", "faces", "normals", "scalars", "beta", "divisibility"] {
        assert_eq!(poly[key], back[key], "{}", key);
    }
}

#[test]
fn output_is_deterministic() {
    let p = elliptic_input(json!([{"label": "u", "orders": [1, 2]}, {"label": "v", "orders": [2, 3]}]));
    let a = orbclass(&["class"], &p.to_string());
    let b = orbclass(&["class"], &p.to_string());
    assert_eq!(a.stdout, b.stdout);
    let t = orbclass(&["torus", "--text"], r#"{"d": 2, "characters": [[1,0],[1,1],[0,1],[1,2]]}"#);
    let u = orbclass(&["torus", "--text"], r#"{"d": 2, "characters": [[1,0],[1,1],[0,1],[1,2]]}"#);
    assert_eq!(t.stdout, u.stdout);
}

#[test]
fn input_file_flag() {
    let dir = std::env::temp_dir().join(format!("orbclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    std::fs::write(&path, r#"{"d": 1, "characters": [[1]]}"#).unwrap();
    let o = orbclass(&["torus", "--input", path.to_str().unwrap()], "");
    assert_eq!(json_out(&o)["class_text"], "1");
    let missing = orbclass(&["torus", "--input", dir.join("nope.json").to_str().unwrap()], "");
    assert_eq!(missing.status.code(), Some(1));
    std::fs::remove_dir_all(dir).ok();
}

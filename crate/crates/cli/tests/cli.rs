use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn grady(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grady")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(p).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grady-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

#[test]
fn table_m8_matches_golden() {
    let o = grady(&["table", "m8", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("table_m8.txt"));
}

#[test]
fn table_d4_matches_golden() {
    let o = grady(&["table", "d4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("table_d4.txt"));
}

#[test]
fn table_json_parses() {
    let o = grady(&["table", "m8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 15);
    assert_eq!(v["columns"].as_array().unwrap().len(), 6);
}

#[test]
fn universal_group_example() {
    let o = grady(&["universal-group", "--gda", "D(2;+1)", "--q", "2", "--s", "1", "--d", "a,b"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Z2 x Z4 x Z\n");
}

#[test]
fn universal_group_with_signs_and_delta() {
    let o = grady(&["universal-group", "--gda", "D(2;+1)", "--q", "2", "--s", "0", "--d", "e,e", "--signs", "+,-"]);
    assert_eq!(stdout(&o), "Z2^3\n");
    let o = grady(&["universal-group", "--gda", "D(2;-1)", "--q", "1", "--s", "0", "--d", "a", "--delta", "-1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn equiv_ignores_diagonal_order() {
    let a = r#"{"gda":"D(2;+1)","q":4,"s":0,"d":[{"t":[0,0],"sign":1},{"t":[1,0],"sign":1},{"t":[1,0],"sign":1},{"t":[0,1],"sign":1}]}"#;
    let b = r#"{"gda":"D(2;+1)","q":4,"s":0,"d":[{"t":[0,1],"sign":1},{"t":[1,0],"sign":1},{"t":[0,0],"sign":1},{"t":[1,0],"sign":1}]}"#;
    let (pa, pb) = (temp_file("a.json", a), temp_file("b.json", b));
    let o = grady(&["equiv", pa.to_str().unwrap(), pb.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "equivalent\n");
}

#[test]
fn equiv_separates_classes() {
    let a = r#"{"gda":"D(2;+1)","q":2,"s":1,"d":[{"t":[1,0],"sign":1},{"t":[1,0],"sign":1}]}"#;
    let b = r#"{"gda":"D(2;+1)","q":2,"s":1,"d":[{"t":[1,0],"sign":1},{"t":[0,1],"sign":1}]}"#;
    let (pa, pb) = (temp_file("c.json", a), temp_file("d.json", b));
    let o = grady(&["equiv", pa.to_str().unwrap(), pb.to_str().unwrap()]);
    assert_eq!(stdout(&o), "not equivalent\n");
}

#[test]
fn build_and_fine() {
    let p = temp_file("e.json", r#"{"gda":"D(2;+1)","q":2,"s":1,"d":[{"t":[1,0],"sign":1},{"t":[0,1],"sign":1}]}"#);
    let o = grady(&["build", "-f", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("universal group: Z2 x Z4 x Z"));
    let o = grady(&["fine", "-f", p.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("fine"));
    let q = temp_file("f.json", r#"{"gda":"D(2;+1)","q":2,"s":0,"d":[{"t":[1,0],"sign":1},{"t":[1,0],"sign":1}]}"#);
    let o = grady(&["fine", "-f", q.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("not fine"));
}

#[test]
fn enumerate_counts() {
    let o = grady(&["enumerate", "--family", "all", "--kind", "orthogonal", "--size", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("52 classes\n"));
    let o = grady(&["enumerate", "--family", "complex-pauli", "--size", "9", "--signature", "1"]);
    assert!(stdout(&o).ends_with("4 classes\n"), "{}", stdout(&o));
    let o = grady(&["enumerate", "--family", "real", "--size", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v.as_array().unwrap().is_empty());
}

#[test]
fn gda_describes_quaternions() {
    let o = grady(&["gda", "D(2;-1)"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("support: Z2^2"));
    assert!(out.contains("squares: e:+ a:- b:- ab:-"), "{out}");
}

#[test]
fn exit_codes() {
    let o = grady(&["gda", "D(2;x)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    let o = grady(&["enumerate", "--family", "real", "--size", "64"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("capacity"));
    let o = grady(&["table", "m8", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = grady(&["universal-group", "--gda", "D(2;+1)", "--q", "2", "--s", "1", "--d", "a"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&grady(&["enumerate", "--family", "quaternion", "--size", "8", "--format", "json"]));
    let b = stdout(&grady(&["enumerate", "--family", "quaternion", "--size", "8", "--format", "json"]));
    assert_eq!(a, b);
}

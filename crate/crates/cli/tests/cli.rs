mod common;

use common::{check_golden, data, golden_cases, run};

#[test]
fn golden_outputs_match() {
    let failures: Vec<String> = golden_cases()
        .iter()
        .filter_map(|(name, args)| check_golden(name, args).err())
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn a2_sharp_tilt_at_second_simple() {
    let (out, _, code) = run(&["tilt", &data("a2.json"), "2+"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let items = &v["collection"]["items"];
    assert_eq!(items[0]["summands"], serde_json::json!([["0,1", 1]]));
    assert_eq!(items[1]["summands"], serde_json::json!([["1,1", 0]]));
    assert_eq!(v["collection"]["degrees"]["1,2"], serde_json::json!([1, 1]));
}

#[test]
fn zero_index_is_an_input_error() {
    let (_, err, code) = run(&["tilt", &data("a2.json"), "0+"]);
    assert_eq!(code, 2);
    assert!(err.contains("indices start at 1"));
}

#[test]
fn out_of_range_index_is_an_input_error() {
    let (_, _, code) = run(&["tilt", &data("a2.json"), "3+"]);
    assert_eq!(code, 2);
}

#[test]
fn triangle_violates_a2() {
    let (_, err, code) = run(&["std", &data("triangle.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("(A2) violated"), "{err}");
}

#[test]
fn backwards_arrow_is_rejected() {
    let (_, _, code) = run(&["std", &data("backwards.json")]);
    assert_eq!(code, 2);
}

#[test]
fn missing_file_is_an_input_error() {
    let (_, _, code) = run(&["std", "/nonexistent/quiver.json"]);
    assert_eq!(code, 2);
}

#[test]
fn explore_is_independent_of_jobs_and_repeatable() {
    let base = ["explore", &data("a3.json"), "--depth", "6", "--format", "json"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat());
    let four = run(&[&base[..], &["--jobs", "4"]].concat());
    let again = run(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.2, 0);
    assert_eq!(one.0, four.0);
    assert_eq!(four.0, again.0);
}

#[test]
fn stab_with_explicit_charges() {
    let (out, _, code) = run(&["stab", &data("a2.json"), "--charges", "[[-1,1],[0,1]]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"]["pass"], serde_json::json!(true));
}

#[test]
fn stab_rejects_real_positive_charge() {
    let (_, _, code) = run(&["stab", &data("a2.json"), "--charges", "[[1,0],[0,1]]"]);
    assert_eq!(code, 2);
}

#[test]
fn stab_rejects_wrong_charge_count() {
    let (_, _, code) = run(&["stab", &data("a2.json"), "--charges", "[[0,1]]"]);
    assert_eq!(code, 2);
}

#[test]
fn stab_seeded_charges_are_reproducible() {
    let args = ["stab", &data("a3.json"), "2+ 1-", "--seed", "7"];
    assert_eq!(run(&args).0, run(&args).0);
}

#[test]
fn stab_collection_file_outside_heart_is_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(
        &path,
        r#"{"items":[{"summands":[["0,1",0]]},{"summands":[["1,1",-1]]}]}"#,
    )
    .unwrap();
    let (out, err, code) = run(&["stab", &data("a2.json"), "--collection-file", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"]["pass"], serde_json::json!("unknown"));
}

#[test]
fn stab_unknown_key_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"items":[{"summands":[["2,1",0]]}]}"#).unwrap();
    let (_, _, code) = run(&["stab", &data("a2.json"), "--collection-file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
}

use std::path::PathBuf;

use silting_core::cli::{run, EXIT_FAILURE, EXIT_INPUT, EXIT_OK};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("silting-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("silting").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, _) = call(&full);
    (code, serde_json::from_str(&out).expect("json output"))
}

#[test]
fn algebra_command_reports_dimension_and_gldim() {
    let (code, v) = json(&["algebra", &fixture("ex3.quiver")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["algebra"]["dim"], "15");
    assert_eq!(v["algebra"]["gldim"], "3");
    assert_eq!(v["algebra"]["paths"][1][1], "2");
    assert!(v["elapsed_ms"].is_null());
    let (_, v) = json(&["algebra", &fixture("a2.quiver")]);
    assert_eq!(v["algebra"]["gldim"], "1");
}

#[test]
fn input_errors_exit_with_two() {
    let bad = scratch("bad.quiver", "vertices: 1 2\narrow a: 1 -> 9\n");
    let (code, _, err) = call(&["algebra", &bad]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 2, column 15"), "{err}");
    assert_eq!(call(&["algebra", "/nonexistent/file.quiver"]).0, EXIT_INPUT);
    assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(call(&["algebra", &fixture("k.quiver"), "--seed", "xyz"]).0, EXIT_INPUT);
    let bad_complex = scratch("bad.complex", "stalk0 P7\n");
    assert_eq!(call(&["silting", &fixture("ex3.quiver"), &bad_complex]).0, EXIT_INPUT);
    assert_eq!(call(&["paper-examples", "nope"]).0, EXIT_INPUT);
}

#[test]
fn computation_failures_exit_with_one() {
    let lp = scratch("loop.quiver", "vertices: 1\narrow x: 1 -> 1\n");
    assert_eq!(call(&["algebra", &lp]).0, EXIT_FAILURE);
    let doubled = scratch("double.complex", "stalk0 P1 + P1\n");
    let (code, _, err) = call(&["silting", &fixture("k.quiver"), &doubled]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(err.contains("not basic"), "{err}");
}

#[test]
fn non_presilting_complex_is_reported_not_failed() {
    let c = scratch("k.complex", "stalk0 P1\nstalk1 P1\n");
    let (code, v) = json(&["silting", &fixture("k.quiver"), &c]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["silting"]["verdict"], "NotPresilting");
    assert!(v["end"].is_null());
}

#[test]
fn silting_command_on_fixture_files() {
    let (code, v) = json(&["silting", &fixture("ex2.quiver"), &fixture("ex2.complex")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["silting"]["verdict"], "Silting");
    assert_eq!(v["end"]["gldim"], "7");
    assert_eq!(v["end"]["dim"], "15");
    assert_eq!(v["bounds"].as_array().unwrap().len(), 4);

    let (code, v) = json(&["silting", &fixture("ex3.quiver"), &fixture("ex3.complex"), "--module", "S2", "--module", "P2/(a.b)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["silting"]["modules"][0]["class"], "Torsion");
    assert_eq!(v["silting"]["modules"][1]["class"], "TorsionFree");
    assert_eq!(v["end"]["gldim"], "infinite");
    assert_eq!(v["end"]["period"][0]["period"], "3");
}

#[test]
fn paper_examples_filters() {
    let (code, v) = json(&["paper-examples", "ex2"]);
    assert_eq!(code, EXIT_OK);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0]["end"]["gldim"], "7");

    let (code, v) = json(&["paper-examples", "ex1:n=3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v[0]["algebra"]["gldim"], "3");
    assert_eq!(v[0]["end"]["gldim"], "8");

    let (_, v) = json(&["paper-examples", "ex1"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn full_example_run_passes_and_is_deterministic() {
    let (code, first, _) = call(&["paper-examples", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["fixture"].as_str().unwrap()).collect();
    assert_eq!(names, ["a0", "ex1:n=2", "ex1:n=3", "ex1:n=4", "ex2", "ex3"]);
    assert!(v.as_array().unwrap().iter().all(|r| r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true)));
    let (_, second, _) = call(&["paper-examples", "--json"]);
    assert_eq!(first, second);
    let (_, seeded, _) = call(&["paper-examples", "--json", "--seed", "0x1234"]);
    assert_eq!(first, seeded);
}

#[test]
fn timing_and_text_output() {
    let (code, v) = json(&["algebra", &fixture("a2.quiver"), "--timing"]);
    assert_eq!(code, EXIT_OK);
    assert!(v["elapsed_ms"].is_string());
    let (code, out, _) = call(&["paper-examples", "ex3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("check gld B: ok"));
}

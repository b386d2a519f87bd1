use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn arglue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arglue")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn nakayama_line_passes_at_three() {
    let out = arglue(&["nakayama", "--kupisch", "2,2,3,3,3,3,2,1", "check-nct", "-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["result"]["indecomposables"], 19);
}

#[test]
fn starlike_classification_reports_gldim() {
    let out = arglue(&["starlike", "--arms", "5:out,5:out,4:in", "classify", "-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["classification"]["gldim"], 7);
    assert_eq!(r["result"]["global_dimension"], 7);
}

#[test]
fn missing_projective_fails_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"algebra":{"kupisch":[2,2,1]},"modules":[{"thin":["1","2"]},{"thin":["3"]},{"thin":["1"]}]}"#);
    let out = arglue(&["check-nct", &bad, "-n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["result"]["report"]["verdict"], "fail");
    assert!(!r["result"]["report"]["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn explicit_subcategory_passes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.json",
        r#"{"algebra":{"kupisch":[2,2,1]},"modules":[{"thin":["1","2"]},{"thin":["2","3"]},{"thin":["3"]},{"thin":["1"]}]}"#,
    );
    let out = arglue(&["check", "nct", &good, "-n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let fr = arglue(&["check", "fractured", &good, "-n", "2"]);
    assert_eq!(fr.status.code(), Some(0));
}

#[test]
fn algebra_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(
        dir.path(),
        "a.json",
        r#"{"vertices":["x","y","z"],"arrows":[{"id":"a","from":"x","to":"y"},{"id":"b","from":"y","to":"z"}],"relations":[["a","b"]]}"#,
    );
    let dumped = dir.path().join("out.json");
    let out = arglue(&["algebra", "validate", &src, "--dump", dumped.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let first = report(&out);
    assert_eq!(first["result"]["round_trip"], true);
    let again = arglue(&["algebra", "validate", dumped.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(report(&again)["result"]["algebra"], first["result"]["algebra"]);
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(arglue(&["algebra", "validate", missing.to_str().unwrap()]).status.code(), Some(3));
    let broken = write(dir.path(), "broken.json", "{\"vertices\": [");
    assert_eq!(arglue(&["algebra", "indec", &broken]).status.code(), Some(3));
    assert_eq!(arglue(&["starlike", "--arms", "5:sideways", "show"]).status.code(), Some(3));
    assert_eq!(arglue(&["nakayama", "--kupisch", "1,2", "show"]).status.code(), Some(3));
    assert_eq!(arglue(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn ar_quiver_dot_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "k.json", r#"{"kupisch":[2,2,2],"cyclic":true}"#);
    let dot = dir.path().join("ar.dot");
    let js = dir.path().join("report.json");
    let out = arglue(&["algebra", "ar", &src, "--dot", dot.to_str().unwrap(), "--json", js.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["count"], 6);
    assert_eq!(r["result"]["representation_directed"], false);
    assert_eq!(r["result"]["mesh_identity"], true);
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let saved: Value = serde_json::from_str(&fs::read_to_string(&js).unwrap()).unwrap();
    assert_eq!(saved["inputs_digest"], r["inputs_digest"]);
}

#[test]
fn indecomposables_dump() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "k.json", r#"{"kupisch":[2,2,1]}"#);
    let dump = dir.path().join("mods.json");
    let out = arglue(&["algebra", "indec", &src, "--dump", dump.to_str().unwrap()]);
    assert_eq!(report(&out)["result"]["count"], 5);
    let mods: Value = serde_json::from_str(&fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(mods.as_array().unwrap().len(), 5);
    assert!(mods[0]["maps"].is_object());
}

#[test]
fn trivial_pair_gluing() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "b.json", r#"{"kupisch":[2,2,1]}"#);
    let a = write(dir.path(), "a.json", r#"{"kupisch":[2,1]}"#);
    let out = arglue(&["glue", "pair", "--b", &b, "--i", "2", "--a", &a, "--p", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["trivial"], true);
    assert_eq!(r["result"]["summary"]["vertices"], 3);
}

#[test]
fn system_with_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "end.json", r#"{"kupisch":[2,2,1]}"#);
    write(dir.path(), "mid.json", r#"{"kupisch":[2,2,2,1]}"#);
    let sys = write(
        dir.path(),
        "sys.json",
        r#"{"tree":{"vertices":["u","v","w"],"arrows":[{"from":"u","to":"v","I":"2","P":"3"},{"from":"v","to":"w","I":"2","P":"2"}]},
            "algebras":{"u":"end.json","v":"mid.json","w":"end.json"}}"#,
    );
    let out = arglue(&["glue", "system", &sys]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["orders_agree"], true);
    assert_eq!(r["result"]["summary"]["vertices"], 6);
}

#[test]
fn self_gluing_a_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "k.json", r#"{"algebra":{"kupisch":[2,2,3,3,3,3,2,1]}}"#);
    let out = arglue(&["selfglue", &f, "-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["tilde_indecomposables"], 18);
    assert_eq!(r["result"]["modules"].as_array().unwrap().len(), 10);
    assert_eq!(r["result"]["tilde"]["vertices"].as_array().unwrap().len(), 7);
}

#[test]
fn generated_algebra() {
    let out = arglue(&["generate", "--sources", "2", "--sinks", "3", "-n", "2", "--seed", "7", "--jobs", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["summary"]["sources"].as_array().unwrap().len(), 2);
    assert_eq!(r["result"]["summary"]["sinks"].as_array().unwrap().len(), 3);
}

#[test]
fn example_suite() {
    let out = arglue(&["examples"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(arglue(&["paper-suite"]).status.code(), Some(0));
}

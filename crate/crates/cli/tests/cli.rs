//! End-to-end runs of the binary: exit codes, JSON shapes, byte
//! stability, and the emitted-coloring re-verification round trip.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_wdlc")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON document")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wdlc-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const PATH_GRAPH: &str = r#"{"n": 6, "edges": [[0,1],[1,2],[2,3],[3,4],[4,5]]}"#;
const PATH_TD: &str = r#"{"root": 0, "nodes": [0,1,2,3,4], "edges": [[0,1],[1,2],[2,3],[3,4]],
  "bags": {"0":[0,1],"1":[1,2],"2":[2,3],"3":[3,4],"4":[4,5]}}"#;
const PATH_LISTS: &str = r#"{"palette": [1,2], "lists":
  {"0":[1,2],"1":[1,2],"2":[1,2],"3":[1,2],"4":[1,2],"5":[1,2]}}"#;

#[test]
fn bounds_small_ext_value() {
    let out = run(&["bounds", "--formula", "small-ext", "--d", "1", "--n", "4"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["value"], "16");
}

#[test]
fn bounds_fstar_frozen_values() {
    let out = run(&[
        "bounds", "--formula", "fstar", "--theta", "1", "--s", "1", "--r", "1", "--k", "1",
        "--eta", "0", "--n", "4",
    ]);
    assert_eq!(stdout_json(&out)["value"], "34");
    let out = run(&[
        "bounds", "--formula", "fstar", "--theta", "1", "--s", "1", "--r", "1", "--k", "1",
        "--eta", "1", "--n", "4",
    ]);
    assert_eq!(stdout_json(&out)["value"], "4152");
}

#[test]
fn grid_document_shape() {
    let out = run(&["grid", "--n", "2"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["n"], 4);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 5);
}

#[test]
fn color_tw_and_validate_roundtrip() {
    let dir = scratch("tw");
    let g = write(&dir, "g.json", PATH_GRAPH);
    let td = write(&dir, "td.json", PATH_TD);
    let lists = write(&dir, "lists.json", PATH_LISTS);
    let pre = write(&dir, "pre.json", r#"{"colors": {"0": 2}}"#);

    let out = run(&[
        "color-tw",
        "--graph",
        g.to_str().unwrap(),
        "--td",
        td.to_str().unwrap(),
        "--lists",
        lists.to_str().unwrap(),
        "--precoloring",
        pre.to_str().unwrap(),
        "--k",
        "1",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["coloring"]["colors"]["0"], 2);
    assert!(doc["weak_diameter"].is_u64());
    assert!(doc["bound"].is_string());

    // an emitted coloring re-verifies under validate
    let coloring = write(
        &dir,
        "coloring.json",
        &serde_json::to_string(&doc["coloring"]).unwrap(),
    );
    let out = run(&[
        "validate",
        "--graph",
        g.to_str().unwrap(),
        "--td",
        td.to_str().unwrap(),
        "--eta",
        "2",
        "--theta",
        "2",
        "--lists",
        lists.to_str().unwrap(),
        "--coloring",
        coloring.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["checks"]["coloring"]["respects_lists"], true);
    assert_eq!(doc["checks"]["coloring"]["total"], true);
}

#[test]
fn reports_are_byte_stable() {
    let dir = scratch("stable");
    let g = write(&dir, "g.json", PATH_GRAPH);
    let td = write(&dir, "td.json", PATH_TD);
    let lists = write(&dir, "lists.json", PATH_LISTS);
    let args = [
        "color-tw",
        "--graph",
        g.to_str().unwrap(),
        "--td",
        td.to_str().unwrap(),
        "--lists",
        lists.to_str().unwrap(),
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn validate_reports_violations_with_exit_1() {
    let dir = scratch("bad");
    // triangle, but bags that never hold edge (0, 2)
    let g = write(&dir, "g.json", r#"{"n": 3, "edges": [[0,1],[1,2],[0,2]]}"#);
    let td = write(
        &dir,
        "td.json",
        r#"{"root": 0, "nodes": [0,1], "edges": [[0,1]], "bags": {"0":[0,1],"1":[1,2]}}"#,
    );
    let out = run(&[
        "validate",
        "--graph",
        g.to_str().unwrap(),
        "--td",
        td.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout_json(&out);
    assert_eq!(doc["ok"], false);
    let text = serde_json::to_string(&doc).unwrap();
    assert!(text.contains("edge-coverage"));
}

#[test]
fn malformed_json_exits_3_with_position() {
    let dir = scratch("malformed");
    let g = write(&dir, "g.json", r#"{"n": 3, "edges": [[0,1"#);
    let out = run(&["validate", "--graph", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "missing position: {err}");
}

#[test]
fn precoloring_rejection_exits_1() {
    let dir = scratch("spread");
    let g = write(&dir, "g.json", PATH_GRAPH);
    let td = write(&dir, "td.json", PATH_TD);
    let lists = write(&dir, "lists.json", PATH_LISTS);
    // a stretched monochromatic path: weak diameter 5 > k = 1
    let pre = write(
        &dir,
        "pre.json",
        r#"{"colors": {"0":1,"1":1,"2":1,"3":1,"4":1,"5":1}}"#,
    );
    let out = run(&[
        "color-tw",
        "--graph",
        g.to_str().unwrap(),
        "--td",
        td.to_str().unwrap(),
        "--lists",
        lists.to_str().unwrap(),
        "--precoloring",
        pre.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn brute_subcommand() {
    let dir = scratch("brute");
    let g = write(&dir, "g.json", r#"{"n": 3, "edges": [[0,1],[1,2],[0,2]]}"#);
    let lists = write(
        &dir,
        "lists.json",
        r#"{"palette": [1,2], "lists": {"0":[1,2],"1":[1,2],"2":[1,2]}}"#,
    );
    let out = run(&[
        "brute",
        "--graph",
        g.to_str().unwrap(),
        "--lists",
        lists.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["min_weak_diameter"], 1);

    // cap exceeded is a result, not a failure
    let out = run(&[
        "brute",
        "--graph",
        g.to_str().unwrap(),
        "--lists",
        lists.to_str().unwrap(),
        "--cap",
        "4",
    ]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["too_large"]["product"], "8");
}

#[test]
fn gadget_subcommand_with_claim() {
    let out = run(&["gadget", "--host", "petersen", "--k", "1", "--claim"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["graph"]["n"], 25);
    assert_eq!(doc["claim"]["threshold"], -1);
    assert_eq!(doc["claim"]["verdict"], true);
    assert_eq!(doc["host_girth"], 5);
}

#[test]
fn color_torso_with_brute_oracle() {
    let dir = scratch("torso");
    // two triangles glued at vertex 2
    let g = write(
        &dir,
        "g.json",
        r#"{"n": 5, "edges": [[0,1],[1,2],[0,2],[2,3],[3,4],[2,4]]}"#,
    );
    let td = write(
        &dir,
        "td.json",
        r#"{"root": 0, "nodes": [0,1], "edges": [[0,1]], "bags": {"0":[0,1,2],"1":[2,3,4]}}"#,
    );
    let lists = write(
        &dir,
        "lists.json",
        r#"{"palette": [1,2], "lists": {"0":[1,2],"1":[1,2],"2":[1,2],"3":[1,2],"4":[1,2]}}"#,
    );
    let out = run(&[
        "color-torso",
        "--graph",
        g.to_str().unwrap(),
        "--td",
        td.to_str().unwrap(),
        "--lists",
        lists.to_str().unwrap(),
        "--oracle",
        "brute",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["coloring"]["colors"].as_object().unwrap().len(), 5);
}

#[test]
fn color_torso_with_bipartite_apex_oracle() {
    let dir = scratch("apex");
    // a 4-cycle with one apex vertex joined to everything: bag of 5
    let g = write(
        &dir,
        "g.json",
        r#"{"n": 5, "edges": [[0,1],[1,2],[2,3],[3,0],[4,0],[4,1],[4,2],[4,3]]}"#,
    );
    let td = write(
        &dir,
        "td.json",
        r#"{"root": 0, "nodes": [0], "edges": [], "bags": {"0":[0,1,2,3,4]}}"#,
    );
    let lists = write(
        &dir,
        "lists.json",
        r#"{"palette": [1,2,3], "lists":
          {"0":[1,2,3],"1":[1,2,3],"2":[1,2,3],"3":[1,2,3],"4":[1,2,3]}}"#,
    );
    let apexes = write(&dir, "apex.json", r#"{"0": [4]}"#);
    let out = run(&[
        "color-torso",
        "--graph",
        g.to_str().unwrap(),
        "--td",
        td.to_str().unwrap(),
        "--lists",
        lists.to_str().unwrap(),
        "--oracle",
        "bipartite-apex",
        "--apex-sets",
        apexes.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn strict_paper_flag_accepted() {
    let dir = scratch("strict");
    let g = write(&dir, "g.json", PATH_GRAPH);
    let td = write(&dir, "td.json", PATH_TD);
    let lists = write(&dir, "lists.json", PATH_LISTS);
    let out = run(&[
        "--strict-paper",
        "color-tw",
        "--graph",
        g.to_str().unwrap(),
        "--td",
        td.to_str().unwrap(),
        "--lists",
        lists.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

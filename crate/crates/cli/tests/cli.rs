use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use zf_core::minrank::{p2_ph_witness_matrix, RationalMatrix};
use zf_core::{Graph, ProductExpression};

fn zf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zf"))
        .args(args)
        .env_remove("ZF_BUDGET_SECONDS")
        .output()
        .expect("zf runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok_json(args: &[&str]) -> (String, Value) {
    let o = zf(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    let value = serde_json::from_str(&text).unwrap();
    (text, value)
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn scratch(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

/// Validates `text` against `schemas/<schema>.schema.json` with the Python
/// `jsonschema` package.
fn assert_valid(schema: &str, text: &str) {
    let root = repo_root();
    let mut child = Command::new("python3")
        .arg(root.join("python/validate_json.py"))
        .arg(schema)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("python3 is needed for schema validation");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(
        o.status.success(),
        "{schema}: {}\n{text}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn solve_complete_product_meets_rank_bound() {
    let (text, v) = ok_json(&["solve", "K4({1,2}) x K4"]);
    assert_valid("solve", &text);
    assert!(v["z"].as_u64().unwrap() <= 4 * 4 - (4 + 2));
    assert_eq!(
        v["witness"].as_array().unwrap().len() as u64,
        v["z"].as_u64().unwrap()
    );
}

#[test]
fn force_chronicle_example() {
    let (text, v) = ok_json(&[
        "force",
        "P3({1}) x C3",
        "--set",
        "(1,1),(1,2),(2,1),(2,2),(2,3)",
    ]);
    assert_valid("force", &text);
    assert_eq!(v["filled_all"], true);
    assert_eq!(v["filled"], 9);
    assert_eq!(v["pt"], 2);
    let first: Vec<&Value> = v["rounds"][0].as_array().unwrap().iter().collect();
    assert_eq!(first.len(), 3);
}

#[test]
fn build_dot_of_cartesian_path_cycle() {
    let o = zf(&["build", "P3 x C3", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
    assert_eq!((nodes, edges), (9, 15));
}

#[test]
fn build_json_validates() {
    let (text, v) = ok_json(&["build", "P4({1,3}) x P3", "--json"]);
    assert_valid("build", &text);
    assert_eq!(v["order"], 12);
}

#[test]
fn edge_list_round_trip() {
    for expr in ["P4({1,3}) x P3", "C5 x K3", "K4({2}) x C4", "P6"] {
        let o = zf(&["build", expr, "--edge-list"]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let parsed = Graph::parse_edge_list(&text).unwrap();
        let built = expr.parse::<ProductExpression>().unwrap().build().unwrap();
        assert_eq!(&parsed, built.graph(), "{expr}");

        let file = scratch(&format!(
            "roundtrip-{}.txt",
            expr.replace([' ', '{', '}', '(', ')', ','], "_")
        ));
        std::fs::write(&file, &text).unwrap();
        let again = zf(&["build", file.to_str().unwrap(), "--edge-list"]);
        assert_eq!(stdout(&again), text);
    }
}

#[test]
fn solve_edge_list_file_and_all_minimum() {
    let file = scratch("paw.txt");
    std::fs::write(&file, "4 4\n1 2\n2 3\n2 4\n3 4\n").unwrap();
    let (text, v) = ok_json(&["solve", file.to_str().unwrap(), "--all-min"]);
    assert_valid("solve", &text);
    assert_eq!(v["z"], 2);
    assert!(v["all_minimum"]
        .as_array()
        .unwrap()
        .iter()
        .any(|s| s == &serde_json::json!([1, 3])));
}

#[test]
fn parse_errors_exit_two() {
    for args in [
        vec!["solve", "P4({5}) x P3"],
        vec!["solve", "Q3"],
        vec!["force", "P3 x P3", "--set", "(4,1)"],
        vec!["theorem", "PP_END_U2", "--w", "3", "--h", "2"],
        vec!["theorem", "NOT_A_CASE", "--w", "3", "--h", "3"],
        vec!["sweep", "KK", "--w-range", "5"],
    ] {
        let o = zf(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn budget_abort_exits_three_with_partial_result() {
    let o = Command::new(env!("CARGO_BIN_EXE_zf"))
        .args(["solve", "P6 x P6", "--max-order", "40"])
        .env("ZF_BUDGET_SECONDS", "0.0001")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert_valid("abort", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["reason"], "time_limit");

    let o = zf(&["solve", "P5 x P5", "--max-order", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert_valid("abort", &stdout(&o));
}

#[test]
fn theorem_reports_validate() {
    let cases: &[&[&str]] = &[
        &["theorem", "PP_END_U1", "--w", "4", "--h", "5"],
        &[
            "theorem",
            "PP_END_U1",
            "--w",
            "4",
            "--h",
            "5",
            "--root",
            "1",
        ],
        &[
            "theorem",
            "PP_GEN_U2",
            "--w",
            "6",
            "--h",
            "4",
            "--i",
            "1",
            "--j",
            "4",
        ],
        &[
            "theorem",
            "CC_U2_NONADJ",
            "--w",
            "6",
            "--h",
            "4",
            "--root",
            "2,5",
        ],
        &["theorem", "CC_ALL_BUT_ONE", "--w", "5", "--h", "4"],
        &[
            "theorem",
            "PC_END_BLOCK",
            "--w",
            "5",
            "--h",
            "6",
            "--m",
            "2",
        ],
        &["theorem", "KK", "--w", "5", "--h", "4", "--r", "2"],
        &[
            "theorem",
            "GENERAL_S2",
            "--outer",
            "C4",
            "--inner",
            "K3",
            "--root",
            "1,3",
        ],
    ];
    for args in cases {
        let (text, v) = ok_json(args);
        assert_valid("theorem", &text);
        assert_eq!(v["forces"], true, "{args:?}");
    }
}

#[test]
fn sweep_to_file_validates() {
    let path = scratch("sweep-kk.json");
    let o = zf(&[
        "sweep",
        "KK",
        "--w-range",
        "4..5",
        "--h-range",
        "4..5",
        "--all-placements",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_valid("sweep", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["summary"]["errors"], 0);
    assert_eq!(v["summary"]["verified"], v["summary"]["rows"]);
}

#[test]
fn minrank_emits_matrix() {
    let path = scratch("witness-5.csv");
    let (text, v) = ok_json(&["minrank", "--h", "5", "--emit", path.to_str().unwrap()]);
    assert_valid("minrank", &text);
    assert_eq!(v["n"], 10);
    assert_eq!(v["pattern_matches"], true);
    let m = RationalMatrix::from_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m, p2_ph_witness_matrix(5).unwrap());
}

#[test]
fn iso_outputs_validate() {
    let (text, v) = ok_json(&["iso", "P4({1}) x P3", "P4({4}) x P3"]);
    assert_valid("iso", &text);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 12);

    let (text, v) = ok_json(&["iso", "P4({1}) x P3", "P4({2}) x P3"]);
    assert_valid("iso", &text);
    assert_eq!(v["isomorphic"], false);
    assert!(v.get("refutation").is_some());
}

#[test]
fn tables_json_and_markdown() {
    let md = scratch("tables.md");
    let js = scratch("tables.json");
    let o = zf(&[
        "tables",
        "--markdown-out",
        md.to_str().unwrap(),
        "--json-out",
        js.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&js).unwrap();
    assert_valid("tables", &text);
    let markdown = std::fs::read_to_string(&md).unwrap();
    assert!(markdown.contains("## KK"));
    assert!(stdout(&o).contains("MATCH"));
}

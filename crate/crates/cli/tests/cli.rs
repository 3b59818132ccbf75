use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn foliar(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_foliar"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str], stdin: Option<&str>) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = foliar(&full, stdin);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn catalog(name: &str) -> String {
    stdout(&foliar(&["catalog", name], None))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn check_examples() {
    let dir = tempfile::tempdir().unwrap();
    let trefoil = dir.path().join("trefoil.pd");
    std::fs::write(&trefoil, "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\n").unwrap();
    let v = json(&["check", trefoil.to_str().unwrap()], None);
    assert_eq!(v["status"], "excluded");
    assert_eq!(v["reasons"], serde_json::json!(["DkDiagram(3)"]));
    assert_eq!(v["oracles"][0]["agreement"], "agree");

    let v = json(&["check"], Some(&catalog("pretzel_-2_3_7")));
    assert_eq!(v["status"], "fail");
    assert_eq!(v["reasons"], serde_json::json!(["Disconnected"]));

    let v = json(&["check", "-"], Some(&catalog("k_2")));
    assert_eq!(v["status"], "certified");
    assert_eq!(v["reasons"], serde_json::json!([]));
    assert_eq!(v["diagnostics"]["twist_regions"], 4);
}

#[test]
fn json_diagram_input() {
    let d = foliar_core::catalog::figure_eight();
    let text = serde_json::to_string(&d.to_json()).unwrap();
    let v = json(&["check"], Some(&text));
    assert_eq!(v["reasons"], serde_json::json!(["NoWeightAboveTwo"]));
    assert_eq!(v["diagnostics"]["branch"]["branch"], "two_circle_family");
}

#[test]
fn bad_input_exits_two() {
    let o = foliar(&["check"], Some("X[1,2,3]"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(foliar(&["check", "/no/such/file.pd"], None).status.code(), Some(2));
    assert_eq!(foliar(&["braid", "s1^0"], None).status.code(), Some(2));
    assert_eq!(foliar(&["tree", "(2 (3)"], None).status.code(), Some(2));
    assert_eq!(foliar(&["borromean", "1/0/2", "1", "1"], None).status.code(), Some(2));
    assert_eq!(foliar(&["catalog", "nope"], None).status.code(), Some(2));
}

#[test]
fn braid_examples() {
    let v = json(&["braid", "s1^3 s2^-3", "--strands", "3", "--crosscheck"], None);
    assert_eq!(v["status"], "certified");
    assert_eq!(v["oracles"][0]["route"], "closure");
    assert_eq!(v["oracles"][0]["agreement"], "agree");
    let v = json(&["braid", "s1^2 s2^2", "--strands", "3"], None);
    assert_eq!(v["reasons"], serde_json::json!(["NotAKnot"]));
    assert_eq!(v["details"]["components"], 3);
}

#[test]
fn tree_borromean_augment() {
    let v = json(&["tree", "(2 (3))", "--crosscheck"], None);
    assert_eq!(v["status"], "certified");
    assert_eq!(v["oracles"].as_array().unwrap().len(), 2);

    assert_eq!(stdout(&foliar(&["borromean", "1", "1", "1"], None)), "LSpace\n");
    let v = json(&["borromean", "1/2", "3", "5"], None);
    assert_eq!(v["classification"]["verdict"], "TautFoliation");
    assert_eq!(stdout(&foliar(&["borromean", "inf", "2", "-3"], None)), "LSpace\n");

    let v = json(&["augment"], Some(&catalog("trefoil")));
    let circles = v["augmentation"]["circles"].as_array().unwrap();
    assert_eq!(circles.len(), 1);
    assert_eq!(circles[0]["coefficient"], "1");
    assert!(v["plan"].is_object());
}

#[test]
fn emit_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dot");
    let o = foliar(&["check", "--emit-dot", out.to_str().unwrap()], Some(&catalog("k_2")));
    assert_eq!(o.status.code(), Some(0));
    for f in ["collapsed.dot", "side.dot", "tait0.dot", "tait1.dot"] {
        let body = std::fs::read_to_string(out.join(f)).unwrap();
        assert!(body.starts_with("graph "), "{f}");
    }
}

#[test]
fn output_is_deterministic() {
    let pd = catalog("k_3");
    let a = foliar(&["--json", "check"], Some(&pd));
    let b = foliar(&["--json", "check"], Some(&pd));
    assert_eq!(a.stdout, b.stdout);
    let dir = corpus_dir();
    let a = foliar(&["corpus", dir.to_str().unwrap()], None);
    let b = foliar(&["corpus", dir.to_str().unwrap()], None);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn shipped_corpus_runs_clean() {
    let v = json(&["corpus", corpus_dir().to_str().unwrap()], None);
    let s = &v["summary"];
    assert_eq!(s["input_errors"], 0);
    assert_eq!(s["invariant_failures"], 0);
    let rows = v["rows"].as_array().unwrap();
    let status = |file: &str| rows.iter().find(|r| r["file"] == file).unwrap()["verdict"]["status"].clone();
    assert_eq!(status("k_1.pd"), "fail");
    assert_eq!(status("k_2.pd"), "certified");
    assert_eq!(status("d_-7.pd"), "excluded");
    assert_eq!(status("pretzel_-2_3_7.pd"), "fail");
}

#[test]
fn corpus_reports_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.pd"), catalog("trefoil")).unwrap();
    std::fs::write(dir.path().join("b.braid"), "s1^3 s2^-3\n").unwrap();
    std::fs::write(dir.path().join("c.pd"), "garbage").unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let o = foliar(&["corpus", dir.path().to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("3 inputs: 1 certified, 0 fail, 1 excluded, 1 input errors"), "{out}");
}

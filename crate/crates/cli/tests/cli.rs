use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn tdkern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdkern"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = tdkern(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn treedepth_output_is_exact() {
    let d = TempDir::new().unwrap();
    let p = write(d.path(), "p4.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#);
    let out = tdkern(&["td", "--in", s(&p)]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"treedepth": 3}"#);
}

#[test]
fn generate_kernelize_verify_round_trip() {
    let d = TempDir::new().unwrap();
    let inst = d.path().join("inst.json");
    let kern = d.path().join("kern.json");
    let rep = d.path().join("report.json");
    let out = tdkern(&[
        "gen", "random", "--seed", "5", "--modulator-size", "1", "--components", "12", "--size-max", "1",
        "--eta", "1", "--k", "6", "--out", s(&inst),
    ]);
    assert!(out.status.success());
    let out = tdkern(&[
        "kernelize", "--in", s(&inst), "--family", "K2", "--eta", "1", "--gamma", "1", "--out", s(&kern),
        "--report", s(&rep),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    assert!(report["levels"].is_array());
    let v = ok_json(&[
        "verify", "--original", s(&inst), "--kernel", s(&kern), "--delta-from", s(&rep), "--family", "K2",
    ]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let bad = tdkern(&["verify", "--original", s(&inst), "--kernel", s(&kern), "--delta", "99", "--family", "K2"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn kernel_files_do_not_depend_on_thread_count() {
    let d = TempDir::new().unwrap();
    let inst = d.path().join("inst.json");
    assert!(tdkern(&[
        "gen", "random", "--seed", "11", "--modulator-size", "1", "--components", "20", "--eta", "2",
        "--size-max", "2", "--k", "9", "--out", s(&inst),
    ])
    .status
    .success());
    let mut outputs = Vec::new();
    for threads in ["1", "8"] {
        let kern = d.path().join(format!("kern-{threads}.json"));
        let out = tdkern(&[
            "--threads", threads, "kernelize", "--in", s(&inst), "--family", "K2", "--eta", "2", "--gamma", "1",
            "--out", s(&kern),
        ]);
        assert!(out.status.success());
        outputs.push((fs::read(&kern).unwrap(), out.stdout));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn missing_modulator_is_computed() {
    let d = TempDir::new().unwrap();
    let p = write(d.path(), "k4.json", r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]],"k":2}"#);
    let kern = d.path().join("kern.json");
    let out = tdkern(&["kernelize", "--in", s(&p), "--family", "K3", "--eta", "1", "--verified", "--out", s(&kern)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let k: Value = serde_json::from_str(&fs::read_to_string(&kern).unwrap()).unwrap();
    assert_eq!(k["modulator"].as_array().unwrap().len(), 3);
}

#[test]
fn solve_reports_optimum() {
    let d = TempDir::new().unwrap();
    let p = write(d.path(), "c5.json", r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4]]}"#);
    let v = ok_json(&["solve", "--in", s(&p), "--family", "K2"]);
    assert_eq!(v["opt"], 3);
    assert_eq!(v["solution"], serde_json::json!([0, 1, 3]));
    let all = ok_json(&["solve", "--in", s(&p), "--family", "K2", "--all"]);
    assert_eq!(all["solutions"].as_array().unwrap().len(), 5);
    let fvs = ok_json(&["solve", "--in", s(&p), "--family", "K3"]);
    assert_eq!(fvs["opt"], 1);
}

#[test]
fn labeled_minor_with_shared_labels() {
    let d = TempDir::new().unwrap();
    let h = write(d.path(), "h.json", r#"{"n":1,"edges":[],"labels":{"0":["a","b"]}}"#);
    let g = write(d.path(), "g.json", r#"{"n":3,"edges":[[0,1],[1,2]],"labels":{"0":["a"],"2":["b"]}}"#);
    let gap = write(d.path(), "gap.json", r#"{"n":2,"edges":[],"labels":{"0":["a"],"1":["b"]}}"#);
    let v = ok_json(&["minor", "--pattern", s(&h), "--host", s(&g)]);
    assert_eq!(v["minor"], true);
    assert_eq!(v["branch_sets"], serde_json::json!([[0, 1, 2]]));
    let v = ok_json(&["minor", "--pattern", s(&h), "--host", s(&gap)]);
    assert_eq!(v["minor"], false);
}

#[test]
fn algebra_commands() {
    let d = TempDir::new().unwrap();
    let g = write(
        d.path(),
        "g.json",
        r#"{"n":3,"edges":[[0,1],[1,2]],"labels":{"0":["a"]},"boundary":{"0":1},"t":1}"#,
    );
    // Boundary vertex, its label, the interior component.
    assert_eq!(ok_json(&["algebra", "pcs", "--in", s(&g)]).as_array().unwrap().len(), 3);
    let m = ok_json(&["algebra", "mpcs", "--in", s(&g)]);
    let r = ok_json(&["algebra", "mpcs", "--in", s(&g), "--by-removal"]);
    assert_eq!(m, r);
    let fg = ok_json(&["algebra", "forget", "--in", s(&g), "--k", "0"]);
    assert!(fg.get("boundary").is_none());
    assert!(fg["canonical"].is_string());
    let e = ok_json(&["algebra", "ext", "--in", s(&g), "--steps", "0"]);
    assert_eq!(e.as_array().unwrap().len(), 1);
    let sum = ok_json(&["algebra", "oplus", "--a", s(&g), "--b", s(&g)]);
    assert_eq!(sum["n"], 5);
    let q = write(d.path(), "q.json", r#"[{"n":3,"edges":[[0,1],[1,2],[0,2]]}]"#);
    assert_eq!(ok_json(&["algebra", "mpcs-plus", "--q", s(&q), "--t", "1"]).as_array().unwrap().len(), 3);
    let c = ok_json(&["algebra", "count", "--l", "0", "--t", "0", "--n", "3", "--theta", "0"]);
    assert_eq!(c["count"], 8);
    let one = write(d.path(), "one.json", r#"[{"n":1,"edges":[],"labels":{"0":["x","y"]}}]"#);
    let v = ok_json(&["algebra", "saturated", "--q", s(&one), "--labels", "x,y", "--theta", "2"]);
    assert_eq!(v["saturated"], true);
    let v = ok_json(&["algebra", "saturated", "--q", s(&one), "--labels", "x,y,z", "--theta", "2"]);
    assert_eq!(v["saturated"], false);
}

#[test]
fn split_and_merge_from_files() {
    let d = TempDir::new().unwrap();
    let g1 = write(d.path(), "g1.json", r#"{"n":2,"edges":[[0,1]],"boundary":{"0":1},"t":1}"#);
    let g2 = write(d.path(), "g2.json", r#"{"n":1,"edges":[],"boundary":{"0":1},"t":1}"#);
    let pi = write(d.path(), "pi.json", r#"[{"n":3,"edges":[[0,1],[1,2],[0,2]],"t":1}]"#);
    let v = ok_json(&["algebra", "split", "--pi", s(&pi), "--g1", s(&g1), "--g2", s(&g2), "--family", "K3"]);
    let p1 = d.path().join("p1.json");
    let p2 = d.path().join("p2.json");
    fs::write(&p1, v["pi1"].to_string()).unwrap();
    fs::write(&p2, v["pi2"].to_string()).unwrap();
    let merged = ok_json(&["algebra", "merge", "--pi1", s(&p1), "--pi2", s(&p2), "--family", "K3", "--t", "1"]);
    let keys: Vec<&str> = merged.as_array().unwrap().iter().filter_map(|g| g["canonical"].as_str()).collect();
    let tri = write(d.path(), "tri.json", r#"{"n":3,"edges":[[0,1],[1,2],[0,2]],"t":1}"#);
    let want = ok_json(&["algebra", "forget", "--in", s(&tri), "--k", "1"]);
    assert!(keys.contains(&want["canonical"].as_str().unwrap()));
}

#[test]
fn corpus_writes_manifest() {
    let d = TempDir::new().unwrap();
    let dir = d.path().join("corpus");
    let out = tdkern(&["gen", "corpus", "--count", "3", "--seed", "40", "--dir", s(&dir)]);
    assert!(out.status.success());
    let m: Value = serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    let entries = m["instances"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert_eq!(entries[0]["config"]["seed"], 40);
    assert!(dir.join("instance-00042.json").exists());
}

#[test]
fn gadgets_and_layouts() {
    let d = TempDir::new().unwrap();
    let t = d.path().join("t.json");
    assert!(tdkern(&["gen", "triangles", "--t", "4", "--out", s(&t)]).status.success());
    assert_eq!(ok_json(&["td", "--in", s(&t)])["treedepth"], 5);
    let c = d.path().join("c.json");
    assert!(tdkern(&["gen", "clause", "--t", "2", "--out", s(&c)]).status.success());
    let l = d.path().join("l.json");
    assert!(tdkern(&["gen", "layout", "--n-mod", "2", "--q", "2", "--comps", "2", "--out", s(&l)]).status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&l).unwrap()).unwrap();
    assert_eq!(v["n"], 2 + 2 * 7);
}

#[test]
fn bad_inputs_exit_with_two() {
    let d = TempDir::new().unwrap();
    assert_eq!(tdkern(&["td", "--in", "/nonexistent/graph.json"]).status.code(), Some(2));
    let loops = write(d.path(), "loop.json", r#"{"n":2,"edges":[[0,0]]}"#);
    assert_eq!(tdkern(&["td", "--in", s(&loops)]).status.code(), Some(2));
    let extra = write(d.path(), "extra.json", r#"{"n":2,"edges":[],"colour":1}"#);
    assert_eq!(tdkern(&["td", "--in", s(&extra)]).status.code(), Some(2));
    assert_eq!(tdkern(&["frobnicate"]).status.code(), Some(2));
    let g = write(d.path(), "g.json", r#"{"n":2,"edges":[[0,1]]}"#);
    assert_eq!(tdkern(&["solve", "--in", s(&g), "--family", "K9"]).status.code(), Some(2));
}

#[test]
fn oversized_solver_input_exits_with_one() {
    let d = TempDir::new().unwrap();
    let edges: Vec<String> = (0..19).map(|i| format!("[{i},{}]", i + 1)).collect();
    let p = write(d.path(), "p20.json", &format!(r#"{{"n":20,"edges":[{}]}}"#, edges.join(",")));
    assert_eq!(tdkern(&["solve", "--in", s(&p), "--family", "K2"]).status.code(), Some(1));
}

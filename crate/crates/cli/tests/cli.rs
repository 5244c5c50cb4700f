use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

fn concur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concur"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Compares stdout with `fixtures/golden/<name>`. Set `UPDATE_GOLDENS=1`
/// to rewrite the file instead.
fn golden(name: &str, o: &Output) {
    let path = root().join("fixtures/golden").join(name);
    let got = stdout(o);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        fs::write(&path, &got).unwrap();
        return;
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "golden mismatch for {name}");
}

fn lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn validate_accepts_event_trace() {
    let o = concur(&["validate", &fixture("one_message.event.json")]);
    assert_eq!(o.status.code(), Some(0));
    golden("validate_one_message.json", &o);
}

#[test]
fn validate_rejects_unordered_process() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"version":1,"kind":"event","n":1,"events":[
            {"id":"x","slots":[{"proc":1,"idx":1}]},
            {"id":"y","slots":[{"proc":1,"idx":1}]}]}"#,
    )
    .unwrap();
    let o = concur(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["error"]["code"], "not_totally_ordered");
}

#[test]
fn validate_reports_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{ not json").unwrap();
    let o = concur(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    fs::write(&path, r#"{"version":1,"kind":"poset","elements":[],"extra":0}"#).unwrap();
    assert_eq!(concur(&["validate", path.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(concur(&["validate", "no/such/file.json"]).status.code(), Some(3));
}

#[test]
fn es_transform_matches_state_fixture() {
    let o = concur(&["transform", &fixture("early_send.event.json"), "--direction", "es"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fs::read_to_string(fixture("early_send.state.json")).unwrap());
}

#[test]
fn se_transform_collapses_barrier() {
    let o = concur(&["transform", &fixture("sync_barrier.state.json"), "--direction", "se"]);
    assert_eq!(o.status.code(), Some(0));
    golden("transform_sync_barrier_se.json", &o);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let shared: Vec<&Value> = v["events"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["slots"].as_array().unwrap().len() == 2)
        .collect();
    assert_eq!(shared.len(), 1);
    assert_eq!(shared[0]["id"], "shared(1.2,2.2)");
}

#[test]
fn se_transform_reports_cycle() {
    let o = concur(&["transform", &fixture("stuck_single.state.json"), "--direction", "se"]);
    assert_eq!(o.status.code(), Some(2));
    golden("transform_stuck_single_se.json", &o);
}

#[test]
fn transform_kind_mismatch_is_usage_error() {
    let o = concur(&["transform", &fixture("one_message.event.json"), "--direction", "se"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn check_properties() {
    let o = concur(&["check", &fixture("one_message.state.json"), "--properties", "we,ic"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["width_extensible"]["holds"], true);
    assert_eq!(v["interleaving_consistent"]["holds"], true);

    let o = concur(&["check", &fixture("sync_barrier.state.json"), "--properties", "psi,ic"]);
    assert_eq!(o.status.code(), Some(0));
    golden("check_sync_barrier_psi_ic.json", &o);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["psi"]["holds"], false);
    assert_eq!(v["interleaving_consistent"]["holds"], false);

    let o = concur(&["check", &fixture("stuck_pair.poset.json"), "--properties", "we"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["width_extensible"]["holds"], false);
    assert_eq!(v["width_extensible"]["witness"]["members"], serde_json::json!(["b", "i"]));
}

#[test]
fn check_rejects_bad_requests() {
    let o = concur(&["check", &fixture("stuck_pair.poset.json"), "--properties", "omega1"]);
    assert_eq!(o.status.code(), Some(4));
    let o = concur(&["check", &fixture("one_message.event.json")]);
    assert_eq!(o.status.code(), Some(4));
    let o = concur(&["check", &fixture("one_message.state.json"), "--properties", "nope"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn downsets_of_one_message() {
    let o = concur(&["cuts", &fixture("one_message.event.json"), "--family", "downsets"]);
    assert_eq!(o.status.code(), Some(0));
    golden("cuts_one_message_downsets.jsonl", &o);
    let l = lines(&o);
    assert_eq!(l.len(), 13);
    assert_eq!(l[12]["count"], 12);
}

#[test]
fn antichains_of_one_message() {
    let o = concur(&["cuts", &fixture("one_message.state.json"), "--family", "antichains"]);
    assert_eq!(o.status.code(), Some(0));
    golden("cuts_one_message_antichains.jsonl", &o);
    assert_eq!(lines(&o).last().unwrap()["count"], 12);

    let level = concur(&[
        "cuts",
        &fixture("one_message.state.json"),
        "--family",
        "antichains",
        "--order",
        "level",
    ]);
    let mut a: Vec<String> = stdout(&o).lines().map(String::from).collect();
    let mut b: Vec<String> = stdout(&level).lines().map(String::from).collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn cut_guard() {
    let o = concur(&[
        "cuts",
        &fixture("one_message.event.json"),
        "--family",
        "downsets",
        "--max-cuts",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn antichains_need_extensible_input() {
    let o = concur(&["cuts", &fixture("stuck_single.poset.json"), "--family", "antichains"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn predicates() {
    for name in ["barrier", "deadlock", "permits"] {
        let o = concur(&[
            "analyze",
            "predicate",
            "--model",
            &fixture(&format!("{name}.state.json")),
            "--pred",
            &fixture(&format!("{name}.pred.json")),
        ]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        golden(&format!("predicate_{name}.jsonl"), &o);
        let l = lines(&o);
        let count = l.last().unwrap()["count"].as_u64().unwrap();
        assert_eq!(count as usize, l.len() - 1);

        let c = concur(&[
            "analyze",
            "predicate",
            "--model",
            &fixture(&format!("{name}.state.json")),
            "--pred",
            &fixture(&format!("{name}.pred.json")),
            "--count",
        ]);
        let v: Value = serde_json::from_str(&stdout(&c)).unwrap();
        assert_eq!(v["count"].as_u64(), Some(count));

        let f = concur(&[
            "analyze",
            "predicate",
            "--model",
            &fixture(&format!("{name}.state.json")),
            "--pred",
            &fixture(&format!("{name}.pred.json")),
            "--first",
        ]);
        let v: Value = serde_json::from_str(&stdout(&f)).unwrap();
        assert_eq!(v["found"], true);
        assert_eq!(v["states"], l[0]["states"]);
    }
}

#[test]
fn zigzag_checkpoints() {
    for engine in ["fast", "oracle", "both"] {
        let o = concur(&[
            "analyze",
            "checkpoints",
            "--model",
            &fixture("zigzag.state.json"),
            "--marks",
            &fixture("zigzag.marks.json"),
            "--engine",
            engine,
        ]);
        assert_eq!(o.status.code(), Some(0), "{engine}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["useless"], serde_json::json!(["1.1"]), "{engine}");
        if engine == "both" {
            golden("checkpoints_zigzag.json", &o);
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["transform", &fixture("one_message.event.json"), "--direction", "es"];
    let a = stdout(&concur(&args));
    let b = stdout(&concur(&args));
    assert_eq!(a, b);
    assert_eq!(a, fs::read_to_string(fixture("one_message.state.json")).unwrap());
}

#[test]
fn usage_errors() {
    assert_eq!(concur(&[]).status.code(), Some(4));
    assert_eq!(concur(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(concur(&["--help"]).status.code(), Some(0));
    assert_eq!(concur(&["--version"]).status.code(), Some(0));
}

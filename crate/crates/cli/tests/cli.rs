use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn tycat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tycat")).args(args).output().expect("run tycat")
}

fn json_ok(args: &[&str]) -> Value {
    let out = tycat(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

/// Runs a command and stores its stdout in a scratch file.
fn save(name: &str, args: &[&str]) -> PathBuf {
    let out = tycat(args);
    assert!(out.status.success(), "{args:?}");
    let dir = std::env::temp_dir().join(format!("tycat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, &out.stdout).unwrap();
    p
}

#[test]
fn disc_matches_table() {
    let v = json_ok(&["disc", "--lattice", "A2"]);
    assert_eq!(v["group"], serde_json::json!([3]));
    assert_eq!(v["qform"], serde_json::json!(["0", "1/3", "1/3"]));
    let v = json_ok(&["disc", "--lattice", "[[2,-1],[-1,2]]"]);
    assert_eq!(v["qform"], serde_json::json!(["0", "1/3", "1/3"]));
    assert_eq!(json_ok(&["disc", "--lattice", "E8"])["group"], serde_json::json!([]));
}

#[test]
fn glue_e8() {
    let v = json_ok(&["glue", "--lattice", "A1+E7", "--isotropic", "[1,1]"]);
    assert_eq!(v["roots"], 240);
    assert_eq!(v["det"], "1");
}

#[test]
fn classify_counts() {
    let v = json_ok(&["classify", "--group", "15"]);
    assert_eq!(v["metric_classes"], 4);
    assert_eq!(v["mp_classes"], 8);
}

#[test]
fn indicator_pipeline() {
    for (sign, nu) in [("+", 1), ("-", -1)] {
        let md = save(&format!("mp{nu}.json"), &["md", "mp", "--group", "3", "--bichar", "default", "--sign", sign]);
        let v = json_ok(&["fs", "--md", md.to_str().unwrap(), "--label", "rho0"]);
        assert_eq!(v["nu"], nu);
    }
    let md = save("pt.json", &["md", "pointed", "--group", "3", "--qform", "0,1/3,1/3"]);
    assert_eq!(json_ok(&["fs", "--md", md.to_str().unwrap(), "--label", "g(1)"])["nu"], 0);
}

#[test]
fn equivalence_and_condensation() {
    let plus = save("eq_plus.json", &["md", "mp", "--group", "3", "--sign", "+"]);
    let minus = save("eq_minus.json", &["md", "mp", "--group", "3", "--sign=-"]);
    let (p, m) = (plus.to_str().unwrap(), minus.to_str().unwrap());
    let v = json_ok(&["equiv", "--a", p, "--b", p]);
    assert_eq!(v["witness"]["perm"], serde_json::json!([0, 1, 2, 3, 4]));
    assert_eq!(json_ok(&["equiv", "--a", p, "--b", m])["witness"], Value::Null);

    // twists of the child: θ(h) = conj(b(h,h)), the all-plus form on ℤ₃
    let disc = save("a2.json", &["disc", "--lattice", "A2"]);
    let child = save("child.json", &["md", "pointed", "--group", "3", "--qform", disc.to_str().unwrap()]);
    let v = json_ok(&["condense", "--parent", p, "--child", child.to_str().unwrap(), "--bosons", "1;alpha"]);
    assert_eq!(v["certificate"]["matrix"][4], serde_json::json!([0, 1, 1]));
}

#[test]
fn fusion_reports() {
    let v = json_ok(&["fusion", "--rules", "genmp", "--group", "15"]);
    assert_eq!(v["report"]["ok"], true);
    assert_eq!(v["ring"]["labels"].as_array().unwrap().len(), 11);
    let md = save("center.json", &["md", "ty-center", "--group", "3"]);
    let v = json_ok(&["fusion", "--from-md", md.to_str().unwrap()]);
    assert_eq!(v["report"]["ok"], true);
    assert_eq!(v["report"]["global_dim_exact"], Value::Null);
}

#[test]
fn graphs_and_hypergroups() {
    let v = json_ok(&["graph", "lr-principal", "--group", "3"]);
    assert_eq!(v["even"].as_array().unwrap().len(), 10);
    assert_eq!(v["adjacency"].as_array().unwrap().len(), 3);
    let dot = tycat(&["graph", "lr-dual", "--group", "3", "--dot"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("graph \"lr_dual\" {\n"));
    assert_eq!(text.matches(" -- ").count(), 12);
    let v = json_ok(&["hypergroup", "--group", "3", "--table"]);
    assert_eq!(v["table"]["orthogonal"], true);
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn output_is_deterministic() {
    for args in [&["md", "ty-center", "--group", "3"][..], &["classify", "--group", "9"], &["graph", "lr-dual", "--group", "5", "--dot"]] {
        assert_eq!(tycat(args).stdout, tycat(args).stdout, "{args:?}");
    }
}

#[test]
fn md_json_round_trips() {
    let md = save("rt.json", &["md", "mp", "--group", "5"]);
    let text = std::fs::read_to_string(&md).unwrap();
    // the saved document is accepted inline and equals itself
    let v = json_ok(&["equiv", "--a", &text, "--b", md.to_str().unwrap()]);
    assert_eq!(v["equivalent"], true);
}

#[test]
fn errors_and_exit_codes() {
    let out = tycat(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tycat(&["md", "mp", "--group", "3", "--sign", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tycat(&["md", "mp", "--group", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "unsupported");
    let out = tycat(&["md", "pointed", "--group", "3", "--qform", "0,1/3,2/3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = tycat(&["fs", "--md", "/nonexistent/md.json", "--label", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn max_rank_override() {
    let md = save("cap.json", &["md", "mp", "--group", "3"]);
    let p = md.to_str().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_tycat")).args(["equiv", "--a", p, "--b", p]).env("TYCAT_MAX_RANK", "4").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "capacity");
}

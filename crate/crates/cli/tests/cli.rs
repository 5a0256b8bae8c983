use std::process::{Command, Output};

use serde_json::Value;

fn kmx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmx")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = kmx(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn catalog_has_eighteen_entries() {
    let v = json(&["catalog", "--json"]);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 18);
    assert!(entries.iter().any(|e| e["alias"] == "E10"));
    for e in entries {
        for key in ["name", "rank", "edges"] {
            assert!(e.get(key).is_some());
        }
    }
}

#[test]
fn classify_inline_edges() {
    let v = json(&["classify", "--edges", "0-1,1-2,2-0,0-3", "--rank", "4", "--json"]);
    assert_eq!(v["hyperbolic"], true);
    assert_eq!(v["catalog_match"], "rank4-3");
    assert_eq!(v["signature"]["negative"], 1);
    let v = json(&["classify", "--edges", "0-1,1-2", "--rank", "3", "--json"]);
    assert_eq!(v["type"], "finite");
    let v = json(&["classify", "--diagram", "E10", "--json"]);
    assert_eq!(v["type"], "indefinite");
}

#[test]
fn enumerate_rank_four() {
    let v = json(&["enumerate", "--rank", "4", "--json"]);
    assert_eq!(v["count"], 3);
}

#[test]
fn facet_check_all_within_bound() {
    let v = json(&["facet-check", "--all", "--json"]);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 18);
    let mut equalities = 0;
    for r in reports {
        for e in r["entries"].as_array().unwrap() {
            let c = e["cosh2"].as_str().unwrap();
            let (p, q) = c.split_once('/').map(|(p, q)| (p.parse::<i64>().unwrap(), q.parse::<i64>().unwrap())).unwrap_or_else(|| (c.parse().unwrap(), 1));
            assert!(3 * p <= 4 * q, "{c}");
            equalities += (e["equality"] == true) as usize;
        }
    }
    assert!(equalities > 0);
}

#[test]
fn reduce_emits_checked_certificate() {
    let v = json(&[
        "reduce",
        "--diagram",
        "rank4-2",
        "--alpha",
        "1,0,0,0",
        "--beta",
        "3,1,1,1",
        "--json",
    ]);
    assert_eq!(v["k"], 3);
    assert!(v["node"]["kind"].is_string());
}

#[test]
fn prenilpotent_agrees_with_search() {
    let v = json(&["prenilpotent", "--diagram", "E10", "--alpha", "1,0,0,0,0,0,0,0,0,0", "--beta", "0,1,0,0,0,0,0,0,0,0", "--json"]);
    assert_eq!(v["inner_product"], -1);
    assert_eq!(v["criterion"]["verdict"], "prenilpotent");
    assert_eq!(v["weyl_search"]["verdict"], "prenilpotent");
    let out = kmx(&["prenilpotent", "--diagram", "E10", "--alpha", "1,0,0,0,0,0,0,0,0,0", "--beta", "-1,0,0,0,0,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn emit_counts() {
    let out = kmx(&["emit", "--diagram", "E10", "--ring", "Z", "--kac-moody", "--node", "0", "--format", "gap"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("# relators: 183"));
    let v = json(&["emit", "--diagram", "E10", "--ring", "Z", "--json"]);
    assert_eq!(v["relations"].as_array().unwrap().len(), 182);
    assert_eq!(v["convention"], "aba^-1b^-1");
}

#[test]
fn verify_matrix_and_negative_control() {
    let v = json(&["verify-matrix", "--diagram", "E10", "--ring", "Z/5", "--json"]);
    assert_eq!(v["passed"], v["instances"]);
    let out = kmx(&["verify-matrix", "--diagram", "E10", "--ring", "Z/5", "--flipped", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["passed"].as_u64() < v["instances"].as_u64());
}

#[test]
fn pq_formula() {
    let v = json(&["pq-formula", "--k", "3", "--m", "-2", "--json"]);
    assert_eq!(v["cosh2"], v["direct"]);
    let out = kmx(&["pq-formula", "--k", "2", "--m", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(kmx(&["catalog", "--no-such-flag"]).status.code(), Some(64));
    assert_eq!(kmx(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(kmx(&["--help"]).status.code(), Some(0));
    let out = kmx(&["classify", "--diagram", "nope", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "Parse");
    let out = kmx(&["emit", "--edges", "0-1", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kmx(&["reduce", "--diagram", "E10", "--alpha", "1,0,0,0,0,0,0,0,0,0", "--beta", "2,0,0,0,0,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["emit", "--diagram", "rank4-1", "--ring", "F3", "--json"][..],
        &["facet-check", "--all", "--json"][..],
        &["roots", "--diagram", "E10", "--height", "5", "--json"][..],
    ] {
        assert_eq!(kmx(args).stdout, kmx(args).stdout);
    }
}

#[test]
fn out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let out = kmx(&["emit", "--diagram", "E10", "--ring", "Z", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["relations"].as_array().unwrap().len(), 182);
}

#[test]
fn library_entry_point() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = kmx_cli::run(["kmx", "enumerate", "--rank", "5"], &mut out, &mut err);
    assert_eq!(code, kmx_cli::EXIT_OK);
    assert!(String::from_utf8(out).unwrap().contains("2 diagram(s)"));
}

use std::process::Command;

use kirwan_verify::registry::registry;
use kirwan_verify::{counts, run_checks, RunOptions, Status};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kirwan-verify"))
}

#[test]
fn full_suite_passes() {
    let r = run_checks(registry(), &RunOptions::default()).unwrap();
    let failing: Vec<_> = r.iter().filter(|r| r.status != Status::Pass).collect();
    assert!(failing.is_empty(), "{failing:#?}");
    assert_eq!(counts(&r).pass, registry().len());
}

#[test]
fn ledger_filter_selects_ledger_checks_only() {
    let opts = RunOptions { filter: Some("ledger.*".into()), ..Default::default() };
    let r = run_checks(registry(), &opts).unwrap();
    assert!(!r.is_empty());
    assert!(r.iter().all(|r| r.check_id.starts_with("ledger.") && r.module == "divisor-ledger"));
    let expected = registry().iter().filter(|c| c.id.starts_with("ledger.")).count();
    assert_eq!(r.len(), expected);
}

#[test]
fn transversality_note() {
    let opts = RunOptions { filter: Some("luna.transversality".into()), ..Default::default() };
    let r = run_checks(registry(), &opts).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].status, Status::Pass);
    assert_eq!(r[0].note.as_deref(), Some("tangential order 2"));
}

#[test]
fn parallel_run_matches_serial() {
    let serial = run_checks(registry(), &RunOptions::default()).unwrap();
    let parallel = run_checks(registry(), &RunOptions { jobs: 8, ..Default::default() }).unwrap();
    let strip = |v: Vec<kirwan_verify::CheckResult>| -> Vec<_> {
        v.into_iter().map(|mut r| {
            r.runtime_ms = 0;
            r
        }).collect()
    };
    assert_eq!(strip(serial), strip(parallel));
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (p, jobs) in [(&a, "1"), (&b, "4")] {
        let st = bin()
            .args(["--jobs", jobs, "report", "--format", "json", "--out"])
            .arg(p)
            .status()
            .unwrap();
        assert_eq!(st.code(), Some(0));
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());
    assert!(ta.ends_with('\n'));
    assert!(!ta.contains("runtime_ms"));
    let v: Value = serde_json::from_str(&ta).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["suite"]["counts"]["fail"], 0);
    assert_eq!(v["suite"]["counts"]["pass"], registry().len());
    let first = v["results"][0].as_object().unwrap();
    let keys: Vec<&String> = first.keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn timings_are_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.json");
    let st = bin()
        .args(["report", "--format", "json", "--timings", "--filter", "wps.*", "--out"])
        .arg(&p)
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));
    assert!(std::fs::read_to_string(&p).unwrap().contains("runtime_ms"));
}

#[test]
fn markdown_has_a_table_per_module() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.md");
    let st = bin().args(["report", "--format", "md", "--out"]).arg(&p).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let md = std::fs::read_to_string(&p).unwrap();
    let modules: std::collections::BTreeSet<&str> = registry().iter().map(|c| c.module).collect();
    for m in &modules {
        assert!(md.contains(&format!("## {m}\n")), "{m}");
    }
    assert_eq!(md.matches("| check | status |").count(), modules.len());
    for c in registry() {
        assert!(md.contains(&c.quote.replace('|', "\\|")), "{}", c.id);
    }
}

#[test]
fn exit_codes() {
    let out = bin().arg("luna.transversality").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tangential order 2"));

    let out = bin().args(["--conductor", "20", "all"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().arg("nothing.*").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));

    let out = bin().args(["report", "--format", "json", "--out", "/nonexistent-dir/x.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().args(["report", "--format", "json", "--filter", "nothing", "--out", "/tmp/never"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().arg("--bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn larger_conductor_agrees() {
    let out = bin().args(["--conductor", "48", "--jobs", "4", "all"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

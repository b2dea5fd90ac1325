//! End-to-end runs of the `spl` binary.

use std::path::Path;
use std::process::{Command, Output};

fn spl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_writes_set_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("set.txt");
    let o = spl(&[
        "gen",
        "--family",
        "odd-times-powers",
        "--m",
        "2",
        "--n",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap().trim(), "{6, 10, 12, 20}");

    let o = spl(&["gen", "--family", "gp", "--len", "5"]);
    assert_eq!(stdout(&o).trim(), "{1, 2, 4, 8, 16}");
}

#[test]
fn energy_report_is_exact_json() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.txt");
    let polys = dir.path().join("polys.txt");
    std::fs::write(&set, "{1, 2, 3}\n").unwrap();
    std::fs::write(&polys, "[0, 1]\n").unwrap();
    let o = spl(&[
        "energy",
        "--kind",
        "e",
        "--set",
        set.to_str().unwrap(),
        "--polys",
        polys.to_str().unwrap(),
        "--s",
        "2",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "19/1");
    assert_eq!(v["s"], 2);
}

#[test]
fn qc_strategy_roundtrips_through_json() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.txt");
    std::fs::write(&set, "{6, 10, 15}\n").unwrap();
    let o = spl(&["qc", "--set", set.to_str().unwrap(), "--exact"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["q"], 2);
    let s = spl::io::strategy_from_json(&v["strategy"]).unwrap();
    assert_eq!(s.depth(), 2);
}

#[test]
fn chang_and_decompose_succeed_on_progression() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.txt");
    let poly = dir.path().join("poly.txt");
    std::fs::write(&set, "{2, 4, 8}\n").unwrap();
    std::fs::write(&poly, "[0, 1, 1]\n").unwrap();
    let o = spl(&[
        "chang",
        "--set",
        set.to_str().unwrap(),
        "--poly",
        poly.to_str().unwrap(),
        "--p",
        "2",
        "--s",
        "2",
        "--kind",
        "add",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], true);

    std::fs::write(&set, "{1, 2, 4, 8, 16}\n").unwrap();
    let o = spl(&[
        "decompose",
        "--set",
        set.to_str().unwrap(),
        "--s",
        "2",
        "--k",
        "2",
        "--tau",
        "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["c"], "{}");
    assert_eq!(v["certificates"]["union_bound"]["holds"], true);
}

#[test]
fn sidon_finds_known_maximum() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.txt");
    std::fs::write(&set, "{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}\n").unwrap();
    let o = spl(&[
        "sidon",
        "--set",
        set.to_str().unwrap(),
        "--s",
        "2",
        "--kind",
        "add",
        "--exact",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 4);
    assert_eq!(v["verified"], true);
}

#[test]
fn battery_exit_codes_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("battery.cfg");
    std::fs::write(&cfg, "checks=known-values\n").unwrap();
    let out = dir.path().join("report.csv");
    let o = spl(&[
        "battery",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "42",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("check,instance,lhs,rhs,holds_or_ratio,elapsed_ms\n"));
    assert_eq!(csv.lines().count(), 5);

    // usage errors exit 2
    std::fs::write(&cfg, "bogus=1\n").unwrap();
    let o = spl(&["battery", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = spl(&["energy", "--kind", "e"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mve_reports_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.txt");
    std::fs::write(&set, "{1, 2, 4, 8}\n").unwrap();
    let o = spl(&["mve", "--set", set.to_str().unwrap(), "--s", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["energy"], "28/1");
    assert_eq!(v["k"], "7/4");
    assert!(v["ratio"].as_f64().unwrap() > 0.0);
}

#[test]
fn acceptance_config_parses_and_runs_a_slice() {
    // the checked-in acceptance.cfg must stay loadable
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../acceptance.cfg");
    let cfg = spl::battery::BatteryConfig::from_kv_file(&root).unwrap();
    assert_eq!(cfg.checks.len(), 13);
    assert_eq!(cfg.count("oracle-equivalence"), 500);
}

use std::io::Write;
use std::process::{Command, Output};

use hbk_core::catalog::catalog;
use hbk_core::descriptors::{parse_group, standard_families};

fn hbk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbk")).args(args).env_remove("HBK_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn validate_reports_and_exit_codes() {
    let ok = hbk(&["validate", "catalog:trefoil"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains("genus 1"));

    let sink = temp_file("arcs 4\nV + 1 2 3\nV - 1 2 4\nX + 1 4 3\n");
    let bad = hbk(&["validate", sink.path().to_str().unwrap()]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("sink"), "{}", stdout(&bad));

    let missing = hbk(&["validate", "/definitely/not/here.hbk"]);
    assert_eq!(code(&missing), 2);

    let garbage = temp_file("arcs two\n");
    assert_eq!(code(&hbk(&["validate", garbage.path().to_str().unwrap()])), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&hbk(&["frobnicate"])), 2);
    assert_eq!(code(&hbk(&["flows", "catalog:trefoil", "-g", "q8"])), 2);
    assert_eq!(code(&hbk(&["flows", "catalog:nosuch", "-g", "z2"])), 2);
    assert_eq!(code(&hbk(&["colorings", "catalog:trefoil", "-g", "z2", "-f", "nosuch(1)"])), 2);
}

#[test]
fn flow_counts() {
    let count = |d: &str, g: &str| {
        let o = hbk(&["flows", d, "-g", g]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        stdout(&o).lines().next().unwrap().split_whitespace().next().unwrap().parse::<usize>().unwrap()
    };
    assert_eq!(count("catalog:trefoil", "z2"), 2);
    assert_eq!(count("catalog:O_2", "z2"), 4);
    assert_eq!(count("catalog:trefoil", "trivial"), 1);
    assert_eq!(count("catalog:trefoil", "s3"), 12);

    let o = hbk(&["flows", "catalog:trefoil", "-g", "z2", "-f", "dihedral(3)"]);
    let out = stdout(&o);
    assert!(out.contains("flow 0: 1=0,2=0,3=0 image={0} status=trivial-relative"), "{out}");
    assert!(out.contains("flow 1: 1=1,2=1,3=1 image={0,1} status=nontrivial(dihedral(3),"), "{out}");

    let o = hbk(&["flows", "catalog:trefoil", "-g", "z2", "--json"]);
    let records: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[1]["image"], serde_json::json!([0, 1]));
}

#[test]
fn coloring_multisets() {
    let o = hbk(&["colorings", "catalog:trefoil", "-g", "z2", "-f", "dihedral(3)", "--method", "both"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("multiset: {3,9}"));
    assert!(stdout(&o).contains("agree"));

    let o = hbk(&["colorings", "catalog:O_1", "-g", "z2", "-f", "dihedral(3)"]);
    assert!(stdout(&o).contains("multiset: {3,3}"));

    let q = temp_file("quandle 3\n0: 0 2 1\n1: 2 1 0\n2: 1 0 2\n");
    let fam = format!("zk({})", q.path().display());
    let o = hbk(&["colorings", "catalog:trefoil", "-g", "z2", "-f", &fam, "--method", "brute"]);
    assert!(stdout(&o).contains("multiset: {3,9}"), "{}", stderr(&o));
}

#[test]
fn budget_is_enforced() {
    let o = Command::new(env!("CARGO_BIN_EXE_hbk"))
        .args(["colorings", "catalog:8_18", "-g", "z2", "-f", "dihedral(3)", "--method", "brute"])
        .env("HBK_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("budget"), "{}", stderr(&o));
    let o = hbk(&["--budget", "10", "flows", "catalog:8_18", "-g", "s3"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn both_methods_agree_on_the_whole_catalog() {
    for group in ["z2", "z3", "s3"] {
        let g = parse_group(group).unwrap();
        for fam in standard_families(&g).unwrap() {
            if fam.as_alexander().is_none() {
                continue;
            }
            for e in catalog() {
                let target = format!("catalog:{}", e.name);
                let o = hbk(&["colorings", &target, "-g", group, "-f", fam.name(), "--method", "both"]);
                assert_eq!(code(&o), 0, "{} {}: {}", e.name, fam.name(), stderr(&o));
            }
        }
    }
}

#[test]
fn bounds_table_and_records() {
    let o = hbk(&["bounds", "catalog:trefoil", "-g", "z2", "-f", "dihedral(3)"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let value = |kind: &str| {
        out.lines()
            .find(|l| l.split_whitespace().next() == Some(kind))
            .and_then(|l| l.split_whitespace().nth(1))
            .unwrap()
            .to_string()
    };
    assert_eq!((value("tunnel*"), value("cutting")), ("1".into(), "1".into()));
    let records: Vec<serde_json::Value> =
        out.lines().filter(|l| l.starts_with('{')).map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 4);
    assert!(records.iter().any(|r| r["bound"] == "tunnel" && r["contribution"] == 1 && r["value"] == 2));

    let o = hbk(&["bounds", "catalog:O_3", "-g", "z2", "--tunnel", "--cut"]);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("tunnel*  0")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("cutting  0")), "{out}");

    let o = hbk(&["bounds", "catalog:trefoil", "--genus", "2", "-g", "z2"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("genus"));
}

#[test]
fn constituent_exit_codes() {
    let o = hbk(&["constituent", "catalog:8_18", "catalog:O_2", "-g", "z2", "-f", "dihedral(3)"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = hbk(&["constituent", "catalog:trefoil", "catalog:O_2", "-g", "z2", "-f", "dihedral(3)"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not obstructed"));
    let o = hbk(&["constituent", "catalog:O_1", "catalog:trefoil", "-g", "z2", "--method", "count"]);
    assert_eq!(code(&o), 0);
    let o = hbk(&["constituent", "catalog:trefoil", "catalog:trefoil", "-g", "z2", "-f", "dihedral(3)"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("g' < g"));
}

#[test]
fn fuzz_is_deterministic_and_preserves_invariants() {
    let out1 = tempfile::NamedTempFile::new().unwrap();
    let out2 = tempfile::NamedTempFile::new().unwrap();
    for out in [&out1, &out2] {
        let o = hbk(&[
            "fuzz",
            "catalog:trefoil",
            "-g",
            "z2",
            "--steps",
            "50",
            "--seed",
            "7",
            "--output",
            out.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains("invariant preserved"));
    }
    let a = std::fs::read_to_string(out1.path()).unwrap();
    assert_eq!(a, std::fs::read_to_string(out2.path()).unwrap());
    assert_eq!(code(&hbk(&["validate", out1.path().to_str().unwrap()])), 0);

    let o = hbk(&["fuzz", "catalog:theta", "-g", "z2", "--steps", "0"]);
    assert!(stdout(&o).contains("applied 0 moves"));
    assert_eq!(code(&o), 0);
}

#[test]
fn catalog_listing_and_payloads() {
    let o = hbk(&["catalog"]);
    let out = stdout(&o);
    for e in catalog() {
        assert!(out.lines().any(|l| l.starts_with(&e.name)), "{}", e.name);
    }
    assert!(out.contains("(reconstruction)"));
    let payload = stdout(&hbk(&["catalog", "8_18"]));
    let f = temp_file(&payload);
    let o = hbk(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("8 crossings"));
}

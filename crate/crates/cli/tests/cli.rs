//! End-to-end runs of the `tiltrep` binary against golden outputs. Set
//! `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden`.

use assert_cmd::Command;
use serde_json::Value;
use std::path::{Path, PathBuf};
use tempfile::TempDir;

const PIPELINE: &[(&str, &[&str])] = &[
    ("hom", &["hom", "M.json", "S0.json"]),
    ("ext", &["ext", "M.json", "S0.json"]),
    ("decompose", &["decompose", "M.json"]),
    ("tau_inv_s0", &["tau", "S0.json", "--inverse"]),
    ("gen_closure", &["gen-closure", "M.json"]),
    ("cogen_closure", &["gen-closure", "M.json", "--cogen"]),
    ("build_b", &["build-B", "M.json"]),
    (
        "build_b_generator",
        &["build-B", "M.json", "--side", "generator"],
    ),
    ("intext", &["intext", "M.json"]),
    ("intext_s0", &["intext", "M.json", "--of", "S0.json"]),
    ("verify_tilting", &["verify-tilting", "M.json"]),
    (
        "verify_cotilting",
        &["verify-tilting", "M.json", "--side", "generator"],
    ),
    ("check_theorems", &["check-theorems", "M.json"]),
    (
        "check_theorems_generator",
        &["check-theorems", "M.json", "--side", "generator"],
    ),
    ("rankvar", &["rankvar", "M.json", "M.json"]),
    ("grassmannian", &["grassmannian", "M.json", "--d", "1,1,1"]),
    (
        "grassmannian_tsv",
        &["grassmannian", "M.json", "--d", "1,1,1", "--format", "tsv"],
    ),
    (
        "grassmannian_sub",
        &["grassmannian", "M.json", "--d", "1,1,1", "--by-submodule"],
    ),
    ("desing_gr", &["desing-gr", "M.json", "--d", "1,1,1"]),
    ("desing_orbit", &["desing-orbit", "M.json"]),
];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn tiltrep(ws: &Path) -> Command {
    let mut cmd = Command::cargo_bin("tiltrep").unwrap();
    cmd.env("TILTREP_WORKSPACE", ws);
    cmd
}

fn workspace() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    tiltrep(dir.path())
        .args(["example", "n-subspace"])
        .assert()
        .success();
    dir
}

fn stdout(ws: &Path, args: &[&str]) -> String {
    let out = tiltrep(ws).args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn compare(name: &str, got: &str) {
    let path = golden_dir().join(format!("{name}.out"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "{name} differs from its golden output");
}

#[test]
fn pipeline_matches_golden() {
    let ws = workspace();
    for name in ["algebra.json", "M.json", "Q0.json"] {
        compare(
            &format!("example_{}", name.trim_end_matches(".json")),
            &std::fs::read_to_string(ws.path().join(name)).unwrap(),
        );
    }
    for (name, args) in PIPELINE {
        compare(name, &stdout(ws.path(), args));
    }
}

#[test]
fn headline_numbers() {
    let ws = workspace();
    let json = |args: &[&str]| serde_json::from_str::<Value>(&stdout(ws.path(), args)).unwrap();
    assert_eq!(json(&["hom", "M.json", "S0.json"])["dim"], 1);
    let r = json(&["desing-gr", "M.json", "--d", "1,1,1"]);
    let mut up: Vec<u64> = r["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["points"].as_u64().unwrap())
        .collect();
    up.sort_unstable();
    assert_eq!(up, [3, 9]);
    assert_eq!(r["downstairs"]["total"], 11);
}

#[test]
fn worker_count_does_not_change_output() {
    let ws = workspace();
    for args in [
        &["desing-gr", "M.json", "--d", "1,1,1"][..],
        &["desing-orbit", "M.json"],
        &["grassmannian", "M.json", "--d", "1,1,1"],
    ] {
        let one = stdout(ws.path(), &[&["--workers", "1"], args].concat());
        let four = stdout(ws.path(), &[&["--workers", "4"], args].concat());
        assert_eq!(one, four, "{args:?}");
    }
}

#[test]
fn errors_carry_exit_codes() {
    let ws = workspace();
    let code = |args: &[&str]| {
        let out = tiltrep(ws.path()).args(args).output().unwrap();
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(
            doc["error"]["exit_code"].as_i64(),
            out.status.code().map(i64::from)
        );
        out.status.code().unwrap()
    };
    assert_eq!(code(&["hom", "missing.json", "M.json"]), 2);
    assert_eq!(code(&["ext", "M.json", "S0.json", "--degree", "0"]), 2);
    assert_eq!(code(&["grassmannian", "M.json", "--d", "1,1"]), 2);
    assert_eq!(code(&["desing-orbit", "M.json", "--budget", "10"]), 3);
}

#[test]
fn out_flag_records_artifact_in_manifest() {
    let ws = workspace();
    let printed = stdout(ws.path(), &["hom", "M.json", "S0.json"]);
    assert!(stdout(
        ws.path(),
        &["--out", "hom.json", "hom", "M.json", "S0.json"]
    )
    .is_empty());
    assert_eq!(
        std::fs::read_to_string(ws.path().join("hom.json")).unwrap(),
        printed
    );
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(ws.path().join("manifest.json")).unwrap())
            .unwrap();
    let entry = &manifest["artifacts"]["hom.json"];
    assert_eq!(entry["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(entry["inputs"].as_object().unwrap().len(), 2);
}

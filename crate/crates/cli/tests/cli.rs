use std::fs;
use std::process::{Command, Output};

use zzc_core::fincat::DiagramDoc;
use zzc_core::fixtures;
use zzc_core::sset::{corpus, SSetDoc};

fn zzc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zzc"))
        .args(args)
        .env_remove("ZZC_BUDGET")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn colim_reports_the_roof() {
    let o = zzc(&["colim", "--corpus", "roof", "--max-zz-len", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["objects"].as_array().unwrap().len(), 3);
}

#[test]
fn formats_render() {
    for (format, marker) in [("text", "objects:"), ("dot", "digraph")] {
        let o = zzc(&[
            "colim",
            "--corpus",
            "roof",
            "--max-zz-len",
            "1",
            "--format",
            format,
        ]);
        assert_eq!(code(&o), 0);
        assert!(
            String::from_utf8_lossy(&o.stdout).contains(marker),
            "{format}"
        );
    }
    let o = zzc(&["flagcat", "--max-len", "2", "--p", "1", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("digraph"));
}

#[test]
fn flag_counts_match() {
    let o = zzc(&["flagcat", "--max-len", "3", "--p", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn rigidify_compares_with_the_colimit() {
    let o = zzc(&["rigidify", "--corpus", "delta:2", "--p", "1", "--oracle"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn documents_are_read_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let diagram = dir.path().join("roof.json");
    let doc = DiagramDoc::from_diagram(&fixtures::roof());
    fs::write(&diagram, serde_json::to_string(&doc).unwrap()).unwrap();
    let from_file = zzc(&[
        "colim",
        "--input",
        diagram.to_str().unwrap(),
        "--max-zz-len",
        "1",
    ]);
    assert_eq!(code(&from_file), 0);
    let from_corpus = zzc(&["colim", "--corpus", "roof", "--max-zz-len", "1"]);
    assert_eq!(json(&from_file)["objects"], json(&from_corpus)["objects"]);

    let sset = dir.path().join("circle.json");
    let doc = SSetDoc::from_sset(&corpus("circle").unwrap());
    fs::write(&sset, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = zzc(&["rigidify", "--input", sset.to_str().unwrap(), "--p", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn failures_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"schema":"diagram/v1","index":{"objects":["i"]}}"#).unwrap();
    assert_eq!(code(&zzc(&["colim", "--input", bad.to_str().unwrap()])), 4);
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&zzc(&["colim", "--input", bad.to_str().unwrap()])), 4);
    let missing = dir.path().join("missing.json");
    assert_eq!(
        code(&zzc(&["colim", "--input", missing.to_str().unwrap()])),
        3
    );
    assert_eq!(code(&zzc(&["colim", "--corpus", "nonesuch"])), 2);
    assert_eq!(code(&zzc(&["colim", "--frobnicate"])), 2);
    assert_eq!(
        code(&zzc(&["colim", "--corpus", "roof", "--budget", "10"])),
        5
    );
}

#[test]
fn output_is_independent_of_jobs() {
    for args in [
        &["colim", "--corpus", "pushout", "--max-zz-len", "2"][..],
        &["rigidify", "--corpus", "circle", "--p", "2"][..],
        &["check", "--max-len", "1"][..],
    ] {
        let one = zzc(&[args, &["--jobs", "1"]].concat());
        let eight = zzc(&[args, &["--jobs", "8"]].concat());
        assert_eq!(code(&one), 0, "{args:?}");
        assert_eq!(one.stdout, eight.stdout, "{args:?}");
    }
}

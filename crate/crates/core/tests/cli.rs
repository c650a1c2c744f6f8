use std::process::Command;

use subwords::cli::run_with;

fn capture(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run_with(std::iter::once("subwords").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn sb_and_ab() {
    assert_eq!(capture(&["sb", "--base", "3", "16"]), (0, "7\n".into()));
    assert_eq!(capture(&["ab", "--base", "3", "0", "1", "2", "3"]), (0, "0 1 3 5\n".into()));
    let (code, out) = capture(&["sb", "--base", "3", "0..32"]);
    assert_eq!(code, 0);
    let expected = subwords::verify::S3_PREFIX.map(|v| v.to_string()).join(" ");
    assert_eq!(out.trim_end(), expected);
    assert_eq!(capture(&["ab", "--base", "3", "150"]), (0, "1665\n".into()));
}

#[test]
fn decompose_formats() {
    assert_eq!(capture(&["decompose", "--base", "3", "150"]), (0, "4 32 73 0\n".into()));
    let (code, out) = capture(&["decompose", "--base", "3", "150", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["base"], 3);
    assert_eq!(v["d"].as_array().unwrap().len(), 4);
}

#[test]
fn coefficient_export() {
    let (code, out) = capture(&["coeffs", "--base", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["base", "a", "c", "mu", "v0"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["a"].as_array().unwrap().len(), 9);
    assert_eq!(v["mu"].as_array().unwrap().len(), 3);

    let (code, text) = capture(&["coeffs", "--base", "2"]);
    assert_eq!(code, 0);
    assert_eq!(text, "r a c0\n0 -1 2\n1 1 1\n2 4 -1\n3 5 -2\n");

    let (code, text) = capture(&["matrices", "--base", "3"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("mu(0)\n"));
    assert!(text.ends_with("v0\n1 1 2\n"));
}

#[test]
fn file_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("t.pgm");
    let code = capture(&["triangle", "--base", "2", "--rows", "16", "--out", pgm.to_str().unwrap()]).0;
    assert_eq!(code, 0);
    let bytes = std::fs::read(&pgm).unwrap();
    assert!(bytes.starts_with(b"P5\n16 16\n255\n"));
    assert_eq!(bytes.len(), b"P5\n16 16\n255\n".len() + 256);

    let csv = dir.path().join("h.csv");
    let args = ["hb-sample", "--base", "3", "--n", "6", "--res", "16", "--out", csv.to_str().unwrap()];
    assert_eq!(capture(&args).0, 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("x,value\n"));
    assert_eq!(text.lines().count(), 1 + 16);

    let (code, profile) = capture(&["profile", "--base", "3", "--rows", "5"]);
    assert_eq!((code, profile.as_str()), (0, "m,count\n0,1\n1,2\n2,2\n3,3\n4,3\n"));
}

#[test]
fn trie_output() {
    let (code, dot) = capture(&["trie", "--base", "3", "--word", "121", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph"));
    assert_eq!(capture(&["trie", "--base", "3", "--word", "121"]), (0, "1 2 3 1\n".into()));
}

#[test]
fn verify_command() {
    let (code, out) = capture(&["verify", "--base", "2", "--max", "2000", "--max-word", "6"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().last().unwrap().ends_with("0 failed"));
}

#[test]
fn usage_errors() {
    for args in [
        &["sb", "--base", "0", "1"][..],
        &["sb", "--base", "257", "1"],
        &["sb", "--base", "3", "-4"],
        &["decompose", "--base", "10", "9"],
        &["profile", "--base", "3", "--rows", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(capture(args).0, 2, "{args:?}");
    }
}

#[test]
fn binary_exit_codes_and_determinism() {
    let bin = env!("CARGO_BIN_EXE_subwords");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let first = run(&["ab", "--base", "5", "0..200"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, run(&["ab", "--base", "5", "0..200"]).stdout);
    let threaded = Command::new(bin)
        .args(["ab", "--base", "5", "0..200"])
        .env("SUBWORD_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(first.stdout, threaded.stdout);
    assert_eq!(run(&["sb", "--base", "1", "3"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_reports_published_mismatch() {
    let (code, out) = capture(&["verify", "--base", "3", "--max", "500", "--max-word", "4"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL decomposition-150"));
}

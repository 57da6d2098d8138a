use std::fs;
use std::path::{Path, PathBuf};

use fusionk::cli::{run, EXIT_CONFIG, EXIT_FAILED, EXIT_OK};
use fusionk::json;

fn golden(k: usize) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/k{k}.json"))
}

fn fusionk(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("fusionk").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn golden_files_are_byte_stable() {
    for k in 0..=1 {
        let text = fs::read_to_string(golden(k)).unwrap();
        let (code, out, _) = fusionk(&["build", "--k", &k.to_string()]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, text, "k = {k}");
        assert_eq!(json::to_string(&json::from_str(&text).unwrap()), text);
    }
}

#[test]
fn build_twice_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        let (code, out, err) = fusionk(&["build", "--k", "0..3", "--format", "csv", "--out", d.to_str().unwrap()]);
        assert_eq!((code, out.as_str()), (EXIT_OK, ""), "{err}");
    }
    for k in 0..=3 {
        let name = format!("fusion_k{k}.csv");
        let x = fs::read(a.join(&name)).unwrap();
        assert_eq!(x, fs::read(b.join(&name)).unwrap());
        assert!(x.starts_with(b"k,x,y,expansion\n"));
    }
}

#[test]
fn single_k_out_is_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    let (code, ..) = fusionk(&["build", "--k", "0", "--format", "pretty", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# k = 0\n"));
    assert!(text.contains("\ng · g = f + 2g + 2α′₂ + α′₀\n"), "{text}");
}

#[test]
fn verify_small_range() {
    let (code, out, _) = fusionk(&["verify", "--k", "0..2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.ends_with("all checks passed\n"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_single_check() {
    let (code, out, _) = fusionk(&["verify", "--k", "0", "--checks", "frobenius"]);
    assert_eq!(code, EXIT_OK);
    let header = out.lines().next().unwrap();
    assert_eq!(header.split_whitespace().collect::<Vec<_>>(), ["k", "frobenius"]);
}

#[test]
fn verify_golden_file() {
    let (code, out, _) = fusionk(&["verify", "--from", golden(1).to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = fusionk(&["crosscheck", "--from", golden(0).to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn corrupted_file_fails_with_witness() {
    let text = fs::read_to_string(golden(0)).unwrap();
    let bad = text.replacen("\"n\": 1}", "\"n\": 2}", 1);
    assert_ne!(bad, text);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, bad).unwrap();

    let (code, out, _) = fusionk(&["verify", "--from", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("k = 0, frobenius: "), "{out}");
    let (code, out, _) = fusionk(&["crosscheck", "--from", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("closed form"), "{out}");
}

#[test]
fn unreadable_input_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cut.json");
    let text = fs::read_to_string(golden(0)).unwrap();
    fs::write(&path, &text[..text.len() / 3]).unwrap();
    let (code, _, err) = fusionk(&["verify", "--from", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("line "), "{err}");

    let (code, ..) = fusionk(&["verify", "--from", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, EXIT_CONFIG);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(fusionk(&["build", "--k", "30"]).0, EXIT_CONFIG);
    assert_eq!(fusionk(&["build"]).0, EXIT_CONFIG);
    assert_eq!(fusionk(&["frobnicate"]).0, EXIT_CONFIG);
    assert_eq!(fusionk(&["build", "--k", "2..1"]).0, EXIT_CONFIG);
    assert_eq!(fusionk(&["build", "--k", "0", "--from", "x.json"]).0, EXIT_CONFIG);
    assert_eq!(fusionk(&["verify", "--k", "0", "--checks", "speed"]).0, EXIT_CONFIG);
    let (code, out, err) = fusionk(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("FUSIONK_MAX_K") && err.is_empty());
}

#[test]
fn tight_tolerance_is_a_verification_failure() {
    let (code, out, _) = fusionk(&["verify", "--k", "3", "--checks", "orthonormality", "--tolerance", "orthonormality=1e-30"]);
    assert_eq!(code, EXIT_FAILED, "{out}");
}

#[test]
fn graph_output() {
    let (code, out, _) = fusionk(&["graph", "--k", "0", "--emit", "dot"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("graph gamma_0 {\n"));
    assert_eq!(out.matches(" -- ").count(), 9 + 7);
    let (code, out, _) = fusionk(&["graph", "--k", "0"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# Γ_0: 10 vertices, 9 edges\n"), "{out}");
}

#[test]
fn identities_and_crosscheck_ranges() {
    let (code, out, _) = fusionk(&["identities", "--k", "0..20"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 21 * 6);
    let (code, out, _) = fusionk(&["crosscheck", "--k", "0..4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let ks: Vec<&str> = out.lines().filter_map(|l| l.split("  ").next()).filter(|s| s.starts_with("k = ")).collect();
    let mut sorted = ks.clone();
    sorted.sort_by_key(|s| s[4..].parse::<usize>().unwrap());
    assert_eq!(ks, sorted);
}

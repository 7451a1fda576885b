//! End-to-end tests of the `schub` binary: output shapes, exit codes, and
//! cache behavior.

use std::process::{Command, Output};

fn schub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schub"))
        .args(args)
        .env_remove("SCHUBERT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn poly_schubert_golden() {
    let out = schub(&["poly", "--schubert", "321"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x1^2*x2");

    let out = schub(&["poly", "--schubert", "1"]);
    assert_eq!(stdout(&out).trim(), "1");

    let out = schub(&["poly", "--grothendieck", "132"]);
    assert_eq!(stdout(&out).trim(), "-x1*x2 + x2 + x1");

    let out = schub(&["poly", "--grothendieck-beta", "132"]);
    assert_eq!(stdout(&out).trim(), "(b)*x1*x2 + x2 + x1");

    let out = schub(&["poly", "--schubert", "321", "--json"]);
    let j: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(j["basis"], "schubert");
    assert_eq!(j["poly"], "x1^2*x2");
}

#[test]
fn coeff_examples() {
    let out = schub(&["coeff", "14253", "14253", "162534"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");

    // Unit law via an arbitrary u.
    let out = schub(&["coeff", "4132", "1", "4132"]);
    assert_eq!(stdout(&out).trim(), "1");

    let out = schub(&["coeff", "--grothendieck-beta", "132", "132", "1432", "--json"]);
    let j: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(j["basis"], "beta-grothendieck");
    assert!(j["coeff"].is_string());
}

#[test]
fn expand_multiplicity_free_example() {
    let out = schub(&["expand", "1562374", "4516273"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert!(lines.iter().all(|l| l.ends_with(" 1")));
    assert!(lines.contains(&"48531726 1"));

    let out = schub(&["expand", "1562374", "4516273", "--json"]);
    let j: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(j["terms"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_explicit_and_sweep_modes() {
    let out = schub(&[
        "verify", "main", "--u", "14253", "--v", "14253", "--w", "152634",
    ]);
    assert!(out.status.success());
    let j: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(j["identity"], "main");
    assert_eq!(j["holds"], true);
    assert_eq!(j["lhs_total"], "6");
    assert_eq!(j["rhs_total"], "6");

    let out = schub(&["verify", "macdonald", "--all-n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 24);
    assert!(stderr(&out).contains("24 instances"));
    for line in stdout(&out).lines() {
        let j: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(j["holds"], true);
    }

    let out = schub(&["verify", "g-ones", "--all-n", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 120);
}

#[test]
fn verify_residue_example() {
    let out = schub(&[
        "verify", "residue", "--u", "14253", "--v", "14253", "--w", "152634", "--alpha", "3",
    ]);
    assert!(out.status.success());
    let j: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(j["modulus"], "6");
    assert_eq!(j["holds"], true);

    // Precondition violation is a usage error, not a failed identity.
    let out = schub(&[
        "verify", "residue", "--u", "21", "--v", "21", "--w", "21", "--alpha", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes_for_usage_errors() {
    let out = schub(&["verify", "nosuch", "--w", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = schub(&["poly", "--schubert", "99"]);
    assert_eq!(out.status.code(), Some(2));

    let out = schub(&["coeff", "10", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("\"0\"") || stderr(&out).contains("bad token"));

    let out = schub(&["sweep", "nosuch", "4"]);
    assert_eq!(out.status.code(), Some(2));

    let out = schub(&["sweep", "multfree", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // Missing required flag for the identity.
    let out = schub(&["verify", "main", "--u", "21"]);
    assert_eq!(out.status.code(), Some(2));

    // clap-level parse failure.
    let out = schub(&["nosuchcmd"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_output_shape() {
    let out = schub(&["sweep", "multfree", "2"]);
    assert!(out.status.success());
    let j: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(j["pairs_examined"], 1);
    assert_eq!(j["rank"], 2);
    assert_eq!(j["violations"].as_array().unwrap().len(), 0);
    // Wall time goes to stderr, never into the canonical JSON.
    assert!(j.get("wall_time").is_none());
    assert!(stderr(&out).contains("finished in"));
}

#[test]
fn cache_round_trip_and_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.txt");
    let path_str = path.to_str().unwrap();

    let cold = schub(&["sweep", "multfree", "4", "--cache", path_str]);
    assert!(cold.status.success());
    assert!(path.exists());

    let warm = schub(&["sweep", "multfree", "4", "--cache", path_str]);
    assert!(warm.status.success());
    assert_eq!(stdout(&cold), stdout(&warm));

    // A wrong-magic file is ignored with a warning and never clobbered.
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "WRONG 1 schubert\n").unwrap();
    let before = std::fs::read(&bad).unwrap();
    let out = schub(&["sweep", "multfree", "3", "--cache", bad.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"));
    assert_eq!(std::fs::read(&bad).unwrap(), before);

    // A corrupt record gets a line-numbered diagnostic.
    let corrupt = dir.path().join("corrupt.txt");
    std::fs::write(&corrupt, "SCHUBCACHE 1 schubert\ncode=zzz poly=x1\n").unwrap();
    let out = schub(&["sweep", "multfree", "3", "--cache", corrupt.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));

    // Basis mismatch: warned, ignored, not overwritten.
    let mismatch = dir.path().join("mismatch.txt");
    std::fs::write(&mismatch, "SCHUBCACHE 1 grothendieck\n").unwrap();
    let out = schub(&["sweep", "multfree", "3", "--cache", mismatch.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("ignoring it"), "stderr: {}", stderr(&out));
    assert_eq!(
        std::fs::read_to_string(&mismatch).unwrap(),
        "SCHUBCACHE 1 grothendieck\n"
    );
}

#[test]
fn cache_env_variable_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env-cache.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_schub"))
        .args(["poly", "--schubert", "321"])
        .env("SCHUBERT_CACHE", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(path.exists());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("SCHUBCACHE 1 schubert"));
    assert!(text.contains("poly=x1^2*x2"));
}

#[test]
fn jobs_flag_does_not_change_output() {
    let a = schub(&["verify", "hpsw", "--all-n", "4", "--jobs", "1"]);
    let b = schub(&["verify", "hpsw", "--all-n", "4", "--jobs", "8"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn cache_path_in_missing_directory_warns_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("no/such/dir/cache.txt");
    let out = schub(&["poly", "--schubert", "21", "--cache", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x1");
    assert!(stderr(&out).contains("warning"));
}

#[test]
fn verify_iterated_and_kronecker_explicit() {
    let out = schub(&[
        "verify", "iterated", "--u", "21", "--v", "21", "--w", "21", "--k", "1",
    ]);
    assert!(out.status.success());
    let j: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(j["lhs_total"], "2");

    let out = schub(&["verify", "kronecker", "--u", "21", "--v", "21", "--i", "1"]);
    assert!(out.status.success());

    // Identity inputs violate the kronecker precondition.
    let out = schub(&["verify", "kronecker", "--u", "1", "--v", "21", "--i", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_lists_all_verbs() {
    let out = schub(&["--help"]);
    let text = stdout(&out);
    for verb in ["poly", "coeff", "expand", "verify", "sweep"] {
        assert!(text.contains(verb), "missing verb {verb}");
    }
}

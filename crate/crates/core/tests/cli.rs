//! End-to-end tests of the compiled binary: exit codes, output formats, the
//! cache file on disk, and environment-variable handling.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use invariant_series::cli::{CheckJson, DimJson, OrbitJson, SeriesJson};

const BIN: &str = env!("CARGO_BIN_EXE_invariant-series");

/// Run the binary with a scrubbed environment so an ambient cache variable
/// cannot leak into tests.
fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("INVARIANT_SERIES_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn dim_plain_and_exit_zero() {
    let out = run(&["dim", "--n", "2", "--d", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\n");
    assert!(stderr(&out).is_empty());
}

#[test]
fn dim_zero_when_divisibility_fails() {
    let out = run(&["dim", "--n", "3", "--d", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn dim_latex() {
    let out = run(&["dim", "--n", "3", "--d", "3", "--k", "12", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "\\nu_{3,3}(12) = 2\n");
}

#[test]
fn json_outputs_round_trip() {
    let out = run(&["dim", "--n", "3", "--d", "3", "--k", "12", "--format", "json"]);
    let doc: DimJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!((doc.n, doc.d, doc.k), (3, 3, 12));
    assert_eq!(doc.nu, "2");

    let out = run(&["series", "--n", "2", "--d", "2", "--K", "6", "--format", "json"]);
    let doc: SeriesJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc.max_degree, 6);
    assert_eq!(doc.coefficients, vec!["1", "0", "1", "0", "1", "0", "1"]);

    let out = run(&["orbit", "--n", "3", "--format", "json"]);
    let doc: OrbitJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc.terms.len(), 5);
    let multiplicities: Vec<i64> = doc.terms.iter().map(|t| t.multiplicity).collect();
    assert_eq!(multiplicities, vec![1, 1, -2, -1, 1]);

    let out = run(&["check", "--n", "2", "--d", "3", "--K", "4", "--format", "json"]);
    let doc: CheckJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(doc.pass);
    assert_eq!(doc.rows.len(), 5);
    assert!(doc.rows.iter().all(|r| r.sylvester.is_some()));
}

#[test]
fn series_plain_matches_known_truncation() {
    let out = run(&["series", "--n", "3", "--d", "3", "--K", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "1 + t^4 + t^6 + t^8 + t^10 + 2 t^12\n"
    );
}

#[test]
fn usage_errors_exit_two() {
    // missing required argument (clap)
    let out = run(&["dim", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // invalid rank (domain validation)
    let out = run(&["dim", "--n", "1", "--d", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invalid rank"));
    // invalid degree
    let out = run(&["series", "--n", "2", "--d", "0", "--K", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // help is not an error
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn resource_cap_exits_three() {
    let out = run(&[
        "dim", "--n", "3", "--d", "4", "--k", "9", "--max-dp-cells", "4",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("resource limit"));

    let out = run(&["orbit", "--n", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_mismatch_exits_four() {
    let out = run(&[
        "check", "--n", "2", "--d", "2", "--K", "4", "--inject-fault", "2",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert!(text.contains("k=2"));
    assert!(text.ends_with("FAIL: first mismatch at k=2\n"));
}

fn cache_args<'a>(path: &'a str, rest: &[&'a str]) -> Vec<&'a str> {
    let mut args = rest.to_vec();
    args.extend_from_slice(&["--cache", path]);
    args
}

#[test]
fn series_cache_is_transparent_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let path_str = path.to_str().unwrap();
    let series = ["series", "--n", "2", "--d", "2", "--K", "6"];

    let uncached = run(&series);

    let cold = run(&cache_args(path_str, &series));
    assert_eq!(cold.status.code(), Some(0));
    assert!(path.exists());
    let bytes = fs::read(&path).unwrap();

    let warm = run(&cache_args(path_str, &series));
    assert_eq!(warm.status.code(), Some(0));
    // transparency: cache misses, cache hits and no cache all report the same
    assert_eq!(stdout(&cold), stdout(&uncached));
    assert_eq!(stdout(&warm), stdout(&cold));
    assert_eq!(fs::read(&path).unwrap(), bytes, "a cache hit must not rewrite");

    // no leftover lock or temp file
    assert!(!Path::new(&format!("{path_str}.lock")).exists());
    assert!(!Path::new(&format!("{path_str}.tmp")).exists());
}

#[test]
fn dim_is_served_from_a_cached_series() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    // a deliberately wrong coefficient proves the value came from the cache
    fs::write(
        &path,
        r#"{"schema_version":1,"entries":{"2,2":{"max_degree":2,"coefficients":["1","0","7"]}}}"#,
    )
    .unwrap();
    let out = run(&cache_args(
        path.to_str().unwrap(),
        &["dim", "--n", "2", "--d", "2", "--k", "2"],
    ));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "7\n");

    // degrees beyond the entry are computed, not fabricated
    let out = run(&cache_args(
        path.to_str().unwrap(),
        &["dim", "--n", "2", "--d", "2", "--k", "4"],
    ));
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn unknown_cache_version_is_ignored_and_preserved() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let original = r#"{"schema_version":99,"entries":{}}"#;
    fs::write(&path, original).unwrap();

    let out = run(&cache_args(
        path.to_str().unwrap(),
        &["series", "--n", "2", "--d", "2", "--K", "4"],
    ));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1 + t^2 + t^4\n");
    assert!(stderr(&out).contains("unknown schema version 99"));
    assert_eq!(fs::read_to_string(&path).unwrap(), original);
}

#[test]
fn held_lock_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let lock_path = dir.path().join("cache.json.lock");
    fs::write(&lock_path, "held\n").unwrap();

    let out = run(&cache_args(
        path.to_str().unwrap(),
        &["series", "--n", "2", "--d", "2", "--K", "4"],
    ));
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("locked"));
    // the stranger's lock file is not deleted
    assert!(lock_path.exists());
}

#[test]
fn cache_path_comes_from_environment_variable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env-cache.json");
    let out = Command::new(BIN)
        .args(["series", "--n", "2", "--d", "2", "--K", "4"])
        .env("INVARIANT_SERIES_CACHE", &path)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    assert!(path.exists());
}

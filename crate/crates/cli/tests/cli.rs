use std::path::Path;
use std::sync::Arc;

use assert_cmd::Command;
use predicates::prelude::*;

use filtforge::corpus::{circle_pair_fixture, random_space, random_stable_filtration};
use filtforge::io::save_filtration_1d;

fn filtforge() -> Command {
    Command::cargo_bin("filtforge").unwrap()
}

fn stable_filtration_file(path: &Path, seed: u64) {
    let space = Arc::new(random_space::<f64>(seed, 25).unwrap());
    let f = random_stable_filtration(space, seed, 6).unwrap();
    save_filtration_1d(&f, path).unwrap();
}

#[test]
fn validate_passes_on_a_stable_filtration() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    stable_filtration_file(&path, 7);
    filtforge()
        .args(["validate", "--json", "--strict-pairs"])
        .arg(&path)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"passed\":true"));
}

#[test]
fn validate_reports_missing_file_as_usage_error() {
    filtforge()
        .args(["validate", "/no/such/file.json"])
        .assert()
        .code(2);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    filtforge()
        .args(["validate", "x.json"])
        .env("FORGE_THREADS", "zero")
        .assert()
        .code(2)
        .stderr(predicate::str::contains("FORGE_THREADS"));
}

#[test]
fn thread_cap_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    stable_filtration_file(&path, 11);
    filtforge()
        .args(["validate"])
        .arg(&path)
        .env("FORGE_THREADS", "2")
        .assert()
        .success();
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    filtforge().args(["frobnicate"]).assert().code(2);
}

#[test]
fn synthesize_writes_a_function_and_respects_force() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.json");
    let output = dir.path().join("phi.json");
    stable_filtration_file(&input, 3);
    filtforge()
        .args(["synthesize"])
        .arg(&input)
        .args(["--output"])
        .arg(&output)
        .assert()
        .success();
    // a second run must refuse without --force
    filtforge()
        .args(["synthesize"])
        .arg(&input)
        .args(["--output"])
        .arg(&output)
        .assert()
        .code(2);
    filtforge()
        .args(["synthesize", "--force"])
        .arg(&input)
        .args(["--output"])
        .arg(&output)
        .assert()
        .success();
}

#[test]
fn compare_emits_the_four_distances() {
    let dir = tempfile::tempdir().unwrap();
    let pair = circle_pair_fixture::<f64>(256).unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    save_filtration_1d(&pair.first, &a).unwrap();
    save_filtration_1d(&pair.second, &b).unwrap();
    filtforge()
        .args(["compare", "--json", "--assert-separation"])
        .arg(&a)
        .arg(&b)
        .assert()
        .success()
        .stdout(
            predicate::str::contains("\"linf\"")
                .and(predicate::str::contains("\"pseudo\""))
                .and(predicate::str::contains("\"bottleneck_deg0\":0.0"))
                .and(predicate::str::contains("\"bottleneck_deg1\":0.0")),
        );
}

#[test]
fn assert_separation_fails_on_identical_filtrations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    stable_filtration_file(&path, 5);
    filtforge()
        .args(["compare", "--assert-separation"])
        .arg(&path)
        .arg(&path)
        .assert()
        .code(1);
}

#[test]
fn corpus_fixtures_round_trip_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    filtforge()
        .args(["corpus", "incomplete-grid", "--out"])
        .arg(dir.path())
        .assert()
        .success();
    // the grid fixture is deliberately incomplete, so validate fails it
    filtforge()
        .args(["validate"])
        .arg(dir.path().join("incomplete-grid.json"))
        .assert()
        .code(1)
        .stdout(predicate::str::contains("completeness"));

    filtforge()
        .args(["corpus", "random", "--seed", "9", "--out"])
        .arg(dir.path())
        .assert()
        .success();
    filtforge()
        .args(["validate"])
        .arg(dir.path().join("random-9.json"))
        .assert()
        .success();

    // refuse to clobber, then overwrite with --force
    filtforge()
        .args(["corpus", "random", "--seed", "9", "--out"])
        .arg(dir.path())
        .assert()
        .code(2);
    filtforge()
        .args(["corpus", "random", "--seed", "9", "--force", "--out"])
        .arg(dir.path())
        .assert()
        .success();
}

#[test]
fn unknown_fixture_name_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    filtforge()
        .args(["corpus", "klein-bottle", "--out"])
        .arg(dir.path())
        .assert()
        .code(2);
}

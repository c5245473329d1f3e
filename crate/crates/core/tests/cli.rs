mod common;

use std::process::{Command, Output};

use common::corpus_dir;
use weilzeta::cli::strip_timing;

fn weilzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weilzeta"))
        .args(args)
        .current_dir(corpus_dir())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_exit_zero() {
    let o = weilzeta(&["count", "p1_f2.var", "--mmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("N_1 = 3\nN_2 = 5\nN_3 = 9\n"));
}

#[test]
fn weil_pass_and_fail() {
    let o = weilzeta(&["weil", "e_f5.var"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("status = PASS\n"));

    let o = weilzeta(&["weil", "e_f5_wrong_dim.var"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("status = FAIL\n"));
}

#[test]
fn given_betti_numbers() {
    let o = weilzeta(&["weil", "e_f7.var", "--betti", "1,2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("betti = [1, 2, 1] given"));
    // a genus-2 claim needs four counts and then fails the curve symmetry
    let o = weilzeta(&["weil", "e_f7.var", "--betti", "1,4,1", "--mmax", "4"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_two() {
    let o = weilzeta(&["count", "malformed.var"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error[ParseError]: Parse error at line 3"), "{err}");

    assert_eq!(weilzeta(&["count", "no_such_file.var"]).status.code(), Some(2));
    assert_eq!(
        weilzeta(&["weil", "e_f5.var", "--rh-tol", "0.7"]).status.code(),
        Some(2)
    );
    assert_eq!(
        weilzeta(&["dimgroup", "matrix_3111.mat", "--det-check", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn budget_exit_three() {
    let o = weilzeta(&["count", "e_f7.var", "--mmax", "4", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn other_subcommands() {
    let o = weilzeta(&["cm", "--from", "5", "--to", "97"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mismatches = 0"));
    let o = weilzeta(&["lattice", "lattice_zsqrt2.lat"]);
    assert_eq!(o.status.code(), Some(0));
    let o = weilzeta(&["dimgroup", "matrix_3111.mat", "--det-check", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified = false"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("weilzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let o = weilzeta(&["weil", "p2_f3.var", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let again = stdout(&weilzeta(&["weil", "p2_f3.var"]));
    assert_eq!(strip_timing(&written), strip_timing(&again));
    std::fs::remove_dir_all(&dir).unwrap();
}

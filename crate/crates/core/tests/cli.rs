//! End-to-end runs of the command-line binary.

mod common;

use std::process::{Command, Output};

use common::data;

fn strandnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strandnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn condensed_duplex_formation() {
    let o = strandnet(&[&path("duplex.sn"), "--condense", "--rates"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "B + T -> 1 @ 2.000000e+06 /M/s\n");
}

#[test]
fn detailed_output_lists_every_reaction() {
    let o = strandnet(&[&path("duplex.sn")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4, "{text}");
    assert!(text.lines().all(|l| l.contains(" -> ") && !l.contains('@')));
}

#[test]
fn malformed_input_exits_1_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.sn");
    std::fs::write(&f, "length a = 5\nA = a( q )\n").unwrap();
    let o = strandnet(&[f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column 8"), "{}", stderr(&o));
}

#[test]
fn missing_file_and_bad_flags_exit_1() {
    assert_eq!(strandnet(&["/nonexistent/input.sn"]).status.code(), Some(1));
    assert_eq!(strandnet(&[&path("duplex.sn"), "--format", "xml"]).status.code(), Some(1));
    assert_eq!(strandnet(&[&path("duplex.sn"), "--set", "warp=1"]).status.code(), Some(1));
    assert_eq!(strandnet(&[&path("duplex.sn"), "--set", "k_bind_bi"]).status.code(), Some(1));
}

#[test]
fn truncation_exits_2_and_still_writes() {
    let o = strandnet(&[&path("hcr.sn"), "--max-complexes", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stdout(&o).is_empty());
    assert!(stderr(&o).contains("truncated"));
}

#[test]
fn numerical_failure_exits_3() {
    let o = strandnet(&[&path("duplex.sn"), "--set", "zip_prefactor=5e-324"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = strandnet(&[&path("duplex.sn"), "--condense", "--set", "k_bind_bi=1e308"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn output_file_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, "[kinetics]\nk_bind_bi = 3e6\n").unwrap();
    let out = dir.path().join("net.crn");
    let o = strandnet(&[
        &path("duplex.sn"),
        "--condense",
        "--rates",
        "--config",
        cfg.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap(), "B + T -> 1 @ 6.000000e+06 /M/s\n");
}

#[test]
fn set_overrides_config_file() {
    let o = strandnet(&[&path("duplex.sn"), "--condense", "--rates", "--set", "k_bind_bi=5e5"]);
    assert_eq!(stdout(&o), "B + T -> 1 @ 1.000000e+06 /M/s\n");
}

#[test]
fn release_cutoff_flag_changes_the_network() {
    let short = stdout(&strandnet(&[&path("displacement.sn")]));
    let long = stdout(&strandnet(&[&path("displacement.sn"), "--release-cutoff", "5"]));
    assert_ne!(short, long);
}

#[test]
fn every_format_is_deterministic() {
    for file in ["duplex.sn", "three_arm.sn", "displacement.sn"] {
        for format in ["crn", "json", "dot", "sbml"] {
            for extra in [&[][..], &["--condense"][..]] {
                let mut args = vec![path(file), "--format".into(), format.into()];
                args.extend(extra.iter().map(|s| s.to_string()));
                let args: Vec<&str> = args.iter().map(String::as_str).collect();
                let a = strandnet(&args);
                let b = strandnet(&args);
                assert_eq!(a.status.code(), Some(0), "{file} {format}");
                assert_eq!(a.stdout, b.stdout, "{file} {format}");
            }
        }
    }
}

mod common;

use std::process::{Command, Output};

use common::{gf, gl};
use hecke_core::gln;
use hecke_core::haff;
use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn csv_rows(o: &Output) -> usize {
    csv::Reader::from_reader(o.stdout.as_slice()).records().count()
}

#[test]
fn help_and_usage_errors() {
    let o = hecke(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle-check"));
    assert_eq!(hecke(&["sweep", "--help"]).status.code(), Some(0));
    assert_eq!(hecke(&[]).status.code(), Some(1));
    assert_eq!(hecke(&["faces", "--factors", "3", "--q", "3", "--bogus"]).status.code(), Some(1));
    assert_eq!(hecke(&["faces", "--factors", "3"]).status.code(), Some(1));
    assert_eq!(hecke(&["faces", "--q", "3", "--format", "xml"]).status.code(), Some(1));
}

#[test]
fn domain_errors() {
    let o = hecke(&["faces", "--factors", "3", "--q", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
    assert_eq!(hecke(&["oracle-check", "--factors", "2", "--q", "9"]).status.code(), Some(2));
    assert_eq!(hecke(&["sweep", "--factors", "2", "--q", "3", "--field-degree", "0"]).status.code(), Some(2));
    let o = hecke(&["classify", "--factors", "2", "--q", "3", "/nonexistent/a.json", "/nonexistent/b.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn finite_pd_modules_are_rejected_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, j: &str| {
        let p = dir.path().join(name);
        let body = format!(r#"{{"chi":{{"exponents":[[0,0]],"torus_exponents":[],"J":["{j}"]}},"lambda":[1],"field":{{"p":3,"m":1}}}}"#);
        std::fs::write(&p, body).unwrap();
        p.display().to_string()
    };
    let (a, b) = (write("a.json", "s1_0"), write("b.json", "s1_1"));
    let o = hecke(&["classify", "--factors", "2", "--q", "3", &a, &b]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("finite projective dimension"), "{}", stderr(&o));
}

#[test]
fn table_sizes_match_the_library() {
    let o = hecke(&["faces", "--factors", "3", "--q", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_rows(&o), 7);
    assert_eq!(csv_rows(&hecke(&["faces", "--factors", "2,2", "--q", "3", "--format", "csv"])), 9);

    let spec = gl(&[3, 2], 0, 3);
    let ss = haff::supersingular_chars(&spec, haff::DEFAULT_CHAR_CAP).unwrap().len();
    let o = hecke(&["chars", "--factors", "3,2", "--q", "3", "--supersingular", "--format", "csv"]);
    assert_eq!(csv_rows(&o), ss);

    let (simples, _) = gln::sweep(&gl(&[4], 0, 3), &gf(3, 1), gln::DEFAULT_SIMPLE_CAP).unwrap();
    let n = simples.len();
    let o = hecke(&["sweep", "--factors", "4", "--q", "3", "--format", "csv"]);
    assert_eq!(csv_rows(&o), n * (n + 1) / 2);
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let args = ["sweep", "--factors", "3,2", "--q", "3", "--format", "json"];
    let a = hecke(&args);
    let b = hecke(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "sweep");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let mut with_out = args.to_vec();
    let p = path.display().to_string();
    with_out.extend(["--out", &p]);
    let o = hecke(&with_out);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn spec_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(&path, r#"{"factors":[3,2],"torus_rank":1,"q":3}"#).unwrap();
    let p = path.display().to_string();
    let a = hecke(&["chars", "--spec", &p, "--format", "csv"]);
    let b = hecke(&["chars", "--factors", "3,2", "--torus-rank", "1", "--q", "3", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(hecke(&["chars", "--spec", &p, "--q", "3"]).status.code(), Some(1));
}

#[test]
fn classify_the_gl3_pair() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, j: &str, lam: u32| {
        let p = dir.path().join(name);
        let body = format!(r#"{{"chi":{{"exponents":[[1,1,1]],"torus_exponents":[],"J":[{j}]}},"lambda":[{lam}],"field":{{"p":5,"m":1}}}}"#);
        std::fs::write(&p, body).unwrap();
        p.display().to_string()
    };
    let a = write("a.json", r#""s1_0","s1_1""#, 2);
    let b = write("b.json", r#""s1_1""#, 2);
    let c = write("c.json", r#""s1_1""#, 3);
    let o = hecke(&["classify", "--factors", "3", "--q", "5", "--format", "csv", &a, &b]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().starts_with("false,true,"), "{text}");
    let o = hecke(&["classify", "--factors", "3", "--q", "5", "--format", "json", &a, &c]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["mod_iso"].as_bool(), v["ho_iso"].as_bool()), (Some(false), Some(false)));
}

#[test]
fn oracle_check_exit_codes() {
    let o = hecke(&["oracle-check", "--factors", "2", "--q", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["disagreements"], 0);
    let o = hecke(&["oracle-check", "--factors", "2", "--q", "3", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning:"));
}

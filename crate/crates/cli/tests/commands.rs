use std::path::PathBuf;
use std::process::Command as Process;

use dgres::{parse_window, run, Command, Options};
use dgres_core::DegreeWindow;

fn sample_path(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "samples", name].iter().collect()
}

fn sample(name: &str) -> (String, String) {
    (name.to_string(), std::fs::read_to_string(sample_path(name)).unwrap())
}

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_dgres"))
}

#[test]
fn every_command_passes_on_its_samples() {
    let cases: &[(Command, &[&str])] = &[
        (Command::Validate, &["kx2.alg"]),
        (Command::Validate, &["a2-glue.alg"]),
        (Command::Cohomology, &["trunc2.alg"]),
        (Command::Bar, &["kx5.alg"]),
        (Command::KoszulDual, &["trunc2.alg"]),
        (Command::McCheck, &["z2-group.alg"]),
        (Command::Resolve, &["zp-group.alg"]),
        (Command::Tor, &["kx2.alg"]),
        (Command::Glue, &["a2-glue.alg"]),
        (Command::DiagonalCone, &["kx2-glue.alg"]),
        (Command::SmoothCert, &["a2-glue.alg"]),
        (Command::SmoothCert, &["kx5.alg"]),
        (Command::Zigzag, &["zigzag-padded.alg"]),
        (Command::Zigzag, &[]),
    ];
    for (cmd, files) in cases {
        let inputs: Vec<_> = files.iter().map(|f| sample(f)).collect();
        let r = run(*cmd, &inputs, &Options::default()).unwrap();
        assert!(r.passed(), "{} {files:?}: {}", cmd.name(), r.human());
        assert_eq!(r.exit_code(), 0);
    }
}

#[test]
fn koszul_dual_dimensions() {
    let opts = Options { max_degree: Some(4), ..Options::default() };
    let r = run(Command::KoszulDual, &[sample("trunc2.alg")], &opts).unwrap();
    let dims: Vec<&str> = r.tables[0].rows.iter().map(|row| row[1].as_str()).collect();
    assert_eq!(dims, ["1", "2", "4", "8", "16"]);
}

#[test]
fn tor_table() {
    let opts = Options { max_n: Some(4), ..Options::default() };
    let r = run(Command::Tor, &[sample("trunc2.alg")], &opts).unwrap();
    let dims: Vec<&str> = r.tables[0].rows.iter().map(|row| row[1].as_str()).collect();
    assert_eq!(dims, ["1", "2", "4", "8", "16"]);
    assert_eq!(r.verdict, "obstruction present up to 4");
}

#[test]
fn glue_emits_a_parsable_presentation() {
    let r = run(Command::Glue, &[sample("a2-glue.alg")], &Options::default()).unwrap();
    let text = r.presentation.clone().unwrap();
    let p = dgres::parse(&text, dgres::ParseOptions::default()).unwrap();
    let c = p.algebras().next().unwrap().build(p.field).unwrap();
    assert_eq!(c.dim(), 3);
}

#[test]
fn windows() {
    assert_eq!(parse_window("-6:4").unwrap(), DegreeWindow::new(-6, 4).unwrap());
    assert!(parse_window("4:-6").is_err());
    assert!(parse_window("1:2").is_err());
    assert!(parse_window("x").is_err());
}

#[test]
fn unmet_hypotheses_fail_with_exit_code_one() {
    let text = "field Q\nalgebra split\ngen 1 0\ngen y 0\nunit 1\nmul y y = y\n";
    let r = run(Command::Resolve, &[("split.alg".into(), text.into())], &Options::default()).unwrap();
    assert!(!r.passed());
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn binary_exit_codes() {
    let out = bin().args(["tor", sample_path("kx2.alg").to_str().unwrap(), "--max-n", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("obstruction present up to 3"), "{stdout}");

    let dir = tempfile::tempdir().unwrap();
    let split = dir.path().join("split.alg");
    std::fs::write(&split, "field Q\nalgebra split\ngen 1 0\ngen y 0\nunit 1\nmul y y = y\n").unwrap();
    let out = bin().args(["resolve", split.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let broken = dir.path().join("broken.alg");
    std::fs::write(&broken, "field Q\nalgebra A\ngen 1 0\nunit 1\nmul 1 1 = q\n").unwrap();
    let out = bin().args(["validate", broken.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"));

    let out = bin().args(["validate", dir.path().join("missing.alg").to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_json_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let run_once = || {
        bin()
            .args(["resolve", sample_path("kx2.alg").to_str().unwrap(), "--window", "-5:2", "--json", "--out"])
            .arg(&out_path)
            .output()
            .unwrap()
    };
    let first = run_once();
    assert_eq!(first.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(json["command"], "resolve");
    assert_eq!(json["window"], "[-5, 2]");
    let written = std::fs::read(&out_path).unwrap();
    let second = run_once();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(written, std::fs::read(&out_path).unwrap());
}

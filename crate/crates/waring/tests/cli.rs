//! End-to-end tests of the command-line binary: exit codes, stdout/stderr
//! separation, and JSON round-trips through files.

use std::path::PathBuf;
use std::process::{Command, Output};

use waring::census::read_report;
use waring::rank::{Decomposition, RankCertificate};
use waring::witnesses::WitnessForm;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_waring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("waring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout_json<T: serde::de::DeserializeOwned>(out: &Output) -> T {
    serde_json::from_slice(&out.stdout).expect("stdout parses")
}

const CONIC: &str = r#"{"degree":2,"basis":"monomial","coeffs":["1","0","1"]}"#;
// (x + 2y)^5 - (x - y)^5, complex and real rank 2.
const RANK2_QUINTIC: &str =
    r#"{"degree":5,"basis":"monomial","coeffs":["33","75","90","30","15","0"]}"#;

#[test]
fn rank_inline_conic() {
    let out = run(&["rank", "--form", CONIC]);
    assert_eq!(out.status.code(), Some(0));
    let cert: RankCertificate = stdout_json(&out);
    assert_eq!(cert.complex_rank, 2);
    assert_eq!((cert.real_lo, cert.real_hi), (2, 2));
    assert!(cert.exact);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("waring "), "version line on stderr: {err}");
}

#[test]
fn rank_hyperbolic_quintic_from_file() {
    // x (x^2 - y^2) (x^2 - 4 y^2): five distinct real roots.
    let path = tmp("hyp5.json");
    std::fs::write(
        &path,
        r#"{"degree":5,"basis":"monomial","coeffs":["0","4","0","-5","0","1"]}"#,
    )
    .unwrap();
    let out = run(&["rank", "--form", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let cert: RankCertificate = stdout_json(&out);
    assert!(cert.exact);
    assert_eq!((cert.real_lo, cert.real_hi), (5, 5));
}

#[test]
fn rank_malformed_json_exits_one_without_partial_output() {
    let out = run(&["rank", "--form", r#"{"degree":2,"basis":"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn rank_zero_form_exits_one() {
    let out = run(&[
        "rank",
        "--form",
        r#"{"degree":2,"basis":"monomial","coeffs":["0","0","0"]}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_flag_exits_one() {
    let out = run(&["rank", "--nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn witness_intersection_even_degree_exits_one() {
    let out = run(&["witness", "--kind", "intersection", "--degree", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("odd"), "message names the parity: {err}");
}

#[test]
fn witness_support_flags_rejected_outside_intersection() {
    let out = run(&[
        "witness",
        "--kind",
        "dminus1",
        "--degree",
        "6",
        "--w",
        r#"{"points":[{"alpha":"0","beta":"1"}],"quadratics":[]}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn witness_verify_round_trip_all_kinds() {
    let cases = [
        ("hyperbolic", "5", "3"),
        ("generic-span", "5", "4"),
        ("intersection", "7", "0"),
        ("dminus1", "6", "7"),
    ];
    for (kind, degree, seed) in cases {
        let out = run(&[
            "witness", "--kind", kind, "--degree", degree, "--seed", seed,
        ]);
        assert_eq!(out.status.code(), Some(0), "{kind} constructs");
        let witness: WitnessForm = stdout_json(&out);
        assert!(witness.checked_hypotheses.iter().all(|c| c.passed));
        let path = tmp(&format!("w-{kind}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        let verify = run(&["verify", "--witness", path.to_str().unwrap()]);
        assert_eq!(verify.status.code(), Some(0), "{kind} verifies");
    }
}

#[test]
fn witness_dminus1_degree_six_certifies_five() {
    let out = run(&[
        "witness", "--kind", "dminus1", "--degree", "6", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let witness: WitnessForm = stdout_json(&out);
    assert_eq!(witness.real_rank, 5);
    assert_eq!(witness.complex_rank, 4);
}

#[test]
fn witness_intersection_custom_supports() {
    // Same shape as the built-in degree-5 pair, shifted to fresh points.
    let w = r#"{"points":[{"alpha":"4","beta":"1"}],"quadratics":[["0","1"]]}"#;
    let s = r#"{"points":[{"alpha":"1","beta":"1"},{"alpha":"-2","beta":"1"},{"alpha":"-3","beta":"1"},{"alpha":"-4","beta":"1"}],"quadratics":[]}"#;
    let out = run(&[
        "witness",
        "--kind",
        "intersection",
        "--degree",
        "5",
        "--w",
        w,
        "--s",
        s,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let witness: WitnessForm = stdout_json(&out);
    assert_eq!((witness.complex_rank, witness.real_rank), (3, 4));
}

#[test]
fn verify_tampered_rank_exits_two() {
    let out = run(&[
        "witness", "--kind", "dminus1", "--degree", "6", "--seed", "7",
    ]);
    let mut value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    value["real_rank"] = serde_json::json!(4);
    let path = tmp("tampered-rank.json");
    std::fs::write(&path, serde_json::to_vec(&value).unwrap()).unwrap();
    let verify = run(&["verify", "--witness", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(2));
    assert!(verify.stdout.is_empty());
}

#[test]
fn verify_tampered_coefficient_exits_two() {
    let out = run(&[
        "witness", "--kind", "intersection", "--degree", "5",
    ]);
    let mut value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    value["form"]["coeffs"][1] = serde_json::json!("9/7");
    let path = tmp("tampered-coeff.json");
    std::fs::write(&path, serde_json::to_vec(&value).unwrap()).unwrap();
    let verify = run(&["verify", "--witness", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(2));
    let err = String::from_utf8(verify.stderr).unwrap();
    assert!(err.contains("verification failed"), "{err}");
}

#[test]
fn verify_certificate_file() {
    let out = run(&["rank", "--form", RANK2_QUINTIC]);
    let path = tmp("cert.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let verify = run(&["verify", "--certificate", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));

    let neither = run(&["verify"]);
    assert_eq!(neither.status.code(), Some(1));
}

#[test]
fn census_reports_byte_identical_across_jobs() {
    let p1 = tmp("census-j1.json");
    let p4 = tmp("census-j4.json");
    for (jobs, path) in [("1", &p1), ("4", &p4)] {
        let out = run(&[
            "census", "--degree", "5", "--samples", "16", "--seed", "3", "--jobs", jobs,
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        // report went to the file; stdout stays empty for scripted pipelines
        assert!(out.stdout.is_empty());
    }
    let b1 = std::fs::read(&p1).unwrap();
    let b4 = std::fs::read(&p4).unwrap();
    assert_eq!(b1, b4);
    let report = read_report(&p1).unwrap();
    assert_eq!(report.counts.values().sum::<u64>(), 16);
    assert!(report.elapsed_ms.is_none());
}

#[test]
fn census_csv_round_trips_and_stdout_json_without_out() {
    let csv = tmp("census.csv");
    let out = run(&[
        "census", "--degree", "4", "--samples", "10", "--seed", "5", "--format", "csv",
        "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let from_csv = read_report(&csv).unwrap();

    let direct = run(&["census", "--degree", "4", "--samples", "10", "--seed", "5"]);
    assert_eq!(direct.status.code(), Some(0));
    let from_stdout: waring::census::CensusReport = stdout_json(&direct);
    assert_eq!(from_csv, from_stdout);
}

#[test]
fn census_unwritable_path_exits_one() {
    let out = run(&[
        "census", "--degree", "4", "--samples", "2", "--seed", "1",
        "--out", "/nonexistent-dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decompose_witness_from_certificate() {
    let out = run(&["decompose", "--form", RANK2_QUINTIC]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let dec: Decomposition = stdout_json(&out);
    assert_eq!(dec.rank, 2);
    assert_eq!(dec.terms.len(), 2);
    assert!(dec.residual <= dec.tolerance);
}

#[test]
fn decompose_explicit_witness_and_non_apolar_rejection() {
    // (2x - y)(x + y) vanishes at the decomposition points of RANK2_QUINTIC.
    let good = r#"{"degree":2,"basis":"monomial","coeffs":["-1","1","2"]}"#;
    let out = run(&["decompose", "--form", RANK2_QUINTIC, "--witness", good]);
    assert_eq!(out.status.code(), Some(0));

    let bad = r#"{"degree":2,"basis":"monomial","coeffs":["1","0","1"]}"#;
    let out = run(&["decompose", "--form", RANK2_QUINTIC, "--witness", bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

//! End-to-end runs of the `bsf` binary.

use std::process::{Command, Output};

use bsf_cli::report::{SolveReport, VerifyReport};

fn bsf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn values(report: &SolveReport) -> Vec<f64> {
    report.states.iter().map(|s| s.value).collect()
}

#[test]
fn oscillator_ladder() {
    let o = bsf(&["solve", "--model", "spherical_oscillator", "--n", "0..3", "--l", "0"]);
    assert!(o.status.success());
    let r: SolveReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.schema, 1);
    let v = values(&r);
    assert_eq!(v.len(), 4);
    for (got, want) in v.iter().zip([1.5, 3.5, 5.5, 7.5]) {
        assert!((got - want).abs() < 1e-10, "{v:?}");
    }
}

#[test]
fn kratzer_fixture() {
    let o = bsf(&["solve", "--model", "kratzer", "--param", "De=1", "--param", "a=1", "--n", "0", "--l", "0"]);
    let r: SolveReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((values(&r)[0] + 0.5).abs() < 1e-10);
}

#[test]
fn config_errors_exit_2_with_error_object() {
    for args in [
        vec!["solve", "--model", "unknown_model"],
        vec!["solve", "--model", "kratzer", "--param", "De=-1"],
        vec!["solve", "--model", "kratzer", "--param", "nonsense=1"],
        vec!["solve", "--model", "kratzer", "--n", "1..x"],
        vec!["solve", "--model", "dirac_morse", "--engine", "shooting"],
        vec!["verify", "--model", "kratzer", "--tol", "bogus=1"],
        vec!["solve", "--no-such-flag"],
    ] {
        let o = bsf(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = bsf(&["solve", "--model", "unknown_model"]);
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["schema"], 1);
    assert_eq!(err["error"]["code"], 2);
    assert_eq!(err["error"]["kind"], "config");
}

#[test]
fn missing_level_exits_3() {
    let o = bsf(&["solve", "--model", "dirac_morse", "--n", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_oscillator_and_manning_rosen() {
    let o = bsf(&["verify", "--model", "spherical_oscillator"]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.pass);
    for c in &r.states[0].checks {
        assert!(c.delta < 1e-6, "{c:?}");
    }

    let o = bsf(&["verify", "--model", "manning_rosen", "--n", "0", "--l", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    let s = &r.states[0];
    assert!((s.values["formula"] + 0.125).abs() < 1e-10);
    let by_pair = |p: &str| s.checks.iter().find(|c| c.pair == p).unwrap().delta;
    assert!(by_pair("formula_aim") < 1e-7);
    assert!(by_pair("formula_shooting") < 1e-6);
    assert_eq!(s.node_count, Some(0));
}

#[test]
fn forced_tolerance_exits_4_and_still_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.json");
    let o = bsf(&[
        "verify", "--model", "spherical_oscillator", "--tol", "formula_shooting=1e-15",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
    let r: VerifyReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!r.pass);
}

#[test]
fn verify_verdicts_survive_a_round_trip() {
    for args in [
        vec!["verify", "--model", "kratzer", "--n", "0..2"],
        vec!["verify", "--model", "coulomb", "--n", "0,1", "--l", "0,1", "--tol", "formula_shooting=1e-13"],
    ] {
        let o = bsf(&args);
        let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
        let stored: Vec<bool> = r.states.iter().map(|s| s.pass).collect();
        assert_eq!(r.recompute_verdicts(), stored, "{args:?}");
        assert_eq!(o.status.code(), Some(if stored.iter().all(|&p| p) { 0 } else { 4 }));
        // and re-serializing gives the same bytes
        assert_eq!(bsf_cli::report::to_json(&r).unwrap(), stdout(&o));
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["solve", "--model", "manning_rosen", "--param", "a_tilde=30", "--n", "0..2", "--l", "0,1", "--engine", "formula,aim"];
    let first = bsf(&args);
    assert!(first.status.success());
    for _ in 0..2 {
        assert_eq!(bsf(&args).stdout, first.stdout);
    }
    let csv: Vec<&str> = args.iter().copied().chain(["--format", "csv"]).collect();
    assert_eq!(bsf(&csv).stdout, bsf(&csv).stdout);
}

fn parse_wavefunction(text: &str) -> (Vec<String>, Vec<[f64; 4]>) {
    let meta = text.lines().filter(|l| l.starts_with('#')).map(String::from).collect();
    let mut rows = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(rows.next(), Some("r,s,psi_unnormalized,psi_normalized"));
    let data = rows
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect();
    (meta, data)
}

#[test]
fn oscillator_ground_state_is_the_normalized_gaussian() {
    let o = bsf(&["wavefunction", "--model", "spherical_oscillator", "--n", "0", "--l", "0", "--points", "200"]);
    assert!(o.status.success());
    let (meta, rows) = parse_wavefunction(&stdout(&o));
    assert!(meta.iter().any(|m| m == "# model=spherical_oscillator"));
    assert!(meta.iter().any(|m| m.starts_with("# E=1.5")));
    assert!(meta.iter().any(|m| m.starts_with("# N_n=")));
    assert_eq!(rows.len(), 200);
    let c = 2.0 * std::f64::consts::PI.powf(-0.25);
    let worst = rows
        .iter()
        .map(|[r, _, _, psi]| (psi - c * (-r * r / 2.0).exp()).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-6, "max deviation {worst:e}");
}

#[test]
fn first_excited_state_has_one_node() {
    for model in ["spherical_oscillator", "coulomb", "kratzer"] {
        let o = bsf(&["wavefunction", "--model", model, "--n", "1", "--points", "400"]);
        assert!(o.status.success(), "{model}");
        let (_, rows) = parse_wavefunction(&stdout(&o));
        let peak = rows.iter().map(|r| r[3].abs()).fold(0.0, f64::max);
        let signs: Vec<f64> = rows.iter().filter(|r| r[3].abs() > 1e-8 * peak).map(|r| r[3].signum()).collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(changes, 1, "{model}");
    }
}

#[test]
fn empty_grid_exits_2() {
    let o = bsf(&["wavefunction", "--model", "spherical_oscillator", "--points", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_lists_every_model() {
    let o = bsf(&["catalog"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["models"].as_array().unwrap().len(), 11);
    let o = bsf(&["catalog", "--model", "kratzer", "--format", "csv"]);
    assert!(stdout(&o).starts_with("model,kind,unknown,param,default,rule,doc\n"));
}

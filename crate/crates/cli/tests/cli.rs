use std::process::{Command, Output};

use dpbound::quadrature::integrate_samples;
use dpbound_cli::read_wavefunction_csv;

fn dpbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpbound"))
        .args(args)
        .env_remove(dpbound_cli::OUTPUT_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_column(text: &str) -> Vec<f64> {
    text.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect()
}

fn norm(rows: &[(f64, f64, f64)]) -> f64 {
    let r: Vec<f64> = rows.iter().map(|x| x.0).collect();
    let d: Vec<f64> = rows.iter().map(|&(r, u, v)| (u * u + v * v) * r * r).collect();
    integrate_samples(&r, &d)
}

#[test]
fn constant_field_spectrum_example() {
    let o = dpbound(&[
        "spectrum", "--profile", "constant:E0=1", "--particle", "m=1,mu=1", "--kind", "plus", "--l", "0", "--window",
        "0.1:1.4",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("value,kind,l,n_r,degeneracy,source\n"));
    let values = first_column(&text);
    assert!(values.iter().any(|v| (v - 1.0).abs() < 1e-12));
    assert!(values.iter().any(|v| (v - 1.3228757).abs() < 1e-7));
    assert!(text.contains(",infinite,analytic"));
}

#[test]
fn numeric_spectrum_matches_analytic() {
    let run = |method: &str| {
        let o = dpbound(&[
            "spectrum", "--profile", "linear:beta=1", "--particle", "m=1,mu=1", "--l", "2", "--window", "0.5:3.1",
            "--method", method,
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        first_column(&stdout(&o))
    };
    let a = run("analytic");
    let n = run("numeric");
    assert_eq!(a.len(), 3);
    assert_eq!(a.len(), n.len());
    for (x, y) in a.iter().zip(&n) {
        assert!((x - y).abs() < 1e-8, "{x} vs {y}");
    }
}

#[test]
fn estimate_example() {
    let o = dpbound(&["estimate", "--preset", "neutron", "--constant-field", "5.15e11"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "9.5e-4 m");
}

#[test]
fn critical_not_normalizable_exits_zero() {
    let o = dpbound(&["critical", "--profile", "inverse_r:kappa=1", "--particle", "m=1,mu=1", "--l", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("NotNormalizable"));
}

#[test]
fn critical_bound_state_is_normalized() {
    let o = dpbound(&["critical", "--profile", "inverse_r:kappa=4", "--particle", "m=1,mu=1", "--l", "1"]);
    assert!(o.status.success());
    let rows = read_wavefunction_csv(&stdout(&o)).unwrap();
    assert!(rows.iter().all(|r| r.2 == 0.0));
    assert!((norm(&rows) - 1.0).abs() < 1e-6);
}

#[test]
fn wavefunction_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (profile, kind, n_r) in [("constant:E0=1", "plus", "2"), ("linear:beta=2", "minus", "1"), ("linear:beta=1", "plus", "3")] {
        let path = dir.path().join(format!("{kind}{n_r}.csv"));
        let o = dpbound(&[
            "wavefunction", "--profile", profile, "--particle", "m=1,mu=1", "--kind", kind, "--l", "1", "--n-r", n_r,
            "--output", path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let rows = read_wavefunction_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!((norm(&rows) - 1.0).abs() < 1e-6, "{profile} {kind}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("run{i}.json"));
        let o = dpbound(&[
            "spectrum", "--profile", "constant:E0=1", "--particle", "m=1,mu=1", "--l", "1", "--window", "1.0:1.38",
            "--method", "numeric", "--format", "json", "--output", path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&files[0]).unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["source"], "numeric");
    assert_eq!(rows[0]["degeneracy"], 4);
}

#[test]
fn env_var_sets_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_dpbound"))
        .args(["estimate", "--preset", "neutron", "--atomic-density", "--format", "json"])
        .env(dpbound_cli::OUTPUT_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("estimate.json")).unwrap()).unwrap();
    assert_eq!(v[0]["field"], "linear");
    assert!(v[0]["length_m"].as_f64().unwrap() > 0.0);
}

#[test]
fn exit_codes() {
    let bad = dpbound(&["spectrum", "--profile", "parabolic:a=1", "--particle", "m=1,mu=1"]);
    assert_eq!(bad.status.code(), Some(2));
    let no_window = dpbound(&["spectrum", "--profile", "inverse_r:kappa=3", "--particle", "m=1,mu=1"]);
    assert_eq!(no_window.status.code(), Some(2));
    let wrong_kind = dpbound(&[
        "wavefunction", "--profile", "constant:E0=1", "--particle", "m=1,mu=1", "--kind", "minus", "--n-r", "1",
    ]);
    assert_eq!(wrong_kind.status.code(), Some(3));
    let absent = dpbound(&[
        "wavefunction", "--profile", "linear:beta=1", "--particle", "m=1,mu=1", "--n-r", "1", "--window", "1.1:1.5",
        "--method", "numeric",
    ]);
    assert_eq!(absent.status.code(), Some(3));
}

#[test]
fn verify_passes() {
    let o = dpbound(&["verify", "--l-max", "3", "--index-max", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().skip(1).all(|l| l.starts_with("PASS,")));
}

#[test]
fn profile_file_with_particle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.toml");
    std::fs::write(&path, "type = \"linear\"\nbeta = 1.0\n\n[particle]\nmass = 1.0\nmoment = 1.0\n").unwrap();
    let o = dpbound(&["spectrum", "--profile", path.to_str().unwrap(), "--kind", "minus", "--n-max", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let values = first_column(&stdout(&o));
    assert!(values.iter().any(|v| (v - 7f64.sqrt()).abs() < 1e-14));
}

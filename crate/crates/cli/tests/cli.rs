use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_monocurv");

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN)
        .args(args)
        .env_remove("MONOCURV_OUT_DIR")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn plane_p2_is_half() {
    let (code, out, _) = run(&["plane", "--p", "2", "--grid", "0.1:1.47:10"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("theta,c"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 10);
    for r in rows {
        let c: f64 = r.split(',').nth(1).unwrap().parse().unwrap();
        assert!((c - 0.5).abs() < 1e-12);
    }
}

#[test]
fn plane_negative_and_infinite_exponents() {
    assert_eq!(run(&["plane", "--p", "-2", "--grid", "0.2:0.7:3"]).0, 0);
    let (code, out, _) = run(&["plane", "--p", "inf", "--grid", "0.5:0.785398163397448:2"]);
    assert_eq!(code, 0);
    let last: f64 = out
        .lines()
        .last()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((last - 0.5f64.sqrt()).abs() < 1e-9);
}

#[test]
fn bad_grids_are_usage_errors() {
    for grid in ["0:1:0", "1:0:5", "0:1", ""] {
        assert_eq!(run(&["plane", "--p", "2", "--grid", grid]).0, 2, "{grid:?}");
    }
    assert_eq!(run(&["plane", "--p", "0", "--grid", "0.1:0.2:2"]).0, 2);
    assert_eq!(run(&["plane", "--p", "2", "--grid", "0:1:3"]).0, 2);
}

#[test]
fn curvature_reports() {
    let v = json(&[
        "curvature",
        "--metric",
        "wy",
        "--eigs",
        "0.2,0.3,0.5",
        "--convention",
        "normalized",
    ]);
    assert!((v["report"]["value"].as_f64().unwrap() - 14.0).abs() < 1e-8);
    assert_eq!(v["report"]["formula_path"], "h-sum");
    assert_eq!(v["config"]["convention"], "normalized");
    assert_eq!(v["version"], monocurv::VERSION);

    let v = json(&["curvature", "--metric", "sld", "--eigs", "1/6,1/6,2/3"]);
    assert!((v["report"]["value"].as_f64().unwrap() - 3078.0 / 25.0).abs() < 1e-9);
    let v = json(&[
        "curvature",
        "--metric",
        "sld",
        "--eigs",
        "1/6,1/6,2/3",
        "--scale",
        "unit",
    ]);
    assert!((v["report"]["value"].as_f64().unwrap() - 30.78).abs() < 1e-9);
}

#[test]
fn curvature_rejects_non_spectra() {
    let (code, _, err) = run(&["curvature", "--metric", "sld", "--eigs", "0.2,0.3,0.6"]);
    assert_eq!(code, 2);
    assert!(err.contains("not a density spectrum"), "{err}");
    assert_eq!(
        run(&["curvature", "--metric", "wyd:0.4", "--eigs", "0.5,0.5"]).0,
        2
    );
    assert_eq!(
        run(&["curvature", "--metric", "nope", "--eigs", "0.5,0.5"]).0,
        2
    );
}

#[test]
fn andai_csv_is_even() {
    let (code, out, _) = run(&["andai", "--p", "1.1", "--grid", "-0.99:0.99:199"]);
    assert_eq!(code, 0);
    let rows: Vec<f64> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(rows.len(), 199);
    for k in 0..99 {
        assert!((rows[k] - rows[198 - k]).abs() < 1e-9);
    }
    assert_eq!(
        run(&["andai", "--metric", "bkm", "--grid", "-0.5:0.5:5"]).0,
        0
    );
}

#[test]
fn andai_rejects_non_monotone_exponent() {
    let (code, _, err) = run(&["andai", "--p", "0.4"]);
    assert_eq!(code, 2);
    assert!(err.contains("not operator monotone"), "{err}");
    assert_eq!(run(&["andai"]).0, 2);
    assert_eq!(run(&["andai", "--p", "2", "--metric", "sld"]).0, 2);
}

#[test]
fn schur_is_reproducible_and_finds_reference_pair() {
    let args = [
        "schur",
        "--target",
        "spectrum:sld",
        "--n",
        "3",
        "--samples",
        "100",
        "--seed",
        "3",
    ];
    let a = run(&args).1;
    assert_eq!(a, run(&args).1);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["verdict"]["classification"], "neither");
    assert_eq!(v["verdict"]["counterexamples"][0]["source"], "probe");
}

#[test]
fn schur_simplex_and_bad_targets() {
    let v = json(&[
        "schur",
        "--target",
        "simplex:3",
        "--n",
        "3",
        "--samples",
        "40",
    ]);
    assert_eq!(v["verdict"]["classification"], "increasing");
    assert_eq!(v["formula_path"], "finite-difference");
    assert_eq!(run(&["schur", "--target", "volume"]).0, 2);
    assert_eq!(run(&["schur", "--target", "simplex:3", "--n", "2"]).0, 2);
    assert_eq!(run(&["schur", "--target", "entropy", "--n", "1"]).0, 2);
}

#[test]
fn simplex_and_matrix_commands() {
    let v = json(&["simplex", "--p", "2", "--n", "3", "--rho", "0.2,0.3,0.5"]);
    assert!((v["value"].as_f64().unwrap() - 0.5).abs() < 1e-4);
    assert_eq!(
        run(&["simplex", "--p", "2", "--n", "4", "--rho", "0.2,0.3,0.5"]).0,
        2
    );
    assert_eq!(
        run(&["simplex", "--p", "2", "--rho", "0.0002,0.4998,0.5"]).0,
        2
    );

    let v = json(&["matrix", "--p", "2", "--bloch", "0.3,0,0"]);
    assert!((v["value"].as_f64().unwrap() - 1.5).abs() < 5e-3);
    let (code, _, err) = run(&["matrix", "--p", "2", "--bloch", "0,0,0.999"]);
    assert_eq!(code, 2);
    assert!(err.contains("margin"), "{err}");
    assert_eq!(run(&["matrix", "--p", "2", "--bloch", "0.1,0.2"]).0, 2);
    assert_eq!(run(&["matrix", "--p", "2", "--bloch", "-0.1,0.2,0"]).0, 0);
}

#[test]
fn output_paths_and_env_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(BIN)
        .args([
            "plane",
            "--p",
            "3",
            "--grid",
            "0.2:0.4:3",
            "--out",
            "sub/plane.csv",
        ])
        .env("MONOCURV_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("sub/plane.csv")).unwrap();
    assert!(text.starts_with("theta,c\n"));

    let out = Command::new(BIN)
        .arg("figures")
        .env("MONOCURV_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("figure1.csv").exists());
    assert!(dir.path().join("figure2.csv").exists());
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&[]).0, 2);
}

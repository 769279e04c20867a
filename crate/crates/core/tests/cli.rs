//! End-to-end runs of the command-line binary.

use std::f64::consts::FRAC_2_PI;
use std::path::Path;
use std::process::{Command, Output};

use decoupling_pulses::cli::{PulseFile, OUTPUT_DIR_ENV};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_decoupling-pulses"));
    c.env_remove(OUTPUT_DIR_ENV);
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// `quantity,value` rows into pairs.
fn quantities(csv: &str) -> Vec<(String, f64)> {
    csv.lines()
        .skip(1)
        .filter_map(|l| {
            let (k, v) = l.split_once(',')?;
            Some((k.to_string(), v.parse().ok()?))
        })
        .collect()
}

fn quantity(csv: &str, key: &str) -> f64 {
    quantities(csv)
        .into_iter()
        .find(|(k, _)| k == key)
        .unwrap_or_else(|| panic!("no {key} in\n{csv}"))
        .1
}

fn slope(csv: &str) -> f64 {
    csv.lines()
        .find_map(|l| l.strip_prefix("# slope,"))
        .unwrap_or_else(|| panic!("no slope trailer in\n{csv}"))
        .parse()
        .unwrap()
}

fn design_parameters(path: &Path) -> Vec<f64> {
    PulseFile::read(path).unwrap().design.unwrap().parameters
}

#[test]
fn catalog_listing_and_filters() {
    let all = run(&["catalog"]);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(stdout(&all).lines().count(), 16);

    let o = run(&["catalog", "--theta", "pi", "--order", "second"]);
    let names: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(names, ["SYM2ND-Pi", "ASYM2ND-Pi", "CONT-SYM2ND-Pi"]);

    let none = run(&["catalog", "--name", "NOPE"]);
    assert_eq!(none.status.code(), Some(0));
    assert_eq!(stdout(&none).lines().count(), 1);

    let json = run(&["catalog", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 15);
}

#[test]
fn unknown_filter_is_a_usage_error() {
    assert_eq!(run(&["catalog", "--colour", "red"]).status.code(), Some(1));
    assert_eq!(run(&["catalog", "--order", "third"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
}

#[test]
fn residuals_of_catalog_pulses() {
    let o = run(&["residuals", "--name", "CORPSE-Pi"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(quantity(&csv, "eta11").abs() < 1e-5);
    assert!(quantity(&csv, "eta12").abs() < 1e-5);
    assert!((quantity(&csv, "psi1") - std::f64::consts::PI).abs() < 1e-3);

    let csv = stdout(&run(&["residuals", "--name", "SYM2ND-Pi2"]));
    for key in ["eta11", "eta12", "eta21", "eta22", "eta23"] {
        assert!(quantity(&csv, key).abs() < 1e-4, "{key}");
    }
}

#[test]
fn residuals_of_a_constant_pulse_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("constant_pi.json");
    std::fs::write(
        &path,
        r#"{"kind": "piecewise-constant", "theta": 3.141592653589793, "axis": [0, 1, 0],
            "segments": [{"end": 1.0, "amplitude": 1.5707963267948966}]}"#,
    )
    .unwrap();
    let o = run(&["residuals", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!((quantity(&stdout(&o), "eta11") - FRAC_2_PI).abs() < 1e-14);
}

#[test]
fn malformed_pulse_file_reports_the_line() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"kind\": \"piecewise-constant\",\n  \"theta\": oops\n}\n").unwrap();
    let o = run(&["residuals", "--file", path.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn general_residuals_print_every_integral() {
    let o = run(&["residuals", "--name", "SYM-Pi", "--general"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(quantities(&stdout(&o)).len() >= 39);
}

#[test]
fn design_examples() {
    let dir = TempDir::new().unwrap();
    let cases: [(&[&str], &[f64]); 3] = [
        (
            &["--family", "harmonic38", "--theta", "pi", "--guess", "-2"],
            &[-2.159224],
        ),
        (
            &["--family", "composite3-asym", "--theta", "pi/2", "--guess", "corpse"],
            &[6.345849, 0.033410, 0.471527],
        ),
        (
            &["--family", "harmonic40", "--theta", "pi", "--guess", "10,7,2"],
            &[10.804433, 6.831344, 2.174538],
        ),
    ];
    for (k, (flags, want)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("design{k}.json"));
        let mut args = vec!["design"];
        args.extend_from_slice(flags);
        args.extend(["--output", path.to_str().unwrap()]);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let got = design_parameters(&path);
        for (g, w) in got.iter().zip(*want) {
            assert!((g - w).abs() < 1e-4, "{flags:?}: {got:?}");
        }
    }
}

#[test]
fn design_is_idempotent_and_defaults_to_stdout() {
    let args = [
        "design",
        "--family",
        "composite5-sym",
        "--theta",
        "pi",
        "--guess",
        "SYM2ND-Pi",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let file = PulseFile::from_json(&stdout(&a)).unwrap();
    assert!(file.design.unwrap().converged);
    assert!(stderr(&a).contains("residual_norm"));
}

#[test]
fn design_output_feeds_residuals_and_scaling() {
    let dir = TempDir::new().unwrap();
    let o = bin()
        .env(OUTPUT_DIR_ENV, dir.path())
        .args([
            "design",
            "--family",
            "composite6-asym",
            "--theta",
            "pi/2",
            "--guess",
            "ASYM2ND-Pi2",
        ])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let path = dir.path().join("design-composite6-asym.json");
    assert!(path.exists());

    let r = run(&["residuals", "--file", path.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0));
    for (k, v) in quantities(&stdout(&r))
        .into_iter()
        .filter(|(k, _)| k.starts_with("eta"))
    {
        assert!(v.abs() < 1e-10, "{k} = {v}");
    }

    let s = run(&["scaling", "--file", path.to_str().unwrap()]);
    assert_eq!(s.status.code(), Some(0), "{}", stderr(&s));
    let m = slope(&stdout(&s));
    assert!((2.85..=3.3).contains(&m), "slope {m}");
}

#[test]
fn ill_posed_design_is_a_usage_error() {
    let o = run(&[
        "design",
        "--family",
        "composite1-asym",
        "--theta",
        "pi",
        "--guess",
        "1.5",
        "--targets",
        "eta11",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let o = run(&["design", "--family", "composite9-sym", "--theta", "pi", "--guess", "1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn non_convergence_writes_the_best_iterate() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("stuck.json");
    let o = run(&[
        "design",
        "--family",
        "composite2-asym",
        "--theta",
        "pi",
        "--guess",
        "2,0.5",
        "--targets",
        "eta11",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("warning"));
    let file = PulseFile::read(&path).unwrap();
    assert!(file.warning.is_some());
    assert!(!file.design.unwrap().converged);
}

#[test]
fn singular_jacobian_is_a_numerical_failure() {
    // with both segments positive ψ is monotone and ∫ sin ψ cannot vanish
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("singular.json");
    let o = run(&[
        "design",
        "--family",
        "composite2-asym",
        "--signs",
        "+,+",
        "--theta",
        "pi",
        "--guess",
        "2,0.5",
        "--targets",
        "eta11",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("perturbed guess"));
}

#[test]
fn scaling_examples() {
    for (name, lo, hi) in [
        ("CORPSE-Pi", 1.85, 2.15),
        ("ASYM2ND-Pi2", 2.85, 3.3),
        ("CONST-Pi", 0.9, 1.1),
    ] {
        let o = run(&["scaling", "--name", name, "--bath", "z-dyn", "--seed", "7"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let csv = stdout(&o);
        assert_eq!(csv.lines().next(), Some("tau_p,distance,tolerance,steps,included"));
        let m = slope(&csv);
        assert!((lo..=hi).contains(&m), "{name}: slope {m}");
    }
}

#[test]
fn scaling_is_deterministic_and_writes_to_the_output_dir() {
    let dir = TempDir::new().unwrap();
    let run_once = || {
        bin()
            .env(OUTPUT_DIR_ENV, dir.path())
            .args(["scaling", "--name", "SYM-Pi", "--seed", "3", "--points", "5"])
            .output()
            .unwrap()
    };
    let a = run_once();
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let path = dir.path().join("scaling-SYM-Pi.csv");
    let first = std::fs::read_to_string(&path).unwrap();
    run_once();
    assert_eq!(first, std::fs::read_to_string(&path).unwrap());
    assert_eq!(first.lines().filter(|l| !l.starts_with('#')).count(), 6);
}

#[test]
fn floor_contaminated_grid_is_a_numerical_failure() {
    // λ = 0 leaves only the integrator floor
    let o = run(&["scaling", "--name", "CORPSE-Pi", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn grid_outside_the_window_is_rejected() {
    let o = run(&["scaling", "--name", "CORPSE-Pi", "--tau-max", "1"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn schema_lists_every_pulse_file_field() {
    let schema: serde_json::Value = serde_json::from_str(include_str!("../../../docs/pulse-file.schema.json")).unwrap();
    let documented: Vec<&String> = schema["properties"].as_object().unwrap().keys().collect();
    let o = run(&["design", "--family", "harmonic38", "--theta", "pi", "--guess", "-2"]);
    let written: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in written.as_object().unwrap().keys() {
        assert!(documented.contains(&key), "{key} missing from the schema");
    }
    for key in written["design"].as_object().unwrap().keys() {
        assert!(
            schema["properties"]["design"]["properties"].get(key).is_some(),
            "design.{key}"
        );
    }
}

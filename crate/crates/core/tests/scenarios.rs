use std::fs;
use std::path::PathBuf;

use benford_walk::checks::Status;
use benford_walk::scenario::{exit_code, parse_scenario, run, Command};
use benford_walk::Error;

fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn load(name: &str) -> benford_walk::scenario::Scenario {
    let text = fs::read_to_string(scenario_dir().join(name)).unwrap();
    parse_scenario(&text).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn every_shipped_scenario_parses() {
    let mut count = 0;
    for entry in fs::read_dir(scenario_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let text = fs::read_to_string(&path).unwrap();
            parse_scenario(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            count += 1;
        }
    }
    assert!(count >= 10);
}

#[test]
fn every_invalid_fixture_names_its_key() {
    let expected = [
        ("base_below_one.json", "base", "base must exceed 1"),
        ("atoms_not_normalized.json", "generator", "normalized"),
        ("unknown_key.json", "colour", "unknown field"),
        ("zero_length.json", "length", "length"),
        ("repeated_harmonics.json", "harmonics", "distinct"),
        ("unknown_family.json", "generator", "pareto"),
        ("negative_sigma.json", "generator", "sigma"),
        ("missing_seed.json", "seed", "missing field"),
        ("density_not_normalized.json", "density", "integrates"),
        ("negative_lambda.json", "invariance.lambda", "positive"),
    ];
    let dir = scenario_dir().join("invalid");
    assert_eq!(fs::read_dir(&dir).unwrap().count(), expected.len());
    for (file, want_key, fragment) in expected {
        let text = fs::read_to_string(dir.join(file)).unwrap();
        match parse_scenario(&text) {
            Err(Error::Config { key, message }) => {
                assert_eq!(key, want_key, "{file}");
                assert!(message.contains(fragment), "{file}: {message}");
            }
            other => panic!("{file}: expected a config error, got {other:?}"),
        }
    }
}

#[test]
fn simulate_geometric_sequence() {
    let s = load("geometric_two.json");
    let dir = tempfile::tempdir().unwrap();
    let out = run(Command::Simulate, &s, dir.path(), true).unwrap();
    assert_eq!(exit_code(&Ok(out)), 0);

    let rows = csv_rows(&fs::read_to_string(dir.path().join("conformance.csv")).unwrap());
    assert_eq!(rows[0], ["N", "ks", "dstar", "chi2", "dof"]);
    let last = rows.last().unwrap();
    assert_eq!(last[0], "10000");
    assert!(last[1].parse::<f64>().unwrap() <= 0.01);
    assert_eq!(last[4], "8");

    let dump = csv_rows(&fs::read_to_string(dir.path().join("trajectory.csv")).unwrap());
    assert_eq!(dump[0], ["n", "fraclog", "mantissa"]);
    assert_eq!(dump.len(), 10_001);
    // Y_1 = 2 and Y_10 = 1024.
    assert_eq!(dump[1][2].parse::<f64>().unwrap(), 2.0);
    assert!((dump[10][2].parse::<f64>().unwrap() - 1.024).abs() < 1e-12);
    for row in &dump[1..] {
        let digits: String = row[2]
            .split('e')
            .next()
            .unwrap()
            .chars()
            .filter(char::is_ascii_digit)
            .collect();
        assert_eq!(digits.len(), 17, "{row:?}");
    }
}

#[test]
fn fourier_csv_carries_the_analytic_column() {
    let s = load("lognormal.json");
    let dir = tempfile::tempdir().unwrap();
    run(Command::Fourier, &s, dir.path(), false).unwrap();
    let rows = csv_rows(&fs::read_to_string(dir.path().join("fourier.csv")).unwrap());
    assert_eq!(
        rows[0],
        ["h", "n", "re", "im", "abs", "stderr", "analytic_abs"]
    );
    assert_eq!(rows.len(), 1 + 2 * 64);
    let ln10 = 10f64.ln();
    for row in &rows[1..] {
        let h: f64 = row[0].parse().unwrap();
        let n: f64 = row[1].parse().unwrap();
        let analytic: f64 = row[6].parse().unwrap();
        let oracle = (-2.0 * std::f64::consts::PI.powi(2) * h * h * n / (ln10 * ln10)).exp();
        assert!((analytic - oracle).abs() <= 1e-15);
        let abs: f64 = row[4].parse().unwrap();
        assert!((abs - oracle).abs() <= 4.0 / (2000f64).sqrt());
    }

    let s = load("exchangeable_product.json");
    run(Command::Fourier, &s, dir.path(), false).unwrap();
    let rows = csv_rows(&fs::read_to_string(dir.path().join("fourier.csv")).unwrap());
    assert!(rows[1..].iter().all(|r| r.len() == 7 && r[6].is_empty()));
}

#[test]
fn weyl_csv_for_constant_base_is_one() {
    let mut s = load("geometric_two.json");
    s.generator = Some(
        benford_walk::GeneratorSpec::new(benford_walk::Family::Constant { c: 10.0 }, s.base)
            .unwrap(),
    );
    s.length = 500;
    let dir = tempfile::tempdir().unwrap();
    run(Command::Weyl, &s, dir.path(), false).unwrap();
    let rows = csv_rows(&fs::read_to_string(dir.path().join("weyl.csv")).unwrap());
    assert_eq!(rows[0], ["h", "N", "re", "im", "abs"]);
    for row in &rows[1..] {
        assert_eq!(row[4].parse::<f64>().unwrap(), 1.0);
    }
    assert_eq!(rows.last().unwrap()[1], "500");
}

#[test]
fn check_counterexample_fails_cesaro() {
    let s = load("counterexample_pairs.json");
    let dir = tempfile::tempdir().unwrap();
    let result = run(Command::Check, &s, dir.path(), false);
    assert_eq!(exit_code(&result), 1);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verdicts.json")).unwrap())
            .unwrap();
    let cesaro: Vec<_> = json
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["name"] == "cesaro_fourier")
        .collect();
    assert!(!cesaro.is_empty());
    assert!(cesaro.iter().all(|v| v["status"] == "fails"));
}

#[test]
fn check_plateau_and_growth() {
    let dir = tempfile::tempdir().unwrap();
    let plateau = run(Command::Check, &load("cov_plateau.json"), dir.path(), false).unwrap();
    let growth = plateau
        .verdicts
        .iter()
        .find(|v| v.name == "gaussian_variance_growth")
        .unwrap();
    assert_eq!(growth.status, Status::Fails);

    let ar1 = run(Command::Check, &load("ar1.json"), dir.path(), false).unwrap();
    let growth = ar1
        .verdicts
        .iter()
        .find(|v| v.name == "gaussian_variance_growth")
        .unwrap();
    assert_eq!(growth.status, Status::Holds);
    for v in ar1
        .verdicts
        .iter()
        .filter(|v| v.status == Status::Inconclusive)
    {
        assert!(!v.evidence.is_empty());
    }
}

#[test]
fn invariance_and_bound_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        Command::Invariance,
        &load("invariance_scale.json"),
        dir.path(),
        false,
    )
    .unwrap();
    assert_eq!(out.verdicts.len(), 1);
    assert_eq!(out.verdicts[0].status, Status::Holds);

    let out = run(Command::Bound, &load("bound_step.json"), dir.path(), false).unwrap();
    assert_eq!(out.verdicts[0].status, Status::Holds);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verdicts.json")).unwrap())
            .unwrap();
    assert_eq!(json[0]["name"], "density_fourier_bound");
    assert_eq!(json[0]["status"], "holds");

    // Commands that need a missing section are configuration errors.
    let r = run(Command::Bound, &load("benford_iid.json"), dir.path(), false);
    assert_eq!(exit_code(&r), 2);
    let r = run(
        Command::Simulate,
        &load("bound_step.json"),
        dir.path(),
        false,
    );
    assert!(matches!(r, Err(Error::Config { ref key, .. }) if key == "generator"));
}

#[test]
fn outputs_are_reproducible_in_process() {
    let s = load("half_lattice_atoms.json");
    for command in [
        Command::Simulate,
        Command::Fourier,
        Command::Weyl,
        Command::Check,
    ] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let ra = run(command, &s, a.path(), true).unwrap();
        run(command, &s, b.path(), true).unwrap();
        for f in &ra.files {
            let name = f.file_name().unwrap();
            assert_eq!(
                fs::read(f).unwrap(),
                fs::read(b.path().join(name)).unwrap(),
                "{command:?}"
            );
        }
    }
}

#[test]
fn capacity_overrun_is_reported() {
    let s = load("brownian.json")
        .with_overrides(None, Some(65))
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let r = run(Command::Simulate, &s, dir.path(), false);
    assert!(matches!(
        r,
        Err(Error::Capacity {
            requested: 65,
            limit: 64
        })
    ));
    assert_eq!(exit_code(&r), 2);
}

//! Scenario documents and the six commands.
//!
//! A scenario is a strict JSON object:
//!
//! ```json
//! {"base": 10, "seed": 1, "length": 1000, "generator": {"family": "iid_benford"}}
//! ```
//!
//! Optional keys: `trajectories` (replicas, default 100), `harmonics`
//! (default `[1, 2, 3]`), `options` (check knobs), `invariance` and
//! `density`. Unknown keys anywhere are rejected.
//!
//! Every real written by [`run`] uses 17 significant digits in scientific
//! notation, and every output is a pure function of the scenario.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use serde_json::Value;

use crate::checks::{
    analytic_fourier_abs, check_family, density_fourier_bound_check, invariance_suite,
    CheckOptions, InvarianceMode, PiecewiseDensity, Status, Verdict,
};
use crate::generators::{derive_seed, Family, GeneratorSpec, Seed};
use crate::mantissa::{mantissa_of, Base, Harmonic};
use crate::statistics::{conformance, ensemble_fourier};
use crate::walk::{accumulate, weyl_series, MantissaTrajectory};
use crate::{Error, Result};

pub const DEFAULT_TRAJECTORIES: usize = 100;
pub const DEFAULT_H_MAX: u32 = 16;

/// Series are written densely up to this index, then on a geometric grid.
const DENSE_PREFIX: usize = 100;
const GRID_RATIO: f64 = 1.05;
/// First prefix length of the conformance ladder.
const CONFORMANCE_START: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Simulate,
    Fourier,
    Weyl,
    Check,
    Invariance,
    Bound,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Simulate,
        Command::Fourier,
        Command::Weyl,
        Command::Check,
        Command::Invariance,
        Command::Bound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Fourier => "fourier",
            Command::Weyl => "weyl",
            Command::Check => "check",
            Command::Invariance => "invariance",
            Command::Bound => "bound",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::config("command", format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    base: Value,
    seed: Value,
    length: Value,
    trajectories: Option<Value>,
    harmonics: Option<Value>,
    generator: Option<Value>,
    options: Option<Value>,
    invariance: Option<Value>,
    density: Option<Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    p: Option<f64>,
    ladder_start: Option<usize>,
    cesaro_tol: Option<f64>,
    delv_n_max: Option<usize>,
    growth_start: Option<usize>,
    growth_tol: Option<f64>,
    lattice_max_h: Option<u32>,
    lattice_tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
enum RawInvariance {
    Scale { lambda: f64 },
    Power { m: u32 },
    Product { other: Value },
    HillBase { n: u32 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDensity {
    breakpoints: Vec<f64>,
    heights: Vec<f64>,
    h_max: Option<u32>,
}

/// Inline density for the `bound` command.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySpec {
    pub density: PiecewiseDensity,
    pub h_max: u32,
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub base: Base,
    pub seed: Seed,
    pub length: usize,
    pub trajectories: usize,
    pub harmonics: Vec<Harmonic>,
    pub generator: Option<GeneratorSpec>,
    pub options: CheckOptions,
    pub invariance: Option<InvarianceMode>,
    pub density: Option<DensitySpec>,
}

fn typed<T: serde::de::DeserializeOwned>(key: &str, value: Value) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::config(key, e.to_string()))
}

fn positive(key: &str, value: Value) -> Result<usize> {
    let n: usize = typed(key, value)
        .map_err(|_| Error::config(key, format!("{key} must be a positive integer")))?;
    if n == 0 {
        return Err(Error::config(key, format!("{key} must be >= 1")));
    }
    Ok(n)
}

fn generator_spec(key: &str, value: Value, base: Base) -> Result<GeneratorSpec> {
    let family: Family = typed(key, value)?;
    GeneratorSpec::new(family, base).map_err(|e| match e {
        Error::Domain(msg) => Error::config(key, msg),
        other => other,
    })
}

fn check_real(key: &str, v: f64, ok: bool, what: &str) -> Result<()> {
    if ok && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(
            key,
            format!("{key} must be {what} (got {v})"),
        ))
    }
}

fn options(raw: RawOptions, harmonics: &[Harmonic], m: usize, seed: Seed) -> Result<CheckOptions> {
    let d = CheckOptions::default();
    let o = CheckOptions {
        harmonics: harmonics.to_vec(),
        replicas: m,
        master: seed,
        ladder_start: raw.ladder_start.unwrap_or(d.ladder_start),
        cesaro_tol: raw.cesaro_tol.unwrap_or(d.cesaro_tol),
        p: raw.p.unwrap_or(d.p),
        delv_n_max: raw.delv_n_max.unwrap_or(d.delv_n_max),
        growth_start: raw.growth_start.unwrap_or(d.growth_start),
        growth_tol: raw.growth_tol.unwrap_or(d.growth_tol),
        lattice_max_h: raw.lattice_max_h.unwrap_or(d.lattice_max_h),
        lattice_tol: raw.lattice_tol.unwrap_or(d.lattice_tol),
    };
    check_real("options.p", o.p, o.p >= 1.0, ">= 1")?;
    check_real(
        "options.cesaro_tol",
        o.cesaro_tol,
        o.cesaro_tol > 0.0,
        "positive",
    )?;
    check_real(
        "options.growth_tol",
        o.growth_tol,
        o.growth_tol > 0.0,
        "positive",
    )?;
    check_real(
        "options.lattice_tol",
        o.lattice_tol,
        o.lattice_tol > 0.0,
        "positive",
    )?;
    if o.ladder_start == 0 {
        return Err(Error::config(
            "options.ladder_start",
            "options.ladder_start must be >= 1",
        ));
    }
    if o.growth_start == 0 {
        return Err(Error::config(
            "options.growth_start",
            "options.growth_start must be >= 1",
        ));
    }
    if o.delv_n_max < 16 {
        return Err(Error::config(
            "options.delv_n_max",
            "options.delv_n_max must be >= 16",
        ));
    }
    if o.lattice_max_h == 0 {
        return Err(Error::config(
            "options.lattice_max_h",
            "options.lattice_max_h must be >= 1",
        ));
    }
    Ok(o)
}

/// Parses and validates a scenario document, filling defaults.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let key = msg
            .split('`')
            .nth(1)
            .filter(|_| msg.starts_with("unknown field") || msg.starts_with("missing field"))
            .unwrap_or("document")
            .to_string();
        Error::config(key, msg)
    })?;

    let b: f64 = typed("base", raw.base)?;
    let base =
        Base::new(b).map_err(|_| Error::config("base", format!("base must exceed 1 (got {b})")))?;
    let seed = Seed(
        typed("seed", raw.seed)
            .map_err(|_| Error::config("seed", "seed must be an unsigned 64-bit integer"))?,
    );
    let length = positive("length", raw.length)?;
    let trajectories = match raw.trajectories {
        Some(v) => positive("trajectories", v)?,
        None => DEFAULT_TRAJECTORIES,
    };

    let harmonics = match raw.harmonics {
        Some(v) => {
            let hs: Vec<u32> = typed("harmonics", v)?;
            if hs.is_empty() {
                return Err(Error::config("harmonics", "harmonics must be non-empty"));
            }
            let mut seen = hs.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != hs.len() {
                return Err(Error::config("harmonics", "harmonics must be distinct"));
            }
            hs.into_iter()
                .map(|h| {
                    Harmonic::new(h)
                        .map_err(|_| Error::config("harmonics", "harmonics must be >= 1"))
                })
                .collect::<Result<Vec<_>>>()?
        }
        None => [1, 2, 3].map(|h| Harmonic::new(h).unwrap()).to_vec(),
    };

    let generator = raw
        .generator
        .map(|v| generator_spec("generator", v, base))
        .transpose()?;

    let raw_opts: RawOptions = match raw.options {
        Some(v) => typed("options", v)?,
        None => RawOptions::default(),
    };
    let options = options(raw_opts, &harmonics, trajectories, seed)?;

    let invariance = match raw.invariance {
        None => None,
        Some(v) => Some(match typed::<RawInvariance>("invariance", v)? {
            RawInvariance::Scale { lambda } => {
                check_real("invariance.lambda", lambda, lambda > 0.0, "positive")?;
                InvarianceMode::Scale { lambda }
            }
            RawInvariance::Power { m } => {
                if m == 0 {
                    return Err(Error::config("invariance.m", "invariance.m must be >= 1"));
                }
                InvarianceMode::Power { m }
            }
            RawInvariance::HillBase { n } => {
                if n == 0 {
                    return Err(Error::config("invariance.n", "invariance.n must be >= 1"));
                }
                InvarianceMode::HillBase { n }
            }
            RawInvariance::Product { other } => InvarianceMode::Product {
                other: generator_spec("invariance.other", other, base)?,
            },
        }),
    };

    let density = match raw.density {
        None => None,
        Some(v) => {
            let d: RawDensity = typed("density", v)?;
            let h_max = d.h_max.unwrap_or(DEFAULT_H_MAX);
            if h_max == 0 {
                return Err(Error::config("density.h_max", "density.h_max must be >= 1"));
            }
            let density = PiecewiseDensity::new(d.breakpoints, d.heights).map_err(|e| match e {
                Error::Domain(msg) => Error::config("density", msg),
                other => other,
            })?;
            Some(DensitySpec { density, h_max })
        }
    };

    Ok(Scenario {
        base,
        seed,
        length,
        trajectories,
        harmonics,
        generator,
        options,
        invariance,
        density,
    })
}

impl Scenario {
    /// Applies command-line overrides of `trajectories` and `length`.
    pub fn with_overrides(
        mut self,
        replicas: Option<usize>,
        length: Option<usize>,
    ) -> Result<Self> {
        if let Some(m) = replicas {
            if m == 0 {
                return Err(Error::config("trajectories", "--replicas must be >= 1"));
            }
            self.trajectories = m;
            self.options.replicas = m;
        }
        if let Some(n) = length {
            if n == 0 {
                return Err(Error::config("length", "--length must be >= 1"));
            }
            self.length = n;
        }
        Ok(self)
    }

    fn require_generator(&self, command: Command) -> Result<&GeneratorSpec> {
        self.generator.as_ref().ok_or_else(|| {
            Error::config(
                "generator",
                format!("generator is required by {}", command.name()),
            )
        })
    }

    /// Trajectory `0` of the scenario, seeded `derive_seed(seed, 0)`.
    pub fn trajectory(&self, command: Command) -> Result<MantissaTrajectory> {
        let spec = self.require_generator(command)?;
        let seed = derive_seed(self.seed, 0);
        accumulate(&mut spec.stream(seed), seed, self.length)
    }
}

/// Result of a successful [`run`].
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub verdicts: Vec<Verdict>,
}

impl Outcome {
    pub fn any_fails(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fails)
    }
}

/// Process exit status for a finished command.
pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(o) if o.any_fails() => 1,
        Ok(_) => 0,
        Err(Error::Io(_)) => 3,
        Err(_) => 2,
    }
}

/// 17 significant digits; `nan` and infinities spelled out for CSV.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn json_real(x: f64) -> String {
    if x.is_finite() {
        fmt_real(x)
    } else {
        "null".into()
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Deterministic JSON array of verdicts, reals at 17 significant digits.
pub fn verdicts_json(verdicts: &[Verdict]) -> String {
    let mut out = String::from("[\n");
    for (i, v) in verdicts.iter().enumerate() {
        let status = match v.status {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        };
        let _ = write!(
            out,
            "  {{\n    \"name\": {},\n    \"status\": \"{status}\",\n    \"evidence\": [",
            json_string(&v.name)
        );
        for (j, e) in v.evidence.iter().enumerate() {
            let sep = if j == 0 { "\n" } else { ",\n" };
            let _ = write!(
                out,
                "{sep}      {{\"label\": {}, \"value\": {}}}",
                json_string(&e.label),
                json_real(e.value)
            );
        }
        if !v.evidence.is_empty() {
            out.push_str("\n    ");
        }
        let _ = write!(
            out,
            "],\n    \"tolerance\": {}\n  }}",
            json_real(v.tolerance)
        );
        out.push_str(if i + 1 < verdicts.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    out
}

/// Indices `1..=100`, then a 5% geometric grid, always ending at `n`.
pub fn output_grid(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n.min(DENSE_PREFIX)).collect();
    let mut x = DENSE_PREFIX as f64;
    loop {
        x *= GRID_RATIO;
        let k = x.round() as usize;
        if k >= n {
            break;
        }
        if k > *out.last().unwrap() {
            out.push(k);
        }
    }
    if *out.last().unwrap() != n {
        out.push(n);
    }
    out
}

/// Prefix lengths `16, 32, 64, …` below `n`, then `n`.
pub fn conformance_ladder(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = CONFORMANCE_START;
    while k < n {
        out.push(k);
        k *= 2;
    }
    out.push(n);
    out
}

fn write(out_dir: &Path, name: &str, body: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    let path = out_dir.join(name);
    fs::write(&path, body)?;
    files.push(path);
    Ok(())
}

fn opt_real(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

/// `N,ks,dstar,chi2,dof` rows along [`conformance_ladder`].
pub fn conformance_csv(traj: &MantissaTrajectory) -> Result<String> {
    let mut out = String::from("N,ks,dstar,chi2,dof\n");
    for n in conformance_ladder(traj.len()) {
        let r = conformance(&traj.prefix(n))?;
        let dof = r.dof.map(|d| d.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{n},{},{},{},{dof}",
            fmt_real(r.ks),
            fmt_real(r.dstar),
            opt_real(r.chi2)
        );
    }
    Ok(out)
}

/// `n,fraclog,mantissa` for every step.
pub fn trajectory_csv(traj: &MantissaTrajectory) -> String {
    let mut out = String::with_capacity(48 * traj.len() + 32);
    out.push_str("n,fraclog,mantissa\n");
    for (i, &f) in traj.points().iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{}",
            i + 1,
            fmt_real(f.value()),
            fmt_real(mantissa_of(f, traj.base()))
        );
    }
    out
}

/// `h,n,re,im,abs,stderr,analytic_abs` on [`output_grid`], replicas
/// seeded `derive_seed(seed, i)`.
pub fn fourier_csv(scenario: &Scenario) -> Result<String> {
    let spec = scenario.require_generator(Command::Fourier)?;
    let indices = output_grid(scenario.length);
    let ensembles = ensemble_fourier(
        spec,
        &indices,
        &scenario.harmonics,
        scenario.trajectories.max(2),
        scenario.seed,
    )?;
    let mut out = String::from("h,n,re,im,abs,stderr,analytic_abs\n");
    for ef in &ensembles {
        for e in &ef.entries {
            let analytic = analytic_fourier_abs(spec, ef.harmonic, e.n);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                ef.harmonic,
                e.n,
                fmt_real(e.estimate.re),
                fmt_real(e.estimate.im),
                fmt_real(e.estimate.norm()),
                fmt_real(e.stderr),
                opt_real(analytic)
            );
        }
    }
    Ok(out)
}

/// `h,N,re,im,abs` of trajectory `0` on [`output_grid`].
pub fn weyl_csv(scenario: &Scenario) -> Result<String> {
    let traj = scenario.trajectory(Command::Weyl)?;
    let grid = output_grid(traj.len());
    let mut out = String::from("h,N,re,im,abs\n");
    for &h in &scenario.harmonics {
        let w = weyl_series(&traj, h)?;
        for &n in &grid {
            let t = w.values()[n - 1];
            let _ = writeln!(
                out,
                "{h},{n},{},{},{}",
                fmt_real(t.re),
                fmt_real(t.im),
                fmt_real(t.norm())
            );
        }
    }
    Ok(out)
}

/// Runs one command and writes its files into `out_dir` (created if
/// missing).
pub fn run(command: Command, scenario: &Scenario, out_dir: &Path, dump: bool) -> Result<Outcome> {
    fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();
    let mut verdicts = Vec::new();
    match command {
        Command::Simulate => {
            let traj = scenario.trajectory(command)?;
            write(
                out_dir,
                "conformance.csv",
                &conformance_csv(&traj)?,
                &mut files,
            )?;
            if dump {
                write(
                    out_dir,
                    "trajectory.csv",
                    &trajectory_csv(&traj),
                    &mut files,
                )?;
            }
        }
        Command::Fourier => write(out_dir, "fourier.csv", &fourier_csv(scenario)?, &mut files)?,
        Command::Weyl => write(out_dir, "weyl.csv", &weyl_csv(scenario)?, &mut files)?,
        Command::Check => {
            let spec = scenario.require_generator(command)?;
            verdicts = check_family(spec, &scenario.options)?;
        }
        Command::Invariance => {
            let mode = scenario.invariance.as_ref().ok_or_else(|| {
                Error::config("invariance", "invariance is required by invariance")
            })?;
            verdicts.push(invariance_suite(
                mode,
                scenario.base,
                scenario.trajectories,
                scenario.seed,
            )?);
        }
        Command::Bound => {
            let d = scenario
                .density
                .as_ref()
                .ok_or_else(|| Error::config("density", "density is required by bound"))?;
            verdicts.push(density_fourier_bound_check(&d.density, d.h_max)?);
        }
    }
    if matches!(
        command,
        Command::Check | Command::Invariance | Command::Bound
    ) {
        write(
            out_dir,
            "verdicts.json",
            &verdicts_json(&verdicts),
            &mut files,
        )?;
    }
    Ok(Outcome { files, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str =
        r#"{"base":10,"seed":1,"length":1000,"generator":{"family":"iid_benford"}}"#;

    fn config_key(text: &str) -> (String, String) {
        match parse_scenario(text) {
            Err(Error::Config { key, message }) => (key, message),
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_document_gets_defaults() {
        let s = parse_scenario(MINIMAL).unwrap();
        assert_eq!(s.base.value(), 10.0);
        assert_eq!(s.seed, Seed(1));
        assert_eq!(s.length, 1000);
        assert_eq!(s.trajectories, 100);
        assert_eq!(
            s.harmonics.iter().map(|h| h.get()).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert_eq!(s.generator.unwrap().family(), &Family::IidBenford {});
    }

    #[test]
    fn bad_base_names_the_key() {
        let (key, msg) = config_key(r#"{"base":0.5,"seed":1,"length":10}"#);
        assert_eq!(key, "base");
        assert!(msg.contains("base must exceed 1"));
    }

    #[test]
    fn unnormalized_atoms_are_rejected() {
        let (key, msg) = config_key(
            r#"{"base":10,"seed":1,"length":10,"generator":{"family":"iid_atoms","atoms":[{"value":2,"prob":0.5},{"value":3,"prob":0.4}]}}"#,
        );
        assert_eq!(key, "generator");
        assert!(msg.contains("normaliz"), "{msg}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let (key, _) = config_key(r#"{"base":10,"seed":1,"length":10,"colour":"red"}"#);
        assert_eq!(key, "colour");
        let (key, msg) = config_key(
            r#"{"base":10,"seed":1,"length":10,"generator":{"family":"iid_benford","x":1}}"#,
        );
        assert_eq!(key, "generator");
        assert!(msg.contains('x'), "{msg}");
        let (key, _) =
            config_key(r#"{"base":10,"seed":1,"length":10,"generator":{"family":"pareto"}}"#);
        assert_eq!(key, "generator");
        let (key, _) = config_key(r#"{"base":10,"seed":1,"length":10,"options":{"q":1}}"#);
        assert_eq!(key, "options");
    }

    #[test]
    fn invariants_on_counts_and_harmonics() {
        assert_eq!(config_key(r#"{"base":10,"seed":1,"length":0}"#).0, "length");
        assert_eq!(
            config_key(r#"{"base":10,"seed":1,"length":5,"trajectories":0}"#).0,
            "trajectories"
        );
        assert_eq!(
            config_key(r#"{"base":10,"seed":1,"length":5,"harmonics":[]}"#).0,
            "harmonics"
        );
        assert_eq!(
            config_key(r#"{"base":10,"seed":1,"length":5,"harmonics":[1,1]}"#).0,
            "harmonics"
        );
        assert_eq!(
            config_key(r#"{"base":10,"seed":1,"length":5,"harmonics":[0]}"#).0,
            "harmonics"
        );
        assert_eq!(config_key(r#"{"base":10,"length":5}"#).0, "seed");
    }

    #[test]
    fn grids() {
        assert_eq!(output_grid(3), vec![1, 2, 3]);
        let g = output_grid(100_000);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(g[99], 100);
        assert_eq!(*g.last().unwrap(), 100_000);
        assert_eq!(conformance_ladder(10), vec![10]);
        assert_eq!(conformance_ladder(100), vec![16, 32, 64, 100]);
        assert_eq!(conformance_ladder(64), vec![16, 32, 64]);
    }

    #[test]
    fn reals_have_seventeen_significant_digits() {
        assert_eq!(fmt_real(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_real(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt_real(-2.5), "-2.5000000000000000e0");
    }

    #[test]
    fn verdicts_json_is_valid_and_shaped() {
        let v = vec![
            Verdict::new("a", 0.05).with("h", 1.0).status(Status::Fails),
            Verdict::new("b\"q", 1e-9).with("x", f64::INFINITY),
            Verdict::new("c", 0.0).status(Status::Holds),
        ];
        let parsed: Value = serde_json::from_str(&verdicts_json(&v)).unwrap();
        assert_eq!(parsed[0]["status"], "fails");
        assert_eq!(parsed[0]["evidence"][0]["value"], 1.0);
        assert_eq!(parsed[1]["name"], "b\"q");
        assert!(parsed[1]["evidence"][0]["value"].is_null());
        assert_eq!(parsed[2]["evidence"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn exit_codes() {
        let ok = Ok(Outcome {
            files: vec![],
            verdicts: vec![],
        });
        assert_eq!(exit_code(&ok), 0);
        let fails = Ok(Outcome {
            files: vec![],
            verdicts: vec![Verdict::new("x", 0.0).status(Status::Fails)],
        });
        assert_eq!(exit_code(&fails), 1);
        assert_eq!(exit_code(&Err(Error::config("k", "m"))), 2);
        assert_eq!(exit_code(&Err(Error::Io(std::io::Error::other("x")))), 3);
    }
}

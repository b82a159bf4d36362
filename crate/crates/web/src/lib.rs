//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes a scenario document (the same JSON the CLI reads) and
//! returns a JSON string for the page to plot.

use benford_walk::checks::analytic_fourier_abs;
use benford_walk::mantissa::mantissa_of;
use benford_walk::scenario::{output_grid, parse_scenario, Command, Scenario};
use benford_walk::statistics::{conformance, ensemble_fourier};
use benford_walk::walk::weyl_series;
use benford_walk::Harmonic;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest trajectory the page will run.
pub const MAX_LENGTH: usize = 1_000_000;
/// Largest `replicas × length` for ensemble plots.
pub const MAX_WORK: usize = 20_000_000;

fn scenario(text: &str) -> Result<Scenario, String> {
    let s = parse_scenario(text).map_err(|e| e.to_string())?;
    if s.length > MAX_LENGTH {
        return Err(format!("length is capped at {MAX_LENGTH} in the browser"));
    }
    Ok(s)
}

/// Histogram of `s_n` over `bins` equal cells, digit frequencies and the
/// distance to the Benford law of trajectory 0.
pub fn histogram_json(text: &str, bins: usize) -> Result<Value, String> {
    let s = scenario(text)?;
    let bins = bins.clamp(1, 1000);
    let traj = s.trajectory(Command::Simulate).map_err(|e| e.to_string())?;
    let mut counts = vec![0usize; bins];
    for f in traj.values() {
        counts[((f * bins as f64) as usize).min(bins - 1)] += 1;
    }
    let n = traj.len() as f64;
    let density: Vec<f64> = counts.iter().map(|&c| c as f64 * bins as f64 / n).collect();
    let edges: Vec<f64> = (0..=bins)
        .map(|i| {
            mantissa_of(
                benford_walk::FracLog::new(i as f64 / bins as f64).unwrap(),
                s.base,
            )
        })
        .collect();
    let report = conformance(&traj).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": traj.len(),
        "density": density,
        "mantissa_edges": edges,
        "ks": report.ks,
        "dstar": report.dstar,
        "chi2": report.chi2,
        "digits": report.digit_freqs.iter().map(|&(d, f)| json!({
            "digit": d,
            "freq": f,
            "benford": benford_walk::mantissa::first_digit_prob(d, s.base).unwrap_or(f64::NAN),
        })).collect::<Vec<_>>(),
    }))
}

/// `|T_N|` of trajectory 0 for every configured harmonic, on the thinned grid.
pub fn weyl_json(text: &str) -> Result<Value, String> {
    let s = scenario(text)?;
    let traj = s.trajectory(Command::Weyl).map_err(|e| e.to_string())?;
    let grid = output_grid(traj.len());
    let mut curves = Vec::new();
    for &h in &s.harmonics {
        let w = weyl_series(&traj, h).map_err(|e| e.to_string())?;
        let abs: Vec<f64> = grid.iter().map(|&n| w.values()[n - 1].norm()).collect();
        curves.push(json!({"h": h.get(), "abs": abs}));
    }
    Ok(json!({"N": grid, "curves": curves}))
}

/// Monte Carlo `|E e_h(log_b Y_n)|` for `n = 1..=length`, next to the
/// closed form where one exists.
pub fn fourier_json(text: &str) -> Result<Value, String> {
    let s = scenario(text)?;
    if s.length.saturating_mul(s.trajectories) > MAX_WORK {
        return Err(format!(
            "replicas × length is capped at {MAX_WORK} in the browser"
        ));
    }
    let spec = s.generator.as_ref().ok_or("generator is required")?;
    let idx: Vec<usize> = (1..=s.length).collect();
    let ef = ensemble_fourier(spec, &idx, &s.harmonics, s.trajectories.max(2), s.seed)
        .map_err(|e| e.to_string())?;
    let series: Vec<Value> = ef
        .iter()
        .map(|e| {
            let h: Harmonic = e.harmonic;
            json!({
                "h": h.get(),
                "abs": e.entries.iter().map(|x| x.estimate.norm()).collect::<Vec<_>>(),
                "stderr": e.entries.iter().map(|x| x.stderr).collect::<Vec<_>>(),
                "analytic": idx.iter().map(|&n| analytic_fourier_abs(spec, h, n)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({"n": idx, "series": series, "replicas": s.trajectories.max(2)}))
}

fn export(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = mantissaHistogram)]
pub fn mantissa_histogram(scenario: &str, bins: usize) -> Result<String, JsError> {
    export(histogram_json(scenario, bins))
}

#[wasm_bindgen(js_name = weylCurve)]
pub fn weyl_curve(scenario: &str) -> Result<String, JsError> {
    export(weyl_json(scenario))
}

#[wasm_bindgen(js_name = fourierDecay)]
pub fn fourier_decay(scenario: &str) -> Result<String, JsError> {
    export(fourier_json(scenario))
}

//! Fourier-side conditions: Cesàro means of `E e_h(log_b Y_l)`, the series
//! `Σ E|T_N|^p / N`, and closed-form coefficients where a family has them.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::{gaussian_fourier_magnitude, gaussian_variance_growth, Status, Verdict, DECAY_RATIO};
use crate::generators::{derive_seed, Family, GeneratorSpec, Kernel, Seed};
use crate::mantissa::{cis_turns, fraclog, unit_phase, Harmonic};
use crate::parallel::map_indexed;
use crate::statistics::EnsembleFourier;
use crate::walk::Accumulator;
use crate::{Error, Result};

/// Plain average of a sequence of coefficients.
pub fn cesaro_mean(values: &[Complex64]) -> Result<Complex64> {
    if values.is_empty() {
        return Err(Error::domain("Cesàro mean of an empty sequence"));
    }
    // Running mean: exact on constant sequences.
    let mut mean = Complex64::new(0.0, 0.0);
    for (k, &v) in values.iter().enumerate() {
        mean += (v - mean) / (k + 1) as f64;
    }
    Ok(mean)
}

fn prefix_entries(ef: &EnsembleFourier, l: usize) -> Result<(Vec<Complex64>, Vec<f64>)> {
    let mut est = vec![None; l];
    for e in &ef.entries {
        if (1..=l).contains(&e.n) {
            est[e.n - 1] = Some((e.estimate, e.stderr));
        }
    }
    let mut values = Vec::with_capacity(l);
    let mut errs = Vec::with_capacity(l);
    for (i, slot) in est.into_iter().enumerate() {
        let (v, s) =
            slot.ok_or_else(|| Error::domain(format!("ensemble is missing index {}", i + 1)))?;
        values.push(v);
        errs.push(s);
    }
    Ok((values, errs))
}

/// `(1/L) Σ_{l≤L} Ê e_h(log_b Y_l)`; the ensemble must cover `1..=L`.
pub fn cesaro_fourier(ef: &EnsembleFourier, l: usize) -> Result<Complex64> {
    if l == 0 {
        return Err(Error::domain("Cesàro length must be positive"));
    }
    let (values, _) = prefix_entries(ef, l)?;
    cesaro_mean(&values)
}

/// Cesàro condition along the ladder `L₀, 2L₀, 4L₀`.
///
/// The aggregate standard error at `L` is the mean of the per-index errors
/// (an upper bound whatever the correlation between indices).
pub fn cesaro_verdict(ef: &EnsembleFourier, l0: usize, tol: f64) -> Result<Verdict> {
    let mut v = Verdict::new("cesaro_fourier", tol).with("h", ef.harmonic.get() as f64);
    let mut mags = Vec::new();
    let mut last_se = 0.0;
    for l in [l0, 2 * l0, 4 * l0] {
        let (values, errs) = prefix_entries(ef, l)?;
        let mag = cesaro_mean(&values)?.norm();
        last_se = errs.iter().sum::<f64>() / l as f64;
        v.push(format!("cesaro_abs_L{l}"), mag);
        mags.push(mag);
    }
    v.push("aggregate_stderr", last_se);
    let band = 3.0 * last_se;
    let (first, last) = (mags[0], mags[2]);
    let monotone = mags.windows(2).all(|w| w[1] <= w[0] + band);
    let status = if last <= tol + band && monotone {
        Status::Holds
    } else if last > tol + band && last >= DECAY_RATIO * first - band {
        Status::Fails
    } else {
        Status::Inconclusive
    };
    Ok(v.status(status))
}

/// Weak convergence at the end of the ensemble: `|Ê e_h(log_b Y_n)|` at
/// the largest index against the one at half of it.
pub fn weak_convergence_verdict(ef: &EnsembleFourier, tol: f64) -> Verdict {
    let mut v = Verdict::new("weak_convergence", tol).with("h", ef.harmonic.get() as f64);
    let Some(last) = ef.entries.iter().max_by_key(|e| e.n) else {
        return v.with("entries", 0.0);
    };
    let half = ef
        .entries
        .iter()
        .filter(|e| e.n <= last.n / 2)
        .max_by_key(|e| e.n)
        .unwrap_or(last);
    let (a_last, a_half) = (last.estimate.norm(), half.estimate.norm());
    v.push("n", last.n as f64);
    v.push("abs", a_last);
    v.push("abs_half", a_half);
    v.push("stderr", last.stderr);
    let band = 3.0 * last.stderr.max(half.stderr);
    let status = if a_last <= tol + band {
        Status::Holds
    } else if a_last >= DECAY_RATIO * a_half - band {
        Status::Fails
    } else {
        Status::Inconclusive
    };
    v.status(status)
}

/// Partial sums of `Σ E|T_N|^p / N` along a doubling ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct DelvReport {
    pub p: f64,
    /// `moments[N-1] = Ê|T_N|^p`.
    pub moments: Vec<f64>,
    /// `(K, Σ_{N≤K} moments/N)` for `K = 1, 2, 4, …` (plus the last index).
    pub ladder: Vec<(usize, f64)>,
    pub verdict: Verdict,
}

/// Builds the report from known moments (analytic or estimated).
pub fn delv_from_moments(moments: &[f64], p: f64) -> Result<DelvReport> {
    if moments.len() < 16 {
        return Err(Error::domain("the DELV ladder needs at least 16 moments"));
    }
    let mut partial = Vec::with_capacity(moments.len());
    let mut acc = 0.0;
    for (i, m) in moments.iter().enumerate() {
        acc += m / (i + 1) as f64;
        partial.push(acc);
    }
    let mut rungs = Vec::new();
    let mut k = 1;
    while k <= moments.len() {
        rungs.push(k);
        k *= 2;
    }
    let doubling = rungs.len();
    if *rungs.last().unwrap() != moments.len() {
        rungs.push(moments.len());
    }
    let ladder: Vec<(usize, f64)> = rungs.iter().map(|&k| (k, partial[k - 1])).collect();

    let increments: Vec<f64> = ladder[..doubling]
        .windows(2)
        .map(|w| w[1].1 - w[0].1)
        .collect();
    let ratios: Vec<f64> = increments
        .windows(2)
        .map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 })
        .collect();
    let tail = &ratios[ratios.len().saturating_sub(3)..];
    let worst = tail.iter().copied().fold(0.0, f64::max);

    let mut verdict = Verdict::new("delv_partial_sums", DECAY_RATIO).with("p", p);
    for &(k, s) in &ladder {
        verdict.push(format!("S_{k}"), s);
    }
    verdict.push("increment_ratio_last", *ratios.last().unwrap_or(&0.0));
    verdict.push("increment_ratio_max_tail", worst);
    let status = if worst < DECAY_RATIO {
        Status::Holds
    } else {
        Status::Inconclusive
    };
    Ok(DelvReport {
        p,
        moments: moments.to_vec(),
        ladder,
        verdict: verdict.status(status),
    })
}

/// Monte Carlo estimate of `E|T_N^{(h)}|^p` for `N = 1..=n_max` over `m`
/// replicas, summarized by [`delv_from_moments`].
pub fn delv_partial_sums(
    spec: &GeneratorSpec,
    h: Harmonic,
    p: f64,
    n_max: usize,
    m: usize,
    master: Seed,
) -> Result<DelvReport> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::domain(format!("p must be >= 1 (got {p})")));
    }
    if n_max < 16 {
        return Err(Error::domain(format!("N_max must be >= 16 (got {n_max})")));
    }
    if m == 0 {
        return Err(Error::domain("at least one replica is needed"));
    }
    let rows = map_indexed(m, |i| -> Result<Vec<f64>> {
        let mut stream = spec.stream(derive_seed(master, i as u64));
        let mut acc = Accumulator::new();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut out = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            sum += unit_phase(h, acc.push(stream.next_fraclog()?));
            out.push((sum.norm() / n as f64).powf(p));
        }
        Ok(out)
    });
    let mut moments = vec![0.0; n_max];
    for row in rows {
        for (acc, x) in moments.iter_mut().zip(row?) {
            *acc += x;
        }
    }
    moments.iter_mut().for_each(|x| *x /= m as f64);
    let mut report = delv_from_moments(&moments, p)?;
    report.verdict.evidence.insert(
        0,
        super::Evidence {
            label: "h".into(),
            value: h.get() as f64,
        },
    );
    Ok(report)
}

/// `|Γ(1 + iy)| = √(πy / sinh πy)`.
fn gamma_one_plus_i_abs(y: f64) -> f64 {
    let y = y.abs();
    if y == 0.0 {
        return 1.0;
    }
    let t = PI * y;
    // πy/sinh(πy) = 2πy·e^{−πy}/(1 − e^{−2πy}), taken in logs.
    (0.5 * ((2.0 * t).ln() - t - (-(-2.0 * t).exp_m1()).ln())).exp()
}

/// Closed-form `|E e_h(log_b Y_n)|` when the family admits one.
///
/// With `ω = 2πh/ln b`, the coefficient is the characteristic function of
/// `log Y_n` at `ω`. Families whose law needs an integral over the
/// randomizer (the `exp_product` kernel) return `None`.
pub fn analytic_fourier_abs(spec: &GeneratorSpec, h: Harmonic, n: usize) -> Option<f64> {
    if n == 0 {
        return None;
    }
    let base = spec.base();
    let omega = TAU * h.get() as f64 / base.ln();
    let nf = n as f64;
    let ni = n as i32;
    match spec.family() {
        Family::IidLognormal { .. }
        | Family::GaussianAr1 { .. }
        | Family::GaussianCov { .. }
        | Family::BrownianLog { .. } => {
            let v = gaussian_variance_growth(spec, n).ok()?;
            gaussian_fourier_magnitude(h, v, base).ok()
        }
        Family::IidExponential { .. } => Some(gamma_one_plus_i_abs(omega).powf(nf)),
        Family::IidWeibull { shape, .. } => Some(gamma_one_plus_i_abs(omega / shape).powf(nf)),
        Family::IidAtoms { atoms } => {
            let one: Complex64 = atoms
                .iter()
                .map(|a| {
                    let f = fraclog(a.value, base).ok()?.value();
                    Some(cis_turns(h.get() as f64 * f) * a.prob)
                })
                .sum::<Option<Complex64>>()?;
            Some(one.norm().powi(ni))
        }
        Family::IidBenford {} => Some(0.0),
        Family::Constant { .. } => Some(1.0),
        Family::CounterexamplePairs {} => Some(if n.is_multiple_of(2) { 1.0 } else { 0.0 }),
        Family::Exchangeable {
            kernel: Kernel::ExpSum,
            dist_u,
            dist_z,
        } => Some(dist_u.char_fn(nf * omega).norm() * dist_z.char_fn(omega).norm().powi(ni)),
        Family::OneDependent {
            kernel: Kernel::ExpSum,
            dist_z,
        } => {
            // log Y_n = Z_1 + 2(Z_2 + … + Z_n) + Z_{n+1}
            Some(
                dist_z.char_fn(omega).norm().powi(2)
                    * dist_z.char_fn(2.0 * omega).norm().powi(ni - 1),
            )
        }
        Family::Exchangeable { .. } | Family::OneDependent { .. } => None,
    }
}

/// Agreement of the Monte Carlo coefficients with the closed form, at
/// `4/√M` per entry.
pub fn fourier_oracle_verdict(
    spec: &GeneratorSpec,
    ensembles: &[EnsembleFourier],
) -> Option<Verdict> {
    let first = ensembles.first()?;
    analytic_fourier_abs(spec, first.harmonic, 1)?;
    let tol = 4.0 / (first.replicas as f64).sqrt();
    let mut worst = (0.0f64, 0u32, 0usize);
    for ef in ensembles {
        for e in &ef.entries {
            let want = analytic_fourier_abs(spec, ef.harmonic, e.n)?;
            let dev = (e.estimate.norm() - want).abs();
            if dev > worst.0 {
                worst = (dev, ef.harmonic.get(), e.n);
            }
        }
    }
    let status = if worst.0 <= tol {
        Status::Holds
    } else {
        Status::Fails
    };
    Some(
        Verdict::new("fourier_oracle", tol)
            .with("max_abs_deviation", worst.0)
            .with("at_h", worst.1 as f64)
            .with("at_n", worst.2 as f64)
            .with("replicas", first.replicas as f64)
            .status(status),
    )
}

//! Distributional diagnostics: distance to the Benford law along one
//! trajectory, first-digit χ², and Monte Carlo Fourier coefficients of
//! `log_b Y_n` across an ensemble of trajectories.
//!
//! No p-values are computed. Decisions use fixed critical values:
//! [`kolmogorov_critical_1pct`] and [`CHI2_8_CRITICAL_1PCT`].

use num_complex::Complex64;

use crate::generators::{derive_seed, GeneratorSpec, Seed};
use crate::mantissa::{
    cis_turns, first_digit_prob, mantissa_of, unit_phase, Base, FracLog, Harmonic,
};
use crate::parallel::map_indexed;
use crate::walk::{Accumulator, MantissaTrajectory};
use crate::{Error, Result};

/// Upper 1% point of χ² with 8 degrees of freedom (base 10 first digits).
pub const CHI2_8_CRITICAL_1PCT: f64 = 20.09;

/// Guard for the quadratic-cost identity evaluation.
pub const MAX_ROBBINS_N: usize = 10_000;

/// Asymptotic 1% critical value of the Kolmogorov statistic, `1.63/√n`.
pub fn kolmogorov_critical_1pct(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

/// Exact Kolmogorov distance of a sample of `[0, 1)` to the uniform law.
pub fn ks_uniform(sample: &[f64]) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::domain("KS statistic of an empty sample"));
    }
    let mut sorted = sample.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &u)| ((i + 1) as f64 / n - u).max(u - i as f64 / n))
        .fold(0.0, f64::max))
}

/// Kolmogorov distance of the mantissae to `μ_b` (equivalently of the
/// fraclogs to the uniform law).
pub fn ks_to_benford(traj: &MantissaTrajectory) -> Result<f64> {
    ks_uniform(&traj.values().collect::<Vec<_>>())
}

/// Star discrepancy over intervals `[0, c)`, from the sorted sample.
pub fn star_discrepancy(traj: &MantissaTrajectory) -> Result<f64> {
    // Same closed form as the KS distance; a two-sided (extreme)
    // discrepancy would differ.
    ks_uniform(&traj.values().collect::<Vec<_>>())
}

/// Leading digit `⌊b^f⌋` of a point in an integer base.
pub fn leading_digit(f: FracLog, base: Base, int_base: u32) -> u32 {
    (mantissa_of(f, base).floor() as u32).clamp(1, int_base - 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DigitTest {
    pub n: usize,
    pub chi2: f64,
    pub dof: u32,
    /// `(digit, relative frequency)` for every digit `1..b`.
    pub digit_freqs: Vec<(u32, f64)>,
}

fn integer_base(base: Base) -> Result<u32> {
    base.as_integer().filter(|&b| b >= 2).ok_or_else(|| {
        Error::domain(format!(
            "first-digit statistics need an integer base, got {base}"
        ))
    })
}

fn digit_counts(traj: &MantissaTrajectory) -> Result<Vec<u64>> {
    let b = integer_base(traj.base())?;
    let mut counts = vec![0u64; b as usize - 1];
    for &p in traj.points() {
        counts[leading_digit(p, traj.base(), b) as usize - 1] += 1;
    }
    Ok(counts)
}

/// Pearson statistic `Σ_d (O_d − N p_d)² / (N p_d)` for observed digit
/// counts `observed[d-1]`.
pub fn chi_square_statistic(observed: &[f64], base: Base) -> Result<f64> {
    let b = integer_base(base)?;
    if observed.len() != b as usize - 1 {
        return Err(Error::domain(format!("expected {} digit counts", b - 1)));
    }
    let n: f64 = observed.iter().sum();
    observed
        .iter()
        .enumerate()
        .map(|(i, &o)| {
            let e = n * first_digit_prob(i as u32 + 1, base)?;
            Ok((o - e) * (o - e) / e)
        })
        .sum()
}

/// First-digit χ² test against `log_b(1 + 1/d)`, `b − 2` degrees of freedom.
pub fn chi_square_first_digit(traj: &MantissaTrajectory) -> Result<DigitTest> {
    let b = integer_base(traj.base())?;
    let n = traj.len();
    if n < 5 * (b as usize - 1) {
        return Err(Error::domain(format!(
            "χ² needs at least {} points in base {b}, got {n}",
            5 * (b - 1)
        )));
    }
    let counts = digit_counts(traj)?;
    let observed: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    Ok(DigitTest {
        n,
        chi2: chi_square_statistic(&observed, traj.base())?,
        dof: b - 2,
        digit_freqs: counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u32 + 1, c as f64 / n as f64))
            .collect(),
    })
}

/// Summary of one trajectory's agreement with the Benford law.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformanceReport {
    pub n: usize,
    pub ks: f64,
    pub dstar: f64,
    /// `None` for non-integer bases or too few points.
    pub chi2: Option<f64>,
    pub dof: Option<u32>,
    /// Empty for non-integer bases.
    pub digit_freqs: Vec<(u32, f64)>,
}

pub fn conformance(traj: &MantissaTrajectory) -> Result<ConformanceReport> {
    let ks = ks_to_benford(traj)?;
    let dstar = star_discrepancy(traj)?;
    let (chi2, dof, digit_freqs) = match chi_square_first_digit(traj) {
        Ok(t) => (Some(t.chi2), Some(t.dof), t.digit_freqs),
        Err(_) if traj.base().as_integer().is_some_and(|b| b >= 2) => {
            let counts = digit_counts(traj)?;
            let n = traj.len() as f64;
            let freqs = counts
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as u32 + 1, c as f64 / n))
                .collect();
            (None, None, freqs)
        }
        Err(_) => (None, None, Vec::new()),
    };
    Ok(ConformanceReport {
        n: traj.len(),
        ks,
        dstar,
        chi2,
        dof,
        digit_freqs,
    })
}

/// Right-hand side of the exact identity
/// `|T_N|² = 1/N + (2/N²) Σ_{k<n≤N} Re e_h(s_n − s_k)`.
pub fn robbins_rhs(traj: &MantissaTrajectory, h: Harmonic, n: usize) -> Result<f64> {
    if n == 0 || n > traj.len() {
        return Err(Error::domain(format!(
            "robbins_rhs needs 1 <= N <= {} (got {n})",
            traj.len()
        )));
    }
    if n > MAX_ROBBINS_N {
        return Err(Error::Capacity {
            requested: n,
            limit: MAX_ROBBINS_N,
        });
    }
    let s: Vec<f64> = traj.values().take(n).collect();
    let hf = h.get() as f64;
    let mut cross = 0.0;
    for j in 1..n {
        for k in 0..j {
            cross += cis_turns(hf * (s[j] - s[k])).re;
        }
    }
    let nf = n as f64;
    Ok(1.0 / nf + 2.0 * cross / (nf * nf))
}

/// Monte Carlo estimate of `E e_h(log_b Y_n)` at one index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierEntry {
    pub n: usize,
    pub estimate: Complex64,
    /// Larger of the real/imaginary standard errors.
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleFourier {
    pub harmonic: Harmonic,
    pub replicas: usize,
    pub entries: Vec<FourierEntry>,
}

impl EnsembleFourier {
    pub fn entry(&self, n: usize) -> Option<&FourierEntry> {
        self.entries.iter().find(|e| e.n == n)
    }
}

/// `s_n` at each requested index, for replicas `0..m` seeded by
/// `derive_seed(master, i)`. Rows come back in replica order.
pub fn cross_sections(
    spec: &GeneratorSpec,
    indices: &[usize],
    m: usize,
    master: Seed,
) -> Result<Vec<Vec<f64>>> {
    if indices.contains(&0) {
        return Err(Error::domain("ensemble indices are 1-based"));
    }
    let n_max = indices.iter().copied().max().unwrap_or(0);
    if let Some(cap) = spec.capacity() {
        if n_max > cap {
            return Err(Error::Capacity {
                requested: n_max,
                limit: cap,
            });
        }
    }
    let rows = map_indexed(m, |i| -> Result<Vec<f64>> {
        let mut stream = spec.stream(derive_seed(master, i as u64));
        let mut acc = Accumulator::new();
        let mut path = Vec::with_capacity(n_max);
        for _ in 0..n_max {
            path.push(acc.push(stream.next_fraclog()?).value());
        }
        Ok(indices.iter().map(|&n| path[n - 1]).collect())
    });
    rows.into_iter().collect()
}

fn mean_and_stderr(values: &[Complex64]) -> (Complex64, f64) {
    let m = values.len() as f64;
    let mean = values.iter().sum::<Complex64>() / m;
    let (var_re, var_im) = values.iter().fold((0.0, 0.0), |(vr, vi), z| {
        let d = z - mean;
        (vr + d.re * d.re, vi + d.im * d.im)
    });
    // Population variances: each is at most E|z|² = 1, so stderr <= 1/√M.
    let sd = (var_re / m).max(var_im / m).sqrt();
    (mean, sd / m.sqrt())
}

/// Monte Carlo Fourier coefficients `E e_h(log_b Y_n)` for every
/// `h ∈ harmonics` and `n ∈ indices`, over `m` replicas.
pub fn ensemble_fourier(
    spec: &GeneratorSpec,
    indices: &[usize],
    harmonics: &[Harmonic],
    m: usize,
    master: Seed,
) -> Result<Vec<EnsembleFourier>> {
    if m < 2 {
        return Err(Error::domain("ensemble_fourier needs at least 2 replicas"));
    }
    let rows = cross_sections(spec, indices, m, master)?;
    let mut out = Vec::with_capacity(harmonics.len());
    let mut phases = vec![Complex64::new(0.0, 0.0); m];
    for &h in harmonics {
        let mut entries = Vec::with_capacity(indices.len());
        for (j, &n) in indices.iter().enumerate() {
            for (slot, row) in phases.iter_mut().zip(&rows) {
                *slot = unit_phase(h, FracLog::wrap(row[j]));
            }
            let (estimate, stderr) = mean_and_stderr(&phases);
            entries.push(FourierEntry {
                n,
                estimate,
                stderr,
            });
        }
        out.push(EnsembleFourier {
            harmonic: h,
            replicas: m,
            entries,
        });
    }
    Ok(out)
}

/// KS distance to the Benford law of the cross-section `s_n` over `m`
/// independent replicas.
pub fn ensemble_ks_at(spec: &GeneratorSpec, n: usize, m: usize, master: Seed) -> Result<f64> {
    if m < 10 {
        return Err(Error::domain("ensemble_ks_at needs at least 10 replicas"));
    }
    let rows = cross_sections(spec, &[n], m, master)?;
    ks_uniform(&rows.iter().map(|r| r[0]).collect::<Vec<_>>())
}

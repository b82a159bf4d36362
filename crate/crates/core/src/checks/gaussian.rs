//! Gaussian log-sums: growth of `V_n = Var(log Y_n)` and the matching
//! Fourier magnitude.
//!
//! Covariances follow the one-based convention `γ(1) = Var(log X_1)`,
//! `γ(k) = Cov(log X_1, log X_k)`, so
//! `V_n = n·γ(1) + 2(n−1)·γ(2) + ⋯ + 2·γ(n)`.

use std::f64::consts::PI;

use super::{Status, Verdict};
use crate::generators::{Family, GeneratorSpec};
use crate::mantissa::{Base, Harmonic};
use crate::{Error, Result};

/// `V_n = Var(log Y_n)` in natural-log units.
pub fn gaussian_variance_growth(spec: &GeneratorSpec, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("variance growth index starts at 1"));
    }
    match spec.family() {
        Family::BrownianLog { times } => {
            if n > times.len() {
                return Err(Error::Capacity {
                    requested: n,
                    limit: times.len(),
                });
            }
            // Σ_k (t_k − t_{k−1})·(n − k + 1)² with t_0 = 0.
            let mut prev = 0.0;
            let mut v = 0.0;
            for (k, &t) in times[..n].iter().enumerate() {
                let w = (n - k) as f64;
                v += (t - prev) * w * w;
                prev = t;
            }
            Ok(v)
        }
        Family::GaussianCov { gamma, .. } => {
            let last = n.min(gamma.len());
            Ok(stationary_sum(n, last, |k| gamma[k - 1]))
        }
        Family::IidLognormal { .. } | Family::GaussianAr1 { .. } => {
            let mut err = None;
            let v = stationary_sum(n, n, |k| {
                spec.gamma_of(k).unwrap_or_else(|e| {
                    err = Some(e);
                    0.0
                })
            });
            match err {
                Some(e) => Err(e),
                None => Ok(v),
            }
        }
        other => Err(Error::UnsupportedFamily {
            family: other.name(),
            operation: "gaussian_variance_growth",
        }),
    }
}

fn stationary_sum(n: usize, last: usize, mut gamma: impl FnMut(usize) -> f64) -> f64 {
    let mut v = n as f64 * gamma(1);
    for k in 2..=last {
        v += 2.0 * (n - k + 1) as f64 * gamma(k);
    }
    v
}

/// `exp(−2π²h²V/ln²b)`, the modulus of `E e_h(log_b Y_n)` when
/// `log Y_n ~ N(·, V)`.
pub fn gaussian_fourier_magnitude(h: Harmonic, v: f64, b: Base) -> Result<f64> {
    if !(v >= 0.0) {
        return Err(Error::domain(format!(
            "variance must be non-negative (got {v})"
        )));
    }
    let hf = h.get() as f64;
    Ok((-2.0 * PI * PI * hf * hf * v / (b.ln() * b.ln())).exp())
}

/// Divergence of `V_n` along `n₀, 2n₀, 4n₀, 8n₀`.
///
/// Holds when every ratio `V_{2n}/V_n` is at least `1 + tol`, fails when
/// none is (a plateau), and is inconclusive otherwise.
pub fn variance_growth_verdict(spec: &GeneratorSpec, n0: usize, tol: f64) -> Result<Verdict> {
    if n0 == 0 {
        return Err(Error::domain("ladder start must be positive"));
    }
    let mut v = Verdict::new("gaussian_variance_growth", tol);
    let mut values = Vec::new();
    for n in [n0, 2 * n0, 4 * n0, 8 * n0] {
        let vn = gaussian_variance_growth(spec, n)?;
        v.push(format!("V_{n}"), vn);
        values.push(vn);
    }
    let ratios: Vec<f64> = values
        .windows(2)
        .map(|w| {
            if w[0] > 0.0 {
                w[1] / w[0]
            } else {
                f64::INFINITY
            }
        })
        .collect();
    let growing = ratios.iter().filter(|&&r| r >= 1.0 + tol).count();
    v.push(
        "ratio_min",
        ratios.iter().copied().fold(f64::INFINITY, f64::min),
    );
    let status = if growing == ratios.len() {
        Status::Holds
    } else if growing == 0 {
        Status::Fails
    } else {
        Status::Inconclusive
    };
    Ok(v.status(status))
}

//! Density caps on `{log_b X}` and the Fourier bound `√(1 − 1/(4a²))`.

use std::f64::consts::{E, TAU};

use num_complex::Complex64;

use super::{Status, Verdict};
use crate::generators::{Family, GeneratorSpec};
use crate::mantissa::{cis_turns, Base};
use crate::statistics::EnsembleFourier;
use crate::{Error, Result};

const NORMALIZATION_TOL: f64 = 1e-12;
const BOUND_SLACK: f64 = 1e-9;

/// Step density on `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseDensity {
    breakpoints: Vec<f64>,
    heights: Vec<f64>,
    sup: f64,
}

impl PiecewiseDensity {
    /// `breakpoints` run `0 = t_0 < … < t_m = 1`; `heights[j]` applies on
    /// `[t_j, t_{j+1})`.
    pub fn new(breakpoints: Vec<f64>, heights: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 || heights.len() + 1 != breakpoints.len() {
            return Err(Error::domain(
                "a density needs m + 1 breakpoints for m heights",
            ));
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return Err(Error::domain("breakpoints must start at 0 and end at 1"));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("breakpoints must be strictly increasing"));
        }
        if heights.iter().any(|h| !(h.is_finite() && *h >= 0.0)) {
            return Err(Error::domain("heights must be finite and non-negative"));
        }
        let mass: f64 = heights
            .iter()
            .zip(breakpoints.windows(2))
            .map(|(h, w)| h * (w[1] - w[0]))
            .sum();
        if (mass - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::domain(format!(
                "density integrates to {mass}, not 1"
            )));
        }
        let sup = heights.iter().copied().fold(0.0, f64::max);
        Ok(PiecewiseDensity {
            breakpoints,
            heights,
            sup,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    /// `a = sup height`.
    pub fn sup(&self) -> f64 {
        self.sup
    }

    /// `E e_h(Z) = Σ_j height_j·(e(h t_{j+1}) − e(h t_j)) / (2πih)`.
    pub fn fourier_coefficient(&self, h: u32) -> Complex64 {
        if h == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let hf = h as f64;
        let sum: Complex64 = self
            .heights
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(&a, w)| (cis_turns(hf * w[1]) - cis_turns(hf * w[0])) * a)
            .sum();
        sum / Complex64::new(0.0, TAU * hf)
    }
}

/// `√(1 − 1/(4a²))`.
pub fn fourier_cap(a: f64) -> f64 {
    (1.0 - 1.0 / (4.0 * a * a)).max(0.0).sqrt()
}

/// Checks `|E e_h(Z)| ≤ √(1 − 1/(4a²))` for `h = 1..=h_max`.
pub fn density_fourier_bound_check(density: &PiecewiseDensity, h_max: u32) -> Result<Verdict> {
    if h_max == 0 {
        return Err(Error::domain("h_max must be >= 1"));
    }
    let bound = fourier_cap(density.sup());
    let (mut worst, mut at) = (0.0f64, 1u32);
    for h in 1..=h_max {
        let m = density.fourier_coefficient(h).norm();
        if m > worst {
            worst = m;
            at = h;
        }
    }
    let status = if worst <= bound + BOUND_SLACK {
        Status::Holds
    } else {
        Status::Fails
    };
    Ok(Verdict::new("density_fourier_bound", BOUND_SLACK)
        .with("a", density.sup())
        .with("bound", bound)
        .with("max_abs", worst)
        .with("at_h", at as f64)
        .with("h_max", h_max as f64)
        .status(status))
}

/// `(1 + 2d)/ln b`: cap on the mantissa density when `log_b X` has a
/// unimodal density bounded by `d`.
pub fn unimodal_mantissa_bound(d: f64, b: Base) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain(format!("d_n must be positive (got {d})")));
    }
    Ok((1.0 + 2.0 * d) / b.ln())
}

/// Supremum of the density of `log_b X_1` for unimodal i.i.d. families.
pub fn log_density_peak(family: &Family, b: Base) -> Option<f64> {
    match *family {
        Family::IidLognormal { sigma, .. } => Some(b.ln() / (sigma * TAU.sqrt())),
        Family::IidExponential { .. } => Some(b.ln() / E),
        Family::IidWeibull { shape, .. } => Some(shape * b.ln() / E),
        _ => None,
    }
}

/// For unimodal i.i.d. families: `{log_b X}` has density at most
/// `a = 1 + 2d`, so every `|E e_h(log_b X_1)|` sits below `√(1 − 1/(4a²))`.
pub(crate) fn unimodal_verdict(
    spec: &GeneratorSpec,
    ensembles: &[EnsembleFourier],
) -> Result<Option<Verdict>> {
    let Some(d) = log_density_peak(spec.family(), spec.base()) else {
        return Ok(None);
    };
    let a = 1.0 + 2.0 * d;
    let bound = fourier_cap(a);
    let mut v = Verdict::new("unimodal_density_cap", 0.0)
        .with("d", d)
        .with(
            "mantissa_density_cap",
            unimodal_mantissa_bound(d, spec.base())?,
        )
        .with("a", a)
        .with("bound", bound);
    let mut ok = true;
    for ef in ensembles {
        if let Some(e) = ef.entry(1) {
            let slack = 3.0 * e.stderr;
            v.push(format!("abs_h{}", ef.harmonic.get()), e.estimate.norm());
            v.tolerance = v.tolerance.max(slack);
            ok &= e.estimate.norm() <= bound + slack;
        }
    }
    Ok(Some(v.status(if ok {
        Status::Holds
    } else {
        Status::Fails
    })))
}

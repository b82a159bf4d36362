//! Numerical evaluation of the convergence conditions and invariances.
//!
//! No finite computation proves a limit. Every check here evaluates its
//! condition along a doubling ladder and reports [`Status::Holds`],
//! [`Status::Fails`] or [`Status::Inconclusive`] together with the numbers
//! it looked at.

mod density;
mod fourier;
mod gaussian;
mod invariance;
mod lattice;

use serde::{Deserialize, Serialize};

pub use density::{density_fourier_bound_check, PiecewiseDensity};
pub use fourier::{
    analytic_fourier_abs, cesaro_fourier, cesaro_mean, cesaro_verdict, delv_from_moments,
    delv_partial_sums, fourier_oracle_verdict, weak_convergence_verdict, DelvReport,
};
pub use gaussian::{gaussian_fourier_magnitude, gaussian_variance_growth, variance_growth_verdict};
pub use invariance::{benford_sample, invariance_suite, scale_identity_error, InvarianceMode};
pub use lattice::{lattice_support_test, lattice_verdicts, LatticeHit};

use crate::generators::{derive_seed, Family, GeneratorSpec, Seed};
use crate::mantissa::Harmonic;
use crate::statistics::ensemble_fourier;
use crate::Result;

/// Decay ratio below which a ladder counts as geometrically shrinking.
pub const DECAY_RATIO: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub evidence: Vec<Evidence>,
    pub tolerance: f64,
}

impl Verdict {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Verdict {
            name: name.into(),
            status: Status::Inconclusive,
            evidence: Vec::new(),
            tolerance,
        }
    }

    pub fn with(mut self, label: impl Into<String>, value: f64) -> Self {
        self.push(label, value);
        self
    }

    pub fn push(&mut self, label: impl Into<String>, value: f64) {
        self.evidence.push(Evidence {
            label: label.into(),
            value,
        });
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn value_of(&self, label: &str) -> Option<f64> {
        self.evidence
            .iter()
            .find(|e| e.label == label)
            .map(|e| e.value)
    }
}

/// Knobs of [`check_family`].
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOptions {
    pub harmonics: Vec<Harmonic>,
    pub replicas: usize,
    pub master: Seed,
    /// First rung `L₀` of the Cesàro ladder `L₀, 2L₀, 4L₀`.
    pub ladder_start: usize,
    pub cesaro_tol: f64,
    pub p: f64,
    pub delv_n_max: usize,
    pub growth_start: usize,
    pub growth_tol: f64,
    pub lattice_max_h: u32,
    pub lattice_tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            harmonics: [1, 2, 3].map(|h| Harmonic::new(h).unwrap()).to_vec(),
            replicas: 100,
            master: Seed(0),
            ladder_start: 16,
            cesaro_tol: 0.05,
            p: 2.0,
            delv_n_max: 512,
            growth_start: 16,
            growth_tol: 1e-3,
            lattice_max_h: 32,
            lattice_tol: 1e-9,
        }
    }
}

/// Runs every check that applies to the family of `spec`.
pub fn check_family(spec: &GeneratorSpec, opts: &CheckOptions) -> Result<Vec<Verdict>> {
    let cap = spec.capacity().unwrap_or(usize::MAX);
    let mut out = Vec::new();

    let l0 = opts.ladder_start.min(cap / 4).max(1);
    let indices: Vec<usize> = (1..=4 * l0).collect();
    let ensembles = ensemble_fourier(
        spec,
        &indices,
        &opts.harmonics,
        opts.replicas.max(2),
        derive_seed(opts.master, 0),
    )?;
    for ef in &ensembles {
        out.push(cesaro_verdict(ef, l0, opts.cesaro_tol)?);
    }
    for ef in &ensembles {
        out.push(weak_convergence_verdict(ef, opts.cesaro_tol));
    }
    if let Some(v) = fourier_oracle_verdict(spec, &ensembles) {
        out.push(v);
    }

    let delv_n = opts.delv_n_max.min(cap);
    for &h in &opts.harmonics {
        let report = delv_partial_sums(
            spec,
            h,
            opts.p,
            delv_n,
            opts.replicas.max(2),
            derive_seed(opts.master, 1),
        )?;
        out.push(report.verdict);
    }

    if spec.family().is_gaussian() {
        let start = if cap == usize::MAX {
            opts.growth_start
        } else {
            opts.growth_start.min(cap / 8).max(1)
        };
        out.push(variance_growth_verdict(spec, start, opts.growth_tol)?);
    }

    if let Family::IidAtoms { atoms } = spec.family() {
        let values: Vec<f64> = atoms.iter().map(|a| a.value).collect();
        out.extend(lattice_verdicts(
            &values,
            spec.base(),
            opts.lattice_max_h,
            opts.lattice_tol,
        )?);
    }

    if let Some(v) = density::unimodal_verdict(spec, &ensembles)? {
        out.push(v);
    }
    Ok(out)
}

pub use density::{log_density_peak, unimodal_mantissa_bound};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mantissa::Base;

    #[test]
    fn verdict_serializes_to_the_documented_shape() {
        let v = Verdict::new("cesaro_fourier", 0.05)
            .with("h", 1.0)
            .status(Status::Fails);
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "name": "cesaro_fourier",
                "status": "fails",
                "evidence": [{"label": "h", "value": 1.0}],
                "tolerance": 0.05
            })
        );
    }

    #[test]
    fn inconclusive_verdicts_carry_evidence() {
        let base = Base::new(10.0).unwrap();
        let families = [
            Family::Constant { c: 10.0 },
            Family::Constant { c: 2.0 },
            Family::IidBenford {},
            Family::CounterexamplePairs {},
            Family::GaussianAr1 {
                phi: 0.5,
                sigma: 1.0,
                mean: 0.0,
            },
            Family::GaussianCov {
                gamma: vec![1.0, -0.5],
                n_max: 256,
            },
            Family::IidWeibull {
                shape: 2.0,
                scale: 1.0,
            },
        ];
        for f in families {
            let spec = GeneratorSpec::new(f, base).unwrap();
            let opts = CheckOptions {
                delv_n_max: 128,
                ..CheckOptions::default()
            };
            for v in check_family(&spec, &opts).unwrap() {
                if v.status == Status::Inconclusive {
                    assert!(!v.evidence.is_empty(), "{v:?}");
                }
            }
        }
    }

    #[test]
    fn counterexample_fails_cesaro() {
        let spec =
            GeneratorSpec::new(Family::CounterexamplePairs {}, Base::new(10.0).unwrap()).unwrap();
        let verdicts = check_family(&spec, &CheckOptions::default()).unwrap();
        let cesaro: Vec<_> = verdicts
            .iter()
            .filter(|v| v.name == "cesaro_fourier")
            .collect();
        assert_eq!(cesaro.len(), 3);
        assert!(cesaro.iter().all(|v| v.status == Status::Fails));
    }
}

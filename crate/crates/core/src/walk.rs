//! The product walk `s_n = {log_b Y_n}` and its Weyl prefix averages.

use num_complex::Complex64;

use crate::generators::{Seed, Stream};
use crate::mantissa::{unit_phase, Base, FracLog, Harmonic};
use crate::{Error, Result};

/// Longest trajectory that will be materialized.
pub const MAX_TRAJECTORY_LEN: usize = 10_000_000;

/// Running sum modulo one with a Kahan compensation term.
///
/// The wrap subtracts exactly `1.0` (exact for a sum in `[1, 2)`), so the
/// compensation residual stays valid across it.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one step and returns the new point of the walk.
    pub fn push(&mut self, step: FracLog) -> FracLog {
        let y = step.value() - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        let mut s = t;
        if s >= 1.0 {
            s -= 1.0;
        } else if s < 0.0 {
            s += 1.0;
            if s >= 1.0 {
                s = 0.0;
            }
        }
        self.sum = s;
        FracLog::wrap(s)
    }
}

/// `s_1, …, s_N` for one seed.
#[derive(Debug, Clone, PartialEq)]
pub struct MantissaTrajectory {
    base: Base,
    seed: Seed,
    points: Vec<FracLog>,
}

impl MantissaTrajectory {
    /// Wraps precomputed points; each value is reduced into `[0, 1)`.
    pub fn from_points(base: Base, seed: Seed, points: &[f64]) -> Result<Self> {
        let points = points
            .iter()
            .map(|&p| FracLog::new(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(MantissaTrajectory { base, seed, points })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn seed(&self) -> Seed {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[FracLog] {
        &self.points
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.value())
    }

    /// First `n` points as a new trajectory.
    pub fn prefix(&self, n: usize) -> MantissaTrajectory {
        MantissaTrajectory {
            base: self.base,
            seed: self.seed,
            points: self.points[..n.min(self.points.len())].to_vec(),
        }
    }
}

/// Runs `n` steps of the walk driven by `stream`.
pub fn accumulate(stream: &mut Stream, seed: Seed, n: usize) -> Result<MantissaTrajectory> {
    if n == 0 {
        return Err(Error::domain("trajectory length must be positive"));
    }
    if n > MAX_TRAJECTORY_LEN {
        return Err(Error::Capacity {
            requested: n,
            limit: MAX_TRAJECTORY_LEN,
        });
    }
    if let Some(cap) = stream.spec().capacity() {
        if stream.emitted() + n > cap {
            return Err(Error::Capacity {
                requested: stream.emitted() + n,
                limit: cap,
            });
        }
    }
    let mut acc = Accumulator::new();
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        points.push(acc.push(stream.next_fraclog()?));
    }
    Ok(MantissaTrajectory {
        base: stream.spec().base(),
        seed,
        points,
    })
}

/// Weyl prefix averages `T_N = (1/N) Σ_{n≤N} e_h(s_n)` for every `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylSeries {
    harmonic: Harmonic,
    base: Base,
    values: Vec<Complex64>,
}

impl WeylSeries {
    pub fn harmonic(&self) -> Harmonic {
        self.harmonic
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// `values()[N-1]` is `T_N`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, n: usize) -> Option<Complex64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }
}

pub fn weyl_series(traj: &MantissaTrajectory, h: Harmonic) -> Result<WeylSeries> {
    if traj.is_empty() {
        return Err(Error::domain("weyl_series needs a non-empty trajectory"));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let values = traj
        .points
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            sum += unit_phase(h, s);
            sum / (i + 1) as f64
        })
        .collect();
    Ok(WeylSeries {
        harmonic: h,
        base: traj.base,
        values,
    })
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use crate::generators::{Family, GeneratorSpec};
    use crate::mantissa::{circular_distance, cis_turns};
    use proptest::prelude::*;

    // log10(2) as a double-double.
    const LOG10_2_HI: f64 = 0.301_029_995_663_981_2;
    const LOG10_2_LO: f64 = -2.803_728_127_785_170_4e-18;

    fn ten() -> Base {
        Base::new(10.0).unwrap()
    }

    fn walk(f: Family, seed: u64, n: usize) -> MantissaTrajectory {
        let spec = GeneratorSpec::new(f, ten()).unwrap();
        accumulate(&mut spec.stream(Seed(seed)), Seed(seed), n).unwrap()
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    #[test]
    fn constant_base_stays_at_zero() {
        let t = walk(Family::Constant { c: 10.0 }, 1, 1000);
        assert!(t.values().all(|s| s == 0.0));
    }

    #[test]
    fn constant_two_matches_high_precision_value() {
        let t = walk(Family::Constant { c: 2.0 }, 1, 10);
        // frac(10·log10 2) = 0.0102999566398119521...
        assert!((t.points()[9].value() - 0.010_299_956_639_811_952).abs() < 1e-15);
    }

    #[test]
    fn counterexample_pairs_return_to_zero() {
        let t = walk(Family::CounterexamplePairs {}, 4, 10_000);
        assert!(t
            .points()
            .iter()
            .skip(1)
            .step_by(2)
            .all(|s| s.value() == 0.0));
    }

    #[test]
    fn compensated_walk_tracks_double_double_oracle() {
        let n = 1_000_000;
        let t = walk(Family::Constant { c: 2.0 }, 1, n);
        let step = crate::mantissa::fraclog(2.0, ten()).unwrap().value();
        // Oracle 1: the same f64 step summed in double-double.
        let (mut hi, mut lo) = (0.0f64, 0.0f64);
        // Oracle 2: n·log10 2 with the double-double constant.
        let mut worst_sum = 0.0f64;
        let mut worst_exact = 0.0f64;
        for (i, s) in t.values().enumerate() {
            let (h, e) = two_sum(hi, step);
            let (h, l) = two_sum(h, e + lo);
            let fl = h.floor();
            let (h, e) = two_sum(h - fl, l);
            hi = h;
            lo = e;
            worst_sum = worst_sum.max(circular_distance(s, hi + lo));

            let k = (i + 1) as f64;
            let p = k * LOG10_2_HI;
            let perr = k.mul_add(LOG10_2_HI, -p) + k * LOG10_2_LO;
            let exact = (p - p.floor()) + perr;
            worst_exact = worst_exact.max(circular_distance(s, exact));
        }
        assert!(worst_sum <= 1e-10, "accumulation error {worst_sum:e}");
        assert!(
            worst_exact <= 1e-10,
            "error vs exact multiples {worst_exact:e}"
        );
    }

    #[test]
    fn accumulate_rejects_bad_lengths() {
        let spec = GeneratorSpec::new(Family::IidBenford {}, ten()).unwrap();
        assert!(accumulate(&mut spec.stream(Seed(0)), Seed(0), 0).is_err());
        assert!(matches!(
            accumulate(&mut spec.stream(Seed(0)), Seed(0), MAX_TRAJECTORY_LEN + 1),
            Err(Error::Capacity { .. })
        ));
        let cov = GeneratorSpec::new(
            Family::GaussianCov {
                gamma: vec![1.0],
                n_max: 10,
            },
            ten(),
        )
        .unwrap();
        assert!(matches!(
            accumulate(&mut cov.stream(Seed(0)), Seed(0), 11),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn weyl_of_constant_base_is_one() {
        let t = walk(Family::Constant { c: 10.0 }, 1, 100);
        for h in 1..5 {
            let w = weyl_series(&t, Harmonic::new(h).unwrap()).unwrap();
            assert!(w.values().iter().all(|&v| v == Complex64::new(1.0, 0.0)));
        }
    }

    #[test]
    fn weyl_of_geometric_sequence_matches_closed_form() {
        let n = 10_000;
        let t = walk(Family::Constant { c: 2.0 }, 1, n);
        let w = weyl_series(&t, Harmonic::new(1).unwrap()).unwrap();
        let alpha = LOG10_2_HI;
        let pi = std::f64::consts::PI;
        for k in [1usize, 7, 100, 5000, n] {
            let oracle = ((pi * k as f64 * alpha).sin() / (k as f64 * (pi * alpha).sin())).abs();
            assert!((w.at(k).unwrap().norm() - oracle).abs() < 1e-9, "N = {k}");
        }
        assert!(w.at(n).unwrap().norm() <= 0.01);
    }

    #[test]
    fn weyl_of_benford_walk_is_small() {
        for seed in 0..20 {
            let t = walk(Family::IidBenford {}, seed, 100_000);
            let w = weyl_series(&t, Harmonic::new(1).unwrap()).unwrap();
            assert!(w.at(100_000).unwrap().norm() <= 0.02, "seed {seed}");
        }
    }

    proptest! {
        #[test]
        fn weyl_values_bounded(points in proptest::collection::vec(0f64..1.0, 1..300), h in 1u32..10) {
            let t = MantissaTrajectory::from_points(ten(), Seed(0), &points).unwrap();
            let w = weyl_series(&t, Harmonic::new(h).unwrap()).unwrap();
            prop_assert!(w.values().iter().all(|v| v.norm() <= 1.0 + 1e-15));
        }

        #[test]
        fn van_der_corput_inequality(xs in proptest::collection::vec(0f64..1.0, 1..100)) {
            // Phases in turns: e^{i(x_1+…+x_n)} with x_k = 2π·xs[k].
            let n = xs.len();
            let mut prefix = vec![0.0; n + 1];
            for k in 0..n {
                prefix[k + 1] = prefix[k] + xs[k];
            }
            let lhs = ((1..=n).map(|k| cis_turns(prefix[k])).sum::<Complex64>() / n as f64).norm_sqr();
            let nf = n as f64;
            for l_cap in 1..=n {
                let lf = l_cap as f64;
                let mut inner = Complex64::new(0.0, 0.0);
                for l in 1..l_cap {
                    let block: Complex64 = (1..=n - l).map(|j| cis_turns(prefix[j + l] - prefix[j])).sum();
                    inner += block * (l_cap - l) as f64;
                }
                let rhs = 2.0 / lf + 2.0 * ((nf + lf - 1.0) / (lf * lf * nf * nf) * inner).re;
                prop_assert!(lhs <= rhs + 1e-9, "L = {l_cap}: {lhs} > {rhs}");
            }
        }
    }
}

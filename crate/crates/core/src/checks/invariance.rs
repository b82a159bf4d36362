//! Invariances of the Benford law under scaling, powers, independent
//! products and change to a root base.

use super::{Status, Verdict};
use crate::generators::{derive_seed, Family, GeneratorSpec, Seed, Xoshiro256PlusPlus};
use crate::mantissa::{circular_distance, fraclog, mantissa_of, Base, FracLog};
use crate::parallel::map_indexed;
use crate::statistics::{kolmogorov_critical_1pct, ks_uniform};
use crate::{Error, Result};

/// Pairs used for the pointwise scale identity.
pub const SCALE_PAIRS: usize = 1000;
/// Tolerance of the pointwise scale identity.
pub const SCALE_IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum InvarianceMode {
    /// `λX` for a Benford `X`.
    Scale { lambda: f64 },
    /// `X^m`.
    Power { m: u32 },
    /// `XY` with `Y` independent of the Benford `X`; `Y` is the first
    /// factor of `other`.
    Product { other: GeneratorSpec },
    /// `X` read in base `b^{1/n}`.
    HillBase { n: u32 },
}

impl InvarianceMode {
    pub fn name(&self) -> &'static str {
        match self {
            InvarianceMode::Scale { .. } => "scale_invariance",
            InvarianceMode::Power { .. } => "power_invariance",
            InvarianceMode::Product { .. } => "product_invariance",
            InvarianceMode::HillBase { .. } => "hill_base_invariance",
        }
    }

    fn validate(&self, base: Base) -> Result<()> {
        match self {
            InvarianceMode::Scale { lambda } if !(*lambda > 0.0 && lambda.is_finite()) => Err(
                Error::domain(format!("lambda must be positive (got {lambda})")),
            ),
            InvarianceMode::Power { m: 0 } => Err(Error::domain("power m must be >= 1")),
            InvarianceMode::HillBase { n: 0 } => Err(Error::domain("hill_base n must be >= 1")),
            InvarianceMode::Product { other } if other.base() != base => {
                Err(Error::domain("product factor must use the same base"))
            }
            _ => Ok(()),
        }
    }
}

/// `M` fraclogs of a Benford variable in base `b`.
pub fn benford_sample(base: Base, m: usize, seed: Seed) -> Result<Vec<f64>> {
    let spec = GeneratorSpec::new(Family::IidBenford {}, base)?;
    spec.stream(seed)
        .take(m)
        .map(|r| r.map(FracLog::value))
        .collect()
}

fn shift(f: f64, g: f64) -> f64 {
    FracLog::wrap(f + g).value()
}

/// Maximum circular error of `fraclog(λx) = frac(fraclog λ + fraclog x)`
/// over random pairs with `λ, x ∈ [b^{-12}, b^{12}]`.
pub fn scale_identity_error(base: Base, pairs: usize, seed: Seed) -> Result<f64> {
    let mut rng = Xoshiro256PlusPlus::from_seed(seed);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let lambda = base.value().powf(24.0 * rng.uniform() - 12.0);
        let x = base.value().powf(24.0 * rng.uniform() - 12.0);
        let lhs = fraclog(lambda * x, base)?.value();
        let rhs = shift(fraclog(lambda, base)?.value(), fraclog(x, base)?.value());
        worst = worst.max(circular_distance(lhs, rhs));
    }
    Ok(worst)
}

/// Transforms a Benford sample by `mode` and tests the image for
/// uniformity at the 1% Kolmogorov level.
pub fn invariance_suite(
    mode: &InvarianceMode,
    base: Base,
    m: usize,
    master: Seed,
) -> Result<Verdict> {
    mode.validate(base)?;
    if m < 10 {
        return Err(Error::domain("invariance checks need at least 10 replicas"));
    }
    let f = benford_sample(base, m, derive_seed(master, 0))?;
    let threshold = kolmogorov_critical_1pct(m);
    let mut v = Verdict::new(mode.name(), threshold).with("replicas", m as f64);

    let image: Vec<f64> = match mode {
        InvarianceMode::Scale { lambda } => {
            let g = fraclog(*lambda, base)?.value();
            v.push("lambda", *lambda);
            f.iter().map(|&x| shift(x, g)).collect()
        }
        InvarianceMode::Power { m: p } => {
            v.push("m", *p as f64);
            f.iter()
                .map(|&x| FracLog::wrap(*p as f64 * x).value())
                .collect()
        }
        InvarianceMode::Product { other } => {
            let seed = derive_seed(master, 1);
            let g = map_indexed(m, |i| {
                other.stream(derive_seed(seed, i as u64)).next_fraclog()
            });
            f.iter()
                .zip(g)
                .map(|(&x, g)| g.map(|g| shift(x, g.value())))
                .collect::<Result<_>>()?
        }
        InvarianceMode::HillBase { n } => {
            let root = Base::new(base.value().powf(1.0 / *n as f64))?;
            v.push("n", *n as f64);
            f.iter()
                .map(|&x| fraclog(mantissa_of(FracLog::wrap(x), base), root).map(FracLog::value))
                .collect::<Result<_>>()?
        }
    };

    let ks = ks_uniform(&image)?;
    v.push("ks", ks);
    v.push("ks_threshold", threshold);
    let mut ok = ks <= threshold;
    if let InvarianceMode::Scale { .. } = mode {
        let err = scale_identity_error(base, SCALE_PAIRS, derive_seed(master, 2))?;
        v.push("ks_unshifted", ks_uniform(&f)?);
        v.push("pointwise_max_error", err);
        ok &= err <= SCALE_IDENTITY_TOL;
    }
    Ok(v.status(if ok { Status::Holds } else { Status::Fails }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ten() -> Base {
        Base::new(10.0).unwrap()
    }

    #[test]
    fn scale_by_base_leaves_the_sample_unchanged() {
        let v = invariance_suite(
            &InvarianceMode::Scale { lambda: 10.0 },
            ten(),
            1000,
            Seed(3),
        )
        .unwrap();
        assert_eq!(v.status, Status::Holds);
        assert_eq!(v.value_of("ks"), v.value_of("ks_unshifted"));
        assert!(v.value_of("pointwise_max_error").unwrap() <= 1e-12);
    }

    #[test]
    fn scale_by_three_holds() {
        let v = invariance_suite(
            &InvarianceMode::Scale { lambda: 3.0 },
            ten(),
            10_000,
            Seed(1),
        )
        .unwrap();
        assert_eq!(v.status, Status::Holds, "{v:?}");
    }

    #[test]
    fn product_with_constant_is_scaling() {
        let c = 3.7;
        let other = GeneratorSpec::new(Family::Constant { c }, ten()).unwrap();
        let p = invariance_suite(&InvarianceMode::Product { other }, ten(), 5000, Seed(9)).unwrap();
        let s =
            invariance_suite(&InvarianceMode::Scale { lambda: c }, ten(), 5000, Seed(9)).unwrap();
        assert_eq!(p.value_of("ks"), s.value_of("ks"));
    }

    #[test]
    fn power_and_hill_base_hold() {
        let v = invariance_suite(&InvarianceMode::Power { m: 7 }, ten(), 100_000, Seed(2)).unwrap();
        assert_eq!(v.status, Status::Holds);
        assert!(v.value_of("ks").unwrap() <= 0.006);
        let v =
            invariance_suite(&InvarianceMode::HillBase { n: 3 }, ten(), 20_000, Seed(2)).unwrap();
        assert_eq!(v.status, Status::Holds, "{v:?}");
    }

    #[test]
    fn benford_in_ten_is_not_benford_in_seven() {
        let f = benford_sample(ten(), 10_000, Seed(4)).unwrap();
        let seven = Base::new(7.0).unwrap();
        let g: Vec<f64> = f
            .iter()
            .map(|&x| {
                fraclog(mantissa_of(FracLog::wrap(x), ten()), seven)
                    .unwrap()
                    .value()
            })
            .collect();
        assert!(ks_uniform(&g).unwrap() > 0.05);
    }

    #[test]
    fn invalid_parameters() {
        assert!(
            invariance_suite(&InvarianceMode::Scale { lambda: 0.0 }, ten(), 100, Seed(0)).is_err()
        );
        assert!(invariance_suite(&InvarianceMode::Power { m: 0 }, ten(), 100, Seed(0)).is_err());
        assert!(invariance_suite(&InvarianceMode::HillBase { n: 0 }, ten(), 100, Seed(0)).is_err());
        let other = GeneratorSpec::new(Family::IidBenford {}, Base::new(2.0).unwrap()).unwrap();
        assert!(invariance_suite(&InvarianceMode::Product { other }, ten(), 100, Seed(0)).is_err());
    }
}

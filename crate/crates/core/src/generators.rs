//! Seeded streams of `{log_b X_n}` for every supported family of factors.
//!
//! Randomness comes from xoshiro256++ whose four state words are
//! `derive_seed(seed, 0..4)`; normal variates use the Marsaglia polar
//! method. Both are spelled out here, rather than pulled from a crate, so
//! that streams are reproducible at the algorithm level.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::mantissa::{fraclog, Base, FracLog};
use crate::{Error, Result};

/// Largest covariance matrix accepted by `gaussian_cov`.
pub const MAX_COV_DIMENSION: usize = 4096;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const ATOM_PROB_TOLERANCE: f64 = 1e-9;
const CHOLESKY_JITTER: [f64; 4] = [0.0, 1e-12, 1e-11, 1e-10];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

/// SplitMix64 finalizer of `master + index·φ` (all arithmetic mod 2⁶⁴).
pub fn derive_seed(master: Seed, index: u64) -> Seed {
    let mut z = master.0.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    Seed(z ^ (z >> 31))
}

/// xoshiro256++ with a cached spare normal deviate.
#[derive(Debug, Clone)]
pub struct Xoshiro256PlusPlus {
    s: [u64; 4],
    spare_normal: Option<f64>,
}

impl Xoshiro256PlusPlus {
    pub fn from_seed(seed: Seed) -> Self {
        let s = [0, 1, 2, 3].map(|i| derive_seed(seed, i).0);
        Xoshiro256PlusPlus {
            s,
            spare_normal: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[0].wrapping_add(s[3]).rotate_left(23).wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform on `[0, 1)`, a multiple of 2⁻⁵³.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn open_uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let m = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * m);
                return u * m;
            }
        }
    }
}

/// Scalar law used for the shared randomizer `U` and the innovations `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScalarDist {
    Normal { mu: f64, sigma: f64 },
    Uniform { lo: f64, hi: f64 },
    Exponential { rate: f64 },
}

impl ScalarDist {
    fn validate(&self, what: &str) -> Result<()> {
        let ok = match *self {
            ScalarDist::Normal { mu, sigma } => mu.is_finite() && sigma.is_finite() && sigma >= 0.0,
            ScalarDist::Uniform { lo, hi } => lo.is_finite() && hi.is_finite() && lo <= hi,
            ScalarDist::Exponential { rate } => rate.is_finite() && rate > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{what}: invalid parameters {self:?}"
            )))
        }
    }

    pub fn sample(&self, rng: &mut Xoshiro256PlusPlus) -> f64 {
        match *self {
            ScalarDist::Normal { mu, sigma } => mu + sigma * rng.standard_normal(),
            ScalarDist::Uniform { lo, hi } => lo + (hi - lo) * rng.uniform(),
            ScalarDist::Exponential { rate } => -(-rng.open_uniform()).ln_1p() / rate,
        }
    }

    /// Characteristic function `E exp(iωD)`.
    pub fn char_fn(&self, omega: f64) -> Complex64 {
        match *self {
            ScalarDist::Normal { mu, sigma } => {
                Complex64::from_polar((-0.5 * sigma * sigma * omega * omega).exp(), omega * mu)
            }
            ScalarDist::Uniform { lo, hi } => {
                let w = hi - lo;
                if omega == 0.0 || w == 0.0 {
                    return Complex64::from_polar(1.0, omega * lo);
                }
                let half = 0.5 * omega * w;
                Complex64::from_polar(half.sin() / half, omega * (lo + hi) * 0.5)
            }
            ScalarDist::Exponential { rate } => {
                Complex64::new(rate, 0.0) / Complex64::new(rate, -omega)
            }
        }
    }
}

/// Closed catalogue of kernels `g(u, z)`; only `log g` is ever evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// `g(u, z) = exp(u + z)`
    ExpSum,
    /// `g(u, z) = exp(u·z)`
    ExpProduct,
}

impl Kernel {
    pub fn log_value(self, u: f64, z: f64) -> f64 {
        match self {
            Kernel::ExpSum => u + z,
            Kernel::ExpProduct => u * z,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atom {
    pub value: f64,
    pub prob: f64,
}

/// The family of `X_n` and its parameters. Natural logarithms throughout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    /// `log X_n ~ N(mu, sigma²)` i.i.d.
    IidLognormal {
        mu: f64,
        sigma: f64,
    },
    IidExponential {
        rate: f64,
    },
    IidWeibull {
        shape: f64,
        scale: f64,
    },
    IidAtoms {
        atoms: Vec<Atom>,
    },
    /// `{log_b X_n}` i.i.d. uniform.
    IidBenford {},
    Constant {
        c: f64,
    },
    /// Stationary AR(1) for `log X_n`, innovations `N(0, sigma²)`.
    GaussianAr1 {
        phi: f64,
        sigma: f64,
        mean: f64,
    },
    /// Stationary Gaussian `log X_n` with `Cov(log X_k, log X_l) = gamma[|k−l|]`
    /// (`gamma[0]` is the variance). Lags past the list are zero.
    GaussianCov {
        gamma: Vec<f64>,
        n_max: usize,
    },
    /// `log X_n = W(t_n)` for a standard Brownian motion `W`.
    BrownianLog {
        times: Vec<f64>,
    },
    /// `X_n = g(U, Z_n)`.
    Exchangeable {
        kernel: Kernel,
        dist_u: ScalarDist,
        dist_z: ScalarDist,
    },
    /// `X_n = g(Z_n, Z_{n+1})`.
    OneDependent {
        kernel: Kernel,
        dist_z: ScalarDist,
    },
    /// `X_{2m−1} = Z_m` Benford, `X_{2m} = b / Z_m`.
    CounterexamplePairs {},
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::IidLognormal { .. } => "iid_lognormal",
            Family::IidExponential { .. } => "iid_exponential",
            Family::IidWeibull { .. } => "iid_weibull",
            Family::IidAtoms { .. } => "iid_atoms",
            Family::IidBenford {} => "iid_benford",
            Family::Constant { .. } => "constant",
            Family::GaussianAr1 { .. } => "gaussian_ar1",
            Family::GaussianCov { .. } => "gaussian_cov",
            Family::BrownianLog { .. } => "brownian_log",
            Family::Exchangeable { .. } => "exchangeable",
            Family::OneDependent { .. } => "one_dependent",
            Family::CounterexamplePairs {} => "counterexample_pairs",
        }
    }

    /// Families whose `(log X_n)` is a Gaussian sequence.
    pub fn is_gaussian(&self) -> bool {
        matches!(
            self,
            Family::IidLognormal { .. }
                | Family::GaussianAr1 { .. }
                | Family::GaussianCov { .. }
                | Family::BrownianLog { .. }
        )
    }

    /// Families with independent, identically distributed factors.
    pub fn is_iid(&self) -> bool {
        matches!(
            self,
            Family::IidLognormal { .. }
                | Family::IidExponential { .. }
                | Family::IidWeibull { .. }
                | Family::IidAtoms { .. }
                | Family::IidBenford {}
                | Family::Constant { .. }
        )
    }
}

/// Lower-triangular Cholesky factor, rows packed.
#[derive(Debug)]
struct Cholesky {
    n: usize,
    packed: Vec<f64>,
}

impl Cholesky {
    fn row(&self, i: usize) -> &[f64] {
        let start = i * (i + 1) / 2;
        &self.packed[start..start + i + 1]
    }

    fn toeplitz(gamma: &[f64], n: usize) -> Option<Cholesky> {
        let cov = |lag: usize| gamma.get(lag).copied().unwrap_or(0.0);
        'jitter: for jitter in CHOLESKY_JITTER {
            let mut packed = vec![0.0; n * (n + 1) / 2];
            for i in 0..n {
                let ri = i * (i + 1) / 2;
                for j in 0..=i {
                    let rj = j * (j + 1) / 2;
                    let dot: f64 = (0..j).map(|k| packed[ri + k] * packed[rj + k]).sum();
                    if i == j {
                        let d = cov(0) + jitter - dot;
                        if !(d > 0.0) {
                            continue 'jitter;
                        }
                        packed[ri + i] = d.sqrt();
                    } else {
                        packed[ri + j] = (cov(i - j) - dot) / packed[rj + j];
                    }
                }
            }
            return Some(Cholesky { n, packed });
        }
        None
    }
}

#[derive(Debug, Clone)]
enum Prepared {
    None,
    Atoms {
        cumulative: Arc<[f64]>,
        fraclogs: Arc<[f64]>,
    },
    Constant(FracLog),
    Cholesky(Arc<Cholesky>),
}

/// A validated family together with its base.
#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    family: Family,
    base: Base,
    prepared: Prepared,
}

impl PartialEq for GeneratorSpec {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.base == other.base
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be positive and finite (got {v})"
        )))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite (got {v})")))
    }
}

impl GeneratorSpec {
    pub fn new(family: Family, base: Base) -> Result<Self> {
        let mut prepared = Prepared::None;
        match &family {
            Family::IidLognormal { mu, sigma } => {
                finite("iid_lognormal.mu", *mu)?;
                positive("iid_lognormal.sigma", *sigma)?;
            }
            Family::IidExponential { rate } => positive("iid_exponential.rate", *rate)?,
            Family::IidWeibull { shape, scale } => {
                positive("iid_weibull.shape", *shape)?;
                positive("iid_weibull.scale", *scale)?;
            }
            Family::IidAtoms { atoms } => {
                if atoms.is_empty() {
                    return Err(Error::domain("iid_atoms needs at least one atom"));
                }
                let mut acc = 0.0;
                let mut cumulative = Vec::with_capacity(atoms.len());
                let mut fraclogs = Vec::with_capacity(atoms.len());
                for a in atoms {
                    positive("iid_atoms.value", a.value)?;
                    positive("iid_atoms.prob", a.prob)?;
                    acc += a.prob;
                    cumulative.push(acc);
                    fraclogs.push(fraclog(a.value, base)?.value());
                }
                if (acc - 1.0).abs() > ATOM_PROB_TOLERANCE {
                    return Err(Error::domain(format!(
                        "iid_atoms probabilities must be normalized: they sum to {acc}, not 1"
                    )));
                }
                prepared = Prepared::Atoms {
                    cumulative: cumulative.into(),
                    fraclogs: fraclogs.into(),
                };
            }
            Family::IidBenford {} | Family::CounterexamplePairs {} => {}
            Family::Constant { c } => {
                positive("constant.c", *c)?;
                prepared = Prepared::Constant(fraclog(*c, base)?);
            }
            Family::GaussianAr1 { phi, sigma, mean } => {
                if !(phi.is_finite() && phi.abs() < 1.0) {
                    return Err(Error::domain(format!(
                        "gaussian_ar1.phi must lie in (-1, 1) (got {phi})"
                    )));
                }
                positive("gaussian_ar1.sigma", *sigma)?;
                finite("gaussian_ar1.mean", *mean)?;
            }
            Family::GaussianCov { gamma, n_max } => {
                if gamma.is_empty() {
                    return Err(Error::domain("gaussian_cov.gamma must be non-empty"));
                }
                if *n_max == 0 || *n_max > MAX_COV_DIMENSION {
                    return Err(Error::domain(format!(
                        "gaussian_cov.n_max must lie in 1..={MAX_COV_DIMENSION} (got {n_max})"
                    )));
                }
                for &g in gamma {
                    finite("gaussian_cov.gamma", g)?;
                }
                let chol = Cholesky::toeplitz(gamma, *n_max).ok_or_else(|| {
                    Error::domain("gaussian_cov covariance matrix is not positive semi-definite")
                })?;
                prepared = Prepared::Cholesky(Arc::new(chol));
            }
            Family::BrownianLog { times } => {
                if times.is_empty() {
                    return Err(Error::domain("brownian_log.times must be non-empty"));
                }
                let mut prev = 0.0;
                for &t in times {
                    if !(t.is_finite() && t >= prev) {
                        return Err(Error::domain(
                            "brownian_log.times must be non-negative and non-decreasing",
                        ));
                    }
                    prev = t;
                }
            }
            Family::Exchangeable { dist_u, dist_z, .. } => {
                dist_u.validate("exchangeable.dist_u")?;
                dist_z.validate("exchangeable.dist_z")?;
            }
            Family::OneDependent { dist_z, .. } => dist_z.validate("one_dependent.dist_z")?,
        }
        Ok(GeneratorSpec {
            family,
            base,
            prepared,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// Maximum number of factors a stream can yield, if bounded.
    pub fn capacity(&self) -> Option<usize> {
        match &self.family {
            Family::GaussianCov { n_max, .. } => Some(*n_max),
            Family::BrownianLog { times } => Some(times.len()),
            _ => None,
        }
    }

    /// `γ(k) = Cov(log X_1, log X_k)`, so `γ(1)` is the variance.
    pub fn gamma_of(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::domain("gamma index starts at 1"));
        }
        match &self.family {
            Family::GaussianAr1 { phi, sigma, .. } => {
                let var = sigma * sigma / (1.0 - phi * phi);
                Ok(var * phi.powi(k as i32 - 1))
            }
            Family::GaussianCov { gamma, .. } => Ok(gamma.get(k - 1).copied().unwrap_or(0.0)),
            Family::IidLognormal { sigma, .. } => Ok(if k == 1 { sigma * sigma } else { 0.0 }),
            other => Err(Error::UnsupportedFamily {
                family: other.name(),
                operation: "gamma_of",
            }),
        }
    }

    pub fn stream(&self, seed: Seed) -> Stream {
        Stream::new(self.clone(), seed)
    }
}

#[derive(Debug, Clone)]
enum State {
    Fresh,
    Ar1 { prev: f64 },
    Brownian { w: f64, t: f64 },
    Exchangeable { u: f64 },
    OneDependent { z_next: f64 },
    Pairs { pending: f64 },
    Cov { z: Vec<f64> },
}

/// Single-consumer stream of `{log_b X_1}, {log_b X_2}, …`.
#[derive(Debug, Clone)]
pub struct Stream {
    spec: GeneratorSpec,
    rng: Xoshiro256PlusPlus,
    emitted: usize,
    state: State,
}

impl Stream {
    pub fn new(spec: GeneratorSpec, seed: Seed) -> Self {
        Stream {
            spec,
            rng: Xoshiro256PlusPlus::from_seed(seed),
            emitted: 0,
            state: State::Fresh,
        }
    }

    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    /// Number of values yielded so far.
    pub fn emitted(&self) -> usize {
        self.emitted
    }

    fn reduce_log(&self, log_x: f64) -> Result<FracLog> {
        FracLog::new(log_x / self.spec.base.ln())
    }

    pub fn next_fraclog(&mut self) -> Result<FracLog> {
        if let Some(cap) = self.spec.capacity() {
            if self.emitted >= cap {
                return Err(Error::Capacity {
                    requested: self.emitted + 1,
                    limit: cap,
                });
            }
        }
        let out = self.draw()?;
        self.emitted += 1;
        Ok(out)
    }

    fn draw(&mut self) -> Result<FracLog> {
        let rng = &mut self.rng;
        match &self.spec.family {
            Family::IidLognormal { mu, sigma } => {
                let y = mu + sigma * rng.standard_normal();
                self.reduce_log(y)
            }
            Family::IidExponential { rate } => {
                let e = -(-rng.open_uniform()).ln_1p();
                let y = e.ln() - rate.ln();
                self.reduce_log(y)
            }
            Family::IidWeibull { shape, scale } => {
                let e = -(-rng.open_uniform()).ln_1p();
                let y = scale.ln() + e.ln() / shape;
                self.reduce_log(y)
            }
            Family::IidAtoms { .. } => {
                let Prepared::Atoms {
                    cumulative,
                    fraclogs,
                } = &self.spec.prepared
                else {
                    unreachable!("atoms are prepared at construction")
                };
                let u = rng.uniform() * cumulative[cumulative.len() - 1];
                let i = cumulative
                    .partition_point(|&c| c <= u)
                    .min(fraclogs.len() - 1);
                Ok(FracLog::wrap(fraclogs[i]))
            }
            Family::IidBenford {} => Ok(FracLog::wrap(rng.uniform())),
            Family::Constant { .. } => {
                let Prepared::Constant(f) = self.spec.prepared else {
                    unreachable!("constant is prepared at construction")
                };
                Ok(f)
            }
            Family::CounterexamplePairs {} => match self.state {
                State::Pairs { pending } => {
                    self.state = State::Fresh;
                    Ok(FracLog::wrap(pending))
                }
                _ => {
                    let v = rng.uniform();
                    // 1 − v is exact for v a multiple of 2⁻⁵³.
                    let partner = if v == 0.0 { 0.0 } else { 1.0 - v };
                    self.state = State::Pairs { pending: partner };
                    Ok(FracLog::wrap(v))
                }
            },
            Family::GaussianAr1 { phi, sigma, mean } => {
                let y = match self.state {
                    State::Ar1 { prev } => {
                        mean + phi * (prev - mean) + sigma * rng.standard_normal()
                    }
                    _ => {
                        let sd = sigma / (1.0 - phi * phi).sqrt();
                        mean + sd * rng.standard_normal()
                    }
                };
                self.state = State::Ar1 { prev: y };
                self.reduce_log(y)
            }
            Family::GaussianCov { .. } => {
                let Prepared::Cholesky(chol) = &self.spec.prepared else {
                    unreachable!("covariance is factored at construction")
                };
                if !matches!(self.state, State::Cov { .. }) {
                    self.state = State::Cov {
                        z: Vec::with_capacity(chol.n),
                    };
                }
                let State::Cov { z } = &mut self.state else {
                    unreachable!()
                };
                z.push(rng.standard_normal());
                let row = chol.row(z.len() - 1);
                let y: f64 = row.iter().zip(z.iter()).map(|(l, z)| l * z).sum();
                self.reduce_log(y)
            }
            Family::BrownianLog { times } => {
                let (w0, t0) = match self.state {
                    State::Brownian { w, t } => (w, t),
                    _ => (0.0, 0.0),
                };
                let t = times[self.emitted];
                let w = w0 + (t - t0).sqrt() * rng.standard_normal();
                self.state = State::Brownian { w, t };
                self.reduce_log(w)
            }
            Family::Exchangeable {
                kernel,
                dist_u,
                dist_z,
            } => {
                let u = match self.state {
                    State::Exchangeable { u } => u,
                    _ => dist_u.sample(rng),
                };
                self.state = State::Exchangeable { u };
                let z = dist_z.sample(rng);
                self.reduce_log(kernel.log_value(u, z))
            }
            Family::OneDependent { kernel, dist_z } => {
                let z_n = match self.state {
                    State::OneDependent { z_next } => z_next,
                    _ => dist_z.sample(rng),
                };
                let z_next = dist_z.sample(rng);
                self.state = State::OneDependent { z_next };
                self.reduce_log(kernel.log_value(z_n, z_next))
            }
        }
    }
}

impl Iterator for Stream {
    type Item = Result<FracLog>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.next_fraclog())
    }
}

//! Sampling φ_n(M) = ℓ(M / I^[p^n] M) and extracting its asymptotic shape
//! α·q^d + β·q^(d−1) + O(q^(d−2)).

mod additive;
mod estimate;
mod fit;

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modpres::{length_mod_frobenius, IdealSpec, LengthOptions, ModulePresentation, RingSpec};

pub use additive::{additive_error, AdditiveErrorReport, ExactSequenceSpec};
pub use estimate::{
    analyze, check_delta_recursion, delta_sequence, estimate_alpha, estimate_beta, estimate_tau,
    geometric_extrapolation, tau_analysis, AlphaEstimate, AlphaMethod, AsymptoticReport,
    BetaEstimate, BoundCheck, BoundEntry, TauEstimate, TauReport,
};
pub use fit::{
    detect_periodic_tail, fit_geometric_tail, fit_polynomial, GeometricTail, PeriodicTail,
    PolynomialFit,
};

/// One value of the Hilbert-Kunz function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkSample {
    pub n: u32,
    pub q: u64,
    pub length: BigUint,
}

/// Values φ_n for consecutive n, with the characteristic and dimension
/// used for normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkSeries {
    p: u32,
    dim: usize,
    samples: Vec<HkSample>,
}

impl HkSeries {
    pub fn new(p: u32, dim: usize, samples: Vec<HkSample>) -> Result<Self> {
        for w in samples.windows(2) {
            if w[1].n != w[0].n + 1 {
                return Err(Error::SampleMismatch(format!(
                    "samples must have consecutive n, found {} after {}",
                    w[1].n, w[0].n
                )));
            }
        }
        for s in &samples {
            if (p as u64).checked_pow(s.n) != Some(s.q) {
                return Err(Error::SampleMismatch(format!("q = {} is not {p}^{}", s.q, s.n)));
            }
        }
        Ok(HkSeries { p, dim, samples })
    }

    /// Builds samples n0, n0+1, .. from plain lengths.
    pub fn from_lengths(p: u32, dim: usize, n0: u32, lengths: &[u64]) -> Result<Self> {
        let samples = lengths
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let n = n0 + i as u32;
                let q = (p as u64)
                    .checked_pow(n)
                    .ok_or_else(|| Error::Semantic(format!("{p}^{n} overflows")))?;
                Ok(HkSample {
                    n,
                    q,
                    length: BigUint::from(l),
                })
            })
            .collect::<Result<_>>()?;
        Self::new(p, dim, samples)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> &[HkSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first_n(&self) -> Option<u32> {
        self.samples.first().map(|s| s.n)
    }

    pub fn lengths(&self) -> Vec<BigInt> {
        self.samples
            .iter()
            .map(|s| BigInt::from(s.length.clone()))
            .collect()
    }

    /// Same samples, reinterpreted in another dimension.
    pub fn with_dim(&self, dim: usize) -> Self {
        HkSeries {
            dim,
            ..self.clone()
        }
    }

    /// Drops the first `k` samples.
    pub fn skip(&self, k: usize) -> Self {
        HkSeries {
            samples: self.samples[k.min(self.samples.len())..].to_vec(),
            ..self.clone()
        }
    }

    /// Keeps the first `k` samples.
    pub fn truncate(&self, k: usize) -> Self {
        HkSeries {
            samples: self.samples[..k.min(self.samples.len())].to_vec(),
            ..self.clone()
        }
    }
}

/// q^k as an exact rational; k may be negative.
pub(crate) fn q_pow(q: u64, k: i64) -> BigRational {
    let base = BigInt::from(q);
    let mag = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

pub(crate) fn int(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

pub(crate) fn need(needed: usize, have: usize) -> Result<()> {
    if have < needed {
        Err(Error::InsufficientSamples { needed, have })
    } else {
        Ok(())
    }
}

/// Sampling configuration.
#[derive(Debug, Clone)]
pub struct SampleOptions {
    pub length: LengthOptions,
    /// Worker threads for the fan-out over n; 0 lets the pool decide.
    pub threads: usize,
    /// Soft per-sample deadline. A sample that overruns is skipped with a warning.
    pub per_sample: Option<Duration>,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            length: LengthOptions::default(),
            threads: 0,
            per_sample: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleTiming {
    pub n: u32,
    pub seconds: f64,
    pub completed: bool,
}

/// A sampled series together with timings and warnings.
#[derive(Debug, Clone)]
pub struct SampleRun {
    pub series: HkSeries,
    pub timings: Vec<SampleTiming>,
    pub warnings: Vec<String>,
}

/// φ_n(M) for n in `n_min..=n_max`, computed in parallel.
///
/// Samples that exceed the per-sample deadline are skipped; the series is
/// then cut at the first gap so that it stays consecutive.
pub fn sample_hk(
    ring: &RingSpec,
    ideal: &IdealSpec,
    module: &ModulePresentation,
    n_min: u32,
    n_max: u32,
    opts: &SampleOptions,
) -> Result<SampleRun> {
    if n_min > n_max {
        return Err(Error::Semantic(format!("empty range {n_min}..{n_max}")));
    }
    if !ideal.is_m_primary(ring)? {
        return Err(Error::NotZeroDimensional);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::Semantic(format!("thread pool: {e}")))?;
    let results: Vec<(u32, f64, Result<u64>)> = pool.install(|| {
        (n_min..=n_max)
            .into_par_iter()
            .map(|n| {
                let start = Instant::now();
                let mut lo = opts.length.clone();
                lo.limits.deadline = opts.per_sample.map(|d| start + d);
                let r = length_mod_frobenius(ring, module, ideal, n, &lo);
                (n, start.elapsed().as_secs_f64(), r)
            })
            .collect()
    });

    let mut warnings = Vec::new();
    if let Some(w) = ring.dimension_warning() {
        warnings.push(w);
    }
    let mut samples = Vec::new();
    let mut timings = Vec::new();
    let mut gap = false;
    for (n, secs, r) in results {
        match r {
            Ok(len) => {
                timings.push(SampleTiming {
                    n,
                    seconds: secs,
                    completed: true,
                });
                if gap {
                    warnings.push(format!("n = {n} dropped: it follows a skipped sample"));
                    continue;
                }
                let q = ring.ring().field().power_of_p(n).expect("q computed");
                samples.push(HkSample {
                    n,
                    q,
                    length: BigUint::from(len),
                });
            }
            Err(Error::DeadlineExceeded { basis_size }) => {
                timings.push(SampleTiming {
                    n,
                    seconds: secs,
                    completed: false,
                });
                warnings.push(format!(
                    "n = {n} skipped: deadline exceeded with {basis_size} basis elements"
                ));
                gap = true;
            }
            Err(e) => return Err(e),
        }
    }
    let series = HkSeries::new(ring.p(), ring.dim(), samples)?;
    Ok(SampleRun {
        series,
        timings,
        warnings,
    })
}

/// Exact ratio a/b of integers, for display and tests.
pub fn rational(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Formats as "num/den", or "num" for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "num/den" or an integer.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            (!b.is_zero()).then(|| BigRational::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Nearest f64, for display only.
pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::fit::{detect_periodic_tail, fit_geometric_tail, fit_polynomial};
use super::{int, need, q_pow, GeometricTail, HkSeries, PeriodicTail, PolynomialFit};
use crate::error::{Error, Result};

/// `(n, value)` pairs.
pub type Sequence = Vec<(u32, BigRational)>;

fn big_p(p: u32, k: i64) -> BigRational {
    q_pow(p as u64, k)
}

/// One-step geometric acceleration (p·a_{n+1} − a_n)/(p − 1), labelled by n.
pub fn geometric_extrapolation(seq: &[(u32, BigRational)], p: u32) -> Sequence {
    let pr = big_p(p, 1);
    let denom = &pr - BigRational::from_integer(1.into());
    seq.windows(2)
        .map(|w| (w[0].0, (&pr * &w[1].1 - &w[0].1) / &denom))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaMethod {
    PolynomialFit,
    GeometricTail,
    /// The refined sequence took the same value at its last two entries.
    StableRefined,
    /// Same for the two-step refined sequence.
    StableRefinedTwoStep,
    RefinedTwoStep,
    Refined,
    Raw,
}

impl AlphaMethod {
    pub fn is_exact(self) -> bool {
        matches!(
            self,
            AlphaMethod::PolynomialFit
                | AlphaMethod::GeometricTail
                | AlphaMethod::StableRefined
                | AlphaMethod::StableRefinedTwoStep
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            AlphaMethod::PolynomialFit => "polynomial-fit",
            AlphaMethod::GeometricTail => "geometric-tail",
            AlphaMethod::StableRefined => "stable-refined",
            AlphaMethod::StableRefinedTwoStep => "stable-refined-two-step",
            AlphaMethod::RefinedTwoStep => "refined-two-step",
            AlphaMethod::Refined => "refined",
            AlphaMethod::Raw => "raw",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaEstimate {
    /// φ_n / q^d.
    pub raw: Sequence,
    /// (φ_{n+1} − p^(d−1) φ_n) / ((p^d − p^(d−1)) q^d).
    pub refined: Sequence,
    /// (φ_{n+2} − p^(2d−2) φ_n) / ((p^(2d) − p^(2d−2)) q^d); also cancels
    /// residuals of period two.
    pub refined_two_step: Sequence,
    pub accelerated: Sequence,
    pub extrapolated: BigRational,
    pub method: AlphaMethod,
    pub fit: Option<PolynomialFit>,
    pub geometric_tail: Option<GeometricTail>,
}

impl AlphaEstimate {
    pub fn is_exact(&self) -> bool {
        self.method.is_exact()
    }
}

fn refined_sequence(series: &HkSeries, step: usize) -> Sequence {
    let d = series.dim() as i64;
    if d == 0 {
        return Vec::new();
    }
    let p = series.p();
    let s = series.samples();
    let phi = series.lengths();
    let k = step as i64;
    let lower = big_p(p, k * (d - 1));
    let denom = big_p(p, k * d) - &lower;
    (0..s.len().saturating_sub(step))
        .map(|i| {
            let num = int(&phi[i + step]) - &lower * int(&phi[i]);
            (s[i].n, num / (&denom * q_pow(s[i].q, d)))
        })
        .collect()
}

fn last_two_equal(seq: &Sequence) -> bool {
    seq.len() >= 2 && seq[seq.len() - 1].1 == seq[seq.len() - 2].1
}

/// α sequences and the best available value: an exact polynomial fit, an
/// exact geometric tail, a stabilized refined sequence, or the last refined
/// entry.
pub fn estimate_alpha(series: &HkSeries) -> Result<AlphaEstimate> {
    need(2, series.len())?;
    let d = series.dim() as i64;
    let raw: Sequence = series
        .samples()
        .iter()
        .zip(series.lengths())
        .map(|(s, l)| (s.n, int(&l) / q_pow(s.q, d)))
        .collect();
    let refined = refined_sequence(series, 1);
    let refined_two_step = refined_sequence(series, 2);
    let accelerated = geometric_extrapolation(&raw, series.p());

    let fit = if series.len() >= series.dim() + 2 {
        fit_polynomial(series)?
    } else {
        None
    };
    let geometric_tail = if fit.is_none() && d > 0 && series.len() >= 3 {
        fit_geometric_tail(series)?
    } else {
        None
    };

    let (extrapolated, method) = if let Some(f) = &fit {
        (f.coefficients[0].clone(), AlphaMethod::PolynomialFit)
    } else if let Some(g) = &geometric_tail {
        (g.leading.clone(), AlphaMethod::GeometricTail)
    } else if last_two_equal(&refined) {
        (refined.last().unwrap().1.clone(), AlphaMethod::StableRefined)
    } else if last_two_equal(&refined_two_step) {
        (
            refined_two_step.last().unwrap().1.clone(),
            AlphaMethod::StableRefinedTwoStep,
        )
    } else if let Some((_, v)) = refined_two_step.last() {
        (v.clone(), AlphaMethod::RefinedTwoStep)
    } else if let Some((_, v)) = refined.last() {
        (v.clone(), AlphaMethod::Refined)
    } else {
        (raw.last().unwrap().1.clone(), AlphaMethod::Raw)
    };
    Ok(AlphaEstimate {
        raw,
        refined,
        refined_two_step,
        accelerated,
        extrapolated,
        method,
        fit,
        geometric_tail,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaEstimate {
    /// (φ_n − α q^d) / q^(d−1).
    pub sequence: Sequence,
    pub accelerated: Sequence,
    /// Last accelerated entry; [`analyze`] replaces it by the fit coefficient
    /// when a polynomial fit exists.
    pub extrapolated: BigRational,
}

/// β sequence for a given α, extrapolated geometrically.
pub fn estimate_beta(series: &HkSeries, alpha: &BigRational) -> Result<BetaEstimate> {
    need(2, series.len())?;
    let d = series.dim() as i64;
    let sequence: Sequence = series
        .samples()
        .iter()
        .zip(series.lengths())
        .map(|(s, l)| (s.n, (int(&l) - alpha * q_pow(s.q, d)) / q_pow(s.q, d - 1)))
        .collect();
    let accelerated = geometric_extrapolation(&sequence, series.p());
    let extrapolated = accelerated.last().expect("two samples").1.clone();
    Ok(BetaEstimate {
        sequence,
        accelerated,
        extrapolated,
    })
}

/// δ_n = φ_n(M) − r·φ_n(R).
pub fn delta_sequence(
    series_m: &HkSeries,
    series_r: &HkSeries,
    r: u64,
) -> Result<Vec<(u32, BigInt)>> {
    if series_m.p() != series_r.p() {
        return Err(Error::SampleMismatch(format!(
            "characteristics differ: {} vs {}",
            series_m.p(),
            series_r.p()
        )));
    }
    let nm: Vec<u32> = series_m.samples().iter().map(|s| s.n).collect();
    let nr: Vec<u32> = series_r.samples().iter().map(|s| s.n).collect();
    if nm != nr {
        return Err(Error::SampleMismatch(format!(
            "n ranges differ: {nm:?} vs {nr:?}"
        )));
    }
    let r = BigInt::from(r);
    Ok(series_m
        .lengths()
        .into_iter()
        .zip(series_r.lengths())
        .zip(nm)
        .map(|((a, b), n)| (n, a - &r * b))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub n: u32,
    pub value: BigRational,
    /// |value| / q^e.
    pub normalized: BigRational,
    pub calibration: bool,
    pub within: bool,
}

/// |value_n| ≤ C·q_n^e with C the largest normalized value over the
/// calibration prefix, checked on the remaining entries.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub label: String,
    pub exponent: i64,
    pub constant: BigRational,
    pub entries: Vec<BoundEntry>,
    pub pass: bool,
    pub offending: Vec<u32>,
}

impl BoundCheck {
    /// Calibrates on the first `calibration` points, at least one.
    pub fn new(
        label: impl Into<String>,
        exponent: i64,
        points: &[(u32, u64, BigRational)],
        calibration: usize,
    ) -> Result<Self> {
        need(1, points.len())?;
        let calibration = calibration.clamp(1, points.len());
        let normalized: Vec<BigRational> = points
            .iter()
            .map(|(_, q, v)| v.abs() / q_pow(*q, exponent))
            .collect();
        let constant = normalized[..calibration]
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero);
        let entries: Vec<BoundEntry> = points
            .iter()
            .zip(normalized)
            .enumerate()
            .map(|(i, ((n, _, v), norm))| BoundEntry {
                n: *n,
                value: v.clone(),
                within: norm <= constant,
                normalized: norm,
                calibration: i < calibration,
            })
            .collect();
        let offending: Vec<u32> = entries.iter().filter(|e| !e.within).map(|e| e.n).collect();
        Ok(BoundCheck {
            label: label.into(),
            exponent,
            constant,
            pass: offending.is_empty(),
            entries,
            offending,
        })
    }

    /// Calibration on the first half, rounded down, at least one entry.
    pub fn halves(label: impl Into<String>, exponent: i64, points: &[(u32, u64, BigRational)]) -> Result<Self> {
        Self::new(label, exponent, points, (points.len() / 2).max(1))
    }

    /// Number of entries actually tested against the constant.
    pub fn tested(&self) -> usize {
        self.entries.iter().filter(|e| !e.calibration).count()
    }
}

/// ρ_n = δ_{n+1} − p^(d−1)·δ_n against C·q_n^(d−2).
pub fn check_delta_recursion(deltas: &[(u32, BigInt)], p: u32, d: usize) -> Result<BoundCheck> {
    need(2, deltas.len())?;
    let factor = big_p(p, d as i64 - 1);
    let points: Vec<(u32, u64, BigRational)> = deltas
        .windows(2)
        .map(|w| {
            let q = (p as u64).pow(w[0].0);
            (w[0].0, q, int(&w[1].1) - &factor * int(&w[0].1))
        })
        .collect();
    BoundCheck::halves("delta recursion", d as i64 - 2, &points)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauEstimate {
    /// δ_n / q^(d−1).
    pub sequence: Sequence,
    pub accelerated: Sequence,
    pub extrapolated: BigRational,
}

/// τ_n = δ_n / q^(d−1) with geometric extrapolation.
pub fn estimate_tau(deltas: &[(u32, BigInt)], p: u32, d: usize) -> Result<TauEstimate> {
    need(2, deltas.len())?;
    let sequence: Sequence = deltas
        .iter()
        .map(|(n, v)| (*n, int(v) / q_pow((p as u64).pow(*n), d as i64 - 1)))
        .collect();
    let accelerated = geometric_extrapolation(&sequence, p);
    let extrapolated = accelerated.last().expect("two deltas").1.clone();
    Ok(TauEstimate {
        sequence,
        accelerated,
        extrapolated,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauReport {
    pub generic_rank: u64,
    pub deltas: Vec<(u32, BigInt)>,
    pub tau: TauEstimate,
    pub recursion: BoundCheck,
    pub alpha_module: AlphaEstimate,
    pub alpha_ring: AlphaEstimate,
    pub warnings: Vec<String>,
}

/// δ, τ and the recursion check for a module of generic rank r, plus the
/// α(M) = r·α(R) consistency warning.
pub fn tau_analysis(series_m: &HkSeries, series_r: &HkSeries, r: u64) -> Result<TauReport> {
    let deltas = delta_sequence(series_m, series_r, r)?;
    let p = series_m.p();
    let d = series_m.dim();
    let tau = estimate_tau(&deltas, p, d)?;
    let recursion = check_delta_recursion(&deltas, p, d)?;
    let alpha_module = estimate_alpha(series_m)?;
    let alpha_ring = estimate_alpha(series_r)?;
    let mut warnings = Vec::new();
    let expected = BigRational::from_integer(r.into()) * &alpha_ring.extrapolated;
    let gap = (&alpha_module.extrapolated - &expected).abs();
    if gap * BigRational::from_integer(100.into()) > expected.abs() {
        warnings.push(format!(
            "alpha(M) = {:.6} deviates from r*alpha(R) = {:.6} by more than 1%",
            super::to_f64(&alpha_module.extrapolated),
            super::to_f64(&expected)
        ));
    }
    if recursion.tested() == 0 {
        warnings.push("delta recursion: too few samples to test beyond calibration".into());
    }
    Ok(TauReport {
        generic_rank: r,
        deltas,
        tau,
        recursion,
        alpha_module,
        alpha_ring,
        warnings,
    })
}

/// Everything extracted from a single series.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub alpha: AlphaEstimate,
    pub beta: Option<BetaEstimate>,
    pub periodic_tail: Option<PeriodicTail>,
    /// No polynomial fit, geometric tail or periodic residual was found.
    pub unclassified_residual: bool,
    pub warnings: Vec<String>,
}

impl AsymptoticReport {
    pub fn polynomial_fit(&self) -> Option<&PolynomialFit> {
        self.alpha.fit.as_ref()
    }

    pub fn geometric_tail(&self) -> Option<&GeometricTail> {
        self.alpha.geometric_tail.as_ref()
    }
}

/// α, β (only once α is exact) and tail classification.
pub fn analyze(series: &HkSeries, period_max: usize) -> Result<AsymptoticReport> {
    let alpha = estimate_alpha(series)?;
    let mut warnings = Vec::new();
    if series.len() < series.dim() + 2 {
        warnings.push(format!(
            "polynomial fit needs {} samples, have {}",
            series.dim() + 2,
            series.len()
        ));
    }
    let beta = if alpha.is_exact() && series.dim() > 0 {
        let mut b = estimate_beta(series, &alpha.extrapolated)?;
        if let Some(f) = &alpha.fit {
            b.extrapolated = f.coefficients[1].clone();
        }
        Some(b)
    } else {
        if series.dim() > 0 {
            warnings.push("beta withheld: alpha is not known exactly".into());
        }
        None
    };
    let periodic_tail = if alpha.is_exact() && alpha.fit.is_none() {
        detect_periodic_tail(series, std::slice::from_ref(&alpha.extrapolated), period_max)?
    } else {
        None
    };
    let unclassified_residual =
        alpha.fit.is_none() && alpha.geometric_tail.is_none() && periodic_tail.is_none();
    Ok(AsymptoticReport {
        alpha,
        beta,
        periodic_tail,
        unclassified_residual,
        warnings,
    })
}

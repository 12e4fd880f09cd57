use num_bigint::BigInt;
use num_rational::BigRational;

use super::estimate::{geometric_extrapolation, BoundCheck};
use super::{int, q_pow, sample_hk, SampleOptions, SampleRun};
use crate::error::{Error, Result};
use crate::groebner::Limits;
use crate::modpres::{present_submodule, quotient_presentation, IdealSpec, RingSpec, SubmoduleSpec};

/// 0 → N → M → M/N → 0 given by a submodule of M.
#[derive(Debug, Clone)]
pub struct ExactSequenceSpec {
    pub submodule: SubmoduleSpec,
    /// Generic ranks of N, M, M/N when known.
    pub ranks: [Option<usize>; 3],
    /// Expected coefficient c of q^(d−1) in the additive error.
    pub leading: Option<BigRational>,
}

#[derive(Debug, Clone)]
pub struct AdditiveErrorReport {
    pub runs: [SampleRun; 3],
    /// e_n = φ_n(M/N) − φ_n(M) + φ_n(N).
    pub errors: Vec<(u32, BigInt)>,
    /// |e_n| ≤ C·q^(d−1).
    pub bound: BoundCheck,
    pub leading: BigRational,
    pub leading_estimated: bool,
    /// |e_n − c·q^(d−1)| ≤ C·q^(d−2).
    pub leading_check: BoundCheck,
    pub warnings: Vec<String>,
}

pub fn additive_error(
    ring: &RingSpec,
    seq: &ExactSequenceSpec,
    ideal: &IdealSpec,
    n_min: u32,
    n_max: u32,
    opts: &SampleOptions,
) -> Result<AdditiveErrorReport> {
    let limits = Limits {
        deadline: None,
        ..opts.length.limits.clone()
    };
    let m1 = present_submodule(ring, &seq.submodule, &limits)?.with_generic_rank(seq.ranks[0]);
    let m2 = seq.submodule.ambient.clone();
    let m3 = quotient_presentation(ring, &seq.submodule)?.with_generic_rank(seq.ranks[2]);
    let r1 = sample_hk(ring, ideal, &m1, n_min, n_max, opts)?;
    let r2 = sample_hk(ring, ideal, &m2, n_min, n_max, opts)?;
    let r3 = sample_hk(ring, ideal, &m3, n_min, n_max, opts)?;

    let mut warnings: Vec<String> = Vec::new();
    for (name, r) in [("N", &r1), ("M", &r2), ("M/N", &r3)] {
        warnings.extend(r.warnings.iter().map(|w| format!("{name}: {w}")));
    }
    let common = r1.series.len().min(r2.series.len()).min(r3.series.len());
    if common == 0 {
        return Err(Error::InsufficientSamples { needed: 1, have: 0 });
    }
    let d = ring.dim() as i64;
    let p = ring.p();
    let (l1, l2, l3) = (r1.series.lengths(), r2.series.lengths(), r3.series.lengths());
    let samples = &r2.series.samples()[..common];
    let errors: Vec<(u32, BigInt)> = (0..common)
        .map(|i| (samples[i].n, &l3[i] - &l2[i] + &l1[i]))
        .collect();

    let points: Vec<(u32, u64, BigRational)> = errors
        .iter()
        .zip(samples)
        .map(|((n, e), s)| (*n, s.q, int(e)))
        .collect();
    let bound = BoundCheck::halves("additive error", d - 1, &points)?;

    let (leading, leading_estimated) = match &seq.leading {
        Some(c) => (c.clone(), false),
        None => {
            let normalized: Vec<(u32, BigRational)> = points
                .iter()
                .map(|(n, q, v)| (*n, v / q_pow(*q, d - 1)))
                .collect();
            let acc = geometric_extrapolation(&normalized, p);
            let c = acc
                .last()
                .or(normalized.last())
                .map(|x| x.1.clone())
                .expect("nonempty");
            (c, true)
        }
    };
    let shifted: Vec<(u32, u64, BigRational)> = points
        .iter()
        .map(|(n, q, v)| (*n, *q, v - &leading * q_pow(*q, d - 1)))
        .collect();
    let leading_check = BoundCheck::halves("additive error minus leading term", d - 2, &shifted)?;
    Ok(AdditiveErrorReport {
        runs: [r1, r2, r3],
        errors,
        bound,
        leading,
        leading_estimated,
        leading_check,
        warnings,
    })
}

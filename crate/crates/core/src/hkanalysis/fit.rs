use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{int, need, q_pow, HkSeries};
use crate::error::Result;

/// Exact polynomial in q reproducing every sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialFit {
    /// `coefficients[k]` multiplies q^(d−k).
    pub coefficients: Vec<BigRational>,
    pub verified_samples: usize,
}

impl PolynomialFit {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, q: u64) -> BigRational {
        let d = self.degree() as i64;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| c * q_pow(q, d - k as i64))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

/// Solves A x = b over Q; None if singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Fits φ_n = c_0 q^d + .. + c_d on the first d+1 samples and accepts only
/// if every remaining sample is reproduced exactly.
pub fn fit_polynomial(series: &HkSeries) -> Result<Option<PolynomialFit>> {
    let d = series.dim();
    need(d + 2, series.len())?;
    let samples = series.samples();
    let rows: Vec<Vec<BigRational>> = samples[..=d]
        .iter()
        .map(|s| (0..=d).map(|k| q_pow(s.q, (d - k) as i64)).collect())
        .collect();
    let rhs: Vec<BigRational> = samples[..=d]
        .iter()
        .map(|s| int(&BigInt::from(s.length.clone())))
        .collect();
    let Some(coefficients) = solve(rows, rhs) else {
        return Ok(None);
    };
    let fit = PolynomialFit {
        coefficients,
        verified_samples: samples.len(),
    };
    let all = samples
        .iter()
        .all(|s| fit.eval(s.q) == int(&BigInt::from(s.length.clone())));
    Ok(all.then_some(fit))
}

/// Residuals t_n = φ_n − Σ leading[k]·q^(d−k).
fn residuals(series: &HkSeries, leading: &[BigRational]) -> Vec<BigRational> {
    let d = series.dim() as i64;
    series
        .samples()
        .iter()
        .map(|s| {
            let mut t = int(&BigInt::from(s.length.clone()));
            for (k, c) in leading.iter().enumerate() {
                t -= c * q_pow(s.q, d - k as i64);
            }
            t
        })
        .collect()
}

/// Eventually periodic residual after removing the leading terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicTail {
    pub period: usize,
    pub start_n: u32,
    /// `(n mod period, value)` for each residue class.
    pub residues: Vec<(u32, BigRational)>,
}

/// Smallest period P ≤ `period_max` such that the residuals are P-periodic
/// from some sample on, with at least two full periods observed. Among
/// the starting points for that P the earliest is reported.
pub fn detect_periodic_tail(
    series: &HkSeries,
    leading: &[BigRational],
    period_max: usize,
) -> Result<Option<PeriodicTail>> {
    need(2, series.len())?;
    let t = residuals(series, leading);
    let n0 = series.first_n().unwrap_or(0);
    for period in 1..=period_max.max(1) {
        for start in 0..t.len() {
            if t.len() - start < 2 * period {
                break;
            }
            if (start + period..t.len()).all(|i| t[i] == t[i - period]) {
                let start_n = n0 + start as u32;
                let mut residues: Vec<(u32, BigRational)> = (start..start + period)
                    .map(|i| ((n0 + i as u32) % period as u32, t[i].clone()))
                    .collect();
                residues.sort_by_key(|(k, _)| *k);
                return Ok(Some(PeriodicTail {
                    period,
                    start_n,
                    residues,
                }));
            }
        }
    }
    Ok(None)
}

/// φ_n = a·q^d + c·r^n exactly on every sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricTail {
    pub leading: BigRational,
    pub ratio: u64,
    pub coefficient: BigRational,
}

/// Searches integer ratios r in 2..p^d for the two-term ansatz
/// a·q^d + c·r^n, solving for (a, c) on the first two samples and
/// verifying the rest. Needs three samples.
pub fn fit_geometric_tail(series: &HkSeries) -> Result<Option<GeometricTail>> {
    need(3, series.len())?;
    let d = series.dim();
    let p = series.p() as u64;
    let Some(top) = p.checked_pow(d as u32) else {
        return Ok(None);
    };
    let s = series.samples();
    let phi: Vec<BigRational> = s
        .iter()
        .map(|x| int(&BigInt::from(x.length.clone())))
        .collect();
    for r in 2..top {
        let rn = |n: u32| BigRational::from_integer(num_traits::pow(BigInt::from(r), n as usize));
        let rows = vec![
            vec![q_pow(s[0].q, d as i64), rn(s[0].n)],
            vec![q_pow(s[1].q, d as i64), rn(s[1].n)],
        ];
        let Some(sol) = solve(rows, vec![phi[0].clone(), phi[1].clone()]) else {
            continue;
        };
        let (a, c) = (sol[0].clone(), sol[1].clone());
        if c.is_zero() {
            continue;
        }
        let ok = s
            .iter()
            .zip(&phi)
            .all(|(x, f)| &a * q_pow(x.q, d as i64) + &c * rn(x.n) == *f);
        if ok {
            return Ok(Some(GeometricTail {
                leading: a,
                ratio: r,
                coefficient: c,
            }));
        }
    }
    Ok(None)
}

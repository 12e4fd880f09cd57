//! Machine-readable reports. Rationals are "num/den" strings and lengths
//! are decimal strings, so no precision is lost in JSON.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::hkanalysis::{
    format_rational, to_f64, AlphaEstimate, BetaEstimate, BoundCheck, HkSeries, PeriodicTail,
    SampleTiming, TauEstimate,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputEcho,
    pub samples: Vec<SampleRow>,
    pub analysis: Option<Analysis>,
    pub timing: Timing,
    pub warnings: Vec<String>,
    pub error: Option<ErrorObject>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub engine: String,
    pub subcommand: String,
    pub order: String,
    pub threads: usize,
    pub n_max_seconds: Option<f64>,
    pub problem: Option<ProblemEcho>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemEcho {
    pub p: u32,
    pub vars: Vec<String>,
    pub dim: usize,
    pub n_min: u32,
    pub n_max: u32,
    /// The problem in canonical text form.
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub n: u32,
    pub q: String,
    pub length: String,
}

impl SampleRow {
    pub fn rows(series: &HkSeries) -> Vec<SampleRow> {
        series
            .samples()
            .iter()
            .map(|s| SampleRow {
                n: s.n,
                q: s.q.to_string(),
                length: s.length.to_string(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Value {
    pub n: u32,
    pub value: String,
    pub decimal: Option<f64>,
}

fn finite(r: &BigRational) -> Option<f64> {
    Some(to_f64(r)).filter(|x| x.is_finite())
}

pub fn values(seq: &[(u32, BigRational)]) -> Vec<Value> {
    seq.iter()
        .map(|(n, v)| Value {
            n: *n,
            value: format_rational(v),
            decimal: finite(v),
        })
        .collect()
}

pub fn int_values(seq: &[(u32, BigInt)]) -> Vec<Value> {
    let r: Vec<(u32, BigRational)> = seq
        .iter()
        .map(|(n, v)| (*n, BigRational::from_integer(v.clone())))
        .collect();
    values(&r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exact {
    pub value: String,
    pub decimal: Option<f64>,
}

impl Exact {
    pub fn new(r: &BigRational) -> Self {
        Exact {
            value: format_rational(r),
            decimal: finite(r),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub alpha: Option<AlphaSection>,
    pub beta: Option<BetaSection>,
    /// Coefficients of q^d, q^(d−1), .., q^0.
    pub polynomial_fit: Option<Vec<String>>,
    pub geometric_tail: Option<GeometricSection>,
    pub periodic_tail: Option<PeriodicSection>,
    pub unclassified_residual: Option<bool>,
    pub ring_samples: Option<Vec<SampleRow>>,
    pub delta: Option<Vec<Value>>,
    pub tau: Option<TauSection>,
    pub recursion: Option<BoundSection>,
    pub additive: Option<AdditiveSection>,
    pub oracle: Option<OracleSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSection {
    pub raw: Vec<Value>,
    pub refined: Vec<Value>,
    pub refined_two_step: Vec<Value>,
    pub accelerated: Vec<Value>,
    pub extrapolated: Exact,
    pub method: String,
    pub exact: bool,
}

impl AlphaSection {
    pub fn new(a: &AlphaEstimate) -> Self {
        AlphaSection {
            raw: values(&a.raw),
            refined: values(&a.refined),
            refined_two_step: values(&a.refined_two_step),
            accelerated: values(&a.accelerated),
            extrapolated: Exact::new(&a.extrapolated),
            method: a.method.name().to_string(),
            exact: a.is_exact(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaSection {
    pub sequence: Vec<Value>,
    pub accelerated: Vec<Value>,
    pub extrapolated: Exact,
}

impl BetaSection {
    pub fn new(b: &BetaEstimate) -> Self {
        BetaSection {
            sequence: values(&b.sequence),
            accelerated: values(&b.accelerated),
            extrapolated: Exact::new(&b.extrapolated),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometricSection {
    pub leading: String,
    pub ratio: u64,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residue {
    pub class: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicSection {
    pub period: usize,
    pub start_n: u32,
    pub residues: Vec<Residue>,
}

impl PeriodicSection {
    pub fn new(t: &PeriodicTail) -> Self {
        PeriodicSection {
            period: t.period,
            start_n: t.start_n,
            residues: t
                .residues
                .iter()
                .map(|(k, v)| Residue {
                    class: *k,
                    value: format_rational(v),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauSection {
    pub generic_rank: u64,
    pub sequence: Vec<Value>,
    pub accelerated: Vec<Value>,
    pub extrapolated: Exact,
}

impl TauSection {
    pub fn new(r: u64, t: &TauEstimate) -> Self {
        TauSection {
            generic_rank: r,
            sequence: values(&t.sequence),
            accelerated: values(&t.accelerated),
            extrapolated: Exact::new(&t.extrapolated),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: u32,
    pub value: String,
    pub normalized: String,
    pub calibration: bool,
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSection {
    pub label: String,
    pub exponent: i64,
    pub constant: String,
    pub verdict: String,
    pub offending: Vec<u32>,
    pub rows: Vec<BoundRow>,
}

impl BoundSection {
    pub fn new(b: &BoundCheck) -> Self {
        BoundSection {
            label: b.label.clone(),
            exponent: b.exponent,
            constant: format_rational(&b.constant),
            verdict: if b.pass { "PASS" } else { "FAIL" }.to_string(),
            offending: b.offending.clone(),
            rows: b
                .entries
                .iter()
                .map(|e| BoundRow {
                    n: e.n,
                    value: format_rational(&e.value),
                    normalized: format_rational(&e.normalized),
                    calibration: e.calibration,
                    within: e.within,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditiveRow {
    pub n: u32,
    pub q: String,
    pub submodule: String,
    pub ambient: String,
    pub quotient: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditiveSection {
    pub rows: Vec<AdditiveRow>,
    pub bound: BoundSection,
    pub leading: String,
    pub leading_estimated: bool,
    pub leading_check: BoundSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub n: u32,
    pub degree_bound: u32,
    pub groebner: String,
    pub oracle: String,
    pub stable: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_seconds: f64,
    pub samples: Vec<TimingRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub n: u32,
    pub seconds: f64,
    pub completed: bool,
}

impl TimingRow {
    pub fn rows(t: &[SampleTiming]) -> Vec<TimingRow> {
        t.iter()
            .map(|s| TimingRow {
                n: s.n,
                seconds: s.seconds,
                completed: s.completed,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorObject {
    pub kind: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl ErrorObject {
    pub fn new(e: &crate::Error) -> Self {
        let (line, column) = match e {
            crate::Error::Parse { line, column, .. } => (Some(*line), Some(*column)),
            _ => (None, None),
        };
        ErrorObject {
            kind: e.kind().to_string(),
            message: e.to_string(),
            line,
            column,
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// One row per sample: n,q,length,alpha_n,beta_n,delta_n,tau_n.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,q,length,alpha_n,beta_n,delta_n,tau_n\n");
        let a = self.analysis.as_ref();
        let find = |seq: Option<&Vec<Value>>, n: u32| -> String {
            seq.and_then(|s| s.iter().find(|v| v.n == n))
                .map(|v| v.value.clone())
                .unwrap_or_default()
        };
        for s in &self.samples {
            let alpha = match (&self.input.problem, s.q.parse::<u64>(), s.length.parse::<BigInt>()) {
                (Some(pr), Ok(q), Ok(len)) => {
                    let qd = num_traits::pow(BigInt::from(q), pr.dim);
                    format_rational(&BigRational::new(len, qd))
                }
                _ => String::new(),
            };
            let beta = find(a.and_then(|a| a.beta.as_ref()).map(|x| &x.sequence), s.n);
            let delta = find(a.and_then(|a| a.delta.as_ref()), s.n);
            let tau = find(a.and_then(|a| a.tau.as_ref()).map(|x| &x.sequence), s.n);
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                s.n, s.q, s.length, alpha, beta, delta, tau
            ));
        }
        out
    }

    /// Copy with the timing block cleared, for comparisons.
    pub fn without_timing(&self) -> Report {
        Report {
            timing: Timing::default(),
            ..self.clone()
        }
    }

    pub fn exit_code(&self) -> i32 {
        match &self.error {
            None => 0,
            Some(e) if e.kind == "ParseError" => 2,
            Some(_) => 1,
        }
    }
}

//! Problem files in, reports out. The `hk` binary is a thin wrapper.

mod problem;
mod report;

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::groebner::FreeElement;
use crate::hkanalysis::{
    additive_error, analyze, format_rational, sample_hk, tau_analysis,
    AdditiveErrorReport, SampleOptions, SampleRun,
};
use crate::modpres::{length_mod_frobenius, LengthOptions, ModulePresentation};
use crate::oracle::{frobenius_relations, oracle_length_auto, DEFAULT_CELL_CAP};
use crate::poly::OrderKind;

pub use problem::{parse_problem, ProblemFile};
pub use report::*;

pub const ENGINE: &str = concat!("hilbert-kunz ", env!("CARGO_PKG_VERSION"));

const DEFAULT_PERIOD_MAX: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Compute,
    Fit,
    Tau,
    AdditiveError,
    OracleCheck,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Compute => "compute",
            Subcommand::Fit => "fit",
            Subcommand::Tau => "tau",
            Subcommand::AdditiveError => "additive-error",
            Subcommand::OracleCheck => "oracle-check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunFlags {
    /// Per-sample wall clock budget.
    pub n_max_seconds: Option<f64>,
    pub order: OrderKind,
    pub threads: usize,
    pub format: Format,
}

impl Default for RunFlags {
    fn default() -> Self {
        RunFlags {
            n_max_seconds: None,
            order: OrderKind::GrevLex,
            threads: 0,
            format: Format::Json,
        }
    }
}

impl RunFlags {
    fn sample_options(&self) -> SampleOptions {
        SampleOptions {
            length: LengthOptions {
                order: self.order,
                ..LengthOptions::default()
            },
            threads: self.threads,
            per_sample: self
                .n_max_seconds
                .filter(|s| s.is_finite() && *s >= 0.0)
                .map(Duration::from_secs_f64),
        }
    }
}

fn order_name(o: OrderKind) -> &'static str {
    match o {
        OrderKind::GrevLex => "grevlex",
        OrderKind::Lex => "lex",
    }
}

fn empty_report(sub: Subcommand, flags: &RunFlags) -> Report {
    Report {
        input: InputEcho {
            engine: ENGINE.to_string(),
            subcommand: sub.name().to_string(),
            order: order_name(flags.order).to_string(),
            threads: flags.threads,
            n_max_seconds: flags.n_max_seconds,
            problem: None,
        },
        samples: Vec::new(),
        analysis: None,
        timing: Timing::default(),
        warnings: Vec::new(),
        error: None,
    }
}

/// Parses `text` and runs; parse errors land in the report's error object.
pub fn run_text(sub: Subcommand, text: &str, flags: &RunFlags) -> Report {
    match parse_problem(text) {
        Ok(problem) => run(sub, &problem, flags),
        Err(e) => {
            let mut r = empty_report(sub, flags);
            r.error = Some(ErrorObject::new(&e));
            r
        }
    }
}

pub fn run(sub: Subcommand, problem: &ProblemFile, flags: &RunFlags) -> Report {
    let start = Instant::now();
    let mut report = empty_report(sub, flags);
    if let Err(e) = execute(sub, problem, flags, &mut report) {
        report.error = Some(ErrorObject::new(&e));
    }
    report.timing.total_seconds = start.elapsed().as_secs_f64();
    report
}

fn record(report: &mut Report, run: &SampleRun) {
    report.samples = SampleRow::rows(&run.series);
    report.timing.samples = TimingRow::rows(&run.timings);
    report.warnings.extend(run.warnings.iter().cloned());
}

fn execute(sub: Subcommand, pf: &ProblemFile, flags: &RunFlags, report: &mut Report) -> Result<()> {
    let ring = pf.ring_spec()?;
    report.input.problem = Some(ProblemEcho {
        p: pf.p(),
        vars: pf.ring.names().to_vec(),
        dim: ring.dim(),
        n_min: pf.n_min,
        n_max: pf.n_max,
        text: pf.to_text(),
    });
    let ideal = pf.ideal_spec();
    let opts = flags.sample_options();
    let mut analysis = Analysis::default();

    match sub {
        Subcommand::Compute | Subcommand::Fit => {
            let module = pf.module(&ring, &opts.length.limits)?;
            let run = sample_hk(&ring, &ideal, &module, pf.n_min, pf.n_max, &opts)?;
            record(report, &run);
            if sub == Subcommand::Compute {
                return Ok(());
            }
            if run.series.is_empty() {
                return Err(Error::InsufficientSamples { needed: 1, have: 0 });
            }
            let a = analyze(&run.series, pf.period_max.unwrap_or(DEFAULT_PERIOD_MAX))?;
            analysis.alpha = Some(AlphaSection::new(&a.alpha));
            analysis.beta = a.beta.as_ref().map(BetaSection::new);
            analysis.polynomial_fit = a
                .polynomial_fit()
                .map(|f| f.coefficients.iter().map(format_rational).collect());
            analysis.geometric_tail = a.geometric_tail().map(|g| GeometricSection {
                leading: format_rational(&g.leading),
                ratio: g.ratio,
                coefficient: format_rational(&g.coefficient),
            });
            analysis.periodic_tail = a.periodic_tail.as_ref().map(PeriodicSection::new);
            analysis.unclassified_residual = Some(a.unclassified_residual);
            report.warnings.extend(a.warnings);
        }
        Subcommand::Tau => {
            let module = pf.module(&ring, &opts.length.limits)?;
            let r = module.declared_generic_rank().ok_or_else(|| {
                Error::Semantic("tau needs the generic rank: set `rank`".into())
            })?;
            let run_m = sample_hk(&ring, &ideal, &module, pf.n_min, pf.n_max, &opts)?;
            record(report, &run_m);
            let free = ModulePresentation::free(&ring, 1);
            let run_r = sample_hk(&ring, &ideal, &free, pf.n_min, pf.n_max, &opts)?;
            report
                .warnings
                .extend(run_r.warnings.iter().map(|w| format!("R: {w}")));
            analysis.ring_samples = Some(SampleRow::rows(&run_r.series));
            let common = run_m.series.len().min(run_r.series.len());
            let sm = run_m.series.truncate(common);
            let sr = run_r.series.truncate(common);
            let t = tau_analysis(&sm, &sr, r as u64)?;
            analysis.alpha = Some(AlphaSection::new(&t.alpha_module));
            analysis.delta = Some(int_values(&t.deltas));
            analysis.tau = Some(TauSection::new(t.generic_rank, &t.tau));
            analysis.recursion = Some(BoundSection::new(&t.recursion));
            report.warnings.extend(t.warnings);
        }
        Subcommand::AdditiveError => {
            let seq = pf.sequence_spec(&ring)?.ok_or_else(|| {
                Error::Semantic("additive-error needs a `sequence` key".into())
            })?;
            let a = additive_error(&ring, &seq, &ideal, pf.n_min, pf.n_max, &opts)?;
            record(report, &a.runs[1]);
            analysis.additive = Some(additive_section(&a));
            report.warnings.extend(a.warnings);
        }
        Subcommand::OracleCheck => {
            analysis.oracle = Some(oracle_check(pf, flags, report)?);
        }
    }
    report.analysis = Some(analysis);
    Ok(())
}

fn additive_section(a: &AdditiveErrorReport) -> AdditiveSection {
    let len = |k: usize, i: usize| a.runs[k].series.samples()[i].length.to_string();
    let rows = a
        .errors
        .iter()
        .enumerate()
        .map(|(i, (n, e))| AdditiveRow {
            n: *n,
            q: a.runs[1].series.samples()[i].q.to_string(),
            submodule: len(0, i),
            ambient: len(1, i),
            quotient: len(2, i),
            error: e.to_string(),
        })
        .collect();
    AdditiveSection {
        rows,
        bound: BoundSection::new(&a.bound),
        leading: format_rational(&a.leading),
        leading_estimated: a.leading_estimated,
        leading_check: BoundSection::new(&a.leading_check),
    }
}

/// Compares the Gröbner length with the Macaulay oracle at the smallest n
/// of the range.
fn oracle_check(pf: &ProblemFile, flags: &RunFlags, report: &mut Report) -> Result<OracleSection> {
    let ring = pf.ring_spec()?;
    let ideal = pf.ideal_spec();
    if !ideal.is_m_primary(&ring)? {
        return Err(Error::NotZeroDimensional);
    }
    let opts = flags.sample_options();
    let module = pf.module(&ring, &opts.length.limits)?;
    let n = pf.n_min;
    let s = ring.ring();
    let q = s
        .field()
        .power_of_p(n)
        .ok_or_else(|| Error::Semantic(format!("p^{n} overflows a 64-bit integer")))?;
    let groebner = length_mod_frobenius(&ring, &module, &ideal, n, &opts.length)?;
    let rels = frobenius_relations(s, &module, &ideal, q)?;
    let top = rels.iter().map(FreeElement::degree).max().unwrap_or(0) as u64;
    let max_degree = (2 * top * s.nvars() as u64 + 4).min(u32::MAX as u64) as u32;
    let o = oracle_length_auto(s, &rels, module.rank(), max_degree, DEFAULT_CELL_CAP)?;
    if !o.stable {
        report.warnings.push(format!(
            "oracle count not certified stable at degree bound {}",
            o.degree_bound
        ));
    }
    report.samples = vec![SampleRow {
        n,
        q: q.to_string(),
        length: groebner.to_string(),
    }];
    if o.count != groebner {
        return Err(Error::OracleMismatch {
            n,
            groebner,
            oracle: o.count,
        });
    }
    Ok(OracleSection {
        n,
        degree_bound: o.degree_bound,
        groebner: groebner.to_string(),
        oracle: o.count.to_string(),
        stable: o.stable,
        agree: true,
    })
}

/// Renders the report in the requested format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, ValueEnum};
use hilbert_kunz::cli::{render, run_text, Format, RunFlags, Subcommand};
use hilbert_kunz::poly::OrderKind;

#[derive(Parser)]
#[command(name = "hk", version, about = "Hilbert-Kunz functions over F_p")]
enum Cli {
    /// Sample the Hilbert-Kunz function over the range n.
    Compute(Common),
    /// Sample and extract alpha, beta and the tail shape.
    Fit(Common),
    /// Deltas, tau and the delta recursion for a torsion-free module.
    Tau(Common),
    /// Additive error along a short exact sequence.
    AdditiveError(Common),
    /// Cross-check one length against the Macaulay oracle.
    OracleCheck(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Problem file; `-` reads standard input.
    problem: PathBuf,
    /// Per-sample time budget in seconds.
    #[arg(long)]
    n_max_seconds: Option<f64>,
    #[arg(long, value_enum, default_value = "grevlex")]
    order: OrderArg,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

fn main() -> ExitCode {
    let (sub, c) = match Cli::parse() {
        Cli::Compute(c) => (Subcommand::Compute, c),
        Cli::Fit(c) => (Subcommand::Fit, c),
        Cli::Tau(c) => (Subcommand::Tau, c),
        Cli::AdditiveError(c) => (Subcommand::AdditiveError, c),
        Cli::OracleCheck(c) => (Subcommand::OracleCheck, c),
    };
    let text = if c.problem.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&c.problem)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("hk: {}: {e}", c.problem.display());
            return ExitCode::from(2);
        }
    };
    let flags = RunFlags {
        n_max_seconds: c.n_max_seconds,
        order: match c.order {
            OrderArg::Lex => OrderKind::Lex,
            OrderArg::Grevlex => OrderKind::GrevLex,
        },
        threads: c.threads,
        format: match c.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
    };
    let report = run_text(sub, &text, &flags);
    print!("{}", render(&report, flags.format));
    if let (Format::Csv, Some(e)) = (flags.format, &report.error) {
        eprintln!("hk: {}: {}", e.kind, e.message);
    }
    ExitCode::from(report.exit_code() as u8)
}

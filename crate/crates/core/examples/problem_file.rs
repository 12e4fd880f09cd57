//! Running a problem file and emitting JSON or CSV, as `hk` does.

use hilbert_kunz::cli::{render, run_text, Format, RunFlags, Subcommand};

const PROBLEM: &str = "\
# plane quintic in characteristic 3
p = 3
vars = x y
ring = x^5 - y^5
period_max = 2
n = 1..6
";

fn main() {
    let flags = RunFlags::default();
    let report = run_text(Subcommand::Fit, PROBLEM, &flags);
    print!("{}", render(&report, Format::Csv));
    let a = report.analysis.as_ref().unwrap();
    println!("alpha = {}", a.alpha.as_ref().unwrap().extrapolated.value);
    println!("tail  = {:?}", a.periodic_tail);

    let bad = run_text(Subcommand::Fit, "p = 4\nvars = x\nn = 0..1\n", &flags);
    print!("{}", serde_json::to_string_pretty(&bad.error).unwrap());
    println!("\nexit code {}", bad.exit_code());
}

//! The determinantal ring has a polynomial Hilbert-Kunz function; recover it exactly.

use hilbert_kunz::hkanalysis::{analyze, format_rational, sample_hk, SampleOptions};
use hilbert_kunz::modpres::{IdealSpec, ModulePresentation, RingSpec};
use hilbert_kunz::poly::PolyRing;

fn main() -> hilbert_kunz::Result<()> {
    let s = PolyRing::with_vars(2, &["x1", "x2", "x3", "x4", "x5", "x6"])?;
    let minors = ["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"]
        .iter()
        .map(|t| s.parse(t))
        .collect::<Result<Vec<_>, _>>()?;
    let ring = RingSpec::new(s.clone(), minors, None)?;
    let m = IdealSpec::maximal(&s);
    let run = sample_hk(&ring, &m, &ModulePresentation::free(&ring, 1), 0, 5, &SampleOptions::default())?;
    println!("phi = {:?}", run.series.lengths().iter().map(|l| l.to_string()).collect::<Vec<_>>());

    let report = analyze(&run.series, 4)?;
    let fit = report.polynomial_fit().expect("polynomial");
    let c: Vec<String> = fit.coefficients.iter().map(format_rational).collect();
    println!("phi_n = {} q^4 + {} q^3 + {} q^2 + {} q + {}", c[0], c[1], c[2], c[3], c[4]);
    println!("verified on {} samples", fit.verified_samples);
    Ok(())
}

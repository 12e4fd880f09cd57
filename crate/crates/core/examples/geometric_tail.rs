//! The Han–Monsky quartic: no polynomial fits, but α·q^3 + c·r^n does.

use hilbert_kunz::hkanalysis::{fit_geometric_tail, format_rational, sample_hk, SampleOptions};
use hilbert_kunz::modpres::{IdealSpec, ModulePresentation, RingSpec};
use hilbert_kunz::poly::PolyRing;

fn main() -> hilbert_kunz::Result<()> {
    let s = PolyRing::with_vars(5, &["x1", "x2", "x3", "x4"])?;
    let ring = RingSpec::new(s.clone(), vec![s.parse("x1^4 + x2^4 + x3^4 + x4^4")?], None)?;
    let m = IdealSpec::maximal(&s);
    let run = sample_hk(&ring, &m, &ModulePresentation::free(&ring, 1), 1, 3, &SampleOptions::default())?;
    println!("phi_1..3 = {:?}", run.series.lengths().iter().map(|l| l.to_string()).collect::<Vec<_>>());
    if let Some(g) = fit_geometric_tail(&run.series)? {
        println!(
            "phi_n = {} q^3 + ({}) {}^n",
            format_rational(&g.leading),
            format_rational(&g.coefficient),
            g.ratio
        );
    }
    Ok(())
}

//! δ_n and τ for the canonical module of the determinantal ring.

use hilbert_kunz::groebner::Limits;
use hilbert_kunz::hkanalysis::{format_rational, sample_hk, tau_analysis, to_f64, SampleOptions};
use hilbert_kunz::modpres::{present_submodule, IdealSpec, ModulePresentation, RingSpec, SubmoduleSpec};
use hilbert_kunz::poly::PolyRing;

fn main() -> hilbert_kunz::Result<()> {
    let s = PolyRing::with_vars(2, &["x1", "x2", "x3", "x4", "x5", "x6"])?;
    let minors = ["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"]
        .iter()
        .map(|t| s.parse(t))
        .collect::<Result<Vec<_>, _>>()?;
    let ring = RingSpec::new(s.clone(), minors, None)?;
    let m = IdealSpec::maximal(&s);
    let omega = SubmoduleSpec::ideal_of_ring(&ring, vec![s.var(0), s.var(3)])?;
    let w = present_submodule(&ring, &omega, &Limits::default())?;
    let opts = SampleOptions::default();
    let sw = sample_hk(&ring, &m, &w, 0, 3, &opts)?.series;
    let sr = sample_hk(&ring, &m, &ModulePresentation::free(&ring, 1), 0, 3, &opts)?.series;

    let rep = tau_analysis(&sw, &sr, 1)?;
    for (n, d) in &rep.deltas {
        println!("delta_{n} = {d}");
    }
    println!("tau ~ {} = {:.4}", format_rational(&rep.tau.extrapolated), to_f64(&rep.tau.extrapolated));
    println!("recursion bound C = {} : {}", format_rational(&rep.recursion.constant), if rep.recursion.pass { "PASS" } else { "FAIL" });
    for w in &rep.warnings {
        println!("warning: {w}");
    }
    Ok(())
}

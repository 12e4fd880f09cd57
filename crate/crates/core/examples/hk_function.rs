//! φ_n = ℓ(R / m^[p^n]) for a plane curve, sampled in parallel.

use hilbert_kunz::hkanalysis::{sample_hk, SampleOptions};
use hilbert_kunz::modpres::{IdealSpec, ModulePresentation, RingSpec};
use hilbert_kunz::poly::PolyRing;

fn main() -> hilbert_kunz::Result<()> {
    let s = PolyRing::with_vars(3, &["x", "y"])?;
    let ring = RingSpec::new(s.clone(), vec![s.parse("x^5 - y^5")?], None)?;
    let m = IdealSpec::maximal(&s);
    let run = sample_hk(&ring, &m, &ModulePresentation::free(&ring, 1), 0, 6, &SampleOptions::default())?;
    for (smp, t) in run.series.samples().iter().zip(&run.timings) {
        println!("n={} q={:>4} phi={:>6}  ({:.3}s)", smp.n, smp.q, smp.length, t.seconds);
    }
    Ok(())
}

//! Additive error along 0 → (x1, x2, x3) → R → R/(x1, x2, x3) → 0.

use hilbert_kunz::hkanalysis::{additive_error, format_rational, rational, ExactSequenceSpec, SampleOptions};
use hilbert_kunz::modpres::{IdealSpec, RingSpec, SubmoduleSpec};
use hilbert_kunz::poly::PolyRing;

fn main() -> hilbert_kunz::Result<()> {
    let s = PolyRing::with_vars(2, &["x1", "x2", "x3", "x4", "x5", "x6"])?;
    let minors = ["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"]
        .iter()
        .map(|t| s.parse(t))
        .collect::<Result<Vec<_>, _>>()?;
    let ring = RingSpec::new(s.clone(), minors, None)?;
    let j = SubmoduleSpec::ideal_of_ring(&ring, vec![s.var(0), s.var(1), s.var(2)])?;
    let seq = ExactSequenceSpec {
        submodule: j,
        ranks: [Some(1), Some(1), Some(0)],
        leading: Some(rational(1, 2)),
    };
    let rep = additive_error(&ring, &seq, &IdealSpec::maximal(&s), 1, 3, &SampleOptions::default())?;
    println!(" n     N      R    R/J    e_n");
    for (i, (n, e)) in rep.errors.iter().enumerate() {
        let l = |k: usize| rep.runs[k].series.samples()[i].length.to_string();
        println!("{n:>2} {:>5} {:>6} {:>6} {:>6}", l(0), l(1), l(2), e);
    }
    for b in [&rep.bound, &rep.leading_check] {
        println!("{}: C = {} {}", b.label, format_rational(&b.constant), if b.pass { "PASS" } else { "FAIL" });
    }
    Ok(())
}

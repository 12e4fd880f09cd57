//! x^5 - y^5: α = 5 and φ_n − 5q alternates between two values.

use hilbert_kunz::hkanalysis::{analyze, format_rational, sample_hk, SampleOptions};
use hilbert_kunz::modpres::{IdealSpec, ModulePresentation, RingSpec};
use hilbert_kunz::poly::PolyRing;

fn main() -> hilbert_kunz::Result<()> {
    for p in [2, 3, 7] {
        let s = PolyRing::with_vars(p, &["x", "y"])?;
        let ring = RingSpec::new(s.clone(), vec![s.parse("x^5 - y^5")?], None)?;
        let m = IdealSpec::maximal(&s);
        let run = sample_hk(&ring, &m, &ModulePresentation::free(&ring, 1), 1, 8, &SampleOptions::default())?;
        let rep = analyze(&run.series, 2)?;
        print!("p={p}: alpha={} ({})", format_rational(&rep.alpha.extrapolated), rep.alpha.method.name());
        if let Some(t) = &rep.periodic_tail {
            let res: Vec<String> = t
                .residues
                .iter()
                .map(|(k, v)| format!("n≡{k}: {}", format_rational(v)))
                .collect();
            print!("  period {} from n={}  [{}]", t.period, t.start_n, res.join(", "));
        }
        println!();
    }
    Ok(())
}

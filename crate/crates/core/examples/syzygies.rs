//! Presenting the ideal (x1, x4) of the determinantal ring as a module.

use hilbert_kunz::groebner::{syzygies, FreeElement, Limits};
use hilbert_kunz::modpres::{present_submodule, RingSpec, SubmoduleSpec};
use hilbert_kunz::poly::PolyRing;

fn main() -> hilbert_kunz::Result<()> {
    let s = PolyRing::with_vars(2, &["x1", "x2", "x3", "x4", "x5", "x6"])?;
    let minors = ["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"]
        .iter()
        .map(|t| s.parse(t))
        .collect::<Result<Vec<_>, _>>()?;
    let ring = RingSpec::new(s.clone(), minors, None)?;
    println!("dim R = {}", ring.dim());

    let limits = Limits::default();
    let gens = vec![FreeElement::scalar(s.var(0)), FreeElement::scalar(s.var(3))];
    for z in syzygies(&s, &gens, &limits)? {
        let c: Vec<String> = z.components().iter().map(|f| s.display(f).to_string()).collect();
        println!("syzygy over S: ({})", c.join(", "));
    }

    let omega = SubmoduleSpec::ideal_of_ring(&ring, vec![s.var(0), s.var(3)])?;
    let m = present_submodule(&ring, &omega, &limits)?;
    println!("omega = R^{} / ({} relations)", m.rank(), m.relations().len());
    for r in m.relations() {
        let c: Vec<String> = r.components().iter().map(|f| s.display(f).to_string()).collect();
        println!("  ({})", c.join(", "));
    }
    Ok(())
}

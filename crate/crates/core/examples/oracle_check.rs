//! The Gröbner count against a brute-force Macaulay matrix.

use hilbert_kunz::modpres::{length_mod_frobenius, IdealSpec, LengthOptions, ModulePresentation, RingSpec};
use hilbert_kunz::oracle::{frobenius_relations, oracle_length_auto, DEFAULT_CELL_CAP};
use hilbert_kunz::poly::PolyRing;

fn main() -> hilbert_kunz::Result<()> {
    let s = PolyRing::with_vars(3, &["x", "y", "z"])?;
    let ring = RingSpec::new(s.clone(), vec![s.parse("x^3 + y^3 + z^3")?], None)?;
    let m = IdealSpec::maximal(&s);
    let free = ModulePresentation::free(&ring, 1);
    for n in 0..=2 {
        let q = s.field().power_of_p(n).unwrap();
        let gb = length_mod_frobenius(&ring, &free, &m, n, &LengthOptions::default())?;
        let rels = frobenius_relations(&s, &free, &m, q)?;
        let o = oracle_length_auto(&s, &rels, 1, 3 * q as u32 + 3, DEFAULT_CELL_CAP)?;
        println!("q={q}: groebner {gb}, oracle {} at D={} (stable: {})", o.count, o.degree_bound, o.stable);
    }
    Ok(())
}

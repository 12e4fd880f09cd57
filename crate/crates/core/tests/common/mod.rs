#![allow(dead_code)]

pub mod sweep;

use hilbert_kunz::groebner::FreeElement;
use hilbert_kunz::modpres::{IdealSpec, ModulePresentation, RingSpec};
use hilbert_kunz::poly::{Monomial, PolyRing, Polynomial};
use rand::Rng;

pub const MINORS: [&str; 3] = ["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"];

pub fn determinantal(p: u64) -> (RingSpec, IdealSpec) {
    let s = PolyRing::with_vars(p, &["x1", "x2", "x3", "x4", "x5", "x6"]).unwrap();
    let minors = MINORS.iter().map(|t| s.parse(t).unwrap()).collect();
    let m = IdealSpec::maximal(&s);
    (RingSpec::new(s, minors, None).unwrap(), m)
}

pub fn hypersurface(p: u64, vars: &[&str], f: &str) -> (RingSpec, IdealSpec) {
    let s = PolyRing::with_vars(p, vars).unwrap();
    let f = s.parse(f).unwrap();
    let m = IdealSpec::maximal(&s);
    (RingSpec::new(s, vec![f], None).unwrap(), m)
}

pub fn free(ring: &RingSpec) -> ModulePresentation {
    ModulePresentation::free(ring, 1)
}

/// Random polynomial with up to `max_terms` terms of degrees in `min_deg..=max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, s: &PolyRing, min_deg: u32, max_deg: u32, max_terms: usize) -> Polynomial {
    let k = rng.gen_range(1..=max_terms);
    let terms = (0..k).map(|_| {
        let deg = rng.gen_range(min_deg..=max_deg);
        let mut e = vec![0u32; s.nvars()];
        for _ in 0..deg {
            e[rng.gen_range(0..s.nvars())] += 1;
        }
        (rng.gen_range(1..s.p() as i64), Monomial::new(&e))
    });
    s.from_terms(terms.collect::<Vec<_>>()).unwrap()
}

pub fn random_element<R: Rng>(rng: &mut R, s: &PolyRing, rank: usize, min_deg: u32, max_deg: u32) -> FreeElement {
    let comps = (0..rank)
        .map(|_| {
            if rng.gen_bool(0.3) {
                s.zero()
            } else {
                random_poly(rng, s, min_deg, max_deg, 3)
            }
        })
        .collect();
    FreeElement::new(comps).unwrap()
}

//! Random small instances: Gröbner length against the Macaulay oracle.

use hilbert_kunz::groebner::Limits;
use hilbert_kunz::modpres::{length_mod_frobenius, IdealSpec, LengthOptions, ModulePresentation, RingSpec};
use hilbert_kunz::oracle::{frobenius_relations, oracle_length_auto, DEFAULT_CELL_CAP};
use hilbert_kunz::poly::{OrderKind, PolyRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Outcome {
    pub instances: usize,
    /// Instances with a nonzero length and with q > 1.
    pub nonzero: usize,
    pub nontrivial_q: usize,
    pub discrepancies: Vec<String>,
}

/// p ∈ {2, 3, 5}, at most 3 variables, degrees ≤ 3, q ≤ 4.
pub fn cross_check(seed: u64, instances: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["x", "y", "z"];
    let mut discrepancies = Vec::new();
    let (mut nonzero, mut nontrivial_q) = (0, 0);
    for i in 0..instances {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let nvars = rng.gen_range(1..=3);
        let s = PolyRing::with_vars(p, &names[..nvars]).unwrap();
        let qs: Vec<u32> = (0..=2).filter(|&n| p.pow(n) <= 4).collect();
        let n = if qs.len() > 1 && rng.gen_bool(0.8) {
            qs[rng.gen_range(1..qs.len())]
        } else {
            0
        };
        let q = p.pow(n);
        let rank = if rng.gen_bool(0.25) { 2 } else { 1 };
        let ring_rels: Vec<_> = (0..rng.gen_range(0..=1))
            .map(|_| super::random_poly(&mut rng, &s, 1, 3, 3))
            .collect();
        let ring = RingSpec::new(s.clone(), ring_rels, Some(nvars)).unwrap();
        let rels = (0..rng.gen_range(0..=2))
            .map(|_| {
                let min = u32::from(!rng.gen_bool(0.15));
                super::random_element(&mut rng, &s, rank, min, 3)
            })
            .collect();
        let module = ModulePresentation::new(&ring, rank, rels, None).unwrap();
        let mut gens: Vec<_> = (0..nvars).map(|v| s.var(v)).collect();
        if rng.gen_bool(0.5) {
            gens.push(super::random_poly(&mut rng, &s, 1, 3, 3));
        }
        if rng.gen_bool(0.3) {
            let v = rng.gen_range(0..nvars);
            gens[v] = s.pow(&s.var(v), rng.gen_range(1..=3)).unwrap();
        }
        let ideal = IdealSpec::new(gens);
        let order = if rng.gen_bool(0.5) { OrderKind::GrevLex } else { OrderKind::Lex };
        let opts = LengthOptions {
            order,
            limits: Limits::default(),
            ..LengthOptions::default()
        };
        let gb = length_mod_frobenius(&ring, &module, &ideal, n, &opts).unwrap();
        let frel = frobenius_relations(&s, &module, &ideal, q).unwrap();
        let top = frel.iter().map(|r| r.degree()).max().unwrap_or(0) as u32;
        let o = oracle_length_auto(&s, &frel, rank, 2 * top * nvars as u32 + 4, DEFAULT_CELL_CAP).unwrap();
        nonzero += usize::from(gb > 0);
        nontrivial_q += usize::from(q > 1);
        if !o.stable || o.count != gb {
            discrepancies.push(format!(
                "#{i}: p={p} q={q} vars={nvars} rank={rank} {order:?}: groebner {gb}, oracle {} (D={}, stable {})",
                o.count, o.degree_bound, o.stable
            ));
        }
    }
    Outcome {
        instances,
        nonzero,
        nontrivial_q,
        discrepancies,
    }
}

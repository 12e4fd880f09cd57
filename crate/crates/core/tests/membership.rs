//! Gröbner normal forms against oracle lengths for the ideal (x² − y, y² − x).

mod common;

use hilbert_kunz::groebner::{ideal_basis, normal_form, FreeElement, Limits};
use hilbert_kunz::oracle::{oracle_length_auto, DEFAULT_CELL_CAP};
use hilbert_kunz::poly::{MonomialOrder, PolyRing, Polynomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lex_ring(p: u64) -> PolyRing {
    PolyRing::with_vars(p, &["x", "y"])
        .unwrap()
        .with_order(MonomialOrder::lex(2))
        .unwrap()
}

/// ℓ(S / (gens, f)) by linear algebra alone.
fn oracle_with(s: &PolyRing, gens: &[Polynomial], f: &Polynomial) -> u64 {
    let mut rels: Vec<FreeElement> = gens.iter().cloned().map(FreeElement::scalar).collect();
    rels.push(FreeElement::scalar(f.clone()));
    let o = oracle_length_auto(s, &rels, 1, 16, DEFAULT_CELL_CAP).unwrap();
    assert!(o.stable);
    o.count
}

#[test]
fn products_are_members() {
    let s = lex_ring(5);
    let gens = vec![s.parse("x^2 - y").unwrap(), s.parse("y^2 - x").unwrap()];
    let gb = ideal_basis(&s, &gens, &Limits::default()).unwrap();
    assert_eq!(oracle_with(&s, &gens, &s.zero()), 4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let a = common::random_poly(&mut rng, &s, 0, 3, 3);
        let b = common::random_poly(&mut rng, &s, 0, 3, 3);
        let f = s
            .add(&s.mul(&a, &gens[0]).unwrap(), &s.mul(&b, &gens[1]).unwrap())
            .unwrap();
        let nf = normal_form(&FreeElement::scalar(f.clone()), &gb).unwrap();
        assert!(nf.is_zero(), "{}", s.display(&f));
        assert_eq!(oracle_with(&s, &gens, &f), 4);
    }
}

#[test]
fn membership_agrees_with_oracle() {
    let s = lex_ring(3);
    let gens = vec![s.parse("x^2 - y").unwrap(), s.parse("y^2 - x").unwrap()];
    let gb = ideal_basis(&s, &gens, &Limits::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut members = 0;
    for _ in 0..50 {
        let f = common::random_poly(&mut rng, &s, 0, 3, 2);
        let member = normal_form(&FreeElement::scalar(f.clone()), &gb).unwrap().is_zero();
        members += usize::from(member);
        assert_eq!(member, oracle_with(&s, &gens, &f) == 4, "{}", s.display(&f));
    }
    assert!(members < 50);
}

#[test]
fn cubic_difference_reduces_to_zero() {
    let s = lex_ring(7);
    let gens = vec![s.parse("x^2 - y").unwrap(), s.parse("y^2 - x").unwrap()];
    let gb = ideal_basis(&s, &gens, &Limits::default()).unwrap();
    let f = FreeElement::scalar(s.parse("x^3 - y^3").unwrap());
    assert!(normal_form(&f, &gb).unwrap().is_zero());
}

//! A reduced Gröbner basis, normal forms and the length of a quotient.

use hilbert_kunz::groebner::{count_standard_monomials, ideal_basis, normal_form, FreeElement, Limits};
use hilbert_kunz::poly::PolyRing;

fn main() -> hilbert_kunz::Result<()> {
    let s = PolyRing::with_vars(3, &["x", "y"])?;
    let gens = vec![s.parse("x^2 - y")?, s.parse("y^2 - x")?];
    let limits = Limits::default();
    let gb = ideal_basis(&s, &gens, &limits)?;
    for g in gb.polynomials() {
        println!("  {}", s.display(&g));
    }
    let f = FreeElement::scalar(s.parse("x^5 + y^3")?);
    let nf = normal_form(&f, &gb)?;
    println!("x^5 + y^3 reduces to {}", s.display(&nf.components()[0]));
    println!("dim_k S/I = {}", count_standard_monomials(&gb, 1, &limits)?);
    Ok(())
}

//! Parsing, arithmetic and Frobenius powers in F_p[x, y, z].

use hilbert_kunz::poly::{MonomialOrder, PolyRing};

fn main() -> hilbert_kunz::Result<()> {
    let s = PolyRing::with_vars(5, &["x", "y", "z"])?;
    let f = s.parse("x^2 + 3*x*y - z")?;
    let g = s.parse("x - y")?;
    println!("f       = {}", s.display(&f));
    println!("f * g   = {}", s.display(&s.mul(&f, &g)?));
    println!("f^5     = {}", s.display(&s.pow(&f, 5)?));
    // freshman's dream: raising to p is the term-wise power
    println!("f^[5]   = {}", s.display(&s.frobenius_power(&f, 5)?));
    println!("coeffs reduce mod 5: {}", s.display(&s.parse("7*x + 10*y")?));

    let lex = s.with_order(MonomialOrder::lex(3))?;
    let h = lex.parse("x*y^2 + x^2*z + y^3")?;
    println!("lex     = {}", lex.display(&h));
    println!("grevlex = {}", s.display(&s.adopt(&h)?));
    Ok(())
}

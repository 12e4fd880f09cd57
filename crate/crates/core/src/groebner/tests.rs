use super::*;
use crate::poly::MonomialOrder;

fn ring(p: u64, vars: &[&str]) -> PolyRing {
    PolyRing::with_vars(p, vars).unwrap()
}

fn polys(r: &PolyRing, src: &[&str]) -> Vec<Polynomial> {
    src.iter().map(|s| r.parse(s).unwrap()).collect()
}

fn gb(r: &PolyRing, src: &[&str]) -> GroebnerBasis {
    ideal_basis(r, &polys(r, src), &Limits::default()).unwrap()
}

fn scalar_nf(r: &PolyRing, g: &GroebnerBasis, f: &str) -> Polynomial {
    normal_form(&FreeElement::scalar(r.parse(f).unwrap()), g)
        .unwrap()
        .into_components()
        .swap_remove(0)
}

#[test]
fn normal_form_examples() {
    let r = ring(7, &["x", "y"]);
    let g = gb(&r, &["x"]);
    assert!(scalar_nf(&r, &g, "x^2").is_zero());
    assert_eq!(scalar_nf(&r, &g, "x^2 + y"), r.parse("y").unwrap());

    let lex = r.with_order(MonomialOrder::lex(2)).unwrap();
    let g = gb(&lex, &["x^2 - y", "y^2 - x"]);
    assert!(g.verify());
    assert!(scalar_nf(&lex, &g, "x^3 - y^3").is_zero());
    assert!(!scalar_nf(&lex, &g, "x*y + 1").is_zero());
}

#[test]
fn already_reduced_input() {
    let r = ring(3, &["x", "y"]);
    let g = gb(&r, &["x", "y"]);
    assert_eq!(g.polynomials(), polys(&r, &["y", "x"]));
}

#[test]
fn lex_basis_of_two_parabolas() {
    let lex = PolyRing::new(5, vec!["x".into(), "y".into()], MonomialOrder::lex(2)).unwrap();
    let g = gb(&lex, &["x^2 - y", "y^2 - x"]);
    assert!(g.verify());
    // the lex basis eliminates x: it contains a univariate polynomial in y
    let pol = g.polynomials();
    assert!(pol
        .iter()
        .any(|f| f.terms().iter().all(|(_, m)| m.exponents()[0] == 0) && !f.is_zero()));
    // all input generators reduce to zero
    for f in ["x^2 - y", "y^2 - x"] {
        assert!(scalar_nf(&lex, &g, f).is_zero());
    }
}

#[test]
fn frobenius_absorbed_generator() {
    let r = ring(2, &["x", "y"]);
    let g = gb(&r, &["x^5 - y^5", "x^2", "y^2"]);
    assert_eq!(g.polynomials(), polys(&r, &["y^2", "x^2"]));
    assert_eq!(count_standard_monomials(&g, 1, &Limits::default()).unwrap(), 4);
}

#[test]
fn pure_powers_count() {
    let r = ring(5, &["x", "y"]);
    let g = gb(&r, &["x^2", "y^3"]);
    assert!(is_zero_dimensional(&g, 1));
    assert_eq!(count_standard_monomials(&g, 1, &Limits::default()).unwrap(), 6);
    let g = gb(&r, &["x"]);
    assert!(!is_zero_dimensional(&g, 1));
    assert_eq!(
        count_standard_monomials(&g, 1, &Limits::default()),
        Err(Error::NotZeroDimensional)
    );
}

fn minors() -> Vec<&'static str> {
    vec!["x1*x5 - x2*x4", "x1*x6 - x3*x4", "x2*x6 - x3*x5"]
}

const SIX: [&str; 6] = ["x1", "x2", "x3", "x4", "x5", "x6"];

#[test]
fn determinantal_count_at_q2() {
    let r = ring(2, &SIX);
    let mut src = minors();
    let squares: Vec<String> = SIX.iter().map(|v| format!("{v}^2")).collect();
    src.extend(squares.iter().map(String::as_str));
    let g = gb(&r, &src);
    assert!(g.verify());
    // (13*16 - 2*8 - 4 - 4) / 8
    assert_eq!(count_standard_monomials(&g, 1, &Limits::default()).unwrap(), 23);
}

#[test]
fn han_monsky_count_at_q5() {
    let r = ring(5, &["x1", "x2", "x3", "x4"]);
    let g = gb(
        &r,
        &["x1^4 + x2^4 + x3^4 + x4^4", "x1^5", "x2^5", "x3^5", "x4^5"],
    );
    assert!(is_zero_dimensional(&g, 1));
    // 168/61 * 125 - 107/61 * 3
    assert_eq!(count_standard_monomials(&g, 1, &Limits::default()).unwrap(), 339);
}

#[test]
fn krull_dimensions() {
    let r = ring(3, &["x", "y"]);
    assert_eq!(krull_dimension(&gb(&r, &["x", "y"])).unwrap(), 0);
    assert_eq!(krull_dimension(&gb(&r, &["x^5 - y^5"])).unwrap(), 1);
    assert_eq!(krull_dimension(&gb(&r, &["1"])).unwrap(), 0);
    let r6 = ring(2, &SIX);
    assert_eq!(krull_dimension(&gb(&r6, &minors())).unwrap(), 4);
    let names: Vec<String> = (0..17).map(|i| format!("v{i}")).collect();
    let big = PolyRing::with_vars(2, &names).unwrap();
    let g = ideal_basis(&big, &[big.var(0)], &Limits::default()).unwrap();
    assert_eq!(krull_dimension(&g), Err(Error::TooManyVariables(17)));
}

#[test]
fn koszul_syzygy() {
    let r = ring(5, &["x", "y"]);
    let gens: Vec<FreeElement> = polys(&r, &["x", "y"]).into_iter().map(FreeElement::scalar).collect();
    let syz = syzygies(&r, &gens, &Limits::default()).unwrap();
    assert_eq!(syz.len(), 1);
    let s = &syz[0];
    // (y, -x) up to a unit
    let expected = FreeElement::new(polys(&r, &["y", "-x"])).unwrap();
    let negated = FreeElement::new(polys(&r, &["-y", "x"])).unwrap();
    assert!(*s == expected || *s == negated, "{s:?}");
}

#[test]
fn syzygy_of_x2_xy() {
    let r = ring(3, &["x", "y"]);
    let gens: Vec<FreeElement> = polys(&r, &["x^2", "x*y"]).into_iter().map(FreeElement::scalar).collect();
    let syz = syzygies(&r, &gens, &Limits::default()).unwrap();
    assert_eq!(syz.len(), 1);
    let combo = linear_combination(&r, syz[0].components(), &gens).unwrap();
    assert!(combo.is_zero());
    let expected = FreeElement::new(polys(&r, &["y", "-x"])).unwrap();
    let negated = FreeElement::new(polys(&r, &["-y", "x"])).unwrap();
    assert!(syz[0] == expected || syz[0] == negated);
}

#[test]
fn syzygies_vanish_on_generators() {
    let r = ring(7, &["x", "y", "z"]);
    let gens: Vec<FreeElement> = [
        ["x*y", "z"],
        ["y^2 - z", "x"],
        ["x + z^2", "y*z"],
    ]
    .iter()
    .map(|row| FreeElement::new(polys(&r, row)).unwrap())
    .collect();
    let syz = syzygies(&r, &gens, &Limits::default()).unwrap();
    assert!(!syz.is_empty());
    for s in &syz {
        assert!(linear_combination(&r, s.components(), &gens).unwrap().is_zero());
    }
}

#[test]
fn module_basis_is_verified() {
    let r = ring(3, &["x", "y"]);
    let rows = [["x", "y"], ["y^2", "x*y - 1"], ["x^3", "0"]];
    let gens: Vec<FreeElement> = rows
        .iter()
        .map(|row| FreeElement::new(polys(&r, row)).unwrap())
        .collect();
    for order in [
        ModuleOrder::pot(r.order().clone(), 2),
        ModuleOrder::top(r.order().clone(), 2),
    ] {
        let g = buchberger(&r, &gens, &order, &Limits::default()).unwrap();
        assert!(g.verify());
        for f in &gens {
            assert!(normal_form(f, &g).unwrap().is_zero());
        }
    }
}

#[test]
fn rank_and_order_errors() {
    let r = ring(3, &["x", "y"]);
    let bad = vec![
        FreeElement::scalar(r.var(0)),
        FreeElement::new(vec![r.var(0), r.var(1)]).unwrap(),
    ];
    let order = ModuleOrder::pot(r.order().clone(), 1);
    assert!(matches!(
        buchberger(&r, &bad, &order, &Limits::default()),
        Err(Error::RankMismatch { .. })
    ));
    let wrong = ModuleOrder::pot(MonomialOrder::grevlex(3), 1);
    assert!(matches!(
        buchberger(&r, &bad[..1], &wrong, &Limits::default()),
        Err(Error::OrderMismatch(_))
    ));
    let g = gb(&r, &["x"]);
    assert!(matches!(
        normal_form(&bad[1], &g),
        Err(Error::RankMismatch { .. })
    ));
}

#[test]
fn basis_cap_reports_partial_size() {
    let r = ring(5, &["x", "y", "z"]);
    let limits = Limits {
        max_basis: 2,
        ..Limits::default()
    };
    let gens: Vec<FreeElement> = polys(&r, &["x^2 - y", "y^2 - z", "z^2 - x", "x*y*z - 1"])
        .into_iter()
        .map(FreeElement::scalar)
        .collect();
    match buchberger(&r, &gens, &ModuleOrder::pot(r.order().clone(), 1), &limits) {
        Err(Error::ResourceLimit { basis_size, .. }) => assert!(basis_size <= 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn lengths_do_not_depend_on_order() {
    let r = ring(3, &["x", "y", "z"]);
    let lex = r.with_order(MonomialOrder::lex(3)).unwrap();
    let src = ["x^2*y - z", "y^3 - x*z", "x^3", "y^4", "z^3"];
    let a = count_standard_monomials(&gb(&r, &src), 1, &Limits::default()).unwrap();
    let b = count_standard_monomials(&gb(&lex, &src), 1, &Limits::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn disjoint_variables_multiply() {
    let r = ring(2, &["x", "y", "u", "v"]);
    let rx = ring(2, &["x", "y"]);
    let ru = ring(2, &["u", "v"]);
    let i = ["x^3 + x*y", "y^2 + x", "x^4"];
    let j = ["u^2*v + v^2", "u^3", "v^3 + u"];
    let both: Vec<&str> = i.iter().chain(j.iter()).copied().collect();
    let l = Limits::default();
    let ci = count_standard_monomials(&gb(&rx, &i), 1, &l).unwrap();
    let cj = count_standard_monomials(&gb(&ru, &j), 1, &l).unwrap();
    let cij = count_standard_monomials(&gb(&r, &both), 1, &l).unwrap();
    assert_eq!(cij, ci * cj);
}

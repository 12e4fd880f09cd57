//! Prime-field arithmetic and multivariate polynomials in canonical form.

mod field;
mod monomial;
mod parse;

use std::cmp::Ordering;
use std::fmt;

pub use field::{Coeff, PrimeField};
pub use monomial::{Exponent, Monomial, MonomialOrder, OrderKind};

use crate::error::{Error, Result};

/// A polynomial as a list of `(coefficient, monomial)` terms, strictly
/// descending in the owning ring's order, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Coeff, Monomial)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Coeff, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Coeff, Monomial)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Coeff, Monomial)> {
        self.terms.first()
    }

    /// Maximum total degree of a term; 0 for the zero polynomial.
    pub fn degree(&self) -> u64 {
        self.terms.iter().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].1.degree() == w[1].1.degree())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

/// F_p[x_1..x_v] with named variables and an active monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(p: u64, names: Vec<String>, order: MonomialOrder) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if order.nvars() != names.len() {
            return Err(Error::RingMismatch {
                left: names.len(),
                right: order.nvars(),
            });
        }
        Ok(PolyRing {
            field,
            names,
            order,
        })
    }

    /// GrevLex with declared-variable precedence.
    pub fn with_vars<S: AsRef<str>>(p: u64, names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let order = MonomialOrder::grevlex(names.len());
        Self::new(p, names, order)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        let mut ring = Self::new(self.p() as u64, self.names.clone(), order)?;
        ring.field = self.field;
        Ok(ring)
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn compare_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        self.order.compare(a, b)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.term(1, Monomial::var(self.nvars(), i, 1))
    }

    pub fn term(&self, c: i64, m: Monomial) -> Polynomial {
        let c = self.field.reduce(c);
        Polynomial {
            nvars: self.nvars(),
            terms: if c == 0 { Vec::new() } else { vec![(c, m)] },
        }
    }

    /// Canonicalizes an arbitrary term list: sorts, merges like terms, drops zeros.
    pub fn from_terms<I>(&self, terms: I) -> Result<Polynomial>
    where
        I: IntoIterator<Item = (i64, Monomial)>,
    {
        let mut raw: Vec<(Coeff, Monomial)> = Vec::new();
        for (c, m) in terms {
            if m.nvars() != self.nvars() {
                return Err(Error::RingMismatch {
                    left: self.nvars(),
                    right: m.nvars(),
                });
            }
            raw.push((self.field.reduce(c), m));
        }
        Ok(self.canonicalize(raw))
    }

    fn canonicalize(&self, mut raw: Vec<(Coeff, Monomial)>) -> Polynomial {
        raw.sort_by(|a, b| self.order.cmp(&b.1, &a.1));
        let mut terms: Vec<(Coeff, Monomial)> = Vec::with_capacity(raw.len());
        for (c, m) in raw {
            match terms.last_mut() {
                Some((lc, lm)) if *lm == m => *lc = self.field.add(*lc, c),
                _ => {
                    if let Some((0, _)) = terms.last() {
                        terms.pop();
                    }
                    terms.push((c, m));
                }
            }
        }
        if let Some((0, _)) = terms.last() {
            terms.pop();
        }
        Polynomial {
            nvars: self.nvars(),
            terms,
        }
    }

    /// Re-sorts a polynomial produced under another order.
    pub fn adopt(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.order.cmp(&b.1, &a.1));
        Ok(Polynomial {
            nvars: f.nvars,
            terms,
        })
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.nvars != self.nvars() {
            return Err(Error::RingMismatch {
                left: self.nvars(),
                right: f.nvars,
            });
        }
        Ok(())
    }

    /// Canonical-form validator: strict descent, no zero or out-of-range coefficients.
    pub fn is_canonical(&self, f: &Polynomial) -> bool {
        f.nvars == self.nvars()
            && f
                .terms
                .iter()
                .all(|(c, m)| *c != 0 && *c < self.p() && m.nvars() == self.nvars())
            && f
                .terms
                .windows(2)
                .all(|w| self.order.cmp(&w[0].1, &w[1].1) == Ordering::Greater)
    }

    fn merge(&self, f: &Polynomial, g: &Polynomial, negate_g: bool) -> Polynomial {
        let fld = &self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let gcoef = |c: Coeff| if negate_g { fld.neg(c) } else { c };
        while i < f.len() && j < g.len() {
            let (a, b) = (&f.terms[i], &g.terms[j]);
            match self.order.cmp(&a.1, &b.1) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gcoef(b.0), b.1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = fld.add(a.0, gcoef(b.0));
                    if c != 0 {
                        out.push((c, a.1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(f.terms[i..].iter().cloned());
        out.extend(g.terms[j..].iter().map(|(c, m)| (gcoef(*c), m.clone())));
        let res = Polynomial {
            nvars: self.nvars(),
            terms: out,
        };
        debug_assert!(self.is_canonical(&res));
        res
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.merge(f, g, false))
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.merge(f, g, true))
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial {
            nvars: f.nvars,
            terms: f
                .terms
                .iter()
                .map(|(c, m)| (self.field.neg(*c), m.clone()))
                .collect(),
        }
    }

    /// `c * m * f`; order is preserved because monomial orders are multiplicative.
    pub fn mul_term(&self, f: &Polynomial, c: Coeff, m: &Monomial) -> Polynomial {
        let c = c % self.p();
        if c == 0 {
            return self.zero();
        }
        let res = Polynomial {
            nvars: f.nvars,
            terms: f
                .terms
                .iter()
                .map(|(fc, fm)| (self.field.mul(*fc, c), fm.mul(m)))
                .collect(),
        };
        debug_assert!(self.is_canonical(&res));
        res
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        let mut acc = self.zero();
        for (c, m) in &small.terms {
            acc = self.merge(&acc, &self.mul_term(big, *c, m), false);
        }
        Ok(acc)
    }

    pub fn pow(&self, f: &Polynomial, mut e: u64) -> Result<Polynomial> {
        self.check(f)?;
        let mut base = f.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `f^q` for `q` a power of the characteristic, computed termwise:
    /// `(sum c_i m_i)^q = sum c_i^q m_i^q`.
    pub fn frobenius_power(&self, f: &Polynomial, q: u64) -> Result<Polynomial> {
        self.check(f)?;
        if self.field.log_p(q).is_none() {
            return Err(Error::NotAPowerOfP { q, p: self.p() });
        }
        let res = Polynomial {
            nvars: f.nvars,
            terms: f
                .terms
                .iter()
                .map(|(c, m)| (self.field.pow(*c, q), m.pow(q)))
                .collect(),
        };
        debug_assert!(self.is_canonical(&res));
        Ok(res)
    }

    /// Scales `f` so its leading coefficient is 1.
    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading() {
            None => f.clone(),
            Some((lc, _)) => {
                let inv = self.field.inv(*lc).expect("nonzero leading coefficient");
                self.mul_term(f, inv, &Monomial::one(self.nvars()))
            }
        }
    }

    /// Parses the polynomial text grammar; see [`parse`](self::parse).
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse::parse_polynomial(self, text, 1, 1)
    }

    /// Like [`PolyRing::parse`] but reporting errors relative to a position in a larger file.
    pub fn parse_at(&self, text: &str, line: usize, column: usize) -> Result<Polynomial> {
        parse::parse_polynomial(self, text, line, column)
    }

    pub fn display<'a>(&'a self, f: &'a Polynomial) -> DisplayPoly<'a> {
        DisplayPoly { ring: self, poly: f }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        parts.join("*")
    }
}

pub struct DisplayPoly<'a> {
    ring: &'a PolyRing,
    poly: &'a Polynomial,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (c, m)) in self.poly.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono = self.ring.format_monomial(m);
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}

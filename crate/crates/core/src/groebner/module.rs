use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, MonomialOrder, PolyRing, Polynomial};

/// An element of the free module S^r, one polynomial per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeElement {
    components: Vec<Polynomial>,
}

impl FreeElement {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        if let Some(first) = components.first() {
            let nvars = first.nvars();
            if let Some(bad) = components.iter().find(|c| c.nvars() != nvars) {
                return Err(Error::RingMismatch {
                    left: nvars,
                    right: bad.nvars(),
                });
            }
        }
        Ok(FreeElement { components })
    }

    /// Rank-1 element wrapping a polynomial.
    pub fn scalar(f: Polynomial) -> Self {
        FreeElement {
            components: vec![f],
        }
    }

    /// `f * e_j` in a free module of the given rank.
    pub fn basis_multiple(ring: &PolyRing, rank: usize, j: usize, f: Polynomial) -> Self {
        let mut components = vec![ring.zero(); rank];
        components[j] = f;
        FreeElement { components }
    }

    pub fn zero(ring: &PolyRing, rank: usize) -> Self {
        FreeElement {
            components: vec![ring.zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Largest total degree over all components.
    pub fn degree(&self) -> u64 {
        self.components.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn add(&self, ring: &PolyRing, other: &FreeElement) -> Result<FreeElement> {
        self.check_rank(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| ring.add(a, b))
            .collect::<Result<_>>()?;
        Ok(FreeElement { components })
    }

    pub fn scale(&self, ring: &PolyRing, f: &Polynomial) -> Result<FreeElement> {
        let components = self
            .components
            .iter()
            .map(|a| ring.mul(a, f))
            .collect::<Result<_>>()?;
        Ok(FreeElement { components })
    }

    /// Concatenation `(self, other)` in S^(r + s).
    pub fn concat(&self, other: &FreeElement) -> FreeElement {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        FreeElement { components }
    }

    fn check_rank(&self, other: &FreeElement) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }
}

/// `sum_i coeffs[i] * gens[i]`.
pub fn linear_combination(
    ring: &PolyRing,
    coeffs: &[Polynomial],
    gens: &[FreeElement],
) -> Result<FreeElement> {
    if coeffs.len() != gens.len() {
        return Err(Error::RankMismatch {
            expected: gens.len(),
            found: coeffs.len(),
        });
    }
    let rank = gens.first().map_or(0, FreeElement::rank);
    let mut acc = FreeElement::zero(ring, rank);
    for (c, g) in coeffs.iter().zip(gens) {
        acc = acc.add(ring, &g.scale(ring, c)?)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionScheme {
    PositionOverTerm,
    TermOverPosition,
}

/// Order on pairs (monomial, component).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    base: MonomialOrder,
    scheme: PositionScheme,
    /// `positions[k]` is the component with the k-th highest precedence.
    positions: Vec<usize>,
    rank_of: Vec<usize>,
}

impl ModuleOrder {
    pub fn new(base: MonomialOrder, scheme: PositionScheme, positions: Vec<usize>) -> Result<Self> {
        let mut rank_of = vec![usize::MAX; positions.len()];
        for (k, &c) in positions.iter().enumerate() {
            if c >= rank_of.len() || rank_of[c] != usize::MAX {
                return Err(Error::OrderMismatch(format!(
                    "positions {positions:?} is not a permutation"
                )));
            }
            rank_of[c] = k;
        }
        Ok(ModuleOrder {
            base,
            scheme,
            positions,
            rank_of,
        })
    }

    /// Position-over-term with `e_0 > e_1 > ...`.
    pub fn pot(base: MonomialOrder, rank: usize) -> Self {
        Self::new(base, PositionScheme::PositionOverTerm, (0..rank).collect()).unwrap()
    }

    /// Term-over-position with `e_0 > e_1 > ...`.
    pub fn top(base: MonomialOrder, rank: usize) -> Self {
        Self::new(base, PositionScheme::TermOverPosition, (0..rank).collect()).unwrap()
    }

    pub fn base(&self) -> &MonomialOrder {
        &self.base
    }

    pub fn scheme(&self) -> PositionScheme {
        self.scheme
    }

    pub fn rank(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, ca: usize, b: &Monomial, cb: usize) -> Ordering {
        // a smaller precedence index is a larger position
        let pos = || self.rank_of[cb].cmp(&self.rank_of[ca]);
        match self.scheme {
            PositionScheme::PositionOverTerm => pos().then_with(|| self.base.cmp(a, b)),
            PositionScheme::TermOverPosition => self.base.cmp(a, b).then_with(pos),
        }
    }
}

/// A single term `coeff * mono * e_comp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
    pub comp: u32,
}

/// Internal vector representation: terms strictly descending in the module order.
pub(crate) type Vector = Vec<Term>;

pub(crate) fn to_vector(order: &ModuleOrder, f: &FreeElement) -> Vector {
    let mut v: Vector = f
        .components
        .iter()
        .enumerate()
        .flat_map(|(j, c)| {
            c.terms().iter().map(move |(coeff, mono)| Term {
                coeff: *coeff,
                mono: mono.clone(),
                comp: j as u32,
            })
        })
        .collect();
    v.sort_by(|a, b| order.cmp(&b.mono, b.comp as usize, &a.mono, a.comp as usize));
    v
}

pub(crate) fn from_vector(ring: &PolyRing, rank: usize, v: &[Term]) -> FreeElement {
    let mut buckets: Vec<Vec<(i64, Monomial)>> = vec![Vec::new(); rank];
    for t in v {
        buckets[t.comp as usize].push((t.coeff as i64, t.mono.clone()));
    }
    FreeElement {
        components: buckets
            .into_iter()
            .map(|b| ring.from_terms(b).expect("consistent ring"))
            .collect(),
    }
}

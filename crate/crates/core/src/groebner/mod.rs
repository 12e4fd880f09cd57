//! Gröbner bases of ideals and of submodules of free modules.
//!
//! The engine works on vectors in S^r under a [`ModuleOrder`]; the ideal
//! case is rank 1. Besides [`buchberger`] this module provides normal forms,
//! syzygies, zero-dimensionality, standard-monomial counting and the Krull
//! dimension of S/I.

mod count;
mod engine;
mod module;

use std::time::Instant;

pub use count::{count_complement, count_complement_until};
pub use module::{linear_combination, FreeElement, ModuleOrder, PositionScheme};

use crate::error::{Error, Result};
use crate::poly::{Monomial, PolyRing, Polynomial};
use module::{from_vector, to_vector, Vector};

/// Caps guarding every Gröbner and counting run.
#[derive(Debug, Clone)]
pub struct Limits {
    pub max_basis: usize,
    pub max_pairs: usize,
    /// Candidate visits in standard-monomial counting.
    pub max_visits: u64,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis: 500_000,
            max_pairs: 50_000_000,
            max_visits: 100_000_000,
            deadline: None,
        }
    }
}

/// Reduced Gröbner basis of a submodule of S^rank.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: PolyRing,
    order: ModuleOrder,
    rank: usize,
    elements: Vec<Vector>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Output of [`buchberger`] is always reduced.
    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn elements(&self) -> Vec<FreeElement> {
        self.elements
            .iter()
            .map(|v| from_vector(&self.ring, self.rank, v))
            .collect()
    }

    /// Rank-1 view of the basis as polynomials.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements()
            .into_iter()
            .map(|e| e.into_components().swap_remove(0))
            .collect()
    }

    /// Leading terms as (monomial, component), ascending.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.elements
            .iter()
            .map(|v| (v[0].mono.clone(), v[0].comp as usize))
            .collect()
    }

    /// Leading monomials living in component `j`.
    pub fn leading_monomials(&self, j: usize) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter(|v| v[0].comp as usize == j)
            .map(|v| v[0].mono.clone())
            .collect()
    }

    /// Every S-vector reduces to zero and the basis is inter-reduced.
    pub fn verify(&self) -> bool {
        let field = *self.ring.field();
        if !engine::is_groebner(field, &self.order, &self.elements) {
            return false;
        }
        let leads = self.leading_terms();
        self.elements.iter().enumerate().all(|(i, v)| {
            v[0].coeff == 1
                && v.iter().all(|t| {
                    leads.iter().enumerate().all(|(k, (m, c))| {
                        if k == i {
                            return true;
                        }
                        !(*c == t.comp as usize && m.divides(&t.mono))
                    })
                })
        })
    }
}

fn check_gens(ring: &PolyRing, order: &ModuleOrder, gens: &[FreeElement]) -> Result<usize> {
    if order.base().nvars() != ring.nvars() {
        return Err(Error::OrderMismatch(format!(
            "order on {} variables for a ring with {}",
            order.base().nvars(),
            ring.nvars()
        )));
    }
    let rank = order.rank();
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
        if let Some(c) = g.components().iter().find(|c| c.nvars() != ring.nvars()) {
            return Err(Error::RingMismatch {
                left: ring.nvars(),
                right: c.nvars(),
            });
        }
    }
    Ok(rank)
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
///
/// Normal selection strategy (smallest lcm first, ties by generation index)
/// with Gebauer–Möller pair elimination; the output is deterministic.
pub fn buchberger(
    ring: &PolyRing,
    gens: &[FreeElement],
    order: &ModuleOrder,
    limits: &Limits,
) -> Result<GroebnerBasis> {
    let rank = check_gens(ring, order, gens)?;
    let vectors: Vec<Vector> = gens
        .iter()
        .map(|g| to_vector(order, g))
        .filter(|v| !v.is_empty())
        .collect();
    let elements = engine::buchberger(*ring.field(), order, vectors, limits)?;
    let gb = GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        rank,
        elements,
    };
    debug_assert!(gb.len() > 200 || gb.verify());
    Ok(gb)
}

/// Ideal convenience wrapper: rank 1 under the ring's own order.
pub fn ideal_basis(ring: &PolyRing, gens: &[Polynomial], limits: &Limits) -> Result<GroebnerBasis> {
    let gens: Vec<FreeElement> = gens.iter().cloned().map(FreeElement::scalar).collect();
    buchberger(ring, &gens, &ModuleOrder::pot(ring.order().clone(), 1), limits)
}

/// Remainder of `f` modulo `gb`.
pub fn normal_form(f: &FreeElement, gb: &GroebnerBasis) -> Result<FreeElement> {
    check_gens(&gb.ring, &gb.order, std::slice::from_ref(f))?;
    let mut red = engine::Reducer::from_basis(*gb.ring.field(), &gb.order, &gb.elements);
    let v = red.reduce(&to_vector(&gb.order, f))?;
    Ok(from_vector(&gb.ring, gb.rank, &v))
}

/// Generators of the syzygy module `{a : sum a_i g_i = 0}` in S^k.
///
/// Computed from a position-over-term basis of the graph elements
/// `(g_i, e_i)` in S^r ⊕ S^k, keeping the elements that vanish on S^r.
pub fn syzygies(
    ring: &PolyRing,
    gens: &[FreeElement],
    limits: &Limits,
) -> Result<Vec<FreeElement>> {
    let k = gens.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let r = gens[0].rank();
    for g in gens {
        if g.rank() != r {
            return Err(Error::RankMismatch {
                expected: r,
                found: g.rank(),
            });
        }
    }
    let graph: Vec<FreeElement> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| g.concat(&FreeElement::basis_multiple(ring, k, i, ring.one())))
        .collect();
    let order = ModuleOrder::pot(ring.order().clone(), r + k);
    let gb = buchberger(ring, &graph, &order, limits)?;
    Ok(gb
        .elements
        .iter()
        .filter(|v| v[0].comp as usize >= r)
        .map(|v| {
            let shifted: Vec<module::Term> = v
                .iter()
                .map(|t| module::Term {
                    coeff: t.coeff,
                    mono: t.mono.clone(),
                    comp: t.comp - r as u32,
                })
                .collect();
            from_vector(ring, k, &shifted)
        })
        .collect())
}

/// True iff every component receives a pure power of every variable
/// (including `1 * e_j`) among the leading terms.
pub fn is_zero_dimensional(gb: &GroebnerBasis, rank: usize) -> bool {
    let nvars = gb.ring.nvars();
    (0..rank).all(|j| {
        let leads = gb.leading_monomials(j);
        if leads.iter().any(Monomial::is_one) {
            return true;
        }
        (0..nvars).all(|i| leads.iter().any(|m| m.pure_power_var() == Some(i)))
    })
}

/// Number of pairs (m, j), j < rank, with m*e_j outside the leading-term module.
pub fn count_standard_monomials(gb: &GroebnerBasis, rank: usize, limits: &Limits) -> Result<u64> {
    if !is_zero_dimensional(gb, rank) {
        return Err(Error::NotZeroDimensional);
    }
    let mut total = 0u64;
    let mut visits = 0u64;
    for j in 0..rank {
        let leads = gb.leading_monomials(j);
        total += count::count_complement_until(
            gb.ring.nvars(),
            &leads,
            &mut visits,
            limits.max_visits,
            limits.deadline,
        )?;
    }
    Ok(total)
}

/// Dimension of S/I: the largest variable set U such that no leading term is
/// supported inside U.
pub fn krull_dimension(gb: &GroebnerBasis) -> Result<usize> {
    let nvars = gb.ring.nvars();
    if nvars > 16 {
        return Err(Error::TooManyVariables(nvars));
    }
    let supports: Vec<u32> = gb
        .leading_monomials(0)
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = None;
    for u in 0u32..(1u32 << nvars) {
        if supports.iter().all(|&s| s & !u != 0) {
            let size = u.count_ones() as usize;
            best = Some(best.map_or(size, |b: usize| b.max(size)));
        }
    }
    // the zero ring has no admissible subset; report 0
    Ok(best.unwrap_or(0))
}

#[cfg(test)]
mod tests;

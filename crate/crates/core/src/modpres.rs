//! Rings S/I_R, m-primary ideals, finitely presented modules and the length
//! of M / I^[q] M.
//!
//! Every module is a cokernel S^r / (relations) where the relations always
//! contain I_R * e_j, so all lengths are computed by one Gröbner engine over
//! the polynomial ring S.

use crate::error::{Error, Result};
use crate::groebner::{
    self, buchberger, count_standard_monomials, is_zero_dimensional, FreeElement, Limits,
    ModuleOrder, PositionScheme,
};
use crate::poly::{MonomialOrder, OrderKind, PolyRing, Polynomial};

/// R = S / I_R with S = F_p[vars].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    ring: PolyRing,
    defining_ideal: Vec<Polynomial>,
    declared_dim: Option<usize>,
    computed_dim: usize,
}

impl RingSpec {
    pub fn new(
        ring: PolyRing,
        defining_ideal: Vec<Polynomial>,
        declared_dim: Option<usize>,
    ) -> Result<Self> {
        for f in &defining_ideal {
            if f.nvars() != ring.nvars() {
                return Err(Error::RingMismatch {
                    left: ring.nvars(),
                    right: f.nvars(),
                });
            }
        }
        let gb = groebner::ideal_basis(&ring, &defining_ideal, &Limits::default())?;
        let computed_dim = groebner::krull_dimension(&gb)?;
        Ok(RingSpec {
            ring,
            defining_ideal,
            declared_dim,
            computed_dim,
        })
    }

    pub fn polynomial_ring(ring: PolyRing) -> Result<Self> {
        Self::new(ring, Vec::new(), None)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    pub fn defining_ideal(&self) -> &[Polynomial] {
        &self.defining_ideal
    }

    pub fn declared_dim(&self) -> Option<usize> {
        self.declared_dim
    }

    pub fn computed_dim(&self) -> usize {
        self.computed_dim
    }

    /// Declared dimension when present, otherwise the computed one.
    pub fn dim(&self) -> usize {
        self.declared_dim.unwrap_or(self.computed_dim)
    }

    /// Warning text when a declared dimension disagrees with the computed one.
    pub fn dimension_warning(&self) -> Option<String> {
        match self.declared_dim {
            Some(d) if d != self.computed_dim => Some(format!(
                "declared dim {d} differs from computed Krull dimension {}; using {d}",
                self.computed_dim
            )),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    pub generators: Vec<Polynomial>,
}

impl IdealSpec {
    pub fn new(generators: Vec<Polynomial>) -> Self {
        IdealSpec { generators }
    }

    /// The homogeneous maximal ideal (x_1, .., x_v).
    pub fn maximal(ring: &PolyRing) -> Self {
        IdealSpec {
            generators: (0..ring.nvars()).map(|i| ring.var(i)).collect(),
        }
    }

    /// Whether the image of the ideal in R is primary to the maximal ideal.
    pub fn is_m_primary(&self, ring: &RingSpec) -> Result<bool> {
        let mut gens = self.generators.clone();
        gens.extend(ring.defining_ideal.iter().cloned());
        let gb = groebner::ideal_basis(&ring.ring, &gens, &Limits::default())?;
        Ok(is_zero_dimensional(&gb, 1))
    }
}

/// I^[q], generated by the q-th powers of the given generators.
pub fn frobenius_power_ideal(ring: &PolyRing, ideal: &IdealSpec, q: u64) -> Result<IdealSpec> {
    let generators = ideal
        .generators
        .iter()
        .map(|g| ring.frobenius_power(g, q))
        .collect::<Result<_>>()?;
    Ok(IdealSpec { generators })
}

/// Cokernel of a relation matrix: M = S^rank / (relations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    rank: usize,
    relations: Vec<FreeElement>,
    declared_generic_rank: Option<usize>,
}

impl ModulePresentation {
    /// Appends `f * e_j` for every defining relation `f` of the ring and every `j`.
    pub fn new(
        ring: &RingSpec,
        rank: usize,
        relations: Vec<FreeElement>,
        declared_generic_rank: Option<usize>,
    ) -> Result<Self> {
        for r in &relations {
            if r.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: r.rank(),
                });
            }
        }
        if let Some(g) = declared_generic_rank {
            if g > rank {
                return Err(Error::Semantic(format!(
                    "declared generic rank {g} exceeds free cover rank {rank}"
                )));
            }
        }
        let mut relations: Vec<FreeElement> =
            relations.into_iter().filter(|r| !r.is_zero()).collect();
        for j in 0..rank {
            for f in &ring.defining_ideal {
                let e = FreeElement::basis_multiple(&ring.ring, rank, j, f.clone());
                if !relations.contains(&e) {
                    relations.push(e);
                }
            }
        }
        Ok(ModulePresentation {
            rank,
            relations,
            declared_generic_rank,
        })
    }

    /// The free module R^rank.
    pub fn free(ring: &RingSpec, rank: usize) -> Self {
        Self::new(ring, rank, Vec::new(), Some(rank)).expect("free module")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn declared_generic_rank(&self) -> Option<usize> {
        self.declared_generic_rank
    }

    pub fn with_generic_rank(mut self, r: Option<usize>) -> Self {
        self.declared_generic_rank = r;
        self
    }

    /// Block-diagonal presentation of `self ⊕ other`.
    pub fn direct_sum(&self, ring: &RingSpec, other: &ModulePresentation) -> ModulePresentation {
        let s = &ring.ring;
        let left_pad = FreeElement::zero(s, other.rank);
        let right_pad = FreeElement::zero(s, self.rank);
        let mut relations: Vec<FreeElement> =
            self.relations.iter().map(|r| r.concat(&left_pad)).collect();
        relations.extend(other.relations.iter().map(|r| right_pad.concat(r)));
        let generic = match (self.declared_generic_rank, other.declared_generic_rank) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        ModulePresentation {
            rank: self.rank + other.rank,
            relations,
            declared_generic_rank: generic,
        }
    }
}

/// A submodule N of an ambient module, given by generators in its free cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmoduleSpec {
    pub ambient: ModulePresentation,
    pub generators: Vec<FreeElement>,
}

impl SubmoduleSpec {
    pub fn new(ambient: ModulePresentation, generators: Vec<FreeElement>) -> Result<Self> {
        for g in &generators {
            if g.rank() != ambient.rank {
                return Err(Error::RankMismatch {
                    expected: ambient.rank,
                    found: g.rank(),
                });
            }
        }
        Ok(SubmoduleSpec {
            ambient,
            generators,
        })
    }

    /// An ideal of R viewed as a submodule of R itself.
    pub fn ideal_of_ring(ring: &RingSpec, generators: Vec<Polynomial>) -> Result<Self> {
        Self::new(
            ModulePresentation::free(ring, 1),
            generators.into_iter().map(FreeElement::scalar).collect(),
        )
    }
}

/// Presentation of N itself: cover S^k -> N sending e_i to the i-th
/// generator, relations the syzygies of (generators, ambient relations)
/// projected to the first k coordinates.
pub fn present_submodule(
    ring: &RingSpec,
    sub: &SubmoduleSpec,
    limits: &Limits,
) -> Result<ModulePresentation> {
    if sub.generators.iter().any(FreeElement::is_zero) {
        return Err(Error::Semantic("submodule generators must be nonzero".into()));
    }
    let k = sub.generators.len();
    let mut all = sub.generators.clone();
    all.extend(sub.ambient.relations.iter().cloned());
    let syz = groebner::syzygies(&ring.ring, &all, limits)?;
    let relations: Vec<FreeElement> = syz
        .into_iter()
        .map(|s| FreeElement::new(s.into_components().into_iter().take(k).collect()).unwrap())
        .filter(|s| !s.is_zero())
        .collect();
    ModulePresentation::new(ring, k, relations, None)
}

/// Presentation of ambient / N.
pub fn quotient_presentation(ring: &RingSpec, sub: &SubmoduleSpec) -> Result<ModulePresentation> {
    let mut relations = sub.ambient.relations.clone();
    relations.extend(sub.generators.iter().cloned());
    ModulePresentation::new(ring, sub.ambient.rank, relations, None)
}

/// Monomial order and limits for length computations.
#[derive(Debug, Clone)]
pub struct LengthOptions {
    pub order: OrderKind,
    pub scheme: PositionScheme,
    pub limits: Limits,
}

impl Default for LengthOptions {
    fn default() -> Self {
        LengthOptions {
            order: OrderKind::GrevLex,
            scheme: PositionScheme::PositionOverTerm,
            limits: Limits::default(),
        }
    }
}

impl LengthOptions {
    fn module_order(&self, nvars: usize, rank: usize) -> ModuleOrder {
        let base = match self.order {
            OrderKind::GrevLex => MonomialOrder::grevlex(nvars),
            OrderKind::Lex => MonomialOrder::lex(nvars),
        };
        match self.scheme {
            PositionScheme::PositionOverTerm => ModuleOrder::pot(base, rank),
            PositionScheme::TermOverPosition => ModuleOrder::top(base, rank),
        }
    }
}

/// ℓ(M / I^[p^n] M) as the number of standard monomials of the module
/// generated by the relations of M and every `h^q * e_j`.
pub fn length_mod_frobenius(
    ring: &RingSpec,
    module: &ModulePresentation,
    ideal: &IdealSpec,
    n: u32,
    opts: &LengthOptions,
) -> Result<u64> {
    let s = &ring.ring;
    let q = s.field().power_of_p(n).ok_or_else(|| {
        Error::Semantic(format!("p^{n} overflows a 64-bit integer"))
    })?;
    let frob = frobenius_power_ideal(s, ideal, q)?;
    length_mod_ideal(ring, module, &frob, opts)
}

/// ℓ(M / J M) for an arbitrary m-primary J.
pub fn length_mod_ideal(
    ring: &RingSpec,
    module: &ModulePresentation,
    ideal: &IdealSpec,
    opts: &LengthOptions,
) -> Result<u64> {
    let s = &ring.ring;
    let rank = module.rank;
    if rank == 0 {
        return Ok(0);
    }
    let mut gens = module.relations.clone();
    for j in 0..rank {
        for h in &ideal.generators {
            gens.push(FreeElement::basis_multiple(s, rank, j, h.clone()));
        }
    }
    let order = opts.module_order(s.nvars(), rank);
    let gb = buchberger(s, &gens, &order, &opts.limits)?;
    if !is_zero_dimensional(&gb, rank) {
        return Err(Error::NotZeroDimensional);
    }
    count_standard_monomials(&gb, rank, &opts.limits)
}

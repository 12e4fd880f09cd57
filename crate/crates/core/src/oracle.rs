//! Lengths by plain linear algebra over F_p.
//!
//! A relation module N ⊂ S^r is truncated at degree D: the span of all
//! products t·g with deg(t·g) ≤ D is computed inside the space of
//! monomial·component basis elements of degree ≤ D, and the codimension is
//! reported. This shares nothing with the Gröbner engine beyond the
//! polynomial types and is used to cross-check it.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::FreeElement;
use crate::modpres::{frobenius_power_ideal, IdealSpec, ModulePresentation};
use crate::poly::{Coeff, Monomial, PolyRing, PrimeField};

pub const DEFAULT_CELL_CAP: u64 = 50_000_000;

/// Result of one truncated computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLength {
    pub degree_bound: u32,
    pub count: u64,
    /// The count is certified equal to the untruncated length; see
    /// [`MacaulaySystem::certify`].
    pub stable: bool,
}

/// Truncated Macaulay system: basis elements of degree ≤ D as rows and all
/// admissible products as columns.
pub struct MacaulaySystem {
    field: PrimeField,
    rank: usize,
    degree_bound: u32,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    columns: Vec<Vec<(usize, Coeff)>>,
    relations: Vec<FreeElement>,
}

fn monomials_up_to(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    rec(0, d, &mut cur, &mut out);
    // highest degree first
    out.sort_by(|a, b| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        db.cmp(&da).then_with(|| b.cmp(a))
    });
    out
}

impl MacaulaySystem {
    pub fn new(
        ring: &PolyRing,
        relations: &[FreeElement],
        rank: usize,
        degree_bound: u32,
        cell_cap: u64,
    ) -> Result<Self> {
        for g in relations {
            if g.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
        }
        let nvars = ring.nvars();
        let monomials = monomials_up_to(nvars, degree_bound);
        let rows = monomials.len() * rank;
        let index: HashMap<Vec<u32>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();

        let mut ncols = 0u64;
        for g in relations.iter().filter(|g| !g.is_zero()) {
            let deg = g.degree();
            if deg <= degree_bound as u64 {
                ncols += index
                    .keys()
                    .filter(|m| m.iter().sum::<u32>() as u64 + deg <= degree_bound as u64)
                    .count() as u64;
            }
        }
        let cells = ncols.saturating_mul(rows as u64);
        if cells > cell_cap {
            return Err(Error::MatrixTooLarge {
                cells,
                cap: cell_cap,
            });
        }

        let m = monomials.len();
        let mut columns = Vec::with_capacity(ncols as usize);
        for g in relations.iter().filter(|g| !g.is_zero()) {
            let deg = g.degree();
            if deg > degree_bound as u64 {
                continue;
            }
            for t in &monomials {
                if t.iter().sum::<u32>() as u64 + deg > degree_bound as u64 {
                    continue;
                }
                let mut col = Vec::new();
                for (j, comp) in g.components().iter().enumerate() {
                    for (c, mono) in comp.terms() {
                        let e: Vec<u32> = mono
                            .exponents()
                            .iter()
                            .zip(t)
                            .map(|(a, b)| a + b)
                            .collect();
                        col.push((j * m + index[&e], *c));
                    }
                }
                col.sort_unstable();
                columns.push(col);
            }
        }
        Ok(MacaulaySystem {
            field: *ring.field(),
            rank,
            degree_bound,
            monomials,
            index,
            columns,
            relations: relations.to_vec(),
        })
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn rows(&self) -> usize {
        self.monomials.len() * self.rank
    }

    pub fn columns(&self) -> usize {
        self.columns.len()
    }

    /// Row index of the basis element m·e_j, if deg m ≤ D.
    pub fn row_of(&self, m: &Monomial, j: usize) -> Option<usize> {
        self.index
            .get(m.exponents())
            .map(|&i| j * self.monomials.len() + i)
    }

    /// Rank of the column span by incremental elimination.
    pub fn rank(&self) -> usize {
        let pivots = eliminate(self.field, self.rows(), &self.columns);
        pivots.iter().filter(|p| p.is_some()).count()
    }

    pub fn count(&self) -> u64 {
        (self.rows() - self.rank()) as u64
    }

    fn degree_of_row(&self, i: usize) -> u32 {
        self.monomials[i % self.monomials.len()].iter().sum()
    }

    /// True iff the count equals the length of the untruncated quotient.
    ///
    /// Let V be the column span, B the non-pivot basis elements and NF the
    /// normal form onto span(B). If no element of B has degree D, then
    /// F_{≤D} maps onto the quotient and the count is an upper bound. If
    /// moreover the maps M_k(b) = NF(x_k·b) commute, every relation acts as
    /// zero on NF(e_j), and the NF(e_j) generate span(B) under the M_k,
    /// then span(B) is a quotient module of the untruncated one and the
    /// count is also a lower bound.
    pub fn certify(&self) -> bool {
        let n = self.rows();
        let m = self.monomials.len();
        let d = self.degree_bound;
        let f = self.field;
        let pivots = eliminate(f, n, &self.columns);
        let basis: Vec<usize> = (0..n).filter(|&i| pivots[i].is_none()).collect();
        if basis.iter().any(|&i| self.degree_of_row(i) == d) {
            return false;
        }
        if basis.is_empty() {
            return true;
        }
        let nvars = self.monomials[0].len();
        let slot: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut acc = vec![0 as Coeff; n];
        let mut normal_form = |v: &[(usize, Coeff)]| -> Vec<Coeff> {
            for &(i, c) in v {
                acc[i] = f.add(acc[i], c);
            }
            reduce_full(f, &pivots, &mut acc);
            let mut out = vec![0 as Coeff; basis.len()];
            for (k, &i) in basis.iter().enumerate() {
                out[k] = acc[i];
                acc[i] = 0;
            }
            out
        };
        let shift = |i: usize, k: usize| {
            let mut e = self.monomials[i % m].clone();
            e[k] += 1;
            (i / m) * m + self.index[&e]
        };
        // mult[k][b] = NF(x_k · basis[b])
        let mult: Vec<Vec<Vec<Coeff>>> = (0..nvars)
            .map(|k| {
                basis
                    .iter()
                    .map(|&i| normal_form(&[(shift(i, k), 1)]))
                    .collect()
            })
            .collect();
        let apply = |k: usize, v: &[Coeff]| -> Vec<Coeff> {
            let mut out = vec![0 as Coeff; v.len()];
            for (b, &c) in v.iter().enumerate() {
                if c != 0 {
                    for (o, &x) in out.iter_mut().zip(&mult[k][b]) {
                        *o = f.add(*o, f.mul(c, x));
                    }
                }
            }
            out
        };
        for k in 0..nvars {
            for l in k + 1..nvars {
                for b in 0..basis.len() {
                    if apply(l, &mult[k][b]) != apply(k, &mult[l][b]) {
                        return false;
                    }
                }
            }
        }
        let units: Vec<Vec<Coeff>> = (0..self.rank)
            .map(|j| {
                let one = j * m + self.index[&vec![0u32; nvars]];
                match slot.get(&one) {
                    Some(&k) => {
                        let mut v = vec![0 as Coeff; basis.len()];
                        v[k] = 1;
                        v
                    }
                    None => normal_form(&[(one, 1)]),
                }
            })
            .collect();
        for g in &self.relations {
            let mut total = vec![0 as Coeff; basis.len()];
            for (j, comp) in g.components().iter().enumerate() {
                for (c, mono) in comp.terms() {
                    let mut v = units[j].clone();
                    for (k, &e) in mono.exponents().iter().enumerate() {
                        for _ in 0..e {
                            v = apply(k, &v);
                        }
                    }
                    for (t, x) in total.iter_mut().zip(v) {
                        *t = f.add(*t, f.mul(*c, x));
                    }
                }
            }
            if total.iter().any(|&t| t != 0) {
                return false;
            }
        }
        // the submodule generated by the NF(e_j) must be everything
        let mut span = DenseSpan::new(f, basis.len());
        let mut queue: Vec<Vec<Coeff>> = units.into_iter().filter(|u| span.insert(u)).collect();
        while let Some(v) = queue.pop() {
            for k in 0..nvars {
                let w = apply(k, &v);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        span.dim() == basis.len()
    }
}

/// Echelon basis of a subspace of F_p^n, grown one vector at a time.
struct DenseSpan {
    f: PrimeField,
    rows: Vec<Option<Vec<Coeff>>>,
    dim: usize,
}

impl DenseSpan {
    fn new(f: PrimeField, n: usize) -> Self {
        DenseSpan {
            f,
            rows: vec![None; n],
            dim: 0,
        }
    }

    fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `v`; false if it was already in the span.
    fn insert(&mut self, v: &[Coeff]) -> bool {
        let f = self.f;
        let mut v = v.to_vec();
        for i in 0..v.len() {
            if v[i] == 0 {
                continue;
            }
            match &self.rows[i] {
                Some(row) => {
                    let c = v[i];
                    for (a, &r) in v.iter_mut().zip(row).skip(i) {
                        *a = f.sub(*a, f.mul(c, r));
                    }
                }
                None => {
                    let inv = f.inv(v[i]).expect("nonzero");
                    v.iter_mut().skip(i).for_each(|a| *a = f.mul(*a, inv));
                    self.rows[i] = Some(v);
                    self.dim += 1;
                    return true;
                }
            }
        }
        false
    }
}

type Pivots = Vec<Option<Vec<(usize, Coeff)>>>;

/// Echelon rows indexed by leading position.
fn eliminate(f: PrimeField, n: usize, columns: &[Vec<(usize, Coeff)>]) -> Pivots {
    let mut pivots: Pivots = vec![None; n];
    let mut acc = vec![0 as Coeff; n];
    for col in columns {
        let Some(&(start, _)) = col.first() else { continue };
        for &(i, c) in col {
            acc[i] = f.add(acc[i], c);
        }
        let Some(l) = reduce(f, &pivots, &mut acc, start) else { continue };
        let inv = f.inv(acc[l]).expect("nonzero pivot");
        let mut row = Vec::new();
        for (k, a) in acc.iter_mut().enumerate().skip(l) {
            if *a != 0 {
                row.push((k, f.mul(*a, inv)));
                *a = 0;
            }
        }
        pivots[l] = Some(row);
    }
    pivots
}

/// Reduces `acc` from position `start` on; returns the first position
/// without a pivot, leaving `acc` untouched from there.
fn reduce(f: PrimeField, pivots: &Pivots, acc: &mut [Coeff], start: usize) -> Option<usize> {
    for i in start..acc.len() {
        if acc[i] == 0 {
            continue;
        }
        match &pivots[i] {
            Some(row) => {
                let factor = acc[i];
                for &(k, c) in row {
                    acc[k] = f.sub(acc[k], f.mul(factor, c));
                }
            }
            None => return Some(i),
        }
    }
    None
}

/// Eliminates every pivot position; what remains lies on non-pivot positions.
fn reduce_full(f: PrimeField, pivots: &Pivots, acc: &mut [Coeff]) {
    for i in 0..acc.len() {
        if acc[i] == 0 {
            continue;
        }
        if let Some(row) = &pivots[i] {
            let factor = acc[i];
            for &(k, c) in row {
                acc[k] = f.sub(acc[k], f.mul(factor, c));
            }
        }
    }
}

/// Codimension of the degree-≤D truncation of the relation module.
pub fn oracle_length(
    ring: &PolyRing,
    relations: &[FreeElement],
    rank: usize,
    degree_bound: u32,
) -> Result<OracleLength> {
    oracle_length_with_cap(ring, relations, rank, degree_bound, DEFAULT_CELL_CAP)
}

pub fn oracle_length_with_cap(
    ring: &PolyRing,
    relations: &[FreeElement],
    rank: usize,
    degree_bound: u32,
    cell_cap: u64,
) -> Result<OracleLength> {
    let sys = MacaulaySystem::new(ring, relations, rank, degree_bound, cell_cap)?;
    Ok(OracleLength {
        degree_bound,
        count: sys.count(),
        stable: sys.certify(),
    })
}

/// Raises D from the largest relation degree until the count is certified.
pub fn oracle_length_auto(
    ring: &PolyRing,
    relations: &[FreeElement],
    rank: usize,
    max_degree: u32,
    cell_cap: u64,
) -> Result<OracleLength> {
    let start = relations.iter().map(FreeElement::degree).max().unwrap_or(0).max(1) as u32;
    let mut last = None;
    for d in start..=max_degree.max(start) {
        let r = oracle_length_with_cap(ring, relations, rank, d, cell_cap)?;
        if r.stable {
            return Ok(r);
        }
        last = Some(r);
    }
    Ok(last.expect("at least one degree"))
}

/// Relations of M/I^[q]M as a flat list: those of M and h^q·e_j.
pub fn frobenius_relations(
    ring: &PolyRing,
    module: &ModulePresentation,
    ideal: &IdealSpec,
    q: u64,
) -> Result<Vec<FreeElement>> {
    let iq = frobenius_power_ideal(ring, ideal, q)?;
    let r = module.rank();
    let mut rels = module.relations().to_vec();
    for j in 0..r {
        for h in &iq.generators {
            rels.push(FreeElement::basis_multiple(ring, r, j, h.clone()));
        }
    }
    Ok(rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalars(r: &PolyRing, src: &[&str]) -> Vec<FreeElement> {
        src.iter()
            .map(|s| FreeElement::scalar(r.parse(s).unwrap()))
            .collect()
    }

    #[test]
    fn pure_powers() {
        let r = PolyRing::with_vars(5, &["x", "y"]).unwrap();
        let rel = scalars(&r, &["x^2", "y^3"]);
        let out = oracle_length(&r, &rel, 1, 6).unwrap();
        assert_eq!((out.count, out.stable), (6, true));
    }

    #[test]
    fn absorbed_generator() {
        let r = PolyRing::with_vars(2, &["x", "y"]).unwrap();
        let rel = scalars(&r, &["x^5 - y^5", "x^2", "y^2"]);
        let out = oracle_length(&r, &rel, 1, 5).unwrap();
        assert_eq!((out.count, out.stable), (4, true));
    }

    #[test]
    fn determinantal_at_q2() {
        let names = ["x1", "x2", "x3", "x4", "x5", "x6"];
        let r = PolyRing::with_vars(2, &names).unwrap();
        let mut src = vec![
            "x1*x5 - x2*x4".to_string(),
            "x1*x6 - x3*x4".to_string(),
            "x2*x6 - x3*x5".to_string(),
        ];
        src.extend(names.iter().map(|v| format!("{v}^2")));
        let src: Vec<&str> = src.iter().map(String::as_str).collect();
        let out = oracle_length(&r, &scalars(&r, &src), 1, 7).unwrap();
        assert_eq!((out.count, out.stable), (23, true));
    }

    #[test]
    fn counts_settle_once_the_top_degree_is_covered() {
        let r = PolyRing::with_vars(3, &["x", "y", "z"]).unwrap();
        let rel = scalars(&r, &["x^2*y - z^2", "x^3", "y^3", "z^3"]);
        // x^3, y^3, z^3 cover every monomial of degree >= 7
        let counts: Vec<u64> = (7..=11)
            .map(|d| oracle_length(&r, &rel, 1, d).unwrap().count)
            .collect();
        assert!(counts.windows(2).all(|w| w[1] <= w[0]), "{counts:?}");
        let auto = oracle_length_auto(&r, &rel, 1, 20, DEFAULT_CELL_CAP).unwrap();
        assert!(auto.stable);
        assert_eq!(auto.count, *counts.last().unwrap());
    }

    #[test]
    fn not_stable_without_pure_powers() {
        let r = PolyRing::with_vars(3, &["x", "y"]).unwrap();
        let out = oracle_length(&r, &scalars(&r, &["x^2"]), 1, 6).unwrap();
        assert!(!out.stable);
    }

    #[test]
    fn module_relations() {
        let r = PolyRing::with_vars(3, &["x", "y"]).unwrap();
        // S^2 / ((x, y), x^2 e_j, y^2 e_j)
        let mut rel = vec![FreeElement::new(vec![r.var(0), r.var(1)]).unwrap()];
        for j in 0..2 {
            for h in ["x^2", "y^2"] {
                rel.push(FreeElement::basis_multiple(&r, 2, j, r.parse(h).unwrap()));
            }
        }
        let out = oracle_length(&r, &rel, 2, 6).unwrap();
        assert_eq!((out.count, out.stable), (5, true));
    }

    #[test]
    fn cell_cap() {
        let r = PolyRing::with_vars(2, &["x", "y"]).unwrap();
        let rel = scalars(&r, &["x^2", "y^2"]);
        assert!(matches!(
            oracle_length_with_cap(&r, &rel, 1, 10, 100),
            Err(Error::MatrixTooLarge { .. })
        ));
    }

    #[test]
    fn plateau_is_not_a_certificate() {
        let r = PolyRing::with_vars(2, &["x", "y", "z"]).unwrap();
        let mut rel = vec![FreeElement::new(vec![r.parse("z + 1").unwrap(), r.parse("x^2*y").unwrap()]).unwrap()];
        for j in 0..2 {
            for v in 0..3 {
                rel.push(FreeElement::basis_multiple(&r, 2, j, r.pow(&r.var(v), 4).unwrap()));
            }
        }
        // counts rise to 88, repeat once, then fall to the true length
        let (a, b) = (oracle_length(&r, &rel, 2, 6).unwrap(), oracle_length(&r, &rel, 2, 7).unwrap());
        assert_eq!((a.count, b.count), (88, 88));
        assert!(!b.stable);
        let auto = oracle_length_auto(&r, &rel, 2, 20, DEFAULT_CELL_CAP).unwrap();
        assert_eq!((auto.count, auto.stable), (64, true));
    }

    #[test]
    fn unit_is_certified() {
        let r = PolyRing::with_vars(3, &["x"]).unwrap();
        let out = oracle_length(&r, &scalars(&r, &["x^3 + x^2", "x + 1", "x^3"]), 1, 3).unwrap();
        assert_eq!((out.count, out.stable), (0, true));
    }
}

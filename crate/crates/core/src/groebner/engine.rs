//! Buchberger's algorithm over free modules with Gebauer–Möller pair
//! elimination and geobucket reduction.

use std::cmp::Ordering;
use std::time::Instant;

use super::module::{ModuleOrder, Term, Vector};
use super::Limits;
use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, PrimeField};

/// Heap-of-sorted-lists accumulator. Bucket `i` holds at most `4^(i+1)`
/// terms, each bucket sorted ascending so the leading term sits at the end.
struct Geobucket<'a> {
    field: PrimeField,
    order: &'a ModuleOrder,
    buckets: Vec<Vec<Term>>,
}

fn bucket_cap(i: usize) -> usize {
    4usize.saturating_pow(i as u32 + 1)
}

impl<'a> Geobucket<'a> {
    fn new(field: PrimeField, order: &'a ModuleOrder) -> Self {
        Geobucket {
            field,
            order,
            buckets: Vec::new(),
        }
    }

    #[inline]
    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order
            .cmp(&a.mono, a.comp as usize, &b.mono, b.comp as usize)
    }

    fn merge(&self, a: Vec<Term>, b: Vec<Term>) -> Vec<Term> {
        if a.is_empty() {
            return b;
        }
        if b.is_empty() {
            return a;
        }
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut ia = a.into_iter().peekable();
        let mut ib = b.into_iter().peekable();
        loop {
            let ord = match (ia.peek(), ib.peek()) {
                (Some(x), Some(y)) => self.cmp(x, y),
                (Some(_), None) => {
                    out.extend(ia);
                    break;
                }
                (None, _) => {
                    out.extend(ib);
                    break;
                }
            };
            match ord {
                Ordering::Less => out.push(ia.next().unwrap()),
                Ordering::Greater => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let mut x = ia.next().unwrap();
                    let y = ib.next().unwrap();
                    x.coeff = self.field.add(x.coeff, y.coeff);
                    if x.coeff != 0 {
                        out.push(x);
                    }
                }
            }
        }
        out
    }

    /// Adds an ascending term list.
    fn add(&mut self, mut terms: Vec<Term>) {
        if terms.is_empty() {
            return;
        }
        let mut i = 0;
        while bucket_cap(i) < terms.len() {
            i += 1;
        }
        loop {
            if self.buckets.len() <= i {
                self.buckets.resize_with(i + 1, Vec::new);
            }
            let existing = std::mem::take(&mut self.buckets[i]);
            terms = self.merge(existing, terms);
            if terms.len() <= bucket_cap(i) {
                self.buckets[i] = terms;
                return;
            }
            i += 1;
        }
    }

    /// Removes and returns the leading term of the accumulated sum.
    fn pop_leading(&mut self) -> Option<Term> {
        loop {
            let mut best: Option<usize> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                if let Some(t) = b.last() {
                    best = match best {
                        None => Some(i),
                        Some(j) => {
                            if self.cmp(t, self.buckets[j].last().unwrap()) == Ordering::Greater {
                                Some(i)
                            } else {
                                Some(j)
                            }
                        }
                    };
                }
            }
            let j = best?;
            let mut lead = self.buckets[j].pop().unwrap();
            for i in 0..self.buckets.len() {
                if i == j {
                    continue;
                }
                let same = matches!(self.buckets[i].last(), Some(t) if t.comp == lead.comp && t.mono == lead.mono);
                if same {
                    let t = self.buckets[i].pop().unwrap();
                    lead.coeff = self.field.add(lead.coeff, t.coeff);
                }
            }
            if lead.coeff != 0 {
                return Some(lead);
            }
        }
    }
}

/// Leading-term data of a monic basis element.
#[derive(Clone)]
struct Lead {
    mono: Monomial,
    comp: u32,
    mask: u64,
}

impl Lead {
    fn of(v: &[Term]) -> Lead {
        let t = &v[0];
        Lead {
            mono: t.mono.clone(),
            comp: t.comp,
            mask: t.mono.divmask(),
        }
    }

    #[inline]
    fn divides(&self, mono: &Monomial, comp: u32, mask: u64) -> bool {
        self.comp == comp && self.mask & !mask == 0 && self.mono.divides(mono)
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
}

pub(crate) struct Reducer<'a> {
    field: PrimeField,
    order: &'a ModuleOrder,
    polys: Vec<Vector>,
    leads: Vec<Lead>,
    /// Active indices grouped by component.
    by_comp: Vec<Vec<usize>>,
    deadline: Option<Instant>,
    steps: u64,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(field: PrimeField, order: &'a ModuleOrder, deadline: Option<Instant>) -> Self {
        Reducer {
            field,
            order,
            polys: Vec::new(),
            leads: Vec::new(),
            by_comp: vec![Vec::new(); order.rank()],
            deadline,
            steps: 0,
        }
    }

    /// Builds a reducer over an already-computed basis.
    pub(crate) fn from_basis(field: PrimeField, order: &'a ModuleOrder, basis: &[Vector]) -> Self {
        let mut r = Self::new(field, order, None);
        for v in basis {
            r.push(v.clone());
        }
        r
    }

    fn push(&mut self, v: Vector) -> usize {
        let idx = self.polys.len();
        let lead = Lead::of(&v);
        self.by_comp[lead.comp as usize].push(idx);
        self.leads.push(lead);
        self.polys.push(v);
        idx
    }

    fn size(&self) -> usize {
        self.by_comp.iter().map(Vec::len).sum()
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        let mask = t.mono.divmask();
        self.by_comp[t.comp as usize]
            .iter()
            .copied()
            .find(|&k| self.leads[k].divides(&t.mono, t.comp, mask))
    }

    /// Ascending list `c * m * v[1..]`.
    fn scaled_tail(&self, v: &[Term], c: Coeff, m: &Monomial) -> Vec<Term> {
        v[1..]
            .iter()
            .rev()
            .map(|t| Term {
                coeff: self.field.mul(t.coeff, c),
                mono: t.mono.mul(m),
                comp: t.comp,
            })
            .collect()
    }

    fn check_deadline(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::DeadlineExceeded {
                        basis_size: self.polys.len(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Full reduction of the bucket content against the active elements.
    fn reduce_bucket(&mut self, mut bucket: Geobucket<'_>) -> Result<Vector> {
        let mut out = Vec::new();
        while let Some(t) = bucket.pop_leading() {
            self.check_deadline()?;
            match self.find_reducer(&t) {
                Some(k) => {
                    let g = &self.polys[k];
                    let factor = self.leads[k].mono.quotient_of(&t.mono);
                    let c = self.field.neg(t.coeff);
                    bucket.add(self.scaled_tail(g, c, &factor));
                }
                None => out.push(t),
            }
        }
        Ok(out)
    }

    pub(crate) fn reduce(&mut self, v: &[Term]) -> Result<Vector> {
        let mut bucket = Geobucket::new(self.field, self.order);
        bucket.add(v.iter().rev().cloned().collect());
        self.reduce_bucket(bucket)
    }

    fn s_vector(&mut self, i: usize, j: usize, lcm: &Monomial) -> Result<Vector> {
        let mut bucket = Geobucket::new(self.field, self.order);
        let mi = self.leads[i].mono.quotient_of(lcm);
        let mj = self.leads[j].mono.quotient_of(lcm);
        bucket.add(self.scaled_tail(&self.polys[i], 1, &mi));
        let minus_one = self.field.neg(1);
        bucket.add(self.scaled_tail(&self.polys[j], minus_one, &mj));
        self.reduce_bucket(bucket)
    }

    fn make_monic(&self, mut v: Vector) -> Vector {
        let lc = v[0].coeff;
        if lc != 1 {
            let inv = self.field.inv(lc).expect("nonzero");
            for t in &mut v {
                t.coeff = self.field.mul(t.coeff, inv);
            }
        }
        v
    }
}

/// Runs Buchberger's algorithm; returns the reduced basis sorted ascending by
/// leading term.
pub(crate) fn buchberger(
    field: PrimeField,
    order: &ModuleOrder,
    gens: Vec<Vector>,
    limits: &Limits,
) -> Result<Vec<Vector>> {
    let product_criterion = order.rank() == 1;
    let mut red = Reducer::new(field, order, limits.deadline);
    // pairs sorted descending so the smallest lcm is popped first
    let mut pairs: Vec<Pair> = Vec::new();

    let pair_cmp = |a: &Pair, b: &Pair| {
        order
            .cmp(&a.lcm, a.comp as usize, &b.lcm, b.comp as usize)
            .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
    };

    let mut pending: std::collections::VecDeque<Vector> = gens.into_iter().collect();
    loop {
        let h = if let Some(g) = pending.pop_front() {
            red.reduce(&g)?
        } else if let Some(pair) = pairs.pop() {
            red.s_vector(pair.i, pair.j, &pair.lcm)?
        } else {
            break;
        };
        if h.is_empty() {
            continue;
        }
        let h = red.make_monic(h);
        if red.polys.len() >= limits.max_basis {
            return Err(Error::ResourceLimit {
                what: format!("basis size cap {}", limits.max_basis),
                basis_size: red.size(),
            });
        }
        let hi = red.push(h);
        let mut fresh = update(&mut red, &mut pairs, hi, product_criterion);
        if !fresh.is_empty() {
            fresh.sort_by(|a, b| pair_cmp(b, a));
            let old = std::mem::take(&mut pairs);
            pairs = merge_desc(old, fresh, pair_cmp);
        }
        if pairs.len() > limits.max_pairs {
            return Err(Error::ResourceLimit {
                what: format!("pair queue cap {}", limits.max_pairs),
                basis_size: red.size(),
            });
        }
    }

    // interreduce the surviving elements
    let active: Vec<usize> = {
        let mut a: Vec<usize> = red.by_comp.iter().flatten().copied().collect();
        a.sort_unstable();
        a
    };
    let mut out = Vec::with_capacity(active.len());
    for &k in &active {
        let v = red.polys[k].clone();
        let mut bucket = Geobucket::new(field, order);
        bucket.add(v[1..].iter().rev().cloned().collect());
        let mut reduced = vec![v[0].clone()];
        reduced.extend(red.reduce_bucket(bucket)?);
        out.push(reduced);
    }
    out.sort_by(|a, b| order.cmp(&a[0].mono, a[0].comp as usize, &b[0].mono, b[0].comp as usize));
    Ok(out)
}

fn merge_desc<F>(a: Vec<Pair>, b: Vec<Pair>, cmp: F) -> Vec<Pair>
where
    F: Fn(&Pair, &Pair) -> Ordering,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    while let (Some(x), Some(y)) = (ia.peek(), ib.peek()) {
        if cmp(x, y) == Ordering::Less {
            out.push(ib.next().unwrap());
        } else {
            out.push(ia.next().unwrap());
        }
    }
    out.extend(ia);
    out.extend(ib);
    out
}

/// Gebauer–Möller update for the new element `h`; returns the pairs to add.
fn update(red: &mut Reducer<'_>, pairs: &mut Vec<Pair>, h: usize, product_criterion: bool) -> Vec<Pair> {
    let lh = red.leads[h].clone();
    let comp = lh.comp as usize;
    let others: Vec<usize> = red.by_comp[comp].iter().copied().filter(|&g| g != h).collect();

    let cand: Vec<(usize, Monomial, bool)> = others
        .iter()
        .map(|&g| {
            let lg = &red.leads[g].mono;
            (g, lh.mono.lcm(lg), product_criterion && lh.mono.is_coprime(lg))
        })
        .collect();

    let mut kept: Vec<usize> = Vec::new();
    for k in 0..cand.len() {
        let (_, ref lk, disjoint) = cand[k];
        let dominated = || {
            cand[k + 1..].iter().any(|(_, l, _)| l.divides(lk))
                || kept.iter().any(|&d| cand[d].1.divides(lk))
        };
        if disjoint || !dominated() {
            kept.push(k);
        }
    }

    // chain criterion on the existing pairs
    pairs.retain(|p| {
        if p.comp != lh.comp || !lh.mono.divides(&p.lcm) {
            return true;
        }
        let li = lh.mono.lcm(&red.leads[p.i].mono);
        let lj = lh.mono.lcm(&red.leads[p.j].mono);
        li == p.lcm || lj == p.lcm
    });

    let mut fresh = Vec::new();
    for k in kept {
        let (g, ref lcm, disjoint) = cand[k];
        if !disjoint {
            fresh.push(Pair {
                i: g,
                j: h,
                lcm: lcm.clone(),
                comp: lh.comp,
            });
        }
    }

    // drop basis elements whose leading term is now redundant
    let lead_h = lh.mono.clone();
    let leads = &red.leads;
    red.by_comp[comp].retain(|&g| g == h || !lead_h.divides(&leads[g].mono));
    fresh
}

/// All S-vectors of the basis reduce to zero.
pub(crate) fn is_groebner(field: PrimeField, order: &ModuleOrder, basis: &[Vector]) -> bool {
    let mut red = Reducer::from_basis(field, order, basis);
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if red.leads[i].comp != red.leads[j].comp {
                continue;
            }
            let lcm = red.leads[i].mono.lcm(&red.leads[j].mono);
            match red.s_vector(i, j, &lcm) {
                Ok(v) if v.is_empty() => {}
                _ => return false,
            }
        }
    }
    true
}

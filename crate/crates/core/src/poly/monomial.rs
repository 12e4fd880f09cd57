use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponent = u32;

/// Exponent vector with a cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[Exponent; 8]>,
    degree: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn new(exps: &[Exponent]) -> Self {
        Monomial {
            degree: exps.iter().map(|&e| e as u64).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn var(nvars: usize, i: usize, e: Exponent) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m.degree = e as u64;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Index of the single variable when the monomial is a pure power `x_i^k` with `k > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, k: u64) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&a| {
                (a as u64)
                    .checked_mul(k)
                    .and_then(|e| Exponent::try_from(e).ok())
                    .expect("exponent overflow")
            })
            .collect();
        Monomial {
            exps,
            degree: self.degree * k,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self
                .exps
                .iter()
                .zip(other.exps.iter())
                .all(|(&a, &b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| b - a)
                .collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            &self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.max(b))
                .collect::<SmallVec<[Exponent; 8]>>(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit signature for fast non-divisibility rejection: if `a | b` then
    /// `mask(a) & !mask(b) == 0`.
    pub fn divmask(&self) -> u64 {
        let v = self.exps.len().max(1);
        let bits = (64 / v).clamp(1, 16);
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate().take(64) {
            for b in 0..bits {
                // thresholds 1, 2, 4, 8, ...
                if e >= (1u32 << b) {
                    mask |= 1 << (i * bits + b);
                }
            }
        }
        mask
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    GrevLex,
}

/// A monomial order together with a variable precedence.
///
/// `precedence[0]` is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
    identity: bool,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            if v >= seen.len() || seen[v] {
                return Err(Error::OrderMismatch(format!(
                    "precedence {precedence:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        let identity = precedence.iter().enumerate().all(|(i, &v)| i == v);
        Ok(MonomialOrder {
            kind,
            precedence,
            identity,
        })
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::GrevLex, (0..nvars).collect()).unwrap()
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, (0..nvars).collect()).unwrap()
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    /// Checked comparison.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        for m in [a, b] {
            if m.nvars() != self.nvars() {
                return Err(Error::RingMismatch {
                    left: self.nvars(),
                    right: m.nvars(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => {
                if self.identity {
                    ea.cmp(eb)
                } else {
                    for &v in &self.precedence {
                        match ea[v].cmp(&eb[v]) {
                            Ordering::Equal => continue,
                            o => return o,
                        }
                    }
                    Ordering::Equal
                }
            }
            OrderKind::GrevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                // smaller exponent in the trailing variable wins
                if self.identity {
                    for v in (0..ea.len()).rev() {
                        match eb[v].cmp(&ea[v]) {
                            Ordering::Equal => continue,
                            o => return o,
                        }
                    }
                } else {
                    for &v in self.precedence.iter().rev() {
                        match eb[v].cmp(&ea[v]) {
                            Ordering::Equal => continue,
                            o => return o,
                        }
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_and_lex_basics() {
        let g = MonomialOrder::grevlex(2);
        let x5 = Monomial::new(&[5, 0]);
        let y5 = Monomial::new(&[0, 5]);
        assert_eq!(g.cmp(&x5, &y5), Ordering::Greater);
        let l = MonomialOrder::lex(2);
        assert_eq!(
            l.cmp(&Monomial::new(&[1, 0]), &Monomial::new(&[0, 1])),
            Ordering::Greater
        );
    }

    /// Textbook GrevLex: larger degree wins; on ties the rightmost nonzero
    /// entry of `a - b` is negative iff `a > b`.
    fn grevlex_by_definition(a: &[u32], b: &[u32]) -> Ordering {
        let da: i64 = a.iter().map(|&e| e as i64).sum();
        let db: i64 = b.iter().map(|&e| e as i64).sum();
        if da != db {
            return da.cmp(&db);
        }
        let diff: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect();
        match diff.iter().rev().find(|&&d| d != 0) {
            None => Ordering::Equal,
            Some(&d) if d < 0 => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    #[test]
    fn grevlex_matches_definition_exhaustively() {
        let g = MonomialOrder::grevlex(3);
        let all: Vec<[u32; 3]> = (0..4)
            .flat_map(|a| (0..4).flat_map(move |b| (0..4).map(move |c| [a, b, c])))
            .collect();
        for a in &all {
            for b in &all {
                assert_eq!(
                    g.cmp(&Monomial::new(a), &Monomial::new(b)),
                    grevlex_by_definition(a, b),
                    "{a:?} {b:?}"
                );
            }
        }
        // x*y^2 vs x^2*z with x > y > z: the z-exponent decides, x*y^2 is larger
        let xy2 = Monomial::new(&[1, 2, 0]);
        let x2z = Monomial::new(&[2, 0, 1]);
        assert_eq!(grevlex_by_definition(&[1, 2, 0], &[2, 0, 1]), Ordering::Greater);
        assert_eq!(g.cmp(&xy2, &x2z), Ordering::Greater);
    }

    #[test]
    fn permuted_precedence() {
        // y > x under lex
        let o = MonomialOrder::new(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(
            o.cmp(&Monomial::new(&[1, 0]), &Monomial::new(&[0, 1])),
            Ordering::Less
        );
        let g = MonomialOrder::new(OrderKind::GrevLex, vec![1, 0]).unwrap();
        // degree tie; trailing variable is now x, so y^5 wins
        assert_eq!(
            g.cmp(&Monomial::new(&[5, 0]), &Monomial::new(&[0, 5])),
            Ordering::Less
        );
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn compare_checks_lengths() {
        let g = MonomialOrder::grevlex(2);
        assert!(g
            .compare(&Monomial::new(&[1, 0]), &Monomial::new(&[1, 0, 0]))
            .is_err());
    }

    #[test]
    fn divmask_is_sound() {
        let ms: Vec<Monomial> = (0..5)
            .flat_map(|a| (0..5).map(move |b| Monomial::new(&[a, b * 3])))
            .collect();
        for a in &ms {
            for b in &ms {
                if a.divides(b) {
                    assert_eq!(a.divmask() & !b.divmask(), 0);
                }
            }
        }
    }
}

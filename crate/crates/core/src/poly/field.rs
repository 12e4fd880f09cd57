use crate::error::{Error, Result};

/// Residue in `[0, p)`. The modulus travels with the [`PrimeField`].
pub type Coeff = u32;

/// The prime field F_p for p = 2 or an odd prime below 2^16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub const MAX_PRIME: u64 = 1 << 16;

    pub fn new(p: u64) -> Result<Self> {
        if p >= Self::MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> Coeff {
        a.rem_euclid(self.p as i64) as Coeff
    }

    #[inline]
    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Coeff, b: Coeff) -> Coeff {
        ((a as u64 * b as u64) % self.p as u64) as Coeff
    }

    pub fn pow(&self, a: Coeff, mut e: u64) -> Coeff {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: Coeff) -> Result<Coeff> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::DivisionByZero { p: self.p });
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce(t0))
    }

    /// Returns `Some(n)` when `q = p^n`.
    pub fn log_p(&self, q: u64) -> Option<u32> {
        if q == 0 {
            return None;
        }
        let mut n = 0;
        let mut rest = q;
        while rest % self.p as u64 == 0 {
            rest /= self.p as u64;
            n += 1;
        }
        (rest == 1).then_some(n)
    }

    /// `p^n`, if it fits in a `u64`.
    pub fn power_of_p(&self, n: u32) -> Option<u64> {
        (self.p as u64).checked_pow(n)
    }
}

//! Arithmetic in GF(p) for word-sized primes.
//!
//! Elements are plain `u32` residues in `[0, p)`. The field itself is a
//! `Copy` descriptor, so every routine that needs arithmetic takes one by
//! value instead of wrapping each scalar.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Primes used when no explicit list is given. None of them divides a
/// surface degree up to 32.
pub const DEFAULT_PRIMES: [u32; 3] = [65521, 32749, 8191];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_u64(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    #[inline]
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn to_i64(self, x: u32) -> i64 {
        let x = x as i64;
        let p = self.p as i64;
        if x > p / 2 {
            x - p
        } else {
            x
        }
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat's little theorem. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(
            !a.is_multiple_of(self.p),
            "inverse of zero in GF({})",
            self.p
        );
        self.pow(a, self.p as u64 - 2)
    }

    /// Number of `acc += c * x` updates (with `c, x < p`) that a `u64`
    /// accumulator starting below `p` can absorb without overflow.
    pub(crate) fn lazy_budget(self) -> u64 {
        let q = (self.p as u64 - 1).max(1);
        ((u64::MAX - self.p as u64) / (q * q)).max(1)
    }
}

impl std::fmt::Display for PrimeField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

//! Prime fields F_p for machine-word primes.
//!
//! Scalars are plain `u64` values kept canonical in `[0, p)`. All products go
//! through a `u128` intermediate, so any prime below 2^64 is safe.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field F_p. Cheap to copy; every scalar operation takes the field
/// by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Constructs F_p, rejecting composite or trivial moduli.
    pub fn new(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Canonical representative of a signed integer mod p.
    pub fn from_i128(self, v: i128) -> u64 {
        let p = self.p as i128;
        let r = v.rem_euclid(p);
        r as u64
    }

    pub fn reduce(self, v: u64) -> u64 {
        v % self.p
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a.wrapping_add(b);
        // a, b < p <= 2^63 would avoid overflow, but p may use all 64 bits.
        if s < a || s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.p)
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "division by zero in F_{}", self.p);
        // Fermat: a^(p-2). p is prime by construction.
        self.pow(a, self.p - 2)
    }

    pub fn div(self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }
}

/// Deterministic Miller-Rabin, valid for the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    // This base set is known to be exact below 2^64.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

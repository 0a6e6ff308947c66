//! Prime field arithmetic for odd characteristic.

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Default characteristic used when none is configured.
pub const DEFAULT_PRIME: u32 = 32003;

/// The prime field F_p. Values are plain `u32` residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Default for Fp {
    fn default() -> Self {
        Fp { p: DEFAULT_PRIME }
    }
}

impl Fp {
    /// Characteristic 2 is refused: the deformed theory needs 2 to be invertible.
    pub fn new(p: u32) -> Result<Fp, AlgebraError> {
        if p == 2 {
            return Err(AlgebraError::CharacteristicTwo);
        }
        if p < 3 || p >= (1 << 31) || !is_prime(p) {
            return Err(AlgebraError::NotAnOddPrime(p));
        }
        Ok(Fp { p })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Symmetric representative in `(-p/2, p/2]`, handy for reporting signs.
    pub fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

use std::fmt;

use crate::error::{Error, Result};

/// Residue classes modulo a word-sized prime.
///
/// Elements are plain `u32` representatives in `[0, p)`; the field itself
/// only carries the modulus and performs the arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub type Coeff = u32;

pub const DEFAULT_PRIME: u32 = 32003;

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn from_i64(self, v: i64) -> Coeff {
        v.rem_euclid(self.p as i64) as Coeff
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(self, a: Coeff) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    #[inline]
    pub fn add(self, a: Coeff, b: Coeff) -> Coeff {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as Coeff
        } else {
            s as Coeff
        }
    }

    #[inline]
    pub fn sub(self, a: Coeff, b: Coeff) -> Coeff {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as Coeff
        }
    }

    #[inline]
    pub fn neg(self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: Coeff, b: Coeff) -> Coeff {
        ((a as u64 * b as u64) % self.p as u64) as Coeff
    }

    pub fn pow(self, mut a: Coeff, mut e: u64) -> Coeff {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: Coeff) -> Coeff {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        self.from_i64(t)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_moduli() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32001).is_err());
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u32, 2, 3, 17, 32002, 12345] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.from_i64(8), 1);
        assert_eq!(f7.from_i64(-1), 6);
        assert_eq!(f7.to_signed(6), -1);
        assert_eq!(f7.pow(3, 6), 1);
    }
}

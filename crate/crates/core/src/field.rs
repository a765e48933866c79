//! Arithmetic in the prime field F_p.
//!
//! Elements are plain `u64` residues in `[0, p)`. The modulus is limited to
//! 32 bits so that every product fits in a `u64` before reduction.

use crate::error::{Error, Result};

/// An element of F_p, always reduced into `[0, p)`.
pub type FieldElement = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> FieldElement {
        a % self.p
    }

    /// Maps a signed integer into the field.
    pub fn from_i64(&self, a: i64) -> FieldElement {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        (a * b) % self.p
    }

    pub fn pow(&self, mut a: FieldElement, mut k: u64) -> FieldElement {
        let mut r = 1 % self.p;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        r
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.from_i64(t0))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

/// Inverse of `a` in F_p; fails on `a ≡ 0`.
pub fn field_inverse(field: &PrimeField, a: FieldElement) -> Result<FieldElement> {
    field.inv(a)
}

/// Deterministic primality by trial division; moduli are at most 32 bits.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_inverse(p: u64, a: u64) -> Option<u64> {
        (1..p).find(|b| (a * b) % p == 1)
    }

    #[test]
    fn inverse_examples() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.inv(1).unwrap(), 1);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.inv(2).unwrap(), 2);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(3).unwrap(), 5);
        assert_eq!(brute_inverse(7, 3), Some(5));
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.inv(0), Err(Error::DivisionByZero(5)));
    }

    #[test]
    fn inverse_matches_exhaustive_search() {
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(Some(f.inv(a).unwrap()), brute_inverse(p, a));
            }
        }
    }

    #[test]
    fn rejects_composites() {
        for n in [0u64, 1, 4, 6, 9, 15, 25] {
            assert!(PrimeField::new(n).is_err());
        }
    }

    #[test]
    fn fermat() {
        let f = PrimeField::new(13).unwrap();
        for a in 0..13 {
            assert_eq!(f.pow(a, 13), a);
        }
    }
}

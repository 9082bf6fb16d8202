use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::AlgebraError;

pub fn is_prime(n: u64) -> bool {
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

/// The prime field `F_p`, used as a context for raw `u32` residues in hot loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn element(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement { value: v.rem_euclid(self.p as i64) as u32, p: self.p }
    }

    pub fn elements(&self) -> impl Iterator<Item = PrimeFieldElement> + '_ {
        (0..self.p).map(move |v| PrimeFieldElement { value: v, p: self.p })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

/// A residue modulo a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u32,
    p: u32,
}

impl PrimeFieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = PrimeFieldElement { value: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(self.p as u64 - 2))
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl Add for PrimeFieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        PrimeFieldElement { value: ((self.value as u64 + rhs.value as u64) % self.p as u64) as u32, p: self.p }
    }
}

impl Sub for PrimeFieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for PrimeFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        PrimeFieldElement { value: if self.value == 0 { 0 } else { self.p - self.value }, p: self.p }
    }
}

impl Mul for PrimeFieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        PrimeFieldElement { value: ((self.value as u64 * rhs.value as u64) % self.p as u64) as u32, p: self.p }
    }
}

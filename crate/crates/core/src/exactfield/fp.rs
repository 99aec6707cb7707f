//! Prime-field scalars.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::FieldError;

/// Moduli this crate is prepared to work over.
pub const SUPPORTED_PRIMES: [u32; 5] = [2, 3, 5, 7, 11];

pub fn is_supported_prime(p: u32) -> bool {
    SUPPORTED_PRIMES.contains(&p)
}

pub fn check_prime(p: u32) -> Result<(), FieldError> {
    if is_supported_prime(p) {
        Ok(())
    } else {
        Err(FieldError::UnsupportedModulus(p))
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, (p - 2) as u64, p)
}

pub(crate) fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// An element of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq {
    p: u32,
    value: u32,
}

impl Fq {
    pub fn new(p: u32, value: i64) -> Self {
        Fq {
            p,
            value: reduce(value, p),
        }
    }

    pub fn zero(p: u32) -> Self {
        Fq { p, value: 0 }
    }

    pub fn one(p: u32) -> Self {
        Fq { p, value: 1 % p }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Option<Fq> {
        if self.value == 0 {
            None
        } else {
            Some(Fq {
                p: self.p,
                value: inv_mod(self.value, self.p),
            })
        }
    }

    pub fn pow(&self, e: u64) -> Fq {
        Fq {
            p: self.p,
            value: pow_mod(self.value, e, self.p),
        }
    }

    pub fn checked_add(self, rhs: Fq) -> Result<Fq, FieldError> {
        same_modulus(self.p, rhs.p)?;
        Ok(self + rhs)
    }

    pub fn checked_mul(self, rhs: Fq) -> Result<Fq, FieldError> {
        same_modulus(self.p, rhs.p)?;
        Ok(self * rhs)
    }
}

pub(crate) fn same_modulus(a: u32, b: u32) -> Result<(), FieldError> {
    if a == b {
        Ok(())
    } else {
        Err(FieldError::ModulusMismatch { left: a, right: b })
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fq {
    type Output = Fq;
    fn add(self, rhs: Fq) -> Fq {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        Fq {
            p: self.p,
            value: add_mod(self.value, rhs.value, self.p),
        }
    }
}

impl Sub for Fq {
    type Output = Fq;
    fn sub(self, rhs: Fq) -> Fq {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        Fq {
            p: self.p,
            value: sub_mod(self.value, rhs.value, self.p),
        }
    }
}

impl Mul for Fq {
    type Output = Fq;
    fn mul(self, rhs: Fq) -> Fq {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        Fq {
            p: self.p,
            value: mul_mod(self.value, rhs.value, self.p),
        }
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        Fq {
            p: self.p,
            value: neg_mod(self.value, self.p),
        }
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Returns true when `p` is prime.
pub fn is_prime(p: u8) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u8;
    while (d as u16) * (d as u16) <= p as u16 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn reduce(v: i64, p: u8) -> u8 {
    v.rem_euclid(p as i64) as u8
}

#[inline]
pub(crate) fn add_mod(a: u8, b: u8, p: u8) -> u8 {
    let s = a as u16 + b as u16;
    if s >= p as u16 {
        (s - p as u16) as u8
    } else {
        s as u8
    }
}

#[inline]
pub(crate) fn sub_mod(a: u8, b: u8, p: u8) -> u8 {
    if a >= b {
        a - b
    } else {
        (a as u16 + p as u16 - b as u16) as u8
    }
}

#[inline]
pub(crate) fn mul_mod(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 * b as u16) % p as u16) as u8
}

#[inline]
pub(crate) fn neg_mod(a: u8, p: u8) -> u8 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(a % p != 0);
    let mut result = 1u8;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

/// An element of the prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u8,
    modulus: u8,
}

impl FieldElement {
    pub fn new(value: i64, modulus: u8) -> Self {
        Self {
            value: reduce(value, modulus),
            modulus,
        }
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> u8 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(Self {
                value: inv_mod(self.value, self.modulus),
                modulus: self.modulus,
            })
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut acc = Self::new(1, self.modulus);
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        Self {
            value: add_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        Self {
            value: sub_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        Self {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: neg_mod(self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_below_30() {
        let primes: Vec<u8> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(251));
        assert!(!is_prime(255));
    }

    #[test]
    fn inverses() {
        for p in [2u8, 3, 5, 7, 251] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
    }

    #[test]
    fn negative_reduce() {
        assert_eq!(FieldElement::new(-1, 3).value(), 2);
        assert_eq!(FieldElement::new(-7, 5).value(), 3);
    }
}

use std::ops::{Add, Mul, Neg, Sub};

use super::arith::mul_slices;
use super::field::{add_mod, inv_mod, is_prime, mul_mod, neg_mod, reduce, sub_mod, FieldElement};
use super::PolyError;

/// A polynomial in F_p[T], stored as ascending coefficients without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u8,
    coeffs: Vec<u8>,
}

impl Poly {
    pub fn check_modulus(p: u8) -> Result<(), PolyError> {
        if is_prime(p) {
            Ok(())
        } else {
            Err(PolyError::BadModulus(p))
        }
    }

    pub fn zero(p: u8) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u8) -> Self {
        Self::constant(1, p)
    }

    /// The indeterminate T.
    pub fn t(p: u8) -> Self {
        Self::monomial(1, 1, p)
    }

    pub fn constant(c: i64, p: u8) -> Self {
        Self::from_raw(p, vec![reduce(c, p)])
    }

    pub fn monomial(c: i64, e: usize, p: u8) -> Self {
        let c = reduce(c, p);
        if c == 0 {
            return Self::zero(p);
        }
        let mut coeffs = vec![0u8; e + 1];
        coeffs[e] = c;
        Self { p, coeffs }
    }

    /// Builds from ascending integer coefficients, reducing mod p.
    pub fn from_coeffs(p: u8, coeffs: &[i64]) -> Self {
        Self::from_raw(p, coeffs.iter().map(|&c| reduce(c, p)).collect())
    }

    /// Builds from ascending coefficients already reduced mod p.
    pub fn from_raw(p: u8, mut coeffs: Vec<u8>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer; the zero polynomial has no degree and panics.
    pub fn deg(&self) -> i64 {
        self.degree().expect("degree of the zero polynomial") as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        FieldElement::new(self.coeffs.get(i).copied().unwrap_or(0) as i64, self.p)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs
            .last()
            .map(|&c| FieldElement::new(c as i64, self.p))
    }

    pub fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    fn same_modulus(&self, other: &Self) -> Result<(), PolyError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(PolyError::ModulusMismatch(self.p, other.p))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_modulus(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            out.push(add_mod(a, b, self.p));
        }
        Ok(Self::from_raw(self.p, out))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_modulus(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            out.push(sub_mod(a, b, self.p));
        }
        Ok(Self::from_raw(self.p, out))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_modulus(other)?;
        Ok(Self::from_raw(self.p, mul_slices(&self.coeffs, &other.coeffs, self.p)))
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let c = c.value();
        Self::from_raw(self.p, self.coeffs.iter().map(|&x| mul_mod(x, c, self.p)).collect())
    }

    /// Multiplies by T^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0u8; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { p: self.p, coeffs }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn divmod(&self, den: &Self) -> Result<(Self, Self), PolyError> {
        self.same_modulus(den)?;
        let dd = den.degree().ok_or(PolyError::DivisionByZero)?;
        let p = self.p;
        let dn = match self.degree() {
            Some(d) if d >= dd => d,
            _ => return Ok((Self::zero(p), self.clone())),
        };
        let lc_inv = inv_mod(den.coeffs[dd], p);
        let terms: Vec<(usize, u8)> = den.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c))
            .collect();
        let mut r = self.coeffs.clone();
        let mut q = vec![0u8; dn - dd + 1];
        for i in (dd..=dn).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let qc = mul_mod(c, lc_inv, p);
            q[i - dd] = qc;
            r[i] = 0;
            let base = i - dd;
            for &(j, dj) in &terms {
                r[base + j] = sub_mod(r[base + j], mul_mod(qc, dj, p), p);
            }
        }
        Ok((Self::from_raw(p, q), Self::from_raw(p, r)))
    }

    pub fn div_exact(&self, den: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.divmod(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible {
                dividend: self.to_string(),
                divisor: den.to_string(),
            })
        }
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        match other.divmod(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// f(T)^3. In characteristic 3 this only spreads coefficients.
    pub fn frobenius_cube(&self) -> Self {
        if self.p != 3 {
            return &(self * self) * self;
        }
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0u8; 3 * (self.coeffs.len() - 1) + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[3 * i] = c;
        }
        Self { p: 3, coeffs }
    }
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
    a.same_modulus(b)?;
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.divmod(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

pub fn divides(d: &Poly, a: &Poly) -> bool {
    d.divides(a)
}

pub fn frobenius_cube(f: &Poly) -> Poly {
    f.frobenius_cube()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("modulus mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("modulus mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("modulus mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_raw(self.p, self.coeffs.iter().map(|&c| neg_mod(c, self.p)).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(c: &[i64]) -> Poly {
        Poly::from_coeffs(3, c)
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero(3).degree(), None);
        assert_eq!(p3(&[0, 0, 0]).degree(), None);
        assert_eq!(p3(&[1, 0, 2]).degree(), Some(2));
    }

    #[test]
    fn divmod_small() {
        let a = p3(&[1, 0, 0, 1]);
        let b = p3(&[1, 1]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().map_or(true, |d| d < 1));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(p3(&[1]).divmod(&Poly::zero(3)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn modulus_mismatch() {
        assert_eq!(
            Poly::one(3).try_add(&Poly::one(5)),
            Err(PolyError::ModulusMismatch(3, 5))
        );
    }

    #[test]
    fn cube_is_frobenius() {
        let f = p3(&[2, 1, 0, 1]);
        assert_eq!(f.frobenius_cube(), &(&f * &f) * &f);
        let g = Poly::from_coeffs(5, &[2, 1, 3]);
        assert_eq!(g.frobenius_cube(), &(&g * &g) * &g);
    }

    #[test]
    fn gcd_monic() {
        let a = &p3(&[1, 1]) * &p3(&[2, 0, 1]);
        let b = &p3(&[1, 1]) * &p3(&[0, 1]);
        assert_eq!(gcd(&a, &b).unwrap(), p3(&[1, 1]));
        let c = p3(&[2, 2]);
        assert_eq!(gcd(&c, &Poly::zero(3)).unwrap(), p3(&[1, 1]));
    }

    #[test]
    fn divisibility() {
        let t = Poly::t(3);
        let t5 = Poly::monomial(1, 5, 3);
        assert!(divides(&t, &t5));
        assert!(!divides(&t, &(&t5 + &Poly::one(3))));
        assert!(divides(&Poly::zero(3), &Poly::zero(3)));
    }
}

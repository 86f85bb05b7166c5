use std::fmt;

use crate::gfpoly::{add_mod, inv_mod, mul_mod, mul_slices, neg_mod, sub_mod, FieldElement, Poly};

use super::SeriesError;

/// A truncated Laurent series in 1/T over F_p.
///
/// `coeffs[i]` is the coefficient of T^(floor + i). When `exact` is false every
/// exponent at or above `floor` is certified and nothing is known below it. When
/// `exact` is true all coefficients below `floor` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    p: u8,
    floor: i64,
    coeffs: Vec<u8>,
    exact: bool,
}

impl Laurent {
    fn normalized(p: u8, mut floor: i64, mut coeffs: Vec<u8>, exact: bool) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if exact {
            let lead = coeffs.iter().position(|&c| c != 0).unwrap_or(coeffs.len());
            coeffs.drain(..lead);
            floor = if coeffs.is_empty() { 0 } else { floor + lead as i64 };
        }
        Self { p, floor, coeffs, exact }
    }

    /// Builds from ascending coefficients starting at T^floor.
    pub fn from_parts(p: u8, floor: i64, coeffs: Vec<u8>, exact: bool) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        Self::normalized(p, floor, coeffs, exact)
    }

    pub fn exact_zero(p: u8) -> Self {
        Self { p, floor: 0, coeffs: Vec::new(), exact: true }
    }

    /// A series known to vanish at every exponent ≥ floor.
    pub fn zero_above(p: u8, floor: i64) -> Self {
        Self { p, floor, coeffs: Vec::new(), exact: false }
    }

    pub fn from_poly(f: &Poly) -> Self {
        Self::normalized(f.modulus(), 0, f.coeffs().to_vec(), true)
    }

    pub fn monomial(c: i64, e: i64, p: u8) -> Self {
        Self::normalized(p, e, vec![FieldElement::new(c, p).value()], true)
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Lowest certified exponent, or `None` when the series is exact.
    pub fn precision_floor(&self) -> Option<i64> {
        (!self.exact).then_some(self.floor)
    }

    /// Exponent of the leading nonzero term, if one is certified.
    pub fn top(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.floor + self.coeffs.len() as i64 - 1)
    }

    /// Number of certified coefficients from the top term down to the floor.
    pub fn significant_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact && self.coeffs.is_empty()
    }

    /// Whether no nonzero coefficient is certified.
    pub fn is_zero_so_far(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of T^e, or `None` when below the precision floor.
    pub fn coeff(&self, e: i64) -> Option<u8> {
        if e < self.floor {
            return if self.exact { Some(0) } else { None };
        }
        Some(self.coeffs.get((e - self.floor) as usize).copied().unwrap_or(0))
    }

    #[inline]
    fn raw(&self, e: i64) -> u8 {
        if e < self.floor {
            0
        } else {
            self.coeffs.get((e - self.floor) as usize).copied().unwrap_or(0)
        }
    }

    /// Upper bound on the exponent of the leading term, counting uncertified tails.
    fn top_bound(&self) -> Option<i64> {
        match self.top() {
            Some(t) => Some(t),
            None if self.exact => None,
            None => Some(self.floor - 1),
        }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(SeriesError::ModulusMismatch(self.p, other.p))
        }
    }

    /// Drops coefficients below `floor`; the result is no longer exact.
    pub fn truncate(&self, floor: i64) -> Self {
        if !self.exact && floor <= self.floor {
            return self.clone();
        }
        let coeffs = if floor <= self.floor {
            let mut v = vec![0u8; (self.floor - floor) as usize];
            v.extend_from_slice(&self.coeffs);
            v
        } else {
            let skip = ((floor - self.floor) as usize).min(self.coeffs.len());
            self.coeffs[skip..].to_vec()
        };
        Self::normalized(self.p, floor, coeffs, false)
    }

    /// Treats the certified coefficients as an exact finite sum.
    pub fn to_exact(&self) -> Self {
        Self::normalized(self.p, self.floor, self.coeffs.clone(), true)
    }

    fn combine(&self, other: &Self, sub: bool) -> Self {
        let p = self.p;
        let floor = match (self.exact, other.exact) {
            (true, true) => None,
            (true, false) => Some(other.floor),
            (false, true) => Some(self.floor),
            (false, false) => Some(self.floor.max(other.floor)),
        };
        let lo = match floor {
            Some(f) => f,
            None => match (self.coeffs.is_empty(), other.coeffs.is_empty()) {
                (true, true) => return Self::exact_zero(p),
                (true, false) => other.floor,
                (false, true) => self.floor,
                (false, false) => self.floor.min(other.floor),
            },
        };
        let hi = self.top().unwrap_or(lo - 1).max(other.top().unwrap_or(lo - 1));
        let mut coeffs = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for e in lo..=hi {
            let (a, b) = (self.raw(e), other.raw(e));
            coeffs.push(if sub { sub_mod(a, b, p) } else { add_mod(a, b, p) });
        }
        Self::normalized(p, lo, coeffs, floor.is_none())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.combine(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.combine(other, true))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| neg_mod(c, self.p)).collect();
        Self { p: self.p, floor: self.floor, coeffs, exact: self.exact }
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let coeffs = self.coeffs.iter().map(|&x| mul_mod(x, c.value(), self.p)).collect();
        Self::normalized(self.p, self.floor, coeffs, self.exact)
    }

    /// Multiplies by T^k.
    pub fn shift(&self, k: i64) -> Self {
        Self { p: self.p, floor: self.floor + k, coeffs: self.coeffs.clone(), exact: self.exact }
    }

    fn product_floor(&self, other: &Self) -> Option<i64> {
        let a = (!self.exact).then(|| self.floor + other.top_bound().unwrap_or(i64::MIN / 4));
        let b = (!other.exact).then(|| other.floor + self.top_bound().unwrap_or(i64::MIN / 4));
        match (a, b) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some(x.max(y)),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.mul_to(other, None)
    }

    /// Product, keeping only exponents at or above `min_floor` when given.
    pub fn mul_to(&self, other: &Self, min_floor: Option<i64>) -> Result<Self, SeriesError> {
        self.check(other)?;
        let p = self.p;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(match min_floor {
                Some(f) => Self::zero_above(p, f),
                None => Self::exact_zero(p),
            });
        }
        let rule = self.product_floor(other);
        let floor = match (rule, min_floor) {
            (Some(r), Some(m)) => Some(r.max(m)),
            (r, m) => r.or(m),
        };
        let exact = floor.is_none();
        let (ta, tb) = match (self.top(), other.top()) {
            (Some(ta), Some(tb)) => (ta, tb),
            _ => return Ok(Self::zero_above(p, floor.expect("inexact zero factor"))),
        };
        if let Some(f) = floor {
            if ta + tb < f {
                return Ok(Self::zero_above(p, f));
            }
        }
        let a_lo = floor.map_or(self.floor, |f| self.floor.max(f - tb));
        let b_lo = floor.map_or(other.floor, |f| other.floor.max(f - ta));
        let a = &self.coeffs[(a_lo - self.floor) as usize..];
        let b = &other.coeffs[(b_lo - other.floor) as usize..];
        let prod = mul_slices(a, b, p);
        let base = a_lo + b_lo;
        let out = match floor {
            Some(f) if f > base => prod[(f - base) as usize..].to_vec(),
            Some(f) => {
                let mut v = vec![0u8; (base - f) as usize];
                v.extend_from_slice(&prod);
                v
            }
            None => prod,
        };
        Ok(Self::normalized(p, floor.unwrap_or(base), out, exact))
    }

    pub fn mul_poly(&self, f: &Poly) -> Result<Self, SeriesError> {
        self.mul(&Self::from_poly(f))
    }

    /// Reciprocal with the same number of significant coefficients.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let t = self.top().ok_or(SeriesError::NotInvertible)?;
        if self.exact && self.coeffs.len() == 1 {
            let c = FieldElement::new(self.coeffs[0] as i64, self.p).inv().unwrap();
            return Ok(Self::monomial(c.value() as i64, -t, self.p));
        }
        self.invert_to(-t - (self.coeffs.len() as i64 - 1))
    }

    /// Reciprocal certified down to `floor`, or to the natural limit of the input.
    pub fn invert_to(&self, floor: i64) -> Result<Self, SeriesError> {
        let t = self.top().ok_or(SeriesError::NotInvertible)?;
        let p = self.p;
        let floor = if self.exact { floor } else { floor.max(self.floor - 2 * t) };
        let n = (-t - floor + 1).max(0) as usize;
        let u: Vec<u8> = self.coeffs.iter().rev().copied().collect();
        let inv0 = inv_mod(u[0], p);
        let terms: Vec<(usize, u8)> = u
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c))
            .collect();
        let mut v = vec![0u8; n];
        let mut acc = vec![0u64; n];
        let modp = p as u64;
        for k in 0..n {
            let s = if k == 0 { 1 } else { (modp - acc[k] % modp) % modp };
            let vk = mul_mod(s as u8, inv0, p);
            v[k] = vk;
            if vk == 0 {
                continue;
            }
            for &(j, uj) in &terms {
                let idx = k + j;
                if idx >= n {
                    break;
                }
                acc[idx] += vk as u64 * uj as u64;
            }
            if k % 1024 == 1023 {
                for a in acc[k + 1..].iter_mut() {
                    *a %= modp;
                }
            }
        }
        v.reverse();
        Ok(Self::normalized(p, floor, v, false))
    }

    /// Splits into the polynomial part (exponents ≥ 0) and the fractional part.
    pub fn poly_part(&self) -> Result<(Poly, Self), SeriesError> {
        if !self.exact && self.floor > 0 {
            return Err(SeriesError::InsufficientPrecision { needed: 0, floor: self.floor });
        }
        let top = match self.top() {
            Some(t) if t >= 0 => t,
            _ => return Ok((Poly::zero(self.p), self.clone())),
        };
        let poly: Vec<u8> = (0..=top).map(|e| self.raw(e)).collect();
        let frac_hi = -1i64;
        let frac: Vec<u8> = if self.floor <= frac_hi {
            (self.floor..=frac_hi).map(|e| self.raw(e)).collect()
        } else {
            Vec::new()
        };
        let frac_floor = if self.exact && frac.is_empty() { 0 } else { self.floor.min(0) };
        Ok((
            Poly::from_raw(self.p, poly),
            Self::normalized(self.p, frac_floor, frac, self.exact),
        ))
    }

    /// x(T)^3 for p = 3, placing coefficients at three times their exponents.
    pub fn frobenius(&self) -> Result<Self, SeriesError> {
        if self.p != 3 {
            let sq = self.mul(self)?;
            return sq.mul(self);
        }
        let mut coeffs = vec![0u8; if self.coeffs.is_empty() { 0 } else { 3 * (self.coeffs.len() - 1) + 1 }];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[3 * i] = c;
        }
        if self.exact {
            return Ok(Self::normalized(3, 3 * self.floor, coeffs, true));
        }
        let mut padded = vec![0u8, 0];
        padded.extend(coeffs);
        Ok(Self::normalized(3, 3 * self.floor - 2, padded, false))
    }

    /// Whether both series agree on every exponent certified in both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let lo = match (self.exact, other.exact) {
            (true, true) => self.floor.min(other.floor),
            (true, false) => other.floor,
            (false, true) => self.floor,
            (false, false) => self.floor.max(other.floor),
        };
        let hi = self.top().unwrap_or(lo).max(other.top().unwrap_or(lo));
        (lo..=hi).all(|e| self.raw(e) == other.raw(e))
    }

    /// Iterator over (exponent, coefficient) pairs of nonzero certified terms, descending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u8)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.floor + i as i64, c))
    }

    /// Lowest stored exponent: the floor, or for exact series the lowest nonzero term.
    pub fn low(&self) -> i64 {
        self.floor
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "T")?,
                (e, 1) => write!(f, "T^{e}")?,
                (1, c) => write!(f, "{c}*T")?,
                (e, c) => write!(f, "{c}*T^{e}")?,
            }
        }
        if !self.exact {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "O(T^{})", self.floor - 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

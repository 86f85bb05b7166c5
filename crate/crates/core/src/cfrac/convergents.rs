use crate::gfpoly::Poly;
use crate::laurent::Laurent;

use super::{CfError, ContinuedFraction};

/// Convergents U_k/V_k for k = 0..n, with U_{-1} = 1 and V_{-1} = 0 implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    pub u: Vec<Poly>,
    pub v: Vec<Poly>,
}

pub fn convergents(cf: &ContinuedFraction) -> ConvergentTable {
    convergents_of(&cf.quotients)
}

pub fn convergents_of(quotients: &[Poly]) -> ConvergentTable {
    let p = quotients.first().map_or(3, Poly::modulus);
    let mut u: Vec<Poly> = Vec::with_capacity(quotients.len());
    let mut v: Vec<Poly> = Vec::with_capacity(quotients.len());
    for (k, a) in quotients.iter().enumerate() {
        if k == 0 {
            u.push(a.clone());
            v.push(Poly::one(p));
            continue;
        }
        let (u2, v2) = if k >= 2 {
            (u[k - 2].clone(), v[k - 2].clone())
        } else {
            (Poly::one(p), Poly::zero(p))
        };
        let next_u = &(a * &u[k - 1]) + &u2;
        let next_v = &(a * &v[k - 1]) + &v2;
        u.push(next_u);
        v.push(next_v);
    }
    ConvergentTable { u, v }
}

impl ConvergentTable {
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// Checks U_{k+1}V_k − V_{k+1}U_k = (−1)^k for k = −1..n−1.
    pub fn check_determinant(&self) -> Result<(), CfError> {
        let Some(first) = self.u.first() else {
            return Ok(());
        };
        let p = first.modulus();
        let one = Poly::one(p);
        let minus_one = -&one;
        let (mut u_prev, mut v_prev) = (Poly::one(p), Poly::zero(p));
        for k in 0..self.u.len() {
            let det = &(&self.u[k] * &v_prev) - &(&self.v[k] * &u_prev);
            let expected = if k % 2 == 1 { &one } else { &minus_one };
            if &det != expected {
                return Err(CfError::Determinant { index: k as i64 - 1 });
            }
            u_prev = self.u[k].clone();
            v_prev = self.v[k].clone();
        }
        Ok(())
    }

    /// Index k with U_k/V_k = r/s, if the fraction occurs among the convergents.
    pub fn locate(&self, r: &Poly, s: &Poly) -> Option<usize> {
        let ds = s.degree()?;
        (0..self.len())
            .filter(|&k| self.v[k].degree() == Some(ds))
            .find(|&k| &self.u[k] * s == &self.v[k] * r)
    }
}

/// Laurent expansion of num/den certified down to `floor`.
pub fn rational_series(num: &Poly, den: &Poly, floor: i64) -> Result<Laurent, CfError> {
    if den.is_zero() {
        return Err(CfError::ZeroDenominator);
    }
    let n = Laurent::from_poly(num);
    let d = Laurent::from_poly(den);
    let top_n = n.top().unwrap_or(floor);
    let inv = d.invert_to(floor - top_n - 1)?;
    Ok(n.mul_to(&inv, Some(floor))?)
}

/// Numerator and denominator of the finite CF, evaluated from the last quotient up.
pub fn evaluate(quotients: &[Poly]) -> Result<(Poly, Poly), CfError> {
    let last = quotients.last().ok_or(CfError::Empty)?;
    let p = last.modulus();
    let (mut num, mut den) = (last.clone(), Poly::one(p));
    for a in quotients.iter().rev().skip(1) {
        let next = &(a * &num) + &den;
        den = num;
        num = next;
    }
    Ok((num, den))
}

/// The series of [a_0; a_1, ..., a_n] to `precision` coefficients below T^0.
///
/// Unless the CF is complete, only exponents down to −2 deg V_n are determined by
/// the quotients, so the floor never goes below that.
pub fn reconstruct(cf: &ContinuedFraction, precision: usize) -> Result<Laurent, CfError> {
    let (num, den) = evaluate(&cf.quotients)?;
    let mut floor = -(precision as i64);
    if !cf.complete {
        floor = floor.max(-2 * den.deg());
    }
    rational_series(&num, &den, floor)
}

/// Exponent e with |x − u/v| = |T|^e, or `None` if no nonzero term is certified.
pub fn error_exponent(x: &Laurent, u: &Poly, v: &Poly) -> Result<Option<i64>, CfError> {
    let diff = x.mul_poly(v)?.sub(&Laurent::from_poly(u))?;
    Ok(diff.top().map(|t| t - v.deg()))
}

/// Checks C[B a_0, C a_1, B a_2, ...] = B[C a_0, B a_1, C a_2, ...] exactly.
pub fn scale_identity_check(b: &Poly, c: &Poly, cf: &ContinuedFraction) -> Result<bool, CfError> {
    if b.is_zero() || c.is_zero() {
        return Err(CfError::ZeroDenominator);
    }
    let left: Vec<Poly> = cf
        .quotients
        .iter()
        .enumerate()
        .map(|(i, a)| if i % 2 == 0 { b * a } else { c * a })
        .collect();
    let right: Vec<Poly> = cf
        .quotients
        .iter()
        .enumerate()
        .map(|(i, a)| if i % 2 == 0 { c * a } else { b * a })
        .collect();
    let (ln, ld) = evaluate(&left)?;
    let (rn, rd) = evaluate(&right)?;
    Ok(&(c * &ln) * &rd == &(b * &rn) * &ld)
}

use serde::Serialize;

use crate::gfpoly::Poly;
use crate::laurent::Laurent;

use super::CfError;

/// Partial quotients [a_0; a_1, a_2, ...].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    pub quotients: Vec<Poly>,
    /// Index of the first quotient the source precision could not certify.
    pub exhausted_at: Option<usize>,
    /// The expansion ended because the value is rational.
    pub complete: bool,
}

impl ContinuedFraction {
    pub fn new(quotients: Vec<Poly>) -> Self {
        Self { quotients, exhausted_at: None, complete: false }
    }

    pub fn a0(&self) -> &Poly {
        &self.quotients[0]
    }

    /// a_1, a_2, ... without a_0.
    pub fn tail(&self) -> &[Poly] {
        &self.quotients[1..]
    }

    /// Number of quotients after a_0.
    pub fn len_tail(&self) -> usize {
        self.quotients.len().saturating_sub(1)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.tail().iter().map(Poly::deg).collect()
    }

    /// Keeps a_0 and the first `n` quotients after it.
    pub fn prefix(&self, n: usize) -> Self {
        let keep = (n + 1).min(self.quotients.len());
        Self {
            quotients: self.quotients[..keep].to_vec(),
            exhausted_at: None,
            complete: self.complete && keep == self.quotients.len(),
        }
    }
}

fn check_positive_degrees(q: &[Poly]) -> Result<(), CfError> {
    for (i, a) in q.iter().enumerate().skip(1) {
        if a.degree().map_or(true, |d| d == 0) {
            return Err(CfError::ConstantQuotient(i));
        }
    }
    Ok(())
}

/// Expands `x` into at most `max_terms` quotients after a_0.
///
/// Quotient a_j is emitted only when 2 deg V_j does not exceed the number of
/// certified coefficients below T^0, which guarantees it is a quotient of every
/// series agreeing with `x` to that precision.
pub fn expand(x: &Laurent, max_terms: usize) -> Result<ContinuedFraction, CfError> {
    let p = x.modulus();
    let (a0, frac) = x.poly_part()?;
    let mut quotients = vec![a0];
    let (n, exact) = match frac.precision_floor() {
        Some(f) => (-f, false),
        None => (-frac.low(), true),
    };
    if frac.is_exact_zero() {
        return Ok(ContinuedFraction { quotients, exhausted_at: None, complete: true });
    }
    let n = n.max(0);
    let coeffs: Vec<u8> = (-n..0).map(|e| frac.coeff(e).unwrap_or(0)).collect();
    let mut num = Poly::monomial(1, n as usize, p);
    let mut den = Poly::from_raw(p, coeffs);
    let mut deg_v = 0i64;
    while quotients.len() <= max_terms {
        if den.is_zero() {
            if exact {
                return Ok(ContinuedFraction { quotients, exhausted_at: None, complete: true });
            }
            let at = quotients.len();
            return Ok(ContinuedFraction { quotients, exhausted_at: Some(at), complete: false });
        }
        let (q, r) = num.divmod(&den)?;
        deg_v += q.deg();
        if !exact && 2 * deg_v > n {
            let at = quotients.len();
            return Ok(ContinuedFraction { quotients, exhausted_at: Some(at), complete: false });
        }
        quotients.push(q);
        num = den;
        den = r;
    }
    let complete = exact && den.is_zero();
    Ok(ContinuedFraction { quotients, exhausted_at: None, complete })
}

/// Expansion of the rational function num/den.
pub fn expand_rational(num: &Poly, den: &Poly) -> Result<ContinuedFraction, CfError> {
    let (mut u, mut v) = (num.clone(), den.clone());
    if v.is_zero() {
        return Err(CfError::ZeroDenominator);
    }
    let mut quotients = Vec::new();
    while !v.is_zero() {
        let (q, r) = u.divmod(&v)?;
        quotients.push(q);
        u = v;
        v = r;
    }
    Ok(ContinuedFraction { quotients, exhausted_at: None, complete: true })
}

/// Builds a CF from a_0 and a quotient list, checking deg a_i ≥ 1 for i ≥ 1.
pub fn from_quotients(a0: Poly, tail: &[Poly]) -> Result<ContinuedFraction, CfError> {
    let mut quotients = vec![a0];
    quotients.extend_from_slice(tail);
    check_positive_degrees(&quotients)?;
    Ok(ContinuedFraction::new(quotients))
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::gfpoly::{FieldElement, Poly, PolyError};

use super::{Laurent, SeriesError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    W1,
    W2,
    E1,
    E2,
    MR,
    Raw,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::W1 => "W1",
            Family::W2 => "W2",
            Family::E1 => "E1",
            Family::E2 => "E2",
            Family::MR => "MR",
            Family::Raw => "RAW",
        }
    }

    fn takes_parameters(self) -> bool {
        matches!(self, Family::W1 | Family::W2 | Family::E1 | Family::E2)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = SpecError;
    fn from_str(s: &str) -> Result<Self, SpecError> {
        match s.to_ascii_uppercase().as_str() {
            "W1" => Ok(Family::W1),
            "W2" => Ok(Family::W2),
            "E1" => Ok(Family::E1),
            "E2" => Ok(Family::E2),
            "MR" => Ok(Family::MR),
            "RAW" => Ok(Family::Raw),
            _ => Err(SpecError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {0} needs parameters A and C")]
    MissingParameters(Family),
    #[error("A must be nonconstant")]
    ConstantA,
    #[error("C must be nonzero")]
    ZeroC,
    #[error("deg C = {c} is too large for {family} with deg A = {a}")]
    DegreeOrder { family: Family, a: usize, c: usize },
    #[error("family {0} is defined over F_3 only")]
    NeedsCharacteristicThree(Family),
    #[error("a raw quartic needs exactly five coefficients, got {0}")]
    RawArity(usize),
    #[error("the degree-1 coefficient of the quartic must be nonzero")]
    NoLinearTerm,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] crate::gfpoly::ParseError),
}

/// Coefficients c_4..c_0 of c_4 x^4 + c_3 x^3 + c_2 x^2 + c_1 x + c_0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticSpec {
    desc: [Poly; 5],
}

impl QuarticSpec {
    pub fn new(desc: [Poly; 5]) -> Result<Self, SpecError> {
        let p = desc[0].modulus();
        for c in &desc {
            if c.modulus() != p {
                return Err(PolyError::ModulusMismatch(p, c.modulus()).into());
            }
        }
        if desc[3].is_zero() {
            return Err(SpecError::NoLinearTerm);
        }
        Ok(Self { desc })
    }

    pub fn parse(texts: &[&str], p: u8) -> Result<Self, SpecError> {
        if texts.len() != 5 {
            return Err(SpecError::RawArity(texts.len()));
        }
        let mut polys = Vec::with_capacity(5);
        for t in texts {
            polys.push(Poly::parse(t, p)?);
        }
        Self::new(polys.try_into().expect("five coefficients"))
    }

    pub fn modulus(&self) -> u8 {
        self.desc[0].modulus()
    }

    /// Coefficient of x^k.
    pub fn coeff(&self, k: usize) -> &Poly {
        &self.desc[4 - k]
    }

    pub fn descending(&self) -> &[Poly; 5] {
        &self.desc
    }

    pub fn max_degree(&self) -> usize {
        self.desc.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// The k-th Taylor coefficient sum_i binom(i, k) c_i x^(i-k), as descending quartic coefficients.
    pub fn taylor(&self, k: usize) -> [Poly; 5] {
        let p = self.modulus();
        let mut out: [Poly; 5] = std::array::from_fn(|_| Poly::zero(p));
        for i in k..=4 {
            let b = binom(i, k) as i64;
            out[4 - (i - k)] = self.coeff(i).scale(FieldElement::new(b, p));
        }
        out
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

impl fmt::Display for QuarticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.desc.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A catalog equation: a family tag plus its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSpec {
    family: Family,
    p: u8,
    a: Option<Poly>,
    c: Option<Poly>,
    raw: Option<QuarticSpec>,
    c_divides_a: bool,
}

impl EquationSpec {
    pub fn new(family: Family, a: Poly, c: Poly) -> Result<Self, SpecError> {
        if !family.takes_parameters() {
            return match family {
                Family::MR => Ok(Self::mr(a.modulus())),
                _ => Err(SpecError::MissingParameters(family)),
            };
        }
        let p = a.modulus();
        if c.modulus() != p {
            return Err(PolyError::ModulusMismatch(p, c.modulus()).into());
        }
        if p != 3 {
            return Err(SpecError::NeedsCharacteristicThree(family));
        }
        let da = a.degree().filter(|&d| d > 0).ok_or(SpecError::ConstantA)?;
        let dc = c.degree().ok_or(SpecError::ZeroC)?;
        let strict = matches!(family, Family::W2 | Family::E2);
        if dc > da || (strict && dc == da) {
            return Err(SpecError::DegreeOrder { family, a: da, c: dc });
        }
        let c_divides_a = c.divides(&a);
        Ok(Self { family, p, a: Some(a), c: Some(c), raw: None, c_divides_a })
    }

    pub fn parse(family: Family, a: &str, c: &str) -> Result<Self, SpecError> {
        Self::new(family, Poly::parse(a, 3)?, Poly::parse(c, 3)?)
    }

    /// x^4 + x^2 - T x + 1 = 0.
    pub fn mr(p: u8) -> Self {
        Self { family: Family::MR, p, a: None, c: None, raw: None, c_divides_a: false }
    }

    pub fn raw(q: QuarticSpec) -> Self {
        Self {
            family: Family::Raw,
            p: q.modulus(),
            a: None,
            c: None,
            raw: Some(q),
            c_divides_a: false,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn a(&self) -> Option<&Poly> {
        self.a.as_ref()
    }

    pub fn c(&self) -> Option<&Poly> {
        self.c.as_ref()
    }

    pub fn c_divides_a(&self) -> bool {
        self.c_divides_a
    }

    /// Same parameters, different family.
    pub fn with_family(&self, family: Family) -> Result<Self, SpecError> {
        match (&self.a, &self.c) {
            (Some(a), Some(c)) => Self::new(family, a.clone(), c.clone()),
            _ => Err(SpecError::MissingParameters(family)),
        }
    }

    pub fn quartic(&self) -> QuarticSpec {
        let p = self.p;
        let z = || Poly::zero(p);
        let one = Poly::one(p);
        let (a, c) = match (&self.a, &self.c) {
            (Some(a), Some(c)) => (a.clone(), c.clone()),
            _ => (Poly::t(p), one.clone()),
        };
        let desc = match self.family {
            Family::W1 => [c, z(), z(), -&a, one],
            Family::W2 => [-&one, z(), z(), -&a, c],
            Family::E1 => [&c * &c, z(), c.scale(FieldElement::new(2, p)), -&(&a * &a), one],
            Family::E2 => [one, z(), c.clone(), -&(&a * &a), &c * &c],
            Family::MR => [one.clone(), z(), one.clone(), -&Poly::t(p), one],
            Family::Raw => return self.raw.clone().expect("raw quartic"),
        };
        QuarticSpec { desc }
    }

    /// Smallest precision accepted by the solver.
    pub fn min_precision(&self) -> usize {
        match (&self.a, &self.c) {
            (Some(a), Some(c)) => 4 * (a.deg() as usize + c.deg() as usize + 1),
            _ => 4 * (self.quartic().max_degree() + 1),
        }
    }

    pub fn describe(&self) -> String {
        match (&self.a, &self.c, &self.raw) {
            (Some(a), Some(c), _) => format!("{} A={} C={} p={}", self.family, a, c, self.p),
            (_, _, Some(q)) => format!("RAW {} p={}", q, self.p),
            _ => format!("{} p={}", self.family, self.p),
        }
    }
}

/// Evaluates the quartic at `x` by Horner's rule, keeping exponents ≥ `floor` when given.
pub fn eval_quartic_to(q: &[Poly; 5], x: &Laurent, floor: Option<i64>) -> Result<Laurent, SeriesError> {
    let mut acc = Laurent::from_poly(&q[0]);
    for c in &q[1..] {
        acc = acc.mul_to(x, floor)?.add(&Laurent::from_poly(c))?;
        if let Some(f) = floor {
            acc = acc.truncate(f);
        }
    }
    Ok(acc)
}

pub fn eval_quartic(q: &QuarticSpec, x: &Laurent) -> Result<Laurent, SeriesError> {
    eval_quartic_to(q.descending(), x, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_at_seed() {
        let spec = EquationSpec::parse(Family::W1, "T", "1").unwrap();
        let x = Laurent::monomial(1, -1, 3);
        let r = eval_quartic(&spec.quartic(), &x).unwrap();
        assert_eq!(r, Laurent::monomial(1, -4, 3));
    }

    #[test]
    fn mr_at_zero() {
        let r = eval_quartic(&EquationSpec::mr(3).quartic(), &Laurent::exact_zero(3)).unwrap();
        assert_eq!(r, Laurent::from_poly(&Poly::one(3)));
    }

    #[test]
    fn validation() {
        assert_eq!(
            EquationSpec::parse(Family::W2, "T^2", "T^2+1"),
            Err(SpecError::DegreeOrder { family: Family::W2, a: 2, c: 2 })
        );
        assert!(EquationSpec::parse(Family::W1, "T^2", "T^2+1").is_ok());
        assert_eq!(EquationSpec::parse(Family::W1, "2", "1"), Err(SpecError::ConstantA));
        assert_eq!(EquationSpec::parse(Family::W1, "T", "0"), Err(SpecError::ZeroC));
        assert!(EquationSpec::parse(Family::W1, "T^2", "T").unwrap().c_divides_a());
        assert!(!EquationSpec::parse(Family::W1, "T^2+1", "T").unwrap().c_divides_a());
    }

    #[test]
    fn taylor_coefficients() {
        let q = EquationSpec::mr(3).quartic();
        let d = q.taylor(1);
        assert_eq!(d[1].to_string(), "1");
        assert_eq!(d[3].to_string(), "2");
        assert_eq!(d[4].to_string(), "2*T");
        assert!(d[0].is_zero() && d[2].is_zero());
    }
}

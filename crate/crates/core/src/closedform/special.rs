use serde::Serialize;

use crate::gfpoly::{gcd, Poly};
use crate::laurent::Family;

use super::ClosedFormError;

/// Rational approximations (P_n, Q_n) produced by a closed recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialConvergentSeq {
    pub family: Family,
    pub a: Poly,
    pub c: Poly,
    pub pairs: Vec<(Poly, Poly)>,
}

impl SpecialConvergentSeq {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Index of the first pair whose gcd is not a unit.
    pub fn first_non_coprime(&self) -> Option<usize> {
        self.pairs
            .iter()
            .position(|(p, q)| gcd(p, q).map_or(true, |g| !g.is_one()))
    }
}

/// P_0 = 1, Q_0 = A, P_n = Q_{n−1}^3, Q_n = A Q_{n−1}^3 − C P_{n−1}^3, for n = 0..=n.
pub fn w1_special_convergents(a: &Poly, c: &Poly, n: usize) -> SpecialConvergentSeq {
    let mut pairs = vec![(Poly::one(a.modulus()), a.clone())];
    for _ in 0..n {
        let (p, q) = pairs.last().unwrap();
        let (p3, q3) = (p.frobenius_cube(), q.frobenius_cube());
        let next_q = &(a * &q3) - &(c * &p3);
        pairs.push((q3, next_q));
    }
    SpecialConvergentSeq { family: Family::W1, a: a.clone(), c: c.clone(), pairs }
}

/// P_0 = A, Q_0 = C, P_n = A P_{n−1}^3 + Q_{n−1}^3, Q_n = C P_{n−1}^3. These
/// approximate the reciprocal of the root.
pub fn w2_special_convergents(a: &Poly, c: &Poly, n: usize) -> SpecialConvergentSeq {
    let mut pairs = vec![(a.clone(), c.clone())];
    for _ in 0..n {
        let (p, q) = pairs.last().unwrap();
        let (p3, q3) = (p.frobenius_cube(), q.frobenius_cube());
        pairs.push((&(a * &p3) + &q3, c * &p3));
    }
    SpecialConvergentSeq { family: Family::W2, a: a.clone(), c: c.clone(), pairs }
}

/// Convergents P_0/Q_0 .. P_n/Q_n of the first-family root with C | A, from the
/// odd/even closed recurrences.
pub fn beta_convergents_e1(a: &Poly, c: &Poly, n: usize) -> Result<SpecialConvergentSeq, ClosedFormError> {
    if !c.divides(a) || c.is_zero() {
        return Err(ClosedFormError::CDoesNotDivideA { a: a.to_string(), c: c.to_string() });
    }
    let p = a.modulus();
    let ratio = a.div_exact(c)?;
    let mut pairs = vec![(Poly::zero(p), Poly::one(p))];
    if n >= 1 {
        pairs.push((Poly::one(p), a.clone()));
    }
    for k in 2..=n {
        let (pp, qq) = &pairs[k - 1];
        let (p3, q3) = (pp.frobenius_cube(), qq.frobenius_cube());
        let next = if k % 2 == 1 {
            (q3.clone(), &(a * &q3) - &(c * &p3))
        } else {
            let pk = -&q3.div_exact(c).map_err(|_| ClosedFormError::NotDivisible {
                what: format!("P_{k}"),
                dividend: q3.to_string(),
                divisor: c.to_string(),
            })?;
            (pk, &p3 - &(&ratio * &q3))
        };
        pairs.push(next);
    }
    Ok(SpecialConvergentSeq { family: Family::E1, a: a.clone(), c: c.clone(), pairs })
}

/// Valuation v with |β − P_n/Q_n| = |T|^{−v} for the first family, C ∤ A:
/// a(6·3^n − 1) − c(3^{n+1} − 1)/2.
pub fn w1_error_valuation(a: i64, c: i64, n: u32) -> i64 {
    let t = 3i64.pow(n);
    a * (6 * t - 1) - c * (3 * t - 1) / 2
}

/// deg Q_n = a(3^{n+1} − 1)/2 for the first family.
pub fn w1_q_degree(a: i64, n: u32) -> i64 {
    a * (3 * 3i64.pow(n) - 1) / 2
}

/// Valuation of β_1 − P_n/Q_n for the second family, β_1 the reciprocal of the root:
/// c(3^{n+1} − 1)/2 + (a − c)(3^{n+2} + 3^{n+1} − 6)/2.
pub fn w2_error_valuation(a: i64, c: i64, n: u32) -> i64 {
    let t = 3i64.pow(n);
    c * (3 * t - 1) / 2 + (a - c) * (12 * t - 6) / 2
}

/// deg Q_n = (a·3^{n+1} − 3a + 2c)/2 for the second family.
pub fn w2_q_degree(a: i64, c: i64, n: u32) -> i64 {
    (a * 3 * 3i64.pow(n) - 3 * a + 2 * c) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::{convergents_of, error_exponent};
    use crate::closedform::w1_quotients;
    use crate::laurent::{solve_root, EquationSpec};

    fn poly(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn w1_first_step() {
        let s = w1_special_convergents(&poly("T^2+1"), &poly("T"), 3);
        assert_eq!(s.pairs[1].1, &poly("T^2+1").pow(4) - &poly("T"));
        for (n, (_, q)) in s.pairs.iter().enumerate() {
            assert_eq!(q.deg(), w1_q_degree(2, n as u32));
        }
        assert_eq!(s.first_non_coprime(), None);
    }

    #[test]
    fn w1_error_law() {
        let (a, c) = (poly("T^2+1"), poly("T"));
        let root = solve_root(&EquationSpec::new(Family::W1, a.clone(), c.clone()).unwrap(), 300).unwrap();
        let s = w1_special_convergents(&a, &c, 2);
        for (n, (p, q)) in s.pairs.iter().enumerate() {
            let e = error_exponent(&root, p, q).unwrap().unwrap();
            assert_eq!(-e, w1_error_valuation(2, 1, n as u32));
        }
        assert_eq!(w1_error_valuation(2, 1, 1), 30);
    }

    #[test]
    fn w2_first_step() {
        let (a, c) = (poly("T^5+1"), poly("T"));
        let s = w2_special_convergents(&a, &c, 3);
        assert_eq!(s.pairs[1].0, &a.pow(4) + &c.pow(3));
        assert_eq!(s.pairs[1].1, &c * &a.pow(3));
        for (n, (_, q)) in s.pairs.iter().enumerate() {
            assert_eq!(q.deg(), w2_q_degree(5, 1, n as u32));
        }
        let root = solve_root(&EquationSpec::new(Family::W2, a.clone(), c.clone()).unwrap(), 400).unwrap();
        let recip = root.invert().unwrap();
        for (n, (p, q)) in s.pairs.iter().enumerate().take(3) {
            let e = error_exponent(&recip, p, q).unwrap().unwrap();
            assert_eq!(-e, w2_error_valuation(5, 1, n as u32));
        }
    }

    #[test]
    fn beta_convergents_match_expansion() {
        let (a, c) = (poly("T"), poly("T"));
        let s = beta_convergents_e1(&a, &c, 5).unwrap();
        assert_eq!(s.pairs[2], (poly("2*T^2"), poly("2*T^3+1")));
        let mut quotients = vec![Poly::zero(3)];
        quotients.extend(w1_quotients(&a, &c, 5).unwrap());
        let table = convergents_of(&quotients);
        table.check_determinant().unwrap();
        for (k, (p, q)) in s.pairs.iter().enumerate() {
            assert_eq!(&table.u[k] * q, &table.v[k] * p, "index {k}");
        }
        for (k, (_, q)) in s.pairs.iter().enumerate() {
            if k % 2 == 1 {
                assert!(c.divides(q));
            }
        }
    }
}

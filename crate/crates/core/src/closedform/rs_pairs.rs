use serde::Serialize;

use crate::gfpoly::Poly;

use super::{beta_convergents_e1, ClosedFormError};

/// The three rational approximations R_{i,n}/S_{i,n} of the first quartic root
/// built from the n-th β-convergent, with the degree each one predicts for the
/// quotient that follows it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RsConvergents {
    pub n: usize,
    pub pairs: [(Poly, Poly); 3],
    pub next_degrees: [i64; 3],
}

pub fn section3_rs_convergents(a: &Poly, c: &Poly, n: usize) -> Result<RsConvergents, ClosedFormError> {
    if n == 0 {
        return Err(ClosedFormError::ZeroLength);
    }
    let seq = beta_convergents_e1(a, c, n)?;
    let (p, q) = &seq.pairs[n];
    let p2 = p * p;
    let q2 = q * q;
    let q4 = &q2 * &q2;
    let q6 = &q4 * &q2;
    let one = Poly::one(a.modulus());
    let div_c = |x: &Poly, what: &str| {
        x.div_exact(c).map_err(|_| ClosedFormError::NotDivisible {
            what: what.to_string(),
            dividend: x.to_string(),
            divisor: c.to_string(),
        })
    };
    let first = (p2.clone(), q2.clone());
    let (second, third) = if n % 2 == 1 {
        let q4c = div_c(&q4, "Q_n^4")?;
        let second = (div_c(&(&p2 * &q2), "P_n^2 Q_n^2")?, &q4c + &one);
        let third = (&p2 * &(&one - &q4c), -&div_c(&q6, "Q_n^6")?);
        (second, third)
    } else {
        let second = (&p2 * &q2, &q4 + &one);
        let third = (&p2 * &(&q4 + &(&one + &one)), q6);
        (second, third)
    };
    let (da, dc) = (a.deg(), c.deg());
    let next_degrees = if n % 2 == 1 {
        [2 * da - dc, 2 * da, 2 * da - dc]
    } else {
        [2 * da, 2 * da, 2 * da]
    };
    Ok(RsConvergents { n, pairs: [first, second, third], next_degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::{evaluate, expand_rational};
    use crate::gfpoly::gcd;

    fn poly(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn first_is_inverse_square() {
        let a = poly("T^2+T");
        let rs = section3_rs_convergents(&a, &poly("T"), 1).unwrap();
        let (r, s) = &rs.pairs[0];
        assert_eq!(r * &(&a * &a), *s);
    }

    #[test]
    fn second_pair_for_t_t() {
        let rs = section3_rs_convergents(&Poly::t(3), &Poly::t(3), 2).unwrap();
        let (r, s) = &rs.pairs[1];
        let quotients: Vec<Poly> = ["0", "T^2", "T", "2*T^2", "2*T", "2*T^2", "T^4"].iter().map(|x| poly(x)).collect();
        let (num, den) = evaluate(&quotients).unwrap();
        assert_eq!(r * &den, s * &num);
        assert!(gcd(r, s).unwrap().is_one());
        let cf = expand_rational(r, s).unwrap();
        assert_eq!(cf.quotients.len(), 7);
    }
}

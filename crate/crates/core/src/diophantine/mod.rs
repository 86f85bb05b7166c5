//! Approximation exponents from quotient degrees, Liouville and Voloch-type
//! checks, and the λ bounds for the first quartic family.

mod lambda;
mod measure;
mod voloch;

pub use lambda::{lambda1_squared, lambda_bounds_check, predicted_deg_v, CentralCheck, LambdaReport};
pub use measure::{
    default_n0, from_degrees, liouville_check, measure_estimate, measure_from_valuations, window_sups,
    LiouvilleReport, MeasureEstimate,
};
pub use voloch::{voloch_hypothesis_check, VolochCheck};

use num_rational::Ratio;
use thiserror::Error;

use crate::cfrac::CfError;
use crate::laurent::{EquationSpec, Family, SeriesError};

pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiophantineError {
    #[error("{have} quotients available, {need} needed")]
    TooFewQuotients { have: usize, need: usize },
    #[error("quotient a_{0} has nonpositive degree")]
    NonPositiveDegree(usize),
    #[error("valuation at index {0} is beyond the certified precision")]
    UnmeasuredValuation(usize),
    #[error("central quotient {i} at index {index} has degree {degree}, expected {predicted}")]
    CentralMismatch { i: u32, index: usize, degree: i64, predicted: i64 },
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// s > 3/(3 − √3), decided exactly: for s > 1 it is 9(s − 1)^2 > 3s^2.
fn above_voloch_threshold(s: Q) -> bool {
    let one = Q::from_integer(1);
    s > one && Q::from_integer(9) * (s - one) * (s - one) > Q::from_integer(3) * s * s
}

/// The approximation exponent the theorems give for `spec`, when one applies.
pub fn predicted_nu(spec: &EquationSpec) -> Option<Q> {
    let four = Q::from_integer(4);
    match spec.family() {
        Family::W1 => {
            if spec.c_divides_a() {
                Some(four)
            } else {
                Some(four - Ratio::new(spec.c()?.deg(), spec.a()?.deg()))
            }
        }
        Family::W2 => {
            if spec.c_divides_a() {
                return Some(four);
            }
            let (a, c) = (spec.a()?.deg(), spec.c()?.deg());
            if c == 0 {
                return None;
            }
            let s = Ratio::new(a, c);
            above_voloch_threshold(s).then(|| four - Ratio::new(3 * c, a))
        }
        Family::E1 | Family::E2 | Family::MR => Some(Q::from_integer(2)),
        Family::Raw => None,
    }
}

fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n.max(0);
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// l/10^7 ≤ √x < (l+1)/10^7, as floats for display.
pub fn sqrt_enclosure(x: Q) -> (f64, f64) {
    let scale: i128 = 10_000_000;
    let n = *x.numer() as i128 * scale * scale / *x.denom() as i128;
    let l = isqrt(n);
    (l as f64 / scale as f64, (l + 1) as f64 / scale as f64)
}

pub fn ratio_to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// "n" or "n/d".
pub fn ratio_text(x: Q) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) mod ratio_serde {
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    use super::Q;

    fn text(x: &Q) -> String {
        super::ratio_text(*x)
    }

    pub fn one<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&text(x))
    }

    pub fn opt<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&text(x)),
            None => s.serialize_none(),
        }
    }

    pub fn seq<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            out.serialize_element(&text(x))?;
        }
        out.end()
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::expand;
    use crate::closedform::{omega_build, w1_quotients, w1_special_convergents, w2_special_convergents, OmegaFamily};
    use crate::gfpoly::Poly;
    use crate::laurent::solve_root;

    fn spec(f: Family, a: &str, c: &str) -> EquationSpec {
        EquationSpec::parse(f, a, c).unwrap()
    }

    #[test]
    fn catalog_predictions() {
        assert_eq!(predicted_nu(&spec(Family::W1, "T^2+1", "T")), Some(Ratio::new(7, 2)));
        assert_eq!(predicted_nu(&spec(Family::W2, "T^5+1", "T")), Some(Ratio::new(17, 5)));
        assert_eq!(predicted_nu(&spec(Family::W2, "T^2+1", "T")), None);
        assert!(above_voloch_threshold(Ratio::new(5, 2)));
        assert!(!above_voloch_threshold(Ratio::new(23, 10)));
    }

    #[test]
    fn enclosure_brackets() {
        let (lo, hi) = sqrt_enclosure(Q::from_integer(3));
        assert!(lo < 1.7320509 && hi > 1.7320508 && hi - lo < 1e-6);
    }

    #[test]
    fn valuations_agree_with_degrees() {
        for s in [spec(Family::W1, "T^2+1", "T"), spec(Family::E1, "T", "T"), EquationSpec::mr(3)] {
            let x = solve_root(&s, 600).unwrap();
            let cf = expand(&x, 400).unwrap();
            let n0 = default_n0(&cf);
            let a = measure_estimate(&cf, n0).unwrap();
            let b = measure_from_valuations(&x, &cf, n0).unwrap();
            assert_eq!(a, b, "{}", s.describe());
        }
    }

    #[test]
    fn w1_voloch_constants() {
        let (a, c) = (Poly::parse("T^2+1", 3).unwrap(), Poly::t(3));
        let x = solve_root(&spec(Family::W1, "T^2+1", "T"), 1500).unwrap();
        let v = voloch_hypothesis_check(&w1_special_convergents(&a, &c, 3), &x).unwrap();
        assert_eq!(v.mu, Q::from_integer(3));
        assert_eq!(v.gamma, Ratio::new(7, 2));
        assert_eq!(v.log_rho, Q::from_integer(-2));
        assert_eq!(v.gamma_residual, Q::from_integer(0));
        assert!(v.hypothesis_met);
    }

    #[test]
    fn w2_voloch_constants() {
        let (a, c) = (Poly::parse("T^5+1", 3).unwrap(), Poly::t(3));
        let x = solve_root(&spec(Family::W2, "T^5+1", "T"), 2500).unwrap();
        let v = voloch_hypothesis_check(&w2_special_convergents(&a, &c, 3), &x).unwrap();
        assert_eq!(v.mu, Q::from_integer(3));
        assert_eq!(v.gamma, Ratio::new(17, 5));
        assert_eq!(v.log_rho, Ratio::new(-48, 5));
        assert!(v.hypothesis_met);
    }

    #[test]
    fn lambda_for_t_t() {
        let o = omega_build(OmegaFamily::E1, &Poly::t(3), &Poly::t(3), 5).unwrap();
        let r = lambda_bounds_check(&o.degrees(), 1, 1, 2).unwrap();
        assert_eq!(r.centrals[0].degree, 4);
        assert_eq!(r.centrals[1].degree, 14);
        for cc in &r.centrals {
            assert_eq!(Q::from_integer(cc.deg_v), cc.predicted_deg_v);
            assert!(cc.lambda1_holds);
        }
        assert!(r.lambda2_exceeds_lambda1);
    }

    #[test]
    fn liouville_w1() {
        let degs: Vec<i64> = w1_quotients(&Poly::t(3), &Poly::one(3), 10).unwrap().iter().map(Poly::deg).collect();
        let est = from_degrees(&degs, 5).unwrap();
        assert!(est.estimate_tail() <= Q::from_integer(4) + Ratio::new(1, 100));
    }
}

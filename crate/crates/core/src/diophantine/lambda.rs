use num_rational::Ratio;
use serde::Serialize;

use crate::closedform::{e1_central_degree, omega_length};

use super::{ratio_serde, DiophantineError, Q};

/// λ_1 = 2/√3, so λ_1^2 = 4/3.
pub fn lambda1_squared() -> Q {
    Ratio::new(4, 3)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralCheck {
    pub i: u32,
    /// 1-based position of the central quotient of Ω_{2i+1}.
    pub index: usize,
    pub degree: i64,
    pub predicted_degree: i64,
    /// deg V_{k_i − 1}, measured and from the closed formula.
    pub deg_v: i64,
    #[serde(serialize_with = "ratio_serde::one")]
    pub predicted_deg_v: Q,
    /// deg a_{k_i}^2 / deg V_{k_i − 1}: the square of the exponent constant attained here.
    #[serde(serialize_with = "ratio_serde::one")]
    pub lambda_squared: Q,
    /// |x − U/V| ≤ |V|^{−(2 + λ_1/√deg V)} at V = V_{k_i − 1}.
    pub lambda1_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaReport {
    pub centrals: Vec<CentralCheck>,
    /// Square of the least λ_2 with |x − U_k/V_k| ≥ |V_k|^{−(2 + λ_2/√deg V_k)} for
    /// every convergent in range.
    #[serde(serialize_with = "ratio_serde::one")]
    pub min_lambda2_squared: Q,
    pub min_lambda2: f64,
    /// Index k attaining it.
    pub attained_at: usize,
    pub lambda2_exceeds_lambda1: bool,
}

/// deg V_{k_i − 1} = X(a − c/4) + (1 − (−1)^i) c/4 with X = (3^{2i+1} − 2·3^i − 1)/2.
pub fn predicted_deg_v(a: i64, c: i64, i: u32) -> Q {
    let t = 3i64.pow(i);
    let x = (3 * t * t - 2 * t - 1) / 2;
    let base = Q::from_integer(x) * (Q::from_integer(a) - Ratio::new(c, 4));
    let odd = if i % 2 == 1 { Ratio::new(2 * c, 4) } else { Q::from_integer(0) };
    base + odd
}

/// Checks the λ bounds on quotient degrees deg a_1, deg a_2, ... of the first
/// quartic family's root, for central indices i = 1..=depth.
pub fn lambda_bounds_check(degrees: &[i64], a: i64, c: i64, depth: u32) -> Result<LambdaReport, DiophantineError> {
    let mut prefix = vec![0i64];
    for d in degrees {
        prefix.push(prefix.last().unwrap() + d);
    }
    let mut centrals = Vec::new();
    for i in 1..=depth {
        let index = ((omega_length(2 * i + 1) + 1) / 2) as usize;
        if index > degrees.len() {
            return Err(DiophantineError::TooFewQuotients { have: degrees.len(), need: index });
        }
        let degree = degrees[index - 1];
        let predicted_degree = e1_central_degree(a, c, i);
        if degree != predicted_degree {
            return Err(DiophantineError::CentralMismatch { i, index, degree, predicted: predicted_degree });
        }
        let deg_v = prefix[index - 1];
        let lambda_squared = Ratio::new(degree * degree, deg_v);
        centrals.push(CentralCheck {
            i,
            index,
            degree,
            predicted_degree,
            deg_v,
            predicted_deg_v: predicted_deg_v(a, c, i),
            lambda_squared,
            lambda1_holds: lambda_squared >= lambda1_squared(),
        });
    }
    let mut best = Q::from_integer(0);
    let mut attained_at = 0;
    for k in 1..degrees.len() {
        let r = Ratio::new(degrees[k] * degrees[k], prefix[k]);
        if r > best {
            best = r;
            attained_at = k;
        }
    }
    Ok(LambdaReport {
        centrals,
        min_lambda2_squared: best,
        min_lambda2: (*best.numer() as f64 / *best.denom() as f64).sqrt(),
        attained_at,
        lambda2_exceeds_lambda1: best > lambda1_squared(),
    })
}

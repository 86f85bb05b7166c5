use num_rational::Ratio;
use serde::Serialize;

use crate::cfrac::error_exponent;
use crate::closedform::SpecialConvergentSeq;
use crate::laurent::{Family, Laurent};

use super::{ratio_serde, sqrt_enclosure, DiophantineError, Q};

/// Fits of deg Q_n = μ deg Q_{n−1} + log λ and v_n = γ deg Q_n − log ρ, where v_n
/// is the valuation of the target minus P_n/Q_n.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolochCheck {
    pub q_degrees: Vec<i64>,
    pub valuations: Vec<i64>,
    #[serde(serialize_with = "ratio_serde::one")]
    pub mu: Q,
    #[serde(serialize_with = "ratio_serde::one")]
    pub log_lambda: Q,
    #[serde(serialize_with = "ratio_serde::one")]
    pub gamma: Q,
    #[serde(serialize_with = "ratio_serde::one")]
    pub log_rho: Q,
    /// Largest deviation of the data from the fitted lines.
    #[serde(serialize_with = "ratio_serde::one")]
    pub mu_residual: Q,
    #[serde(serialize_with = "ratio_serde::one")]
    pub gamma_residual: Q,
    /// γ > 1 + √μ, decided exactly.
    pub hypothesis_met: bool,
    /// Lower end of a rational enclosure of 1 + √μ.
    pub threshold_low: f64,
    pub threshold_high: f64,
}

/// Least-squares slope and intercept of y against x, in exact rationals.
fn fit(xs: &[i64], ys: &[i64]) -> (Q, Q, Q) {
    let n = xs.len() as i64;
    let sx: i64 = xs.iter().sum();
    let sy: i64 = ys.iter().sum();
    let sxx: i128 = xs.iter().map(|&x| x as i128 * x as i128).sum();
    let sxy: i128 = xs.iter().zip(ys).map(|(&x, &y)| x as i128 * y as i128).sum();
    let num = n as i128 * sxy - sx as i128 * sy as i128;
    let den = n as i128 * sxx - sx as i128 * sx as i128;
    let g = gcd128(num, den);
    let slope = Ratio::new((num / g) as i64, (den / g) as i64);
    let intercept = (Q::from_integer(sy) - slope * Q::from_integer(sx)) / Q::from_integer(n);
    let residual = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = Q::from_integer(y) - slope * Q::from_integer(x) - intercept;
            if r < Q::from_integer(0) {
                -r
            } else {
                r
            }
        })
        .max()
        .unwrap_or_default();
    (slope, intercept, residual)
}

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs().max(1)
}

/// Measures the Voloch-criterion constants. For the second family the pairs
/// approximate the reciprocal of the root, which is inverted here.
pub fn voloch_hypothesis_check(seq: &SpecialConvergentSeq, root: &Laurent) -> Result<VolochCheck, DiophantineError> {
    if seq.len() < 4 {
        return Err(DiophantineError::TooFewQuotients { have: seq.len(), need: 4 });
    }
    let target = if seq.family == Family::W2 { root.invert()? } else { root.clone() };
    let q_degrees: Vec<i64> = seq.pairs.iter().map(|(_, q)| q.deg()).collect();
    let mut valuations = Vec::with_capacity(seq.len());
    for (n, (p, q)) in seq.pairs.iter().enumerate() {
        let e = error_exponent(&target, p, q)?.ok_or(DiophantineError::UnmeasuredValuation(n))?;
        valuations.push(-e);
    }
    let (mu, log_lambda, mu_residual) = fit(&q_degrees[..q_degrees.len() - 1], &q_degrees[1..]);
    let (gamma, neg_log_rho, gamma_residual) = fit(&q_degrees, &valuations);
    let one = Q::from_integer(1);
    let g1 = gamma - one;
    let hypothesis_met = g1 > Q::from_integer(0) && g1 * g1 > mu;
    let (lo, hi) = sqrt_enclosure(mu);
    Ok(VolochCheck {
        q_degrees,
        valuations,
        mu,
        log_lambda,
        gamma,
        log_rho: -neg_log_rho,
        mu_residual,
        gamma_residual,
        hypothesis_met,
        threshold_low: 1.0 + lo,
        threshold_high: 1.0 + hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let (s, i, r) = fit(&[1, 2, 3, 4], &[5, 8, 11, 14]);
        assert_eq!((s, i, r), (Q::from_integer(3), Q::from_integer(2), Q::from_integer(0)));
    }
}

use num_rational::Ratio;
use serde::Serialize;

use crate::cfrac::{convergents, error_exponent, ContinuedFraction};
use crate::laurent::Laurent;

use super::{ratio_serde, DiophantineError, Q};

/// Ratios r_n = deg a_{n+1} / (deg a_1 + ... + deg a_n) and their suprema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureEstimate {
    #[serde(serialize_with = "ratio_serde::seq")]
    pub ratios: Vec<Q>,
    #[serde(serialize_with = "ratio_serde::one")]
    pub global_sup: Q,
    #[serde(serialize_with = "ratio_serde::one")]
    pub tail_sup: Q,
    /// 1-based index n from which the tail supremum is taken.
    pub n0: usize,
    #[serde(serialize_with = "ratio_serde::opt")]
    pub predicted: Option<Q>,
}

impl MeasureEstimate {
    pub fn estimate_global(&self) -> Q {
        Q::from_integer(2) + self.global_sup
    }

    pub fn estimate_tail(&self) -> Q {
        Q::from_integer(2) + self.tail_sup
    }

    pub fn with_predicted(mut self, predicted: Option<Q>) -> Self {
        self.predicted = predicted;
        self
    }

    /// Whether the tail estimate lies within `tol` of the prediction.
    pub fn tail_within(&self, tol: Q) -> Option<bool> {
        self.predicted.map(|p| {
            let d = self.estimate_tail() - p;
            d <= tol && -d <= tol
        })
    }
}

/// Default tail start: half of the available ratio indices.
pub fn default_n0(cf: &ContinuedFraction) -> usize {
    (cf.len_tail().saturating_sub(1) / 2).max(1)
}

pub fn measure_estimate(cf: &ContinuedFraction, n0: usize) -> Result<MeasureEstimate, DiophantineError> {
    from_degrees(&cf.degrees(), n0)
}

/// The same estimate from a list of quotient degrees deg a_1, deg a_2, ...
pub fn from_degrees(degrees: &[i64], n0: usize) -> Result<MeasureEstimate, DiophantineError> {
    let n0 = n0.max(1);
    if degrees.len() < n0 + 2 {
        return Err(DiophantineError::TooFewQuotients { have: degrees.len(), need: n0 + 2 });
    }
    if let Some(i) = degrees.iter().position(|&d| d <= 0) {
        return Err(DiophantineError::NonPositiveDegree(i + 1));
    }
    let mut sum = 0i64;
    let ratios: Vec<Q> = degrees
        .windows(2)
        .map(|w| {
            sum += w[0];
            Ratio::new(w[1], sum)
        })
        .collect();
    Ok(summarise(ratios, n0))
}

fn summarise(ratios: Vec<Q>, n0: usize) -> MeasureEstimate {
    let global_sup = ratios.iter().copied().max().unwrap_or_default();
    let tail_sup = ratios[n0 - 1..].iter().copied().max().unwrap_or_default();
    MeasureEstimate { ratios, global_sup, tail_sup, n0, predicted: None }
}

/// The estimate rebuilt from measured valuations of x − U_k/V_k, k = 1, 2, ...
///
/// Each valuation is deg V_k + deg V_{k+1}, so the ratios must agree exactly
/// with those from the quotient degrees.
pub fn measure_from_valuations(
    x: &Laurent,
    cf: &ContinuedFraction,
    n0: usize,
) -> Result<MeasureEstimate, DiophantineError> {
    let n0 = n0.max(1);
    let table = convergents(cf);
    let mut ratios = Vec::new();
    for k in 1..table.len().saturating_sub(1) {
        let e = error_exponent(x, &table.u[k], &table.v[k])?
            .ok_or(DiophantineError::UnmeasuredValuation(k))?;
        let dv = table.v[k].deg();
        ratios.push(Ratio::new(-e - 2 * dv, dv));
    }
    if ratios.len() < n0 + 1 {
        return Err(DiophantineError::TooFewQuotients { have: ratios.len() + 1, need: n0 + 2 });
    }
    Ok(summarise(ratios, n0))
}

/// Tail suprema over consecutive windows of `width` ratios, starting at n = start.
pub fn window_sups(est: &MeasureEstimate, start: usize, width: usize) -> Vec<Q> {
    est.ratios[start.max(1) - 1..]
        .chunks(width.max(1))
        .map(|w| w.iter().copied().max().unwrap_or_default())
        .collect()
}

/// Liouville-type check against an algebraic degree bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiouvilleReport {
    pub degree_bound: i64,
    /// max_k (deg V_k + deg V_{k+1} − n deg V_k): |x − U_k/V_k| ≥ |T|^{−κ} |V_k|^{−n} for all k.
    pub kappa: i64,
    #[serde(serialize_with = "ratio_serde::one")]
    pub estimate_tail: Q,
    #[serde(serialize_with = "ratio_serde::one")]
    pub tolerance: Q,
    pub holds: bool,
}

pub fn liouville_check(
    cf: &ContinuedFraction,
    degree_bound: i64,
    n0: usize,
    tolerance: Q,
) -> Result<LiouvilleReport, DiophantineError> {
    let est = measure_estimate(cf, n0)?;
    let degrees = cf.degrees();
    let mut dv = 0i64;
    let mut kappa = i64::MIN;
    for w in degrees.windows(2) {
        dv += w[0];
        kappa = kappa.max(2 * dv + w[1] - degree_bound * dv);
    }
    let estimate_tail = est.estimate_tail();
    let holds = estimate_tail <= Q::from_integer(degree_bound) + tolerance;
    Ok(LiouvilleReport { degree_bound, kappa, estimate_tail, tolerance, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_degrees() {
        let degs: Vec<i64> = (0..7).map(|k| 3i64.pow(k)).collect();
        let est = from_degrees(&degs, 5).unwrap();
        assert_eq!(est.ratios[4], Ratio::new(243, 121));
        assert_eq!(est.estimate_tail(), Q::from_integer(2) + Ratio::new(243, 121));
        assert!(est.tail_sup <= est.global_sup);
    }

    #[test]
    fn bounded_degrees() {
        let est = from_degrees(&[1; 100], 50).unwrap();
        assert!(est.tail_sup <= Ratio::new(1, 50));
    }

    #[test]
    fn too_few() {
        assert_eq!(
            from_degrees(&[1, 2], 1),
            Err(DiophantineError::TooFewQuotients { have: 2, need: 3 })
        );
    }
}

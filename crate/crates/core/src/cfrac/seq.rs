use serde::{Deserialize, Serialize};

use crate::gfpoly::Poly;

use super::CfError;

/// Which 1-based positions of a sequence are divided by B in an alternating scaling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalePositions {
    /// B^{-1}Ω = (a_1/B, B a_2, a_3/B, ...).
    DivideOdd,
    /// BΩ = (B a_1, a_2/B, B a_3, ...).
    DivideEven,
}

pub fn reverse(seq: &[Poly]) -> Vec<Poly> {
    seq.iter().rev().cloned().collect()
}

pub fn cube_each(seq: &[Poly]) -> Vec<Poly> {
    seq.iter().map(Poly::frobenius_cube).collect()
}

/// Alternately multiplies and divides by `b`; every division must be exact.
pub fn alt_scale(seq: &[Poly], b: &Poly, mode: ScalePositions) -> Result<Vec<Poly>, CfError> {
    let divide_first = mode == ScalePositions::DivideOdd;
    seq.iter()
        .enumerate()
        .map(|(i, a)| {
            if (i % 2 == 0) == divide_first {
                a.div_exact(b).map_err(|_| CfError::Divisibility {
                    index: i + 1,
                    entry: a.to_string(),
                    divisor: b.to_string(),
                })
            } else {
                Ok(a * b)
            }
        })
        .collect()
}

/// B^{-1}Ω.
pub fn scale_down(seq: &[Poly], b: &Poly) -> Result<Vec<Poly>, CfError> {
    alt_scale(seq, b, ScalePositions::DivideOdd)
}

/// BΩ.
pub fn scale_up(seq: &[Poly], b: &Poly) -> Result<Vec<Poly>, CfError> {
    alt_scale(seq, b, ScalePositions::DivideEven)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(items: &[&str]) -> Vec<Poly> {
        items.iter().map(|s| Poly::parse(s, 3).unwrap()).collect()
    }

    #[test]
    fn half_t_scaling() {
        let omega = seq(&["T^2", "T", "2*T^2", "2*T"]);
        let two_t = Poly::parse("2*T", 3).unwrap();
        assert_eq!(scale_down(&omega, &two_t).unwrap(), seq(&["2*T", "2*T^2", "T", "T^2"]));
        assert_eq!(reverse(&omega), scale_down(&omega, &two_t).unwrap());
    }

    #[test]
    fn reports_failed_division() {
        let err = scale_down(&seq(&["T+1", "T"]), &Poly::t(3)).unwrap_err();
        assert_eq!(
            err,
            CfError::Divisibility { index: 1, entry: "T+1".into(), divisor: "T".into() }
        );
    }

    #[test]
    fn scalings_invert_each_other() {
        let s = seq(&["T^2", "T^3", "2*T", "T^4+T"]);
        let t = Poly::t(3);
        assert_eq!(scale_up(&scale_down(&s, &t).unwrap(), &t).unwrap(), s);
    }
}

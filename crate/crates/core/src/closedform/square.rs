use serde::Serialize;

use crate::cfrac::{expand, from_quotients, reconstruct};
use crate::gfpoly::Poly;

use super::{omega_build_with_limit, square_cf_quotients, w1_quotients, ClosedFormError, OmegaFamily};

const OMEGA_DEPTH_CAP: u32 = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientMismatch {
    pub index: usize,
    pub expected: String,
    pub found: String,
}

/// Comparison of a squared series' expansion against a predicted quotient list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareSide {
    pub requested: usize,
    pub compared: usize,
    pub matched: usize,
    pub first_mismatch: Option<QuotientMismatch>,
}

impl SquareSide {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none() && self.matched >= self.requested
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareRelationReport {
    pub a: Poly,
    pub c: Poly,
    pub terms: usize,
    /// (first-family root)^2 against [0, Ω_∞].
    pub root_squared: SquareSide,
    /// [0, Ω_∞]^2 against [0, A^4 − C, ...].
    pub omega_squared: SquareSide,
}

impl SquareRelationReport {
    pub fn holds(&self) -> bool {
        self.root_squared.holds() && self.omega_squared.holds()
    }
}

fn compare(found: &[Poly], expected: &[Poly], requested: usize) -> SquareSide {
    let compared = found.len().min(expected.len()).min(requested);
    let mut matched = 0;
    let mut first_mismatch = None;
    for i in 0..compared {
        if found[i] != expected[i] {
            first_mismatch = Some(QuotientMismatch {
                index: i + 1,
                expected: expected[i].to_string(),
                found: found[i].to_string(),
            });
            break;
        }
        matched += 1;
    }
    SquareSide { requested, compared, matched, first_mismatch }
}

fn total_degree(q: &[Poly]) -> i64 {
    q.iter().map(Poly::deg).sum()
}

/// Checks both squaring identities on `terms` quotients each.
pub fn square_relation_check(a: &Poly, c: &Poly, terms: usize) -> Result<SquareRelationReport, ClosedFormError> {
    let p = a.modulus();
    let mut depth = 1;
    let mut omega = omega_build_with_limit(OmegaFamily::E1, a, c, depth, OMEGA_DEPTH_CAP)?;
    let predicted = square_cf_quotients(a, c, terms.max(1) as u32)?;
    let need_first = total_degree(&omega.entries[..omega.len().min(terms)]);
    let need_second = total_degree(&predicted);
    while depth < OMEGA_DEPTH_CAP
        && (omega.len() < terms || total_degree(&omega.entries) < need_second.max(need_first))
    {
        depth += 1;
        omega = omega_build_with_limit(OmegaFamily::E1, a, c, depth, OMEGA_DEPTH_CAP)?;
    }
    let expected_first = &omega.entries[..omega.len().min(terms)];
    let precision = 2 * total_degree(expected_first) as usize + 2 * a.deg() as usize + 8;

    let mut k = 1u32;
    let mut b = w1_quotients(a, c, k)?;
    while 2 * total_degree(&b) < precision as i64 + 2 * a.deg() {
        k += 1;
        b = w1_quotients(a, c, k)?;
    }
    let beta = reconstruct(&from_quotients(Poly::zero(p), &b)?, precision + 2 * a.deg() as usize)?;
    let square = beta.mul(&beta)?;
    let found = expand(&square, terms)?;
    let root_squared = compare(found.tail(), expected_first, terms);

    let alpha = reconstruct(&from_quotients(Poly::zero(p), &omega.entries)?, 2 * total_degree(&omega.entries) as usize)?;
    let square = alpha.mul(&alpha)?;
    let found = expand(&square, terms)?;
    let omega_squared = compare(found.tail(), &predicted, terms);

    Ok(SquareRelationReport { a: a.clone(), c: c.clone(), terms, root_squared, omega_squared })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_over_one() {
        let r = square_relation_check(&Poly::t(3), &Poly::one(3), 6).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn t_over_t() {
        let r = square_relation_check(&Poly::t(3), &Poly::t(3), 5).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}

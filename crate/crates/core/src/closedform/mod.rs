//! Generators for partial quotients, special convergents and Ω-sequences given
//! by closed formulas, for cross-checking against the expansion engine.

mod omega;
mod quotients;
mod rs_pairs;
mod special;
mod square;

pub use omega::{
    e1_central_degree, omega_build, omega_build_with_limit, omega_length, OmegaFamily, OmegaSeq,
    DEFAULT_DEPTH_LIMIT, MR_DEPTH_LIMIT,
};
pub use quotients::{
    cube_power, divide_power, power_base3, square_cf_from_w1, square_cf_quotients, w1_quotients, w2_quotients,
};
pub use rs_pairs::{section3_rs_convergents, RsConvergents};
pub use special::{
    beta_convergents_e1, w1_error_valuation, w1_q_degree, w2_error_valuation, w2_q_degree, w1_special_convergents,
    w2_special_convergents, SpecialConvergentSeq,
};
pub use square::{square_relation_check, QuotientMismatch, SquareRelationReport, SquareSide};

use thiserror::Error;

use crate::cfrac::{evaluate, scale_down, CfError};
use crate::gfpoly::{Poly, PolyError};
use crate::laurent::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("closed forms are stated over F_3")]
    NeedsCharacteristic3,
    #[error("at least one term is required")]
    ZeroLength,
    #[error("A must be nonconstant")]
    ConstantA,
    #[error("C must be nonzero")]
    ZeroC,
    #[error("C = {c} does not divide A = {a}")]
    CDoesNotDivideA { a: String, c: String },
    #[error("degree order between A and C violated")]
    DegreeOrder,
    #[error("{divisor} does not divide {dividend} ({what})")]
    NotDivisible { what: String, dividend: String, divisor: String },
    #[error("recurrence gives {recurrence} but closed form gives {closed_form} at index {index}")]
    Inconsistent { index: usize, recurrence: String, closed_form: String },
    #[error("Ω_{depth} is ill formed: {divisor} does not divide entry {index} ({entry})")]
    IllFormed { depth: u32, index: usize, entry: String, divisor: String },
    #[error("depth {depth} exceeds the limit {limit}")]
    DepthLimit { depth: u32, limit: u32 },
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// D^{-1}[a_1, ..., a_m] = [a_1/D, D a_2, a_3/D, ...] as rational functions.
pub fn admitted_identity_check(seq: &[Poly], d: &Poly) -> Result<bool, ClosedFormError> {
    let scaled = scale_down(seq, d)?;
    let (n, den) = evaluate(seq)?;
    let (n2, d2) = evaluate(&scaled)?;
    Ok(&n * &d2 == &(d * &den) * &n2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::expand;
    use crate::laurent::{solve_root, EquationSpec, Family};

    fn engine_prefix(spec: &EquationSpec, terms: usize, degree: i64) -> Vec<Poly> {
        let x = solve_root(spec, 2 * degree as usize + 32).unwrap();
        expand(&x, terms).unwrap().tail().to_vec()
    }

    #[test]
    fn omega_matches_engine() {
        let cases = [
            (Family::E1, "T", "T", 5),
            (Family::E1, "T^2", "T", 4),
            (Family::E1, "T^2+T", "T+1", 4),
            (Family::E1, "T", "1", 4),
            (Family::E2, "T^2", "T", 4),
            (Family::E2, "T^3+T", "T", 4),
        ];
        for (fam, a, c, depth) in cases {
            let spec = EquationSpec::parse(fam, a, c).unwrap();
            let of: OmegaFamily = fam.to_string().parse().unwrap();
            let o = omega_build(of, spec.a().unwrap(), spec.c().unwrap(), depth).unwrap();
            let total: i64 = o.degrees().iter().sum();
            let found = engine_prefix(&spec, o.len(), total);
            assert_eq!(found, o.entries, "{fam} {a} {c}");
        }
        let o = omega_build(OmegaFamily::MR, &Poly::t(3), &Poly::one(3), 6).unwrap();
        let total: i64 = o.degrees().iter().sum();
        assert_eq!(engine_prefix(&EquationSpec::mr(3), o.len(), total), o.entries);
    }

    #[test]
    fn admitted_identity_on_builds() {
        for (a, c) in [("T", "T"), ("T^2", "T"), ("T^3+T", "T"), ("T^2+T", "T+1")] {
            let a = Poly::parse(a, 3).unwrap();
            let c = Poly::parse(c, 3).unwrap();
            let d = -&c;
            for depth in 1..=4 {
                let o = omega_build(OmegaFamily::E1, &a, &c, depth).unwrap();
                assert!(admitted_identity_check(&o.entries, &d).unwrap());
            }
        }
    }
}

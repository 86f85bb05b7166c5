use serde::Serialize;

use crate::gfpoly::Poly;

use super::convergents::evaluate;
use super::CfError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum OpenQuestionOutcome {
    HypothesisNotSatisfied,
    ConclusionHolds,
    Counterexample { witness: usize, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenQuestionReport {
    pub n: usize,
    pub d: Poly,
    pub hypothesis: bool,
    #[serde(flatten)]
    pub outcome: OpenQuestionOutcome,
}

impl OpenQuestionReport {
    pub fn is_counterexample(&self) -> bool {
        matches!(self.outcome, OpenQuestionOutcome::Counterexample { .. })
    }
}

/// Tests D | a_1 and [a_n, ..., a_1] = D^{-1}[a_1, ..., a_n] and, when both hold,
/// whether n is even with a_{n-k} = D^{(-1)^{k+1}} a_{k+1} for every k.
pub fn open_question_check(seq: &[Poly], d: &Poly) -> Result<OpenQuestionReport, CfError> {
    if d.degree().map_or(true, |x| x == 0) {
        return Err(CfError::ConstantScale);
    }
    let first = seq.first().ok_or(CfError::Empty)?;
    let n = seq.len();
    if !d.divides(first) {
        return Ok(OpenQuestionReport {
            n,
            d: d.clone(),
            hypothesis: false,
            outcome: OpenQuestionOutcome::HypothesisNotSatisfied,
        });
    }
    let reversed: Vec<Poly> = seq.iter().rev().cloned().collect();
    let (rn, rd) = evaluate(&reversed)?;
    let (fnum, fden) = evaluate(seq)?;
    let hypothesis = &(&rn * d) * &fden == &fnum * &rd;
    let outcome = if !hypothesis {
        OpenQuestionOutcome::HypothesisNotSatisfied
    } else if n % 2 == 1 {
        OpenQuestionOutcome::Counterexample { witness: n, detail: format!("hypothesis holds with odd n = {n}") }
    } else {
        let mut outcome = OpenQuestionOutcome::ConclusionHolds;
        for k in 0..n {
            let lhs = &seq[n - 1 - k];
            let rhs = &seq[k];
            let ok = if k % 2 == 0 { &(lhs * d) == rhs } else { lhs == &(rhs * d) };
            if !ok {
                outcome = OpenQuestionOutcome::Counterexample {
                    witness: k,
                    detail: format!("a_{} = {} but a_{} = {}", n - k, lhs, k + 1, rhs),
                };
                break;
            }
        }
        outcome
    };
    Ok(OpenQuestionReport { n, d: d.clone(), hypothesis, outcome })
}

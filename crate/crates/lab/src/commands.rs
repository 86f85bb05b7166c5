use std::time::Instant;

use fpcf::cfrac::{convergents, open_question_check, OpenQuestionOutcome};
use fpcf::closedform::{
    admitted_identity_check, omega_build_with_limit, section3_rs_convergents, square_relation_check, w1_q_degree,
    w1_quotients, w1_special_convergents, w2_q_degree, w2_quotients, w2_special_convergents, ClosedFormError,
    OmegaFamily, DEFAULT_DEPTH_LIMIT, MR_DEPTH_LIMIT,
};
use fpcf::diophantine::{from_degrees, predicted_nu, ratio_text, ratio_to_f64};
use fpcf::laurent::{EquationSpec, Family};
use fpcf::Poly;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{engine_expand, omega_family, parse_poly, spec_from_args, SpecView};
use crate::output::{CsvTable, Outcome};
use crate::{Command, JobArgs, LabError, Source};

const DEFAULT_TERMS: usize = 20;

pub fn dispatch(command: &Command, args: &JobArgs) -> Result<Outcome, LabError> {
    let start = Instant::now();
    let mut outcome = match command {
        Command::Expand(_) => cmd_expand(args),
        Command::ClosedForm(_) => cmd_closed_form(args),
        Command::Omega(_) => cmd_omega(args),
        Command::Verify(_) => cmd_verify(args),
        Command::Measure(_) => cmd_measure(args),
        Command::Openq(_) => cmd_openq(args),
        Command::Square(_) => cmd_square(args),
    }?;
    outcome.wall_time = start.elapsed();
    Ok(outcome)
}

fn texts(v: &[Poly]) -> Vec<String> {
    v.iter().map(Poly::to_string).collect()
}

fn sequence_csv(seq: &[Poly], first_index: usize) -> CsvTable {
    let mut t = CsvTable::new(&["index", "quotient", "degree"]);
    for (i, q) in seq.iter().enumerate() {
        let deg = q.degree().map_or("-inf".to_string(), |d| d.to_string());
        t.push(vec![(i + first_index).to_string(), q.to_string(), deg]);
    }
    t
}

fn depth_cap(args: &JobArgs, family: OmegaFamily) -> u32 {
    args.max_depth.unwrap_or(match family {
        OmegaFamily::MR => MR_DEPTH_LIMIT,
        _ => DEFAULT_DEPTH_LIMIT,
    })
}

pub fn cmd_expand(args: &JobArgs) -> Result<Outcome, LabError> {
    let spec = spec_from_args(args)?;
    let terms = args.terms.unwrap_or(DEFAULT_TERMS);
    let e = engine_expand(&spec, terms, args.precision)?;
    convergents(&e.cf).check_determinant().map_err(|err| LabError::Internal(err.to_string()))?;
    let result = json!({
        "terms": terms,
        "quotients": texts(&e.cf.quotients),
        "degrees": e.cf.degrees(),
        "complete": e.cf.complete,
        "precision_used": e.precision_used,
        "attempts": e.attempts,
    });
    let mut o = Outcome::new(Some(SpecView::of(&spec)), result);
    o.csv = Some(sequence_csv(&e.cf.quotients, 0));
    Ok(o)
}

fn require_c_divides_a(spec: &EquationSpec) -> Result<(&Poly, &Poly), LabError> {
    let (a, c) = (spec.a().expect("parametrised"), spec.c().expect("parametrised"));
    if !spec.c_divides_a() {
        return Err(LabError::Invalid(format!("{} needs C | A", spec.describe())));
    }
    Ok((a, c))
}

fn closed_form_quotients(spec: &EquationSpec, n: u32) -> Result<Vec<Poly>, LabError> {
    let (a, c) = require_c_divides_a(spec)?;
    Ok(match spec.family() {
        Family::W1 => w1_quotients(a, c, n)?,
        Family::W2 => w2_quotients(a, c, n)?,
        f => return Err(LabError::Invalid(format!("no closed-form quotients for {f}"))),
    })
}

#[derive(Serialize)]
struct PairView {
    n: usize,
    p: String,
    q: String,
    deg_q: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted_deg_q: Option<i64>,
}

pub fn cmd_closed_form(args: &JobArgs) -> Result<Outcome, LabError> {
    let spec = spec_from_args(args)?;
    let view = Some(SpecView::of(&spec));
    let family = spec.family();
    match family {
        Family::W1 | Family::W2 if spec.c_divides_a() => {
            let n = args.terms.unwrap_or(6) as u32;
            let q = closed_form_quotients(&spec, n)?;
            let degrees: Vec<i64> = q.iter().map(Poly::deg).collect();
            let mut o = Outcome::new(view, json!({ "kind": "quotients", "quotients": texts(&q), "degrees": degrees }));
            o.csv = Some(sequence_csv(&q, 1));
            Ok(o)
        }
        Family::W1 | Family::W2 => {
            let (a, c) = (spec.a().unwrap(), spec.c().unwrap());
            let n = args.terms.unwrap_or(4);
            let seq = if family == Family::W1 {
                w1_special_convergents(a, c, n)
            } else {
                w2_special_convergents(a, c, n)
            };
            let (da, dc) = (a.deg(), c.deg());
            let pairs: Vec<PairView> = seq
                .pairs
                .iter()
                .enumerate()
                .map(|(k, (p, q))| PairView {
                    n: k,
                    p: p.to_string(),
                    q: q.to_string(),
                    deg_q: q.deg(),
                    predicted_deg_q: Some(if family == Family::W1 {
                        w1_q_degree(da, k as u32)
                    } else {
                        w2_q_degree(da, dc, k as u32)
                    }),
                })
                .collect();
            let mut t = CsvTable::new(&["n", "P", "Q", "deg_Q"]);
            for p in &pairs {
                t.push(vec![p.n.to_string(), p.p.clone(), p.q.clone(), p.deg_q.to_string()]);
            }
            let mut o = Outcome::new(
                view,
                json!({ "kind": "special_convergents", "coprime_failure": seq.first_non_coprime(), "pairs": pairs }),
            );
            o.csv = Some(t);
            Ok(o)
        }
        Family::E1 => {
            let (a, c) = require_c_divides_a(&spec)?;
            let n = args.terms.unwrap_or(3);
            let mut rows = Vec::new();
            let mut t = CsvTable::new(&["n", "i", "R", "S", "next_degree"]);
            for k in 1..=n {
                let rs = section3_rs_convergents(a, c, k)?;
                for (i, ((r, s), d)) in rs.pairs.iter().zip(rs.next_degrees).enumerate() {
                    rows.push(json!({ "n": k, "i": i + 1, "R": r.to_string(), "S": s.to_string(), "next_degree": d }));
                    t.push(vec![k.to_string(), (i + 1).to_string(), r.to_string(), s.to_string(), d.to_string()]);
                }
            }
            let mut o = Outcome::new(view, json!({ "kind": "rs_convergents", "rows": rows }));
            o.csv = Some(t);
            Ok(o)
        }
        f => Err(LabError::Invalid(format!("no closed forms for {f}"))),
    }
}

fn omega_from(args: &JobArgs, family_text: &str, default_depth: u32) -> Result<(OmegaFamily, SpecView, Result<fpcf::closedform::OmegaSeq, ClosedFormError>), LabError> {
    let family: OmegaFamily = family_text.parse()?;
    let mut job = args.clone();
    job.family = Some(family.to_string());
    job.raw = None;
    let spec = spec_from_args(&job)?;
    let one = Poly::one(3);
    let depth = args.depth.unwrap_or(default_depth);
    let built = omega_build_with_limit(
        family,
        spec.a().unwrap_or(&one),
        spec.c().unwrap_or(&one),
        depth,
        depth_cap(args, family),
    );
    Ok((family, SpecView::of(&spec), built))
}

pub fn cmd_omega(args: &JobArgs) -> Result<Outcome, LabError> {
    let family = args.family.as_deref().unwrap_or("E1");
    let (_, view, built) = omega_from(args, family, 2)?;
    match built {
        Ok(o) => {
            let mut out = Outcome::new(
                Some(view),
                json!({ "depth": o.depth, "length": o.len(), "entries": texts(&o.entries), "degrees": o.degrees() }),
            );
            out.csv = Some(sequence_csv(&o.entries, 1));
            Ok(out)
        }
        Err(e @ ClosedFormError::IllFormed { .. }) => {
            let mut out = Outcome::new(Some(view), json!({ "counterexample_candidate": e.to_string() }));
            out.mismatch = true;
            Ok(out)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub between: String,
    pub expected: String,
    pub found: String,
}

/// Agreement between the engine expansion and the generators.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub generator: String,
    pub generator_length: usize,
    pub matched_prefix_length: usize,
    pub first_mismatch: Option<Mismatch>,
    pub precision_used: usize,
    pub fixture_compared: bool,
}

fn first_difference(left: &[Poly], right: &[Poly]) -> Option<(usize, String, String)> {
    let n = left.len().max(right.len());
    (0..n).find_map(|i| {
        let l = left.get(i).map_or("<missing>".to_string(), Poly::to_string);
        let r = right.get(i).map_or("<missing>".to_string(), Poly::to_string);
        (l != r).then(|| (i + 1, l, r))
    })
}

pub fn read_fixture(path: &std::path::Path, p: u8) -> Result<Vec<Poly>, LabError> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_poly(l, p))
        .collect()
}

pub fn cmd_verify(args: &JobArgs) -> Result<Outcome, LabError> {
    let spec = spec_from_args(args)?;
    let family = spec.family();
    let (generator, expected) = match omega_family(family) {
        Some(of) => {
            let (_, _, built) = omega_from(args, &of.to_string(), 5)?;
            match built {
                Ok(o) => (format!("omega depth {}", o.depth), o.entries),
                Err(e @ ClosedFormError::IllFormed { .. }) => {
                    let mut out = Outcome::new(Some(SpecView::of(&spec)), json!({ "counterexample_candidate": e.to_string() }));
                    out.mismatch = true;
                    return Ok(out);
                }
                Err(e) => return Err(e.into()),
            }
        }
        None if matches!(family, Family::W1 | Family::W2) => {
            let n = args.terms.unwrap_or(6);
            ("closed-form quotients".to_string(), closed_form_quotients(&spec, n as u32)?)
        }
        None => return Err(LabError::Invalid(format!("no generator for {family}"))),
    };
    let e = engine_expand(&spec, expected.len(), args.precision)?;
    let engine = e.cf.tail().to_vec();
    let mut sources: Vec<(&str, Vec<Poly>)> = vec![("engine", engine)];
    if let Some(path) = &args.fixture {
        sources.push(("fixture", read_fixture(path, spec.modulus())?));
    }
    let mut first_mismatch: Option<Mismatch> = None;
    let mut matched = expected.len();
    for (name, found) in &sources {
        if let Some((index, exp, got)) = first_difference(&expected, found) {
            matched = matched.min(index - 1);
            if first_mismatch.as_ref().map_or(true, |m| index < m.index) {
                first_mismatch = Some(Mismatch {
                    index,
                    between: format!("generator vs {name}"),
                    expected: exp,
                    found: got,
                });
            }
        }
    }
    let report = VerifyReport {
        generator,
        generator_length: expected.len(),
        matched_prefix_length: matched,
        first_mismatch,
        precision_used: e.precision_used,
        fixture_compared: args.fixture.is_some(),
    };
    let mismatch = report.first_mismatch.is_some();
    let mut out = Outcome::new(Some(SpecView::of(&spec)), serde_json::to_value(&report).expect("json"));
    out.mismatch = mismatch;
    Ok(out)
}

pub fn cmd_measure(args: &JobArgs) -> Result<Outcome, LabError> {
    let spec = spec_from_args(args)?;
    let terms = args.terms.unwrap_or(16);
    let closed_ok = matches!(spec.family(), Family::W1 | Family::W2) && spec.c_divides_a();
    let use_closed = match args.source {
        Source::Auto => closed_ok,
        Source::ClosedForm if !closed_ok => {
            return Err(LabError::Invalid("closed-form source needs W1/W2 with C | A".into()))
        }
        Source::ClosedForm => true,
        Source::Engine => false,
    };
    let (degrees, source, precision_used) = if use_closed {
        let q = closed_form_quotients(&spec, terms as u32)?;
        (q.iter().map(Poly::deg).collect::<Vec<_>>(), "closed-form", None)
    } else {
        let e = engine_expand(&spec, terms, args.precision)?;
        (e.cf.degrees(), "engine", Some(e.precision_used))
    };
    let n0 = args.n0.unwrap_or_else(|| (degrees.len().saturating_sub(1) / 2).max(1));
    let est = from_degrees(&degrees, n0)?.with_predicted(predicted_nu(&spec));
    let result = json!({
        "family": spec.family().to_string(),
        "A": spec.a().map(Poly::to_string),
        "C": spec.c().map(Poly::to_string),
        "predicted_nu": est.predicted.map(ratio_text),
        "estimate_global": ratio_text(est.estimate_global()),
        "estimate_tail": ratio_text(est.estimate_tail()),
        "estimate_tail_value": ratio_to_f64(est.estimate_tail()),
        "n0": n0,
        "depth": degrees.len(),
        "ratios": est.ratios.iter().map(|r| ratio_text(*r)).collect::<Vec<_>>(),
        "degrees": degrees,
        "source": source,
        "precision_used": precision_used,
    });
    let mut t = CsvTable::new(&["n", "ratio", "value"]);
    for (i, r) in est.ratios.iter().enumerate() {
        t.push(vec![(i + 1).to_string(), ratio_text(*r), ratio_to_f64(*r).to_string()]);
    }
    let mut out = Outcome::new(Some(SpecView::of(&spec)), result);
    out.csv = Some(t);
    Ok(out)
}

pub fn cmd_openq(args: &JobArgs) -> Result<Outcome, LabError> {
    let p = args.p;
    let (seq, view, default_d) = match (&args.from_omega, &args.seq) {
        (Some(fam), _) => {
            let (_, view, built) = omega_from(args, fam, 2)?;
            let o = built?;
            let c = parse_poly(view.c.as_deref().unwrap_or("1"), p)?;
            (o.entries, Some(view), Some(-&c))
        }
        (None, Some(text)) => {
            let seq = text.split(',').map(|s| parse_poly(s.trim(), p)).collect::<Result<Vec<_>, _>>()?;
            (seq, None, None)
        }
        (None, None) => return Err(LabError::Invalid("openq needs --from-omega or --seq".into())),
    };
    let d = match (&args.d, default_d) {
        (Some(text), _) => parse_poly(text, p)?,
        (None, Some(d)) => d,
        (None, None) => return Err(LabError::Invalid("--D is required with --seq".into())),
    };
    let report = open_question_check(&seq, &d)?;
    let admitted = admitted_identity_check(&seq, &d).ok();
    let mismatch = report.is_counterexample();
    let mut result = serde_json::to_value(&report).expect("json");
    result["sequence"] = Value::from(texts(&seq));
    result["admitted_identity"] = json!(admitted);
    result["conclusion_holds"] = json!(report.outcome == OpenQuestionOutcome::ConclusionHolds);
    let mut out = Outcome::new(view, result);
    out.mismatch = mismatch;
    Ok(out)
}

pub fn cmd_square(args: &JobArgs) -> Result<Outcome, LabError> {
    let a = parse_poly(args.a.as_deref().unwrap_or("T"), args.p)?;
    let c = parse_poly(args.c.as_deref().unwrap_or("T"), args.p)?;
    let terms = args.terms.unwrap_or(5);
    let report = square_relation_check(&a, &c, terms)?;
    let holds = report.holds();
    let mut result = serde_json::to_value(&report).expect("json");
    result["holds"] = json!(holds);
    let spec = EquationSpec::new(Family::W1, a, c).ok().map(|s| SpecView::of(&s));
    let mut out = Outcome::new(spec, result);
    out.mismatch = !holds;
    Ok(out)
}

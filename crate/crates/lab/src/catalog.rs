use fpcf::cfrac::{expand, ContinuedFraction};
use fpcf::closedform::{omega_build_with_limit, omega_length, OmegaFamily};
use fpcf::laurent::{solve_root, EquationSpec, Family, Laurent, QuarticSpec};
use fpcf::Poly;
use serde::Serialize;

use crate::{JobArgs, LabError};

/// Precision guard added to degree-law estimates.
pub const GUARD: usize = 32;
/// Largest working precision any job may request.
pub const MAX_PRECISION: usize = 1 << 16;
const OMEGA_SIZING_DEPTH: u32 = 8;

/// The emblematic (A, C) of each family.
pub fn default_parameters(family: Family) -> Option<(&'static str, &'static str)> {
    match family {
        Family::E1 => Some(("T", "T")),
        Family::E2 => Some(("T^2", "T")),
        Family::W1 => Some(("T", "1")),
        Family::W2 => Some(("T^2", "T")),
        Family::MR | Family::Raw => None,
    }
}

pub fn parse_family(text: &str) -> Result<Family, LabError> {
    text.parse::<Family>().map_err(|e| LabError::Invalid(e.to_string()))
}

pub fn parse_poly(text: &str, p: u8) -> Result<Poly, LabError> {
    Ok(Poly::parse(text, p)?)
}

pub fn spec_from_args(args: &JobArgs) -> Result<EquationSpec, LabError> {
    if let Some(raw) = &args.raw {
        let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
        return Ok(EquationSpec::raw(QuarticSpec::parse(&parts, args.p)?));
    }
    let family = parse_family(args.family.as_deref().ok_or_else(|| {
        LabError::Invalid("--family or --raw is required".into())
    })?)?;
    match family {
        Family::MR => Ok(EquationSpec::mr(args.p)),
        Family::Raw => Err(LabError::Invalid("use --raw for raw quartics".into())),
        _ => {
            let (da, dc) = default_parameters(family).expect("parametrised family");
            let a = parse_poly(args.a.as_deref().unwrap_or(da), args.p)?;
            let c = parse_poly(args.c.as_deref().unwrap_or(dc), args.p)?;
            Ok(EquationSpec::new(family, a, c)?)
        }
    }
}

/// One --batch line applied on top of the shared flags.
pub fn batch_line(base: &JobArgs, line: &str) -> Result<JobArgs, LabError> {
    let words: Vec<&str> = line.split_whitespace().collect();
    let mut job = base.clone();
    job.batch = None;
    job.raw = None;
    match words.as_slice() {
        [raw, coeffs] if raw.eq_ignore_ascii_case("raw") => {
            job.family = None;
            job.raw = Some(coeffs.to_string());
        }
        [family] => {
            job.family = Some(family.to_string());
            job.a = None;
            job.c = None;
        }
        [family, a, c] => {
            job.family = Some(family.to_string());
            job.a = Some(a.to_string());
            job.c = Some(c.to_string());
        }
        _ => return Err(LabError::Invalid(format!("cannot read batch line {line:?}"))),
    }
    Ok(job)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecView {
    pub family: String,
    pub p: u8,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    /// Coefficients of x^4, x^3, x^2, x, 1.
    pub quartic: Vec<String>,
}

impl SpecView {
    pub fn of(spec: &EquationSpec) -> Self {
        Self {
            family: spec.family().to_string(),
            p: spec.modulus(),
            a: spec.a().map(Poly::to_string),
            c: spec.c().map(Poly::to_string),
            quartic: spec.quartic().descending().iter().map(Poly::to_string).collect(),
        }
    }
}

pub fn omega_family(family: Family) -> Option<OmegaFamily> {
    match family {
        Family::E1 => Some(OmegaFamily::E1),
        Family::E2 => Some(OmegaFamily::E2),
        Family::MR => Some(OmegaFamily::MR),
        _ => None,
    }
}

fn pow3(k: u32) -> i64 {
    3i64.pow(k)
}

/// deg b_k of the closed-form quotients of W1/W2 with C | A.
pub fn closed_form_degree(family: Family, a: i64, c: i64, k: u32) -> i64 {
    let t = pow3(k - 1);
    let e = if k % 2 == 0 { (t + 1) / 4 } else { (t - 1) / 4 };
    match family {
        Family::W1 => t * a - e * c,
        _ => t * (a - c) + e * c,
    }
}

/// Sum of the first `terms` quotient degrees when the family has a degree law.
pub fn predicted_total_degree(spec: &EquationSpec, terms: usize) -> Option<i64> {
    let family = spec.family();
    if matches!(family, Family::W1 | Family::W2) && spec.c_divides_a() {
        let (a, c) = (spec.a()?.deg(), spec.c()?.deg());
        if terms > 30 {
            return Some(i64::MAX);
        }
        return Some((1..=terms as u32).map(|k| closed_form_degree(family, a, c, k)).sum());
    }
    let of = omega_family(family)?;
    if of == OmegaFamily::MR && spec.modulus() != 3 {
        return None;
    }
    let depth = (1..=OMEGA_SIZING_DEPTH).find(|&d| omega_length(d) as usize >= terms)?;
    let one = Poly::one(3);
    let o = omega_build_with_limit(of, spec.a().unwrap_or(&one), spec.c().unwrap_or(&one), depth, depth).ok()?;
    Some(o.entries.iter().take(terms).map(Poly::deg).sum())
}

#[derive(Clone, Debug)]
pub struct Expansion {
    pub root: Laurent,
    pub cf: ContinuedFraction,
    pub precision_used: usize,
    pub attempts: u32,
}

fn attempt(spec: &EquationSpec, terms: usize, precision: usize) -> Result<Expansion, LabError> {
    let root = solve_root(spec, precision)?;
    let cf = expand(&root, terms)?;
    Ok(Expansion { root, cf, precision_used: precision, attempts: 1 })
}

fn enough(e: &Expansion, terms: usize) -> bool {
    e.cf.len_tail() >= terms || e.cf.complete
}

/// Solves and expands to `terms` quotients, sizing the precision from the
/// family's degree law (one retry at twice the size) or by doubling.
pub fn engine_expand(spec: &EquationSpec, terms: usize, precision: Option<usize>) -> Result<Expansion, LabError> {
    let floor = spec.min_precision();
    if let Some(p) = precision {
        let e = attempt(spec, terms, p.max(floor))?;
        if !enough(&e, terms) {
            return Err(LabError::Precision(format!(
                "precision {} certifies {} of {} quotients",
                e.precision_used,
                e.cf.len_tail(),
                terms
            )));
        }
        return Ok(e);
    }
    match predicted_total_degree(spec, terms) {
        Some(total) => {
            let first = (2 * total).checked_add(GUARD as i64).unwrap_or(i64::MAX);
            if first > MAX_PRECISION as i64 {
                return Err(LabError::Precision(format!(
                    "{terms} quotients need about {first} coefficients, above the cap {MAX_PRECISION}"
                )));
            }
            let first = (first as usize).max(floor);
            let e = attempt(spec, terms, first)?;
            if enough(&e, terms) {
                return Ok(e);
            }
            let second = (2 * first).min(MAX_PRECISION);
            let mut e = attempt(spec, terms, second)?;
            e.attempts = 2;
            if enough(&e, terms) {
                Ok(e)
            } else {
                Err(LabError::Precision(format!("{} of {terms} quotients at precision {second}", e.cf.len_tail())))
            }
        }
        None => {
            let mut precision = floor.max(64).max(8 * terms);
            let mut attempts = 0;
            loop {
                attempts += 1;
                let mut e = attempt(spec, terms, precision)?;
                e.attempts = attempts;
                if enough(&e, terms) {
                    return Ok(e);
                }
                if precision >= MAX_PRECISION {
                    return Err(LabError::Precision(format!(
                        "{} of {terms} quotients at precision {precision}",
                        e.cf.len_tail()
                    )));
                }
                precision = (2 * precision).min(MAX_PRECISION);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_degrees() {
        let degs: Vec<i64> = (1..=4).map(|k| closed_form_degree(Family::W1, 1, 1, k)).collect();
        assert_eq!(degs, [1, 2, 7, 20]);
        let degs: Vec<i64> = (1..=3).map(|k| closed_form_degree(Family::W2, 2, 1, k)).collect();
        assert_eq!(degs, [1, 4, 11]);
    }

    #[test]
    fn batch_lines() {
        let base = JobArgs::default();
        let j = batch_line(&base, "W1 T^2+1 T").unwrap();
        assert_eq!((j.family.as_deref(), j.a.as_deref(), j.c.as_deref()), (Some("W1"), Some("T^2+1"), Some("T")));
        assert_eq!(batch_line(&base, "raw 1,0,1,-T,1").unwrap().raw.as_deref(), Some("1,0,1,-T,1"));
        assert!(batch_line(&base, "W1 T").is_err());
    }
}

use super::equation::eval_quartic_to;
use super::{EquationSpec, Family, Laurent, QuarticSpec, SeriesError, SolveError};

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Solve E1/E2 a second time as the square of the W1/W2 root and compare.
    pub cross_check: bool,
    /// Working-precision doublings allowed after the first certification attempt.
    pub retries: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { cross_check: true, retries: 3 }
    }
}

/// The unique root with |x| < 1, certified to `precision` coefficients below T^0.
pub fn solve_root(spec: &EquationSpec, precision: usize) -> Result<Laurent, SolveError> {
    solve_root_with(spec, precision, SolveOptions::default())
}

pub fn solve_root_with(
    spec: &EquationSpec,
    precision: usize,
    opts: SolveOptions,
) -> Result<Laurent, SolveError> {
    let minimum = spec.min_precision();
    if precision < minimum {
        return Err(SolveError::PrecisionTooSmall { requested: precision, minimum });
    }
    let root = solve_quartic(&spec.quartic(), precision, opts.retries)?;
    if opts.cross_check && matches!(spec.family(), Family::E1 | Family::E2) {
        let other = square_route(spec, precision)?;
        if !root.agrees_with(&other) {
            return Err(SolveError::CrossCheckMismatch);
        }
    }
    Ok(root)
}

/// E1/E2 roots computed as squares of the W1/W2 roots.
pub fn square_route(spec: &EquationSpec, precision: usize) -> Result<Laurent, SolveError> {
    let base = match spec.family() {
        Family::E1 => Family::W1,
        Family::E2 => Family::W2,
        f => return Err(SolveError::NoSquareRoute(f)),
    };
    let w_spec = spec.with_family(base).map_err(|e| SolveError::Spec(e.to_string()))?;
    let w = solve_quartic(&w_spec.quartic(), precision.max(w_spec.min_precision()), 3)?;
    let sq = w.mul(&w)?;
    Ok(sq.truncate(-(precision as i64)))
}

fn seed(q: &QuarticSpec, floor: i64) -> Result<Laurent, SolveError> {
    let c0 = Laurent::from_poly(q.coeff(0));
    let c1 = Laurent::from_poly(q.coeff(1));
    let top0 = match c0.top() {
        None => return Ok(Laurent::exact_zero(q.modulus())),
        Some(t) => t,
    };
    let top1 = c1.top().ok_or(SolveError::DerivativeVanishes)?;
    if top0 >= top1 {
        return Err(SolveError::NoSmallRoot);
    }
    let inv = c1.invert_to(floor - top0 - 1)?;
    Ok(c0.mul_to(&inv, Some(floor))?.neg())
}

struct Step {
    residual: Laurent,
    derivative: Laurent,
}

fn residual(q: &QuarticSpec, x: &Laurent, floor: i64) -> Result<Step, SeriesError> {
    let residual = eval_quartic_to(q.descending(), x, Some(floor))?;
    let derivative = eval_quartic_to(&q.taylor(1), x, Some(floor))?;
    Ok(Step { residual, derivative })
}

fn upper_top(s: &Laurent) -> i64 {
    s.top().unwrap_or_else(|| s.precision_floor().unwrap_or(i64::MIN / 4) - 1)
}

/// Certified floor of the root near the finite series `x`, from a Hensel-type
/// contraction bound, or `None` when the bound does not apply.
fn certify(q: &QuarticSpec, x: &Laurent, floor: i64) -> Result<Option<i64>, SeriesError> {
    let Step { residual, derivative } = residual(q, x, floor)?;
    let td = match derivative.top() {
        Some(t) => t,
        None => return Ok(None),
    };
    let delta = upper_top(&residual) - td;
    for k in 2..=4 {
        let fk = eval_quartic_to(&q.taylor(k), x, Some(floor))?;
        let Some(tk) = fk.top() else {
            if fk.is_exact_zero() {
                continue;
            }
            if fk.precision_floor().unwrap() - 1 + (k as i64 - 1) * delta < td {
                continue;
            }
            return Ok(None);
        };
        if tk + (k as i64 - 1) * delta >= td {
            return Ok(None);
        }
    }
    Ok(Some(delta + 1))
}

/// Newton iteration with precision doubling, followed by certification.
pub fn solve_quartic(q: &QuarticSpec, precision: usize, retries: u32) -> Result<Laurent, SolveError> {
    let n = precision as i64;
    let maxdeg = q.max_degree() as i64;
    let guard = 2 * maxdeg + 16;
    let start = (2 * maxdeg + 8).min(n + guard);
    let mut x = seed(q, -start)?;
    if x.is_exact_zero() {
        return Ok(x);
    }
    x = x.to_exact();
    let mut prec = start;
    let mut work = n + guard;
    for _ in 0..=retries {
        let mut last: Option<i64> = None;
        let mut finishing = false;
        loop {
            let target = (2 * prec).min(work);
            let floor = -(target + guard);
            let Step { residual: r, derivative: d } = residual(q, &x, floor)?;
            if d.top().is_none() {
                return Err(SolveError::DerivativeVanishes);
            }
            let tr = upper_top(&r);
            if let (Some(prev), false) = (last, finishing) {
                if tr >= prev && !r.is_zero_so_far() {
                    return Err(SolveError::NotConverging { residual_top: tr });
                }
            }
            last = Some(tr);
            if !r.is_zero_so_far() {
                let inv = d.invert_to(-target - tr - 1)?;
                let h = r.mul_to(&inv, Some(-target))?;
                x = x.sub(&h)?.truncate(-target).to_exact();
            }
            prec = target;
            if finishing {
                break;
            }
            finishing = prec >= work;
        }
        let cert_floor = -(2 * work + guard);
        if let Some(f) = certify(q, &x, cert_floor)? {
            if f <= -n {
                return Ok(x.truncate(-n));
            }
        }
        work *= 2;
    }
    Err(SolveError::PrecisionExhausted { requested: precision })
}

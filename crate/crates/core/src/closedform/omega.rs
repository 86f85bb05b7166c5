use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cfrac::{cube_each, reverse, scale_down, scale_up, CfError};
use crate::gfpoly::Poly;

use super::ClosedFormError;

pub const DEFAULT_DEPTH_LIMIT: u32 = 5;
pub const MR_DEPTH_LIMIT: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OmegaFamily {
    E1,
    E2,
    MR,
}

impl fmt::Display for OmegaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaFamily::E1 => "E1",
            OmegaFamily::E2 => "E2",
            OmegaFamily::MR => "MR",
        })
    }
}

impl FromStr for OmegaFamily {
    type Err = ClosedFormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "E1" => Ok(OmegaFamily::E1),
            "E2" => Ok(OmegaFamily::E2),
            "MR" => Ok(OmegaFamily::MR),
            _ => Err(ClosedFormError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaSeq {
    pub family: OmegaFamily,
    pub depth: u32,
    pub entries: Vec<Poly>,
}

impl OmegaSeq {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.entries.iter().map(Poly::deg).collect()
    }
}

/// Length of Ω_n: every family satisfies L_n = 2L_{n−1} + L_{n−2} + 2.
pub fn omega_length(depth: u32) -> u64 {
    let mut lens = vec![0u64, 1];
    for n in 2..=depth as usize {
        lens.push(2 * lens[n - 1] + lens[n - 2] + 2);
    }
    lens[depth as usize]
}

fn wrap(depth: u32, err: CfError) -> ClosedFormError {
    match err {
        CfError::Divisibility { index, entry, divisor } => {
            ClosedFormError::IllFormed { depth, index, entry, divisor }
        }
        other => ClosedFormError::Cf(other),
    }
}

fn join(parts: Vec<Vec<Poly>>) -> Vec<Poly> {
    parts.into_iter().flatten().collect()
}

/// Ω_depth with the default depth limit.
pub fn omega_build(family: OmegaFamily, a: &Poly, c: &Poly, depth: u32) -> Result<OmegaSeq, ClosedFormError> {
    let limit = match family {
        OmegaFamily::MR => MR_DEPTH_LIMIT,
        _ => DEFAULT_DEPTH_LIMIT,
    };
    omega_build_with_limit(family, a, c, depth, limit)
}

/// Ω_depth; entry degrees grow like 3^depth, so builds past `limit` are refused.
pub fn omega_build_with_limit(
    family: OmegaFamily,
    a: &Poly,
    c: &Poly,
    depth: u32,
    limit: u32,
) -> Result<OmegaSeq, ClosedFormError> {
    if depth > limit {
        return Err(ClosedFormError::DepthLimit { depth, limit });
    }
    let entries = match family {
        OmegaFamily::MR => build_mr(depth),
        OmegaFamily::E1 | OmegaFamily::E2 => {
            if a.modulus() != 3 || c.modulus() != 3 {
                return Err(ClosedFormError::NeedsCharacteristic3);
            }
            if a.is_constant() {
                return Err(ClosedFormError::ConstantA);
            }
            if c.is_zero() {
                return Err(ClosedFormError::ZeroC);
            }
            if !c.divides(a) {
                return Err(ClosedFormError::CDoesNotDivideA { a: a.to_string(), c: c.to_string() });
            }
            if c.deg() > a.deg() {
                return Err(ClosedFormError::DegreeOrder);
            }
            if family == OmegaFamily::E1 {
                build_e1(a, c, depth)?
            } else {
                build_e2(a, c, depth)?
            }
        }
    };
    Ok(OmegaSeq { family, depth, entries })
}

fn build_mr(depth: u32) -> Vec<Poly> {
    let minus_t = -&Poly::t(3);
    let mut seqs: Vec<Vec<Poly>> = vec![vec![], vec![Poly::t(3)]];
    for n in 2..=depth as usize {
        let next = join(vec![
            seqs[n - 1].clone(),
            vec![minus_t.clone()],
            cube_each(&seqs[n - 2]),
            vec![minus_t.clone()],
            seqs[n - 1].clone(),
        ]);
        seqs.push(next);
    }
    seqs.swap_remove(depth as usize)
}

fn build_e1(a: &Poly, c: &Poly, depth: u32) -> Result<Vec<Poly>, ClosedFormError> {
    let a2 = a * a;
    let two_a2 = -&a2;
    let c2 = c * c;
    let two_c = -c;
    let a2_over_c = a2.div_exact(c)?;
    let mut seqs: Vec<Vec<Poly>> = vec![vec![], vec![a2.clone()]];
    for n in 2..=depth as usize {
        let next = if n % 2 == 1 {
            join(vec![
                seqs[n - 1].clone(),
                vec![two_a2.clone()],
                scale_down(&cube_each(&seqs[n - 2]), &c2).map_err(|e| wrap(n as u32, e))?,
                vec![two_a2.clone()],
                reverse(&seqs[n - 1]),
            ])
        } else {
            join(vec![
                seqs[n - 1].clone(),
                vec![a2_over_c.clone()],
                scale_down(&cube_each(&seqs[n - 2]), &two_c).map_err(|e| wrap(n as u32, e))?,
                vec![two_a2.clone()],
                scale_down(&seqs[n - 1], &two_c).map_err(|e| wrap(n as u32, e))?,
            ])
        };
        seqs.push(next);
    }
    Ok(seqs.swap_remove(depth as usize))
}

fn build_e2(a: &Poly, c: &Poly, depth: u32) -> Result<Vec<Poly>, ClosedFormError> {
    let c2 = c * c;
    let a2 = a * a;
    let a2_over_c2 = a2.div_exact(&c2)?;
    let two_a2_over_c2 = -&a2_over_c2;
    let two_a2_over_c = -&a2.div_exact(c)?;
    let mut seqs: Vec<Vec<Poly>> = vec![vec![], vec![a2_over_c2]];
    for n in 2..=depth as usize {
        let next = if n % 2 == 1 {
            join(vec![
                seqs[n - 1].clone(),
                vec![two_a2_over_c2.clone()],
                scale_up(&cube_each(&seqs[n - 2]), &c2).map_err(|e| wrap(n as u32, e))?,
                vec![two_a2_over_c2.clone()],
                reverse(&seqs[n - 1]),
            ])
        } else {
            join(vec![
                seqs[n - 1].clone(),
                vec![two_a2_over_c.clone()],
                scale_up(&cube_each(&seqs[n - 2]), c).map_err(|e| wrap(n as u32, e))?,
                vec![two_a2_over_c2.clone()],
                scale_up(&seqs[n - 1], c).map_err(|e| wrap(n as u32, e))?,
            ])
        };
        seqs.push(next);
    }
    Ok(seqs.swap_remove(depth as usize))
}

/// Degree of the central entry of Ω_{2k+1} for the first quartic family:
/// 2(3^k a − (3^k + (−1)^{k+1}) c/4).
pub fn e1_central_degree(a: i64, c: i64, k: u32) -> i64 {
    let t = 3i64.pow(k);
    let q = if k % 2 == 1 { (t + 1) / 4 } else { (t - 1) / 4 };
    2 * (t * a - q * c)
}

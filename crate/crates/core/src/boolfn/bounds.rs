//! Exact checks of the influence inequalities:
//! `Inf_i >= 2^{-deg}` and `Inf_i >= 2^{-2s+1}` for every influential `i`, and
//! `sum_i Inf_i <= deg`.

use num_rational::Ratio;
use serde::Serialize;

use super::{check_capacity, TruthTable};
use crate::error::Result;

/// Largest `n` for [`exhaustive_bounds`]; `n = 5` would mean `2^32` functions.
pub const MAX_EXHAUSTIVE_BOUND_VARS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `Inf_i >= 2^{-deg}`
    DegreeFloor,
    /// `sum_i Inf_i <= deg`
    InfluenceSum,
    /// `Inf_i >= 2^{-2s+1}`
    SensitivityFloor,
}

/// A failed inequality, with the offending function and both sides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundViolation {
    pub inequality: Inequality,
    /// Truth table as a `2^n`-character bit string.
    pub function: String,
    /// 1-based variable, for the per-variable inequalities.
    pub variable: Option<usize>,
    #[serde(serialize_with = "crate::fraction::serialize")]
    pub lhs: Ratio<u64>,
    #[serde(serialize_with = "crate::fraction::serialize")]
    pub rhs: Ratio<u64>,
}

/// `2^{-d}`.
pub fn degree_floor(d: usize) -> Ratio<u64> {
    Ratio::new(1, 1u64 << d)
}

/// `2^{-2s+1}`, capped at 1 for `s = 0`.
pub fn sensitivity_floor(s: usize) -> Ratio<u64> {
    if s == 0 {
        Ratio::from_integer(1)
    } else {
        Ratio::new(1, 1u64 << (2 * s - 1))
    }
}

pub fn check_bounds(tt: &TruthTable) -> Vec<BoundViolation> {
    let d = tt.degree();
    let s = tt.sensitivity();
    let influences = tt.influences();
    let bits = || {
        tt.values()
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect::<String>()
    };
    let mut out = Vec::new();
    for (i, &inf) in influences.iter().enumerate() {
        if *inf.numer() == 0 {
            continue;
        }
        for (inequality, floor) in [
            (Inequality::DegreeFloor, degree_floor(d)),
            (Inequality::SensitivityFloor, sensitivity_floor(s)),
        ] {
            if inf < floor {
                out.push(BoundViolation {
                    inequality,
                    function: bits(),
                    variable: Some(i + 1),
                    lhs: inf,
                    rhs: floor,
                });
            }
        }
    }
    let total: Ratio<u64> = influences.iter().sum();
    let degree = Ratio::from_integer(d as u64);
    if total > degree {
        out.push(BoundViolation {
            inequality: Inequality::InfluenceSum,
            function: bits(),
            variable: None,
            lhs: total,
            rhs: degree,
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExhaustiveBounds {
    pub n: usize,
    pub functions: u64,
    pub violations: Vec<BoundViolation>,
}

/// Runs [`check_bounds`] on every function of `n` variables.
pub fn exhaustive_bounds(n: usize) -> Result<ExhaustiveBounds> {
    check_capacity("exhaustive bound suite", n)?;
    if n == 0 || n > MAX_EXHAUSTIVE_BOUND_VARS {
        return Err(crate::Error::Capacity {
            what: "exhaustive bound suite",
            n,
            max: MAX_EXHAUSTIVE_BOUND_VARS,
        });
    }
    let functions = 1u64 << (1u32 << n);
    let mut violations = Vec::new();
    for index in 0..functions {
        violations.extend(check_bounds(&TruthTable::from_index(n, index)?));
    }
    Ok(ExhaustiveBounds {
        n,
        functions,
        violations,
    })
}

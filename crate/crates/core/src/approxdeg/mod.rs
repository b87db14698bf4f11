//! Approximate degree by minimax linear programming.
//!
//! For a target `f: {0,1}^n -> {0,1}` and degree bound `d`, the program
//! minimises `eps` over multilinear `P` (written in the ±1 character basis,
//! restricted to sets of size `<= d`) subject to `|P(x) - f(x)| <= eps` at
//! every point. The dual program, maximising `sum_x psi(x) f(x)` over `psi`
//! orthogonal to all low-degree characters with `||psi||_1 <= 1`, is solved as
//! well and both solutions are checked exactly, so every returned `eps` comes
//! with an optimality certificate.

pub mod simplex;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::boolfn::{Basis, MultilinearPolynomial, TruthTable};
use crate::error::{Error, Result};
use simplex::{rational, Constraint, LinearProgram, LpOutcome, Rational, Relation};

/// Largest `n` the LP routines accept.
pub const MAX_LP_VARS: usize = 5;

/// Slack applied when comparing an optimal error with a target error.
pub const EPS_SLACK: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct MinimaxResult {
    pub degree_bound: usize,
    pub epsilon: f64,
    pub epsilon_exact: BigRational,
    /// Best uniform approximant, in the ±1 basis.
    pub approximant: MultilinearPolynomial,
    /// Dual witness `psi(x)` per row, certifying that no degree-`d` polynomial does better.
    pub dual_witness: Vec<f64>,
}

fn character_sign(mask: usize, row: usize) -> i64 {
    if (mask & row).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn low_degree_sets(n: usize, d: usize) -> Vec<usize> {
    (0..1usize << n).filter(|s| s.count_ones() as usize <= d).collect()
}

fn check_lp_capacity(n: usize) -> Result<()> {
    if n > MAX_LP_VARS {
        return Err(Error::Capacity {
            what: "minimax LP",
            n,
            max: MAX_LP_VARS,
        });
    }
    Ok(())
}

fn primal_program(tt: &TruthTable, sets: &[usize]) -> LinearProgram {
    let width = 2 * sets.len() + 1;
    let mut objective = vec![rational(0); width];
    objective[width - 1] = rational(1);
    let mut constraints = Vec::with_capacity(2 * tt.len());
    for row in 0..tt.len() {
        let mut a = vec![rational(0); width];
        for (k, &s) in sets.iter().enumerate() {
            let sign = character_sign(s, row);
            a[2 * k] = rational(sign);
            a[2 * k + 1] = rational(-sign);
        }
        let target = rational(tt.value(row) as i64);
        let mut upper = a.clone();
        upper[width - 1] = rational(-1);
        constraints.push(Constraint {
            coefficients: upper,
            relation: Relation::Le,
            rhs: target.clone(),
        });
        a[width - 1] = rational(1);
        constraints.push(Constraint {
            coefficients: a,
            relation: Relation::Ge,
            rhs: target,
        });
    }
    LinearProgram { objective, constraints }
}

fn dual_program(tt: &TruthTable, sets: &[usize]) -> LinearProgram {
    let rows = tt.len();
    // columns: u_x for every row, then v_x; psi = u - v
    let objective = (0..2 * rows)
        .map(|c| {
            let f = tt.value(c % rows) as i64;
            rational(if c < rows { -f } else { f })
        })
        .collect();
    let mut constraints: Vec<Constraint> = sets
        .iter()
        .map(|&s| Constraint {
            coefficients: (0..2 * rows)
                .map(|c| {
                    let sign = character_sign(s, c % rows);
                    rational(if c < rows { sign } else { -sign })
                })
                .collect(),
            relation: Relation::Eq,
            rhs: rational(0),
        })
        .collect();
    constraints.push(Constraint {
        coefficients: vec![rational(1); 2 * rows],
        relation: Relation::Le,
        rhs: rational(1),
    });
    LinearProgram { objective, constraints }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Optimal uniform error of degree-`d` approximation to `tt`, with the approximant.
pub fn minimax_error(tt: &TruthTable, d: usize) -> Result<MinimaxResult> {
    let n = tt.n();
    check_lp_capacity(n)?;
    if d > n {
        return Err(Error::InvalidArgument(format!("degree bound {d} exceeds n = {n}")));
    }
    let sets = low_degree_sets(n, d);

    let (x, eps) = match simplex::solve(&primal_program(tt, &sets)) {
        LpOutcome::Optimal { x, value } => (x, value),
        other => return Err(Error::Internal(format!("minimax primal LP returned {other:?}"))),
    };
    let psi = match simplex::solve(&dual_program(tt, &sets)) {
        LpOutcome::Optimal { x, .. } => {
            let rows = tt.len();
            (0..rows).map(|r| &x[r] - &x[r + rows]).collect::<Vec<_>>()
        }
        other => return Err(Error::Internal(format!("minimax dual LP returned {other:?}"))),
    };

    // exact certificate: primal attains eps, dual is feasible and attains eps
    let mut coefficients = vec![Rational::zero(); tt.len()];
    for (k, &s) in sets.iter().enumerate() {
        coefficients[s] = &x[2 * k] - &x[2 * k + 1];
    }
    let mut attained = Rational::zero();
    for row in 0..tt.len() {
        let value: Rational = sets
            .iter()
            .map(|&s| {
                if character_sign(s, row) > 0 {
                    coefficients[s].clone()
                } else {
                    -coefficients[s].clone()
                }
            })
            .fold(Rational::zero(), |a, b| a + b);
        let err = (value - rational(tt.value(row) as i64)).abs();
        if err > attained {
            attained = err;
        }
    }
    let l1 = psi.iter().fold(Rational::zero(), |a, p| a + p.abs());
    let orthogonal = sets.iter().all(|&s| {
        psi.iter()
            .enumerate()
            .fold(
                Rational::zero(),
                |a, (r, p)| if character_sign(s, r) > 0 { a + p } else { a - p },
            )
            .is_zero()
    });
    let dual_value = psi
        .iter()
        .enumerate()
        .filter(|(r, _)| tt.value(*r))
        .fold(Rational::zero(), |a, (_, p)| a + p);
    if attained != eps || !orthogonal || l1 > Rational::one() || dual_value != eps {
        return Err(Error::Internal(format!(
            "minimax certificate failed: primal {eps}, attained {attained}, dual {dual_value}, |psi|_1 {l1}"
        )));
    }

    let approximant =
        MultilinearPolynomial::from_coefficients(n, Basis::FourierPm1, coefficients.iter().map(to_f64).collect())?;
    Ok(MinimaxResult {
        degree_bound: d,
        epsilon: to_f64(&eps),
        epsilon_exact: eps,
        approximant,
        dual_witness: psi.iter().map(to_f64).collect(),
    })
}

/// Smallest `d` whose optimal error is at most `eps` (plus [`EPS_SLACK`]).
pub fn approx_degree(tt: &TruthTable, eps: f64) -> Result<usize> {
    Ok(approx_degree_with_fit(tt, eps)?.degree_bound)
}

/// As [`approx_degree`], also returning the optimal fit at that degree.
pub fn approx_degree_with_fit(tt: &TruthTable, eps: f64) -> Result<MinimaxResult> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "approximation error must lie in (0, 1/2), got {eps}"
        )));
    }
    check_lp_capacity(tt.n())?;
    for d in 0..=tt.n() {
        let fit = minimax_error(tt, d)?;
        if fit.epsilon <= eps + EPS_SLACK {
            return Ok(fit);
        }
    }
    Err(Error::Internal(
        "exact representation at d = n must have zero error".into(),
    ))
}

/// Relative tolerance on the `|p(x)| >= n^{-gamma}` margin test.
pub const MARGIN_TOLERANCE: f64 = 1e-12;

/// True iff `sgn p(x) = f(x)` (±1 encoding) and `n^{-gamma} <= |p(x)| <= 1` everywhere.
pub fn sign_margin_check(p: &MultilinearPolynomial, tt: &TruthTable, gamma: f64) -> Result<bool> {
    if p.basis() != Basis::FourierPm1 {
        return Err(Error::Precondition(
            "sign-margin check requires a FOURIER_PM1 polynomial".into(),
        ));
    }
    if p.n() != tt.n() {
        return Err(Error::DimensionMismatch {
            expected: tt.n(),
            found: p.n(),
        });
    }
    let floor = (tt.n() as f64).powf(-gamma) * (1.0 - MARGIN_TOLERANCE);
    let ceiling = 1.0 + MARGIN_TOLERANCE;
    Ok(p.evaluate_all()
        .iter()
        .zip(tt.pm1_values())
        .all(|(&v, target)| v != 0.0 && v.signum() == target && v.abs() >= floor && v.abs() <= ceiling))
}

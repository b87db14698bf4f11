//! Concentration of low-degree polynomials on the ±1 cube, checked exhaustively.
//!
//! For `F` of degree `d` with mean zero and `sigma = ||F||_2`,
//! `Pr[|F| >= t sigma] <= exp(-(d / 2e) t^{2/d})` for `t >= (2e)^{d/2}`; it
//! follows from `||F||_q <= (q-1)^{d/2} ||F||_2` and Markov's inequality at
//! `q = t^{2/d} / e`. Everything here evaluates the polynomial on all `2^n`
//! points, so no sampling error enters the comparisons.

use std::f64::consts::E;

use num_rational::Ratio;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::approxdeg;
use crate::boolfn::{Basis, MultilinearPolynomial, TruthTable};
use crate::error::{Error, Result};

/// Largest `n` for exhaustive tail and norm evaluation.
pub const MAX_TAIL_VARS: usize = 20;
/// Relative slack on moment and norm inequalities.
pub const RELATIVE_SLACK: f64 = 1e-9;
/// Points with `|p(x)| >= t sigma (1 - TAIL_TOLERANCE)` count towards the tail.
pub const TAIL_TOLERANCE: f64 = 1e-12;
/// Mean allowed before a polynomial counts as uncentred.
pub const MEAN_TOLERANCE: f64 = 1e-9;
pub const GRID_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailPoint {
    pub t: f64,
    pub empirical_tail: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailReport {
    pub d: usize,
    pub sigma: f64,
    pub grid: Vec<TailPoint>,
}

impl TailReport {
    pub fn violations(&self) -> impl Iterator<Item = &TailPoint> {
        self.grid.iter().filter(|p| p.empirical_tail > p.bound)
    }
}

/// `(2e)^{d/2}`, the smallest `t` covered by the tail bound.
pub fn threshold(d: usize) -> f64 {
    (2.0 * E).powf(d as f64 / 2.0)
}

pub fn tail_bound(d: usize, t: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::Domain("tail bound needs degree d >= 1".into()));
    }
    let lo = threshold(d);
    if t.is_nan() || t < lo * (1.0 - 1e-12) {
        return Err(Error::Domain(format!("t = {t} is below (2e)^(d/2) = {lo} for d = {d}")));
    }
    let d = d as f64;
    Ok((-(d / (2.0 * E)) * t.powf(2.0 / d)).exp())
}

/// Geometric grid of [`GRID_POINTS`] values from `(2e)^{d/2}` to four times that.
pub fn t_grid(d: usize) -> Vec<f64> {
    let lo = threshold(d);
    let ratio = 4f64.powf(1.0 / (GRID_POINTS - 1) as f64);
    (0..GRID_POINTS)
        .map(|k| {
            if k == GRID_POINTS - 1 {
                4.0 * lo
            } else {
                lo * ratio.powi(k as i32)
            }
        })
        .collect()
}

fn check_tail_capacity(p: &MultilinearPolynomial) -> Result<()> {
    if p.n() > MAX_TAIL_VARS {
        return Err(Error::Capacity {
            what: "exhaustive tail evaluation",
            n: p.n(),
            max: MAX_TAIL_VARS,
        });
    }
    if p.basis() != Basis::FourierPm1 {
        return Err(Error::Precondition(
            "tail analysis works on FOURIER_PM1 polynomials".into(),
        ));
    }
    Ok(())
}

fn centred_sigma(p: &MultilinearPolynomial) -> Result<f64> {
    check_tail_capacity(p)?;
    let mean = p.expectation();
    if mean.abs() > MEAN_TOLERANCE {
        return Err(Error::Precondition(format!(
            "polynomial has mean {mean}; centre it first"
        )));
    }
    let sigma = p.fourier_weight()?.sqrt();
    if sigma == 0.0 {
        return Err(Error::Precondition("zero polynomial has no tail".into()));
    }
    Ok(sigma)
}

fn tail_fraction(abs_values: &[f64], threshold: f64) -> f64 {
    let cut = threshold * (1.0 - TAIL_TOLERANCE);
    abs_values.iter().filter(|&&v| v >= cut).count() as f64 / abs_values.len() as f64
}

/// Exact `Pr_x[|p(x)| >= t ||p||_2]` over the cube.
pub fn empirical_tail(p: &MultilinearPolynomial, t: f64) -> Result<f64> {
    let sigma = centred_sigma(p)?;
    let values: Vec<f64> = p.evaluate_all().iter().map(|v| v.abs()).collect();
    Ok(tail_fraction(&values, t * sigma))
}

fn check_order(q: f64) -> Result<()> {
    if q.is_nan() || q < 2.0 {
        return Err(Error::InvalidArgument(format!("norm order must be >= 2, got {q}")));
    }
    Ok(())
}

/// `E[|p|^q] <= (q-1)^{dq/2} ||p||_2^q`.
pub fn moment_bound_check(p: &MultilinearPolynomial, q: f64) -> Result<bool> {
    check_order(q)?;
    check_tail_capacity(p)?;
    let d = p.degree() as f64;
    let sigma = p.fourier_weight()?.sqrt();
    let lhs = p.absolute_moment(q)?;
    let rhs = (q - 1.0).powf(d * q / 2.0) * sigma.powf(q);
    Ok(lhs <= rhs * (1.0 + RELATIVE_SLACK))
}

/// `||p||_q <= (q-1)^{d/2} ||p||_2`.
pub fn hypercontractive_check(p: &MultilinearPolynomial, q: f64) -> Result<bool> {
    check_order(q)?;
    check_tail_capacity(p)?;
    let d = p.degree() as f64;
    let lhs = p.p_norm(q)?;
    let rhs = (q - 1.0).powf(d / 2.0) * p.fourier_weight()?.sqrt();
    Ok(lhs <= rhs * (1.0 + RELATIVE_SLACK))
}

/// `||p||_q` over the given orders; checks they never decrease.
pub fn norms_monotone(p: &MultilinearPolynomial, orders: &[f64]) -> Result<bool> {
    check_tail_capacity(p)?;
    let norms = orders.iter().map(|&q| p.p_norm(q)).collect::<Result<Vec<_>>>()?;
    Ok(norms.windows(2).all(|w| w[1] >= w[0] * (1.0 - RELATIVE_SLACK)))
}

/// Each link of the Markov argument evaluated at `q = t^{2/d}/e`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkovChain {
    pub t: f64,
    pub q: f64,
    pub empirical_tail: f64,
    /// `E[|F|^q] / (t sigma)^q`
    pub markov: f64,
    /// `(q-1)^{dq/2} / t^q`
    pub hypercontractive: f64,
    /// `q^{dq/2} / t^q`
    pub relaxed: f64,
    pub bound: f64,
}

impl MarkovChain {
    pub fn holds(&self) -> bool {
        let le = |a: f64, b: f64| a <= b * (1.0 + RELATIVE_SLACK);
        le(self.empirical_tail, self.markov)
            && le(self.markov, self.hypercontractive)
            && le(self.hypercontractive, self.relaxed)
            && le(self.relaxed, self.bound)
    }
}

pub fn markov_chain(p: &MultilinearPolynomial, t: f64) -> Result<MarkovChain> {
    let sigma = centred_sigma(p)?;
    let d = p.degree();
    let bound = tail_bound(d, t)?;
    let df = d as f64;
    let q = t.powf(2.0 / df) / E;
    let values: Vec<f64> = p.evaluate_all().iter().map(|v| v.abs()).collect();
    let scale = t * sigma;
    let markov = values.iter().map(|v| (v / scale).powf(q)).sum::<f64>() / values.len() as f64;
    Ok(MarkovChain {
        t,
        q,
        empirical_tail: tail_fraction(&values, scale),
        markov,
        hypercontractive: ((q - 1.0).powf(df / 2.0) / t).powf(q),
        relaxed: (q.powf(df / 2.0) / t).powf(q),
        bound,
    })
}

/// Empirical tail against the bound over the standard grid for `p`'s degree.
pub fn tail_report(p: &MultilinearPolynomial) -> Result<TailReport> {
    let sigma = centred_sigma(p)?;
    let d = p.degree();
    let values: Vec<f64> = p.evaluate_all().iter().map(|v| v.abs()).collect();
    let grid = t_grid(d)
        .into_iter()
        .map(|t| {
            Ok(TailPoint {
                t,
                empirical_tail: tail_fraction(&values, t * sigma),
                bound: tail_bound(d, t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TailReport { d, sigma, grid })
}

/// Gaussian coefficients on every set of size `1..=d`, normalised to `||p||_2 = 1`.
pub fn random_polynomial<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<MultilinearPolynomial> {
    if d == 0 || d > n {
        return Err(Error::InvalidArgument(format!(
            "random polynomial degree must be in 1..={n}, got {d}"
        )));
    }
    if n > MAX_TAIL_VARS {
        return Err(Error::Capacity {
            what: "random polynomial",
            n,
            max: MAX_TAIL_VARS,
        });
    }
    let coefficients: Vec<f64> = (0..1usize << n)
        .map(|s| {
            let size = s.count_ones() as usize;
            if size == 0 || size > d {
                0.0
            } else {
                rng.sample(StandardNormal)
            }
        })
        .collect();
    let norm = coefficients.iter().map(|c| c * c).sum::<f64>().sqrt();
    MultilinearPolynomial::from_coefficients(n, Basis::FourierPm1, coefficients.iter().map(|c| c / norm).collect())
}

/// The finite ingredients of the approximate-degree lower bound, on one function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub target_error: f64,
    /// Degree of the optimal approximant found at the approximate degree.
    pub degree: usize,
    pub approximation_error: f64,
    /// `||Q_i||_2^2` for `Q = 1 - 2P`, the approximant in ±1 output scale.
    pub derivative_norms: Vec<f64>,
    pub derivative_mass: f64,
    /// `d ||Q||_2^2`
    pub mass_bound: f64,
    pub mass_inequality_holds: bool,
    /// Smallest index (1-based) attaining the minimum derivative norm.
    pub min_index: usize,
    pub min_norm: f64,
    pub min_within_average: bool,
    pub influential: bool,
    #[serde(serialize_with = "crate::fraction::serialize")]
    pub influence: Ratio<u64>,
    pub sensitivity: usize,
    /// `2^{-2s+1}`
    #[serde(serialize_with = "crate::fraction::serialize")]
    pub sensitivity_floor: Ratio<u64>,
    /// `Inf_i >= 2^{-2s+1}` at the chosen index; `None` if it is not influential.
    pub influence_floor_holds: Option<bool>,
}

pub use crate::boolfn::bounds::sensitivity_floor;

pub fn lower_bound_pipeline(tt: &TruthTable, eps: f64) -> Result<PipelineReport> {
    let fit = approxdeg::approx_degree_with_fit(tt, eps)?;
    let n = tt.n();
    let p = &fit.approximant;
    let q = MultilinearPolynomial::from_coefficients(
        n,
        Basis::FourierPm1,
        p.coefficients()
            .iter()
            .enumerate()
            .map(|(s, c)| if s == 0 { 1.0 - 2.0 * c } else { -2.0 * c })
            .collect(),
    )?;
    let degree = q.degree();
    let derivative_norms = (1..=n)
        .map(|i| q.derivative(i).and_then(|qi| qi.fourier_weight()))
        .collect::<Result<Vec<_>>>()?;
    let derivative_mass = q.derivative_mass()?;
    let weight = q.fourier_weight()?;
    let mass_bound = degree as f64 * weight;
    let (min_pos, min_norm) = derivative_norms.iter().copied().enumerate().fold(
        (0, f64::INFINITY),
        |(bi, bv), (i, v)| if v < bv { (i, v) } else { (bi, bv) },
    );
    let min_index = min_pos + 1;
    let influence = tt.influence(min_index)?;
    let influential = *influence.numer() > 0;
    let sensitivity = tt.sensitivity();
    let floor = sensitivity_floor(sensitivity);
    Ok(PipelineReport {
        n,
        target_error: eps,
        degree,
        approximation_error: fit.epsilon,
        derivative_norms,
        derivative_mass,
        mass_bound,
        mass_inequality_holds: derivative_mass <= mass_bound * (1.0 + RELATIVE_SLACK) + 1e-12,
        min_index,
        min_norm,
        min_within_average: min_norm <= mass_bound / n as f64 * (1.0 + RELATIVE_SLACK) + 1e-12,
        influential,
        influence,
        sensitivity,
        sensitivity_floor: floor,
        influence_floor_holds: influential.then(|| influence >= floor),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{dictator, or_fn, parity, subset_mask};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tail_bound_formula() {
        assert!((tail_bound(2, 2.0 * E).unwrap() - (-2.0f64).exp()).abs() < 1e-12);
        assert!((tail_bound(2, 2.0 * E).unwrap() - 0.135_335_283).abs() < 1e-8);
        assert!((tail_bound(1, (2.0 * E).sqrt()).unwrap() - (-1.0f64).exp()).abs() < 1e-12);
        assert!(matches!(tail_bound(2, 5.0), Err(Error::Domain(_))));
        assert!(tail_bound(0, 10.0).is_err());
    }

    #[test]
    fn tail_bound_strictly_decreasing_on_grid() {
        for d in 1..=4 {
            let grid = t_grid(d);
            assert_eq!(grid.len(), GRID_POINTS);
            assert_eq!(grid[0], threshold(d));
            assert!((grid[GRID_POINTS - 1] - 4.0 * threshold(d)).abs() < 1e-12);
            let bounds: Vec<f64> = grid.iter().map(|&t| tail_bound(d, t).unwrap()).collect();
            assert!(bounds.windows(2).all(|w| w[1] < w[0]));
            assert!(bounds.iter().all(|b| *b > 0.0 && *b <= 1.0));
        }
    }

    #[test]
    fn dictator_tail_is_empty_above_one() {
        let p = MultilinearPolynomial::character(3, &[1]).unwrap();
        assert_eq!(empirical_tail(&p, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn normalised_sum_of_eight_bits() {
        // |sum y_i| = 8 only on the two constant inputs
        let n = 8;
        let mut p = MultilinearPolynomial::zero(n, Basis::FourierPm1).unwrap();
        for i in 1..=n {
            p.set_coefficient(subset_mask(n, &[i]).unwrap(), 1.0 / 8f64.sqrt())
                .unwrap();
        }
        let brute = (0..256u32)
            .filter(|r| {
                let ones = r.count_ones() as i32;
                (8 - 2 * ones).abs() == 8
            })
            .count() as f64
            / 256.0;
        assert_eq!(brute, 2.0 / 256.0);
        assert_eq!(empirical_tail(&p, 8f64.sqrt()).unwrap(), brute);
    }

    #[test]
    fn uncentred_input_rejected() {
        let p = MultilinearPolynomial::constant(2, Basis::FourierPm1, 1.0).unwrap();
        assert!(matches!(empirical_tail(&p, 3.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn degree_one_fourth_moment_closed_form() {
        // For p = sum a_i y_i: E[p^4] = 3 (sum a_i^2)^2 - 2 sum a_i^4.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = random_polynomial(9, 1, &mut rng).unwrap();
        let a: Vec<f64> = p.support().map(|(_, c)| c).collect();
        let s2: f64 = a.iter().map(|c| c * c).sum();
        let s4: f64 = a.iter().map(|c| c.powi(4)).sum();
        let closed = 3.0 * s2 * s2 - 2.0 * s4;
        assert!((p.absolute_moment(4.0).unwrap() - closed).abs() < 1e-12);
        assert!(moment_bound_check(&p, 4.0).unwrap());
    }

    #[test]
    fn moment_and_hypercontractive_examples() {
        let chi = MultilinearPolynomial::character(4, &[2, 3]).unwrap();
        for q in [2.0, 3.0, 4.0, 6.0] {
            assert!(moment_bound_check(&chi, q).unwrap());
            assert!(hypercontractive_check(&chi, q).unwrap());
        }
        let c = MultilinearPolynomial::constant(3, Basis::FourierPm1, -2.0).unwrap();
        assert!((c.p_norm(4.0).unwrap() - c.fourier_weight().unwrap().sqrt()).abs() < 1e-12);
        assert!(hypercontractive_check(&c, 4.0).unwrap());
        assert!(moment_bound_check(&chi, 1.5).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let p = random_polynomial(10, 2, &mut rng).unwrap();
            for q in [2.0, 4.0, 6.0] {
                assert!(moment_bound_check(&p, q).unwrap());
            }
            assert!(norms_monotone(&p, &[2.0, 3.0, 4.0, 6.0]).unwrap());
        }
    }

    #[test]
    fn random_polynomial_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = random_polynomial(8, 3, &mut rng).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.coefficient(0), 0.0);
        assert!((p.fourier_weight().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn markov_chain_links_are_ordered() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 1..=3 {
            let p = random_polynomial(10, d, &mut rng).unwrap();
            for t in t_grid(d) {
                let chain = markov_chain(&p, t).unwrap();
                assert!(chain.q >= 2.0 - 1e-9);
                assert!(chain.holds(), "{chain:?}");
            }
        }
    }

    #[test]
    fn pipeline_or3() {
        let r = lower_bound_pipeline(&or_fn(3).unwrap(), 1.0 / 3.0).unwrap();
        assert!(r.mass_inequality_holds);
        assert!(r.min_norm <= r.degree as f64 / 3.0 + 1e-12, "{r:?}");
        assert_eq!(r.influence_floor_holds, Some(true));
    }

    #[test]
    fn pipeline_dictator_picks_dead_variable() {
        let r = lower_bound_pipeline(&dictator(3, 1).unwrap(), 1.0 / 3.0).unwrap();
        assert_eq!(r.min_index, 2);
        assert!(r.min_norm.abs() < 1e-12);
        assert!(!r.influential);
        assert_eq!(r.influence_floor_holds, None);
    }

    #[test]
    fn pipeline_parity2_ties_to_first_index() {
        let r = lower_bound_pipeline(&parity(2, &[1, 2]).unwrap(), 1.0 / 3.0).unwrap();
        assert!((r.derivative_norms[0] - r.derivative_norms[1]).abs() < 1e-12);
        assert_eq!(r.min_index, 1);
    }
}

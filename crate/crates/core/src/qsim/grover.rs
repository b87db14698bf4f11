//! Search for a position where the hidden string differs from a known reference.
//!
//! The number of mismatches is unknown, so the search runs a fixed schedule of
//! rounds. Round `r` draws an iteration count uniformly from `0..caps[r]`,
//! applies that many Grover iterations to the uniform state, measures, and
//! spends one classical query checking the measured position. A reported
//! index is therefore always a genuine mismatch. The caps double from 1 up to
//! `ceil(sqrt(m))` and then repeat at that value until the worst-case failure
//! probability over every possible mismatch count is at most `delta`. Each
//! round costs at most `caps[r]` queries, so the budget is `sum(caps)`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{PhaseOracle, QueryOracle, StateVector};
use crate::error::{Error, Result};

/// Default failure probability of a mismatch search.
pub const DEFAULT_DELTA: f64 = 1.0 / 3.0;

/// Every schedule built with `delta = 1/3` for `1 <= m <= 64` spends at most
/// `GROVER_BUDGET_CONSTANT * sqrt(m)` queries (checked exhaustively in tests).
pub const GROVER_BUDGET_CONSTANT: f64 = 3.0;

const MAX_ROUNDS: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroverSchedule {
    pub m: usize,
    pub delta: f64,
    /// Exclusive upper bound on the iteration count drawn in each round.
    pub caps: Vec<usize>,
}

impl GroverSchedule {
    pub fn for_size(m: usize, delta: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("search space must be non-empty".into()));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "failure probability must lie in (0, 1), got {delta}"
            )));
        }
        let full = (m as f64).sqrt().ceil() as usize;
        let mut caps = Vec::new();
        let mut c = 1;
        while c < full {
            caps.push(c);
            c *= 2;
        }
        loop {
            caps.push(full);
            let schedule = Self {
                m,
                delta,
                caps: caps.clone(),
            };
            if schedule.worst_failure() <= delta {
                return Ok(schedule);
            }
            if caps.len() >= MAX_ROUNDS {
                return Err(Error::Construction(format!(
                    "no Grover schedule reaches delta = {delta} for m = {m}"
                )));
            }
        }
    }

    /// Worst-case number of oracle queries, including verification reads.
    pub fn budget(&self) -> u64 {
        self.caps.iter().map(|&c| c as u64).sum()
    }

    /// Probability that a round with the given cap measures a mismatch.
    pub fn round_success(m: usize, solutions: usize, cap: usize) -> f64 {
        if solutions == 0 {
            return 0.0;
        }
        let theta = (solutions as f64 / m as f64).sqrt().min(1.0).asin();
        (0..cap)
            .map(|j| ((2 * j + 1) as f64 * theta).sin().powi(2))
            .sum::<f64>()
            / cap as f64
    }

    /// Probability that the whole schedule reports no mismatch when there are `solutions`.
    pub fn failure_probability(&self, solutions: usize) -> f64 {
        self.caps
            .iter()
            .map(|&c| 1.0 - Self::round_success(self.m, solutions, c))
            .product()
    }

    pub fn worst_failure(&self) -> f64 {
        (1..=self.m).map(|s| self.failure_probability(s)).fold(0.0, f64::max)
    }

    /// Expected queries spent, stopping at the first verified mismatch.
    pub fn expected_queries(&self, solutions: usize) -> f64 {
        let mut reach = 1.0;
        let mut total = 0.0;
        for &c in &self.caps {
            total += reach * (c + 1) as f64 / 2.0;
            reach *= 1.0 - Self::round_success(self.m, solutions, c);
        }
        total
    }
}

fn reference_phases(reference: &[bool]) -> Vec<Complex64> {
    reference
        .iter()
        .map(|&w| Complex64::new(if w { -1.0 } else { 1.0 }, 0.0))
        .collect()
}

fn grover_state<O: QueryOracle + ?Sized>(
    oracle: &mut O,
    phases: &[Complex64],
    iterations: usize,
) -> Result<StateVector> {
    let mut state = StateVector::uniform(vec![oracle.len()])?;
    for _ in 0..iterations {
        oracle.phase_query(&mut state, 0)?;
        state.apply_diagonal(0, phases)?;
        state.reflect_about_uniform(0)?;
    }
    Ok(state)
}

/// Runs the schedule against `oracle`; returns a verified mismatching index, if found.
pub fn grover_find_mismatch<O, R>(
    oracle: &mut O,
    reference: &[bool],
    schedule: &GroverSchedule,
    rng: &mut R,
) -> Result<Option<usize>>
where
    O: QueryOracle + ?Sized,
    R: Rng + ?Sized,
{
    if reference.len() != oracle.len() {
        return Err(Error::DimensionMismatch {
            expected: oracle.len(),
            found: reference.len(),
        });
    }
    if schedule.m != oracle.len() {
        return Err(Error::DimensionMismatch {
            expected: oracle.len(),
            found: schedule.m,
        });
    }
    let phases = reference_phases(reference);
    for &cap in &schedule.caps {
        let iterations = rng.random_range(0..cap);
        let mut state = grover_state(oracle, &phases, iterations)?;
        let j = state.measure(0, rng)?;
        if oracle.read_bit(j)? != reference[j] {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Success probability of one round, by simulating every iteration count on the state vector.
pub fn simulated_round_success(bits: &[bool], reference: &[bool], cap: usize) -> Result<f64> {
    if bits.len() != reference.len() {
        return Err(Error::DimensionMismatch {
            expected: bits.len(),
            found: reference.len(),
        });
    }
    let phases = reference_phases(reference);
    let mut scratch = PhaseOracle::new(bits.to_vec());
    let mut total = 0.0;
    for iterations in 0..cap {
        let state = grover_state(&mut scratch, &phases, iterations)?;
        let dist = state.distribution(0)?;
        total += dist
            .iter()
            .zip(bits.iter().zip(reference))
            .filter(|(_, (x, w))| x != w)
            .map(|(p, _)| p)
            .sum::<f64>();
    }
    Ok(total / cap as f64)
}

/// Failure probability of the whole schedule, by state-vector simulation.
pub fn simulated_failure(bits: &[bool], reference: &[bool], schedule: &GroverSchedule) -> Result<f64> {
    schedule
        .caps
        .iter()
        .map(|&c| simulated_round_success(bits, reference, c).map(|p| 1.0 - p))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn schedule_meets_delta_for_every_solution_count() {
        for m in 1..=64 {
            let s = GroverSchedule::for_size(m, DEFAULT_DELTA).unwrap();
            for solutions in 1..=m {
                assert!(s.failure_probability(solutions) <= DEFAULT_DELTA, "m={m} M={solutions}");
            }
            assert_eq!(s.failure_probability(0), 1.0);
        }
    }

    #[test]
    fn budget_constant_holds_up_to_64() {
        let worst = (1..=64)
            .map(|m| GroverSchedule::for_size(m, DEFAULT_DELTA).unwrap().budget() as f64 / (m as f64).sqrt())
            .fold(0.0, f64::max);
        assert!(worst <= GROVER_BUDGET_CONSTANT, "worst ratio {worst}");
    }

    #[test]
    fn closed_form_matches_simulation() {
        let m = 8;
        let w = vec![false, true, true, false, true, false, false, true];
        let schedule = GroverSchedule::for_size(m, DEFAULT_DELTA).unwrap();
        for flips in [vec![3], vec![0, 5], vec![1, 2, 6], (0..m).collect::<Vec<_>>()] {
            let mut x = w.clone();
            for &f in &flips {
                x[f] = !x[f];
            }
            let sim = simulated_failure(&x, &w, &schedule).unwrap();
            let closed = schedule.failure_probability(flips.len());
            assert!((sim - closed).abs() < 1e-12, "{flips:?}: {sim} vs {closed}");
        }
    }

    #[test]
    fn no_solution_never_reports() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let w = vec![true, false, true, true, false, false, true, false];
        let schedule = GroverSchedule::for_size(8, DEFAULT_DELTA).unwrap();
        for _ in 0..50 {
            let mut o = PhaseOracle::new(w.clone());
            assert_eq!(grover_find_mismatch(&mut o, &w, &schedule, &mut rng).unwrap(), None);
            assert!(o.query_count() <= schedule.budget());
        }
    }

    #[test]
    fn single_mismatch_found_often_enough() {
        let w = vec![false; 8];
        let mut x = w.clone();
        x[5] = true;
        let schedule = GroverSchedule::for_size(8, DEFAULT_DELTA).unwrap();
        let exact = 1.0 - simulated_failure(&x, &w, &schedule).unwrap();
        assert!(exact >= 2.0 / 3.0);

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let trials = 2000;
        let mut hits = 0;
        for _ in 0..trials {
            let mut o = PhaseOracle::new(x.clone());
            if let Some(j) = grover_find_mismatch(&mut o, &w, &schedule, &mut rng).unwrap() {
                assert_eq!(j, 5);
                hits += 1;
            }
            assert!(o.query_count() <= schedule.budget());
        }
        let rate = hits as f64 / trials as f64;
        assert!((rate - exact).abs() < 0.04, "rate {rate} exact {exact}");
    }

    #[test]
    fn complement_is_found_with_fewer_expected_queries() {
        let schedule = GroverSchedule::for_size(8, DEFAULT_DELTA).unwrap();
        assert!(schedule.failure_probability(8) <= 1.0 / 3.0);
        assert!(schedule.expected_queries(8) < schedule.expected_queries(1));
        let w = vec![false; 8];
        let x = vec![true; 8];
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut o = PhaseOracle::new(x);
        assert!(grover_find_mismatch(&mut o, &w, &schedule, &mut rng).unwrap().is_some());
        assert_eq!(o.query_count(), 1);
    }

    #[test]
    fn length_mismatch_rejected() {
        let schedule = GroverSchedule::for_size(4, DEFAULT_DELTA).unwrap();
        let mut o = PhaseOracle::new(vec![false; 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(grover_find_mismatch(&mut o, &[false; 3], &schedule, &mut rng).is_err());
        assert!(GroverSchedule::for_size(0, 0.3).is_err());
        assert!(GroverSchedule::for_size(4, 1.0).is_err());
    }
}

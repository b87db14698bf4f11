//! Exact state-vector simulation of the query algorithms.

mod grover;
mod oracle;
mod state;

use rand::Rng;

pub use grover::{
    grover_find_mismatch, simulated_failure, simulated_round_success, GroverSchedule, DEFAULT_DELTA,
    GROVER_BUDGET_CONSTANT,
};
pub use oracle::{prepare_psi, Block, PhaseOracle, QueryOracle};
pub use state::{sample, StateVector, NORM_TOLERANCE};

use crate::error::{Error, Result};

/// Index of an MSB-first bit string.
pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| acc << 1 | b as usize)
}

/// `width`-bit MSB-first representation of `index`.
pub fn index_to_bits(index: usize, width: usize) -> Vec<bool> {
    (0..width).rev().map(|b| index >> b & 1 == 1).collect()
}

/// Hamming distance between equal-length strings.
pub fn hamming(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// `<psi_x|psi_y> = (m - 2 d_H(x, y)) / m`.
pub fn psi_overlap(x: &[bool], y: &[bool]) -> f64 {
    let m = x.len() as f64;
    (m - 2.0 * hamming(x, y) as f64) / m
}

/// State just before measurement in Bernstein-Vazirani: one phase query on
/// the uniform state of a `2^s`-dimensional register, then Hadamard.
pub fn bernstein_vazirani_state<O: QueryOracle + ?Sized>(oracle: &mut O) -> Result<StateVector> {
    let m = oracle.len();
    if m == 0 || !m.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "Bernstein-Vazirani needs 2^s input bits, got {m}"
        )));
    }
    let mut state = StateVector::uniform(vec![m])?;
    oracle.phase_query(&mut state, 0)?;
    state.hadamard(0)?;
    Ok(state)
}

/// Measures the Bernstein-Vazirani state; returns `s` bits, most significant first.
pub fn bernstein_vazirani<O, R>(oracle: &mut O, rng: &mut R) -> Result<Vec<bool>>
where
    O: QueryOracle + ?Sized,
    R: Rng + ?Sized,
{
    let mut state = bernstein_vazirani_state(oracle)?;
    let s = oracle.len().trailing_zeros() as usize;
    Ok(index_to_bits(state.measure(0, rng)?, s))
}

/// Distribution of the Bernstein-Vazirani outcome on `x`, computed without an oracle.
pub fn bernstein_vazirani_distribution(bits: &[bool]) -> Result<Vec<f64>> {
    let mut scratch = PhaseOracle::new(bits.to_vec());
    bernstein_vazirani_state(&mut scratch)?.distribution(0)
}

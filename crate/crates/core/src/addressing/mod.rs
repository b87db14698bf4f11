//! Addressing schemes `a: {0,1}^m -> [k]` computable with few queries, and the
//! total function `f(x) = x_{a(x_{k+1..k+m})}` built from them.
//!
//! Addresses are 1-based throughout, matching `[k] = {1, .., k}`.

mod composed;
mod descriptor;
mod scheme1;
mod scheme2;

use rand::Rng;

pub use composed::{ComposedFunction, DependenceReport};
pub use descriptor::{bits_from_hex, bits_to_hex, SchemeDescriptor, SCHEME_SCHEMA};
pub use scheme1::{distance_interval, Scheme1, DEFAULT_C, MAX_GENERATION_ATTEMPTS};
pub use scheme2::{decode_block, hadamard_codeword, Scheme2};

use crate::error::{Error, Result};
use crate::qsim::QueryOracle;

/// Largest `m` for which surjectivity is also checked by enumerating `{0,1}^m`.
pub const MAX_ENUMERATED_INPUT: usize = 20;

pub trait AddressingScheme {
    fn k(&self) -> usize;

    fn m(&self) -> usize;

    /// Classical reference semantics.
    fn address(&self, x: &[bool]) -> Result<usize>;

    /// The quantum evaluation algorithm, run against `oracle` (length `m`).
    fn quantum_address<O, R>(&self, oracle: &mut O, rng: &mut R) -> Result<usize>
    where
        O: QueryOracle,
        R: Rng + ?Sized;

    /// Exact distribution of [`Self::quantum_address`] on input `x`; entry `a - 1` is `Pr[a]`.
    fn address_distribution(&self, x: &[bool]) -> Result<Vec<f64>>;

    /// Worst-case queries used by [`Self::quantum_address`].
    fn query_budget(&self) -> u64;

    /// One input per address `1..=k`, in order, that the scheme maps to it.
    fn witnesses(&self) -> Vec<Vec<bool>>;

    /// Probability that the quantum algorithm outputs the classical address.
    fn exact_success(&self, x: &[bool]) -> Result<f64> {
        let a = self.address(x)?;
        Ok(self.address_distribution(x)?[a - 1])
    }

    fn check_input(&self, x: &[bool]) -> Result<()> {
        if x.len() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                found: x.len(),
            });
        }
        Ok(())
    }
}

/// Every address in `[k]` is hit: by the construction witnesses and, when
/// `m` is small enough, by exhaustive enumeration of all inputs.
pub fn surjectivity_check<S: AddressingScheme>(scheme: &S) -> Result<bool> {
    let witnesses = scheme.witnesses();
    if witnesses.len() != scheme.k() {
        return Ok(false);
    }
    for (i, w) in witnesses.iter().enumerate() {
        if scheme.address(w)? != i + 1 {
            return Ok(false);
        }
    }
    let m = scheme.m();
    if m <= MAX_ENUMERATED_INPUT {
        let mut hit = vec![false; scheme.k()];
        for r in 0..1usize << m {
            let a = scheme.address(&crate::qsim::index_to_bits(r, m))?;
            hit[a - 1] = true;
        }
        return Ok(hit.iter().all(|h| *h));
    }
    Ok(true)
}

/// Index in `[k]` of an MSB-first address string (the all-zeros string is 1).
pub fn address_index(bits: &[bool]) -> usize {
    crate::qsim::bits_to_index(bits) + 1
}

use std::ops::Range;

use num_complex::Complex64;

use super::StateVector;
use crate::error::{Error, Result};

/// Query access to a hidden bit string, counting every use.
pub trait QueryOracle {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Multiplies the amplitude of register value `j` by `(-1)^{x_{range.start + j}}`;
    /// the register dimension must equal `range.len()`. One query.
    fn phase_query_range(&mut self, state: &mut StateVector, register: usize, range: Range<usize>) -> Result<()>;

    /// Reads one bit classically (one query).
    fn read_bit(&mut self, j: usize) -> Result<bool>;

    /// Queries charged to the underlying oracle so far.
    fn query_count(&self) -> u64;

    /// Multiplies the amplitude of register value `j` by `(-1)^{x_j}`.
    fn phase_query(&mut self, state: &mut StateVector, register: usize) -> Result<()> {
        let len = self.len();
        self.phase_query_range(state, register, 0..len)
    }

    /// Oracle over the sub-string `range`, charging queries to `self`.
    fn block(&mut self, range: Range<usize>) -> Result<Block<'_, Self>>
    where
        Self: Sized,
    {
        check_range(&range, self.len())?;
        Ok(Block { parent: self, range })
    }
}

fn check_range(range: &Range<usize>, len: usize) -> Result<()> {
    if range.start > range.end || range.end > len {
        return Err(Error::InvalidArgument(format!(
            "block {range:?} outside an oracle of length {len}"
        )));
    }
    Ok(())
}

/// Phase oracle over `x in {0,1}^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseOracle {
    bits: Vec<bool>,
    queries: u64,
}

impl PhaseOracle {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits, queries: 0 }
    }

    /// Reads the hidden string without charging a query; for reference semantics only.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl QueryOracle for PhaseOracle {
    fn len(&self) -> usize {
        self.bits.len()
    }

    fn phase_query_range(&mut self, state: &mut StateVector, register: usize, range: Range<usize>) -> Result<()> {
        check_range(&range, self.bits.len())?;
        let dim = state.register_dim(register)?;
        if dim != range.len() {
            return Err(Error::DimensionMismatch {
                expected: range.len(),
                found: dim,
            });
        }
        let phases: Vec<Complex64> = self.bits[range]
            .iter()
            .map(|&b| Complex64::new(if b { -1.0 } else { 1.0 }, 0.0))
            .collect();
        state.apply_diagonal(register, &phases)?;
        self.queries += 1;
        Ok(())
    }

    fn read_bit(&mut self, j: usize) -> Result<bool> {
        let bit = *self.bits.get(j).ok_or_else(|| {
            Error::InvalidArgument(format!("bit {j} outside an oracle of length {}", self.bits.len()))
        })?;
        self.queries += 1;
        Ok(bit)
    }

    fn query_count(&self) -> u64 {
        self.queries
    }
}

/// View of a contiguous block of another oracle.
#[derive(Debug)]
pub struct Block<'a, O: QueryOracle> {
    parent: &'a mut O,
    range: Range<usize>,
}

impl<O: QueryOracle> QueryOracle for Block<'_, O> {
    fn len(&self) -> usize {
        self.range.len()
    }

    fn phase_query_range(&mut self, state: &mut StateVector, register: usize, range: Range<usize>) -> Result<()> {
        check_range(&range, self.range.len())?;
        let shifted = self.range.start + range.start..self.range.start + range.end;
        self.parent.phase_query_range(state, register, shifted)
    }

    fn read_bit(&mut self, j: usize) -> Result<bool> {
        if j >= self.range.len() {
            return Err(Error::InvalidArgument(format!(
                "bit {j} outside a block of length {}",
                self.range.len()
            )));
        }
        self.parent.read_bit(self.range.start + j)
    }

    fn query_count(&self) -> u64 {
        self.parent.query_count()
    }
}

/// `|psi_x> = m^{-1/2} sum_j (-1)^{x_j} |j>`, one query.
pub fn prepare_psi<O: QueryOracle + ?Sized>(oracle: &mut O) -> Result<StateVector> {
    if oracle.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot prepare a state from an empty oracle".into(),
        ));
    }
    let mut state = StateVector::uniform(vec![oracle.len()])?;
    oracle.phase_query(&mut state, 0)?;
    Ok(state)
}

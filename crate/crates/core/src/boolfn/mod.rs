//! Total Boolean functions and their Fourier analysis.
//!
//! Row `r` of a truth table on `n` variables is the input with
//! `x_i = (r >> (n - i)) & 1`, so `x_1` is the most significant bit. The ±1
//! encoding maps bit 0 to +1 and bit 1 to -1.

pub mod bounds;
mod build;
mod format;
mod poly;
pub mod transform;

use num_rational::Ratio;

pub use build::{address_function, and_fn, constant, dictator, majority, or_fn, parity};
pub use poly::{Basis, MultilinearPolynomial};

use crate::error::{Error, Result};
use transform::walsh_hadamard;

/// Largest `n` accepted by routines that walk the whole cube.
pub const MAX_EXHAUSTIVE_VARS: usize = 24;

/// Coefficients at or below this magnitude do not count towards the degree.
pub const COEFF_THRESHOLD: f64 = 1e-9;

pub(crate) fn check_capacity(what: &'static str, n: usize) -> Result<()> {
    if n > MAX_EXHAUSTIVE_VARS {
        return Err(Error::Capacity {
            what,
            n,
            max: MAX_EXHAUSTIVE_VARS,
        });
    }
    Ok(())
}

/// Mask bit carrying the 1-based variable `i`.
pub fn var_bit(n: usize, i: usize) -> Result<u32> {
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("variable index {i} outside 1..={n}")));
    }
    Ok(1 << (n - i))
}

pub fn subset_mask(n: usize, vars: &[usize]) -> Result<u32> {
    vars.iter().try_fold(0, |acc, &i| Ok(acc | var_bit(n, i)?))
}

/// 1-based variables present in `mask`, ascending.
pub fn subset_vars(n: usize, mask: u32) -> Vec<usize> {
    (1..=n).filter(|&i| mask & (1 << (n - i)) != 0).collect()
}

/// A Boolean function `f: {0,1}^n -> {0,1}` stored as its full table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    values: Vec<bool>,
}

/// Summary measures of a Boolean function, in the ±1 encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionStats {
    pub expectation: f64,
    pub variance: f64,
    pub influences: Vec<Ratio<u64>>,
    pub sensitivity: usize,
    pub degree: usize,
}

impl TruthTable {
    pub fn new(n: usize, values: Vec<bool>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "a truth table needs at least one variable".into(),
            ));
        }
        check_capacity("truth table", n)?;
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_capacity("truth table", n)?;
        Self::new(n, (0..1usize << n).map(f).collect())
    }

    /// Table whose row `r` is bit `r` of `bits` (`n <= 6`); handy for enumerating all functions.
    pub fn from_index(n: usize, bits: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::Capacity {
                what: "function index",
                n,
                max: 6,
            });
        }
        Self::from_fn(n, |r| (bits >> r) & 1 == 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value(&self, row: usize) -> bool {
        self.values[row]
    }

    /// Bits of row `r` as `x_1..x_n`.
    pub fn input_bits(&self, row: usize) -> Vec<bool> {
        (1..=self.n).map(|i| row >> (self.n - i) & 1 == 1).collect()
    }

    pub fn complement(&self) -> TruthTable {
        Self {
            n: self.n,
            values: self.values.iter().map(|v| !v).collect(),
        }
    }

    /// Values under the 0 -> +1, 1 -> -1 encoding.
    pub fn pm1_values(&self) -> Vec<f64> {
        self.values.iter().map(|&v| if v { -1.0 } else { 1.0 }).collect()
    }

    /// `2^n * f̂(S)` for every `S`, computed in integers.
    pub fn scaled_fourier(&self) -> Vec<i64> {
        let mut data: Vec<i64> = self.values.iter().map(|&v| if v { -1 } else { 1 }).collect();
        walsh_hadamard(&mut data);
        data
    }

    /// Fourier expansion of the ±1-encoded function.
    pub fn fourier(&self) -> MultilinearPolynomial {
        let scale = 1.0 / self.len() as f64;
        let coefficients = self.scaled_fourier().into_iter().map(|c| c as f64 * scale).collect();
        MultilinearPolynomial::from_coefficients(self.n, Basis::FourierPm1, coefficients)
            .expect("table size already validated")
    }

    /// The unique multilinear polynomial over `{0,1}^n` agreeing with the table.
    pub fn monomial_expansion(&self) -> MultilinearPolynomial {
        let values = self.values.iter().map(|&v| if v { 1.0 } else { 0.0 }).collect();
        MultilinearPolynomial::interpolate(self.n, Basis::Monomial01, values).expect("table size already validated")
    }

    /// Exact degree, read off the integer Fourier spectrum.
    pub fn degree(&self) -> usize {
        self.scaled_fourier()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Number of rows where flipping `x_i` changes the output.
    pub fn influence_count(&self, i: usize) -> Result<u64> {
        let bit = var_bit(self.n, i)? as usize;
        Ok(self
            .values
            .iter()
            .enumerate()
            .filter(|&(r, &v)| v != self.values[r ^ bit])
            .count() as u64)
    }

    /// `Inf_i(f) = Pr_x[f(x) != f(x^i)]` as an exact fraction.
    pub fn influence(&self, i: usize) -> Result<Ratio<u64>> {
        Ok(Ratio::new(self.influence_count(i)?, self.len() as u64))
    }

    pub fn influences(&self) -> Vec<Ratio<u64>> {
        (1..=self.n)
            .map(|i| self.influence(i).expect("index in range"))
            .collect()
    }

    pub fn total_influence(&self) -> Ratio<u64> {
        self.influences().into_iter().fold(Ratio::from_integer(0), |a, b| a + b)
    }

    /// Number of variables whose flip changes `f` at the given row.
    pub fn sensitivity_at(&self, row: usize) -> usize {
        let v = self.values[row];
        (0..self.n).filter(|b| self.values[row ^ (1 << b)] != v).count()
    }

    pub fn sensitivity(&self) -> usize {
        (0..self.len()).map(|r| self.sensitivity_at(r)).max().unwrap_or(0)
    }

    /// Variables with positive influence (1-based, ascending).
    pub fn significant_variables(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|&i| self.influence_count(i).expect("index in range") > 0)
            .collect()
    }

    pub fn stats(&self) -> FunctionStats {
        let spectrum = self.scaled_fourier();
        let scale = 1.0 / self.len() as f64;
        let expectation = spectrum[0] as f64 * scale;
        let variance = spectrum[1..].iter().map(|&c| (c as f64 * scale).powi(2)).sum();
        FunctionStats {
            expectation,
            variance,
            influences: self.influences(),
            sensitivity: self.sensitivity(),
            degree: self.degree(),
        }
    }
}

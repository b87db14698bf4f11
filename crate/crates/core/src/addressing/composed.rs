//! `f(x) = x_{a(x_{k+1..k+m})}`.

use rand::Rng;
use serde::Serialize;

use super::AddressingScheme;
use crate::boolfn::{TruthTable, MAX_EXHAUSTIVE_VARS};
use crate::error::{Error, Result};
use crate::qsim::QueryOracle;

#[derive(Debug, Clone)]
pub struct ComposedFunction<S> {
    scheme: S,
}

/// Which variables of the composed function have positive influence (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DependenceReport {
    pub n: usize,
    pub k: usize,
    pub influential_targets: Vec<usize>,
    pub influential_scheme_bits: Vec<usize>,
    pub all_targets_influential: bool,
    pub all_influential: bool,
}

impl<S: AddressingScheme> ComposedFunction<S> {
    pub fn new(scheme: S) -> Self {
        Self { scheme }
    }

    pub fn scheme(&self) -> &S {
        &self.scheme
    }

    pub fn n(&self) -> usize {
        self.scheme.k() + self.scheme.m()
    }

    fn check_input(&self, x: &[bool]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[bool]) -> Result<bool> {
        self.check_input(x)?;
        let a = self.scheme.address(&x[self.scheme.k()..])?;
        Ok(x[a - 1])
    }

    /// Exhaustive truth table; `n` must be at most the exhaustive capacity.
    pub fn truth_table(&self) -> Result<TruthTable> {
        let n = self.n();
        if n > MAX_EXHAUSTIVE_VARS {
            return Err(Error::Capacity {
                what: "composed variables",
                n,
                max: MAX_EXHAUSTIVE_VARS,
            });
        }
        let k = self.scheme.k();
        // the address depends only on the tail, so evaluate it once per tail value
        let m = self.scheme.m();
        let addresses = (0..1usize << m)
            .map(|tail| self.scheme.address(&crate::qsim::index_to_bits(tail, m)))
            .collect::<Result<Vec<_>>>()?;
        TruthTable::from_fn(n, |row| {
            let a = addresses[row & ((1 << m) - 1)];
            row >> (n - a) & 1 == 1
        })
        .inspect(|tt| debug_assert_eq!(tt.n(), k + m))
    }

    /// Runs the scheme on the last `m` bits, then reads the addressed bit.
    pub fn evaluate_quantum<O, R>(&self, oracle: &mut O, rng: &mut R) -> Result<bool>
    where
        O: QueryOracle,
        R: Rng + ?Sized,
    {
        if oracle.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: oracle.len(),
            });
        }
        let k = self.scheme.k();
        let a = self.scheme.quantum_address(&mut oracle.block(k..self.n())?, rng)?;
        oracle.read_bit(a - 1)
    }

    /// `Pr[evaluate_quantum(x) = 1]`, exactly.
    pub fn probability_one(&self, x: &[bool]) -> Result<f64> {
        self.check_input(x)?;
        let dist = self.scheme.address_distribution(&x[self.scheme.k()..])?;
        Ok(dist.iter().zip(x).filter(|(_, &b)| b).map(|(p, _)| p).sum())
    }

    /// Probability that the quantum evaluation agrees with [`Self::evaluate`].
    pub fn exact_success(&self, x: &[bool]) -> Result<f64> {
        let one = self.probability_one(x)?;
        Ok(if self.evaluate(x)? { one } else { 1.0 - one })
    }

    pub fn query_budget(&self) -> u64 {
        self.scheme.query_budget() + 1
    }

    pub fn dependence_check(&self) -> Result<DependenceReport> {
        let tt = self.truth_table()?;
        let k = self.scheme.k();
        let significant = tt.significant_variables();
        let influential_targets: Vec<usize> = significant.iter().copied().filter(|&i| i <= k).collect();
        let influential_scheme_bits: Vec<usize> = significant.iter().copied().filter(|&i| i > k).collect();
        Ok(DependenceReport {
            n: tt.n(),
            k,
            all_targets_influential: influential_targets.len() == k,
            all_influential: significant.len() == tt.n(),
            influential_targets,
            influential_scheme_bits,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::addressing::{Scheme1, Scheme2, DEFAULT_C};
    use crate::qsim::{index_to_bits, PhaseOracle, DEFAULT_DELTA};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn truth_table_matches_evaluate() {
        let f = ComposedFunction::new(Scheme2::new(1, 2).unwrap());
        let tt = f.truth_table().unwrap();
        for row in 0..256 {
            assert_eq!(tt.value(row), f.evaluate(&index_to_bits(row, 8)).unwrap());
        }
    }

    #[test]
    fn promise_tail_reads_addressed_bit() {
        // tail h(1) h(0) = 01 00 addresses 10 -> index 3
        let f = ComposedFunction::new(Scheme2::new(1, 2).unwrap());
        let x = bits("00100100");
        assert!(f.evaluate(&x).unwrap());
        assert_eq!(f.exact_success(&x).unwrap(), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let mut oracle = PhaseOracle::new(x.clone());
            assert!(f.evaluate_quantum(&mut oracle, &mut rng).unwrap());
            assert!(oracle.query_count() <= f.query_budget());
        }
    }

    #[test]
    fn zero_input_is_certain() {
        let f = ComposedFunction::new(Scheme2::new(1, 2).unwrap());
        assert_eq!(f.probability_one(&[false; 8]).unwrap(), 0.0);
    }

    #[test]
    fn scheme2_dependence() {
        let f = ComposedFunction::new(Scheme2::new(1, 2).unwrap());
        let report = f.dependence_check().unwrap();
        assert!(report.all_targets_influential);
        assert!(report.all_influential);
    }

    #[test]
    fn scheme1_composition() {
        let words = vec![bits("0000"), bits("0110"), bits("1010")];
        let s = Scheme1::from_codewords(words, DEFAULT_C, None, DEFAULT_DELTA).unwrap();
        let f = ComposedFunction::new(s);
        assert_eq!(f.n(), 7);
        assert!(f.dependence_check().unwrap().all_targets_influential);
        for row in 0..128 {
            let x = index_to_bits(row, 7);
            assert!(f.exact_success(&x).unwrap() >= 2.0 / 3.0 - 1e-12);
        }
    }
}

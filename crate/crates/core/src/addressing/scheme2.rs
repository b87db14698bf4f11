//! Hadamard block scheme: `t` blocks of `2^s` bits, each decoded to `s` address bits.

use rand::Rng;

use super::{address_index, AddressingScheme};
use crate::boolfn::transform::walsh_hadamard;
use crate::error::{Error, Result};
use crate::qsim::{
    bernstein_vazirani, bits_to_index, grover_find_mismatch, hamming, index_to_bits, GroverSchedule, QueryOracle,
    DEFAULT_DELTA,
};

/// Largest `s * t` accepted, so `k = 2^{st}` stays enumerable.
pub const MAX_ADDRESS_BITS: usize = 20;
/// Branches below this probability are dropped from exact distributions.
pub const BRANCH_CUTOFF: f64 = 1e-15;

/// `h(z)_j = z · j mod 2` for `j` over `s`-bit strings, most significant first.
pub fn hadamard_codeword(z: &[bool]) -> Vec<bool> {
    let zi = bits_to_index(z);
    (0..1usize << z.len()).map(|j| (zi & j).count_ones() % 2 == 1).collect()
}

/// `Some(z)` if `block = h(z)`.
pub fn decode_block(block: &[bool]) -> Option<Vec<bool>> {
    if block.is_empty() || !block.len().is_power_of_two() {
        return None;
    }
    let s = block.len().trailing_zeros() as usize;
    // h(z)_{2^i} is bit i of z (counting from the least significant end)
    let z: Vec<bool> = (0..s).rev().map(|i| block[1 << i]).collect();
    (hadamard_codeword(&z) == block).then_some(z)
}

/// Bernstein-Vazirani outcome distribution from the integer Walsh transform,
/// `Pr[z] = (sum_j (-1)^{x_j + z·j})^2 / 4^s`, so codeword blocks give exactly 1.
fn exact_bv_distribution(block: &[bool]) -> Vec<f64> {
    let mut w: Vec<i64> = block.iter().map(|&b| if b { -1 } else { 1 }).collect();
    walsh_hadamard(&mut w);
    let scale = (block.len() * block.len()) as f64;
    w.iter().map(|&c| (c * c) as f64 / scale).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scheme2 {
    s: usize,
    t: usize,
    schedule: GroverSchedule,
}

impl Scheme2 {
    pub fn new(s: usize, t: usize) -> Result<Self> {
        Self::with_delta(s, t, DEFAULT_DELTA)
    }

    pub fn with_delta(s: usize, t: usize, delta: f64) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::InvalidArgument(format!("need s, t >= 1, got s = {s}, t = {t}")));
        }
        if s.saturating_mul(t) > MAX_ADDRESS_BITS {
            return Err(Error::Capacity {
                what: "address bits",
                n: s.saturating_mul(t),
                max: MAX_ADDRESS_BITS,
            });
        }
        let schedule = GroverSchedule::for_size(t << s, delta)?;
        Ok(Self { s, t, schedule })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn block_len(&self) -> usize {
        1 << self.s
    }

    pub fn schedule(&self) -> &GroverSchedule {
        &self.schedule
    }

    /// `h(z_1) ... h(z_t)` for an `s t`-bit address string.
    pub fn encode(&self, address: &[bool]) -> Result<Vec<bool>> {
        if address.len() != self.s * self.t {
            return Err(Error::DimensionMismatch {
                expected: self.s * self.t,
                found: address.len(),
            });
        }
        Ok(address.chunks(self.s).flat_map(hadamard_codeword).collect())
    }

    /// Classical address as an `s t`-bit string; all zeros unless every block is a codeword.
    pub fn address_bits(&self, x: &[bool]) -> Result<Vec<bool>> {
        self.check_input(x)?;
        let mut z = Vec::with_capacity(self.s * self.t);
        for block in x.chunks(self.block_len()) {
            match decode_block(block) {
                Some(bits) => z.extend(bits),
                None => return Ok(vec![false; self.s * self.t]),
            }
        }
        Ok(z)
    }
}

impl AddressingScheme for Scheme2 {
    fn k(&self) -> usize {
        1 << (self.s * self.t)
    }

    fn m(&self) -> usize {
        self.t << self.s
    }

    fn address(&self, x: &[bool]) -> Result<usize> {
        Ok(address_index(&self.address_bits(x)?))
    }

    fn quantum_address<O, R>(&self, oracle: &mut O, rng: &mut R) -> Result<usize>
    where
        O: QueryOracle,
        R: Rng + ?Sized,
    {
        if oracle.len() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                found: oracle.len(),
            });
        }
        let len = self.block_len();
        let mut z = Vec::with_capacity(self.s * self.t);
        for j in 0..self.t {
            z.extend(bernstein_vazirani(&mut oracle.block(j * len..(j + 1) * len)?, rng)?);
        }
        let reference = self.encode(&z)?;
        match grover_find_mismatch(oracle, &reference, &self.schedule, rng)? {
            None => Ok(address_index(&z)),
            Some(_) => Ok(1),
        }
    }

    fn address_distribution(&self, x: &[bool]) -> Result<Vec<f64>> {
        self.check_input(x)?;
        let blocks = x
            .chunks(self.block_len())
            .map(exact_bv_distribution)
            .collect::<Vec<_>>();
        // joint BV outcomes as (address index, probability), pruned
        let mut branches: Vec<(usize, f64)> = vec![(0, 1.0)];
        for dist in &blocks {
            let mut next = Vec::new();
            for &(prefix, p) in &branches {
                for (z, &q) in dist.iter().enumerate() {
                    if p * q >= BRANCH_CUTOFF {
                        next.push((prefix << self.s | z, p * q));
                    }
                }
            }
            branches = next;
        }
        let mut out = vec![0.0; self.k()];
        for (index, p) in branches {
            let reference = self.encode(&index_to_bits(index, self.s * self.t))?;
            let mismatches = hamming(x, &reference);
            let missed = if mismatches == 0 {
                1.0
            } else {
                self.schedule.failure_probability(mismatches)
            };
            out[index] += p * missed;
            out[0] += p * (1.0 - missed);
        }
        Ok(out)
    }

    fn query_budget(&self) -> u64 {
        self.t as u64 + self.schedule.budget()
    }

    fn witnesses(&self) -> Vec<Vec<bool>> {
        (0..self.k())
            .map(|a| self.encode(&index_to_bits(a, self.s * self.t)).expect("address width"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::PhaseOracle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn codeword_examples() {
        assert_eq!(hadamard_codeword(&bits("00")), bits("0000"));
        assert_eq!(hadamard_codeword(&bits("10")), bits("0011"));
        assert_eq!(hadamard_codeword(&bits("01")), bits("0101"));
        for a in 0..8 {
            for b in a + 1..8 {
                let d = hamming(
                    &hadamard_codeword(&index_to_bits(a, 3)),
                    &hadamard_codeword(&index_to_bits(b, 3)),
                );
                assert_eq!(d, 4);
            }
        }
    }

    #[test]
    fn decoding_inverts_encoding() {
        for z in 0..16 {
            let z = index_to_bits(z, 4);
            assert_eq!(decode_block(&hadamard_codeword(&z)), Some(z));
        }
        assert_eq!(decode_block(&bits("0001")), None);
    }

    #[test]
    fn classical_semantics() {
        let s = Scheme2::new(2, 2).unwrap();
        assert_eq!(s.address_bits(&bits("00000000")).unwrap(), bits("0000"));
        assert_eq!(s.address_bits(&bits("00110101")).unwrap(), bits("1001"));
        assert_eq!(s.address_bits(&bits("00110111")).unwrap(), bits("0000"));
        assert_eq!(s.address(&bits("00110101")).unwrap(), 0b1001 + 1);
    }

    #[test]
    fn smallest_instance_is_exact() {
        let s = Scheme2::new(1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let mut oracle = PhaseOracle::new(bits("01"));
            assert_eq!(s.quantum_address(&mut oracle, &mut rng).unwrap(), 2);
        }
        assert_eq!(s.address_distribution(&bits("01")).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn promise_inputs_succeed_with_certainty() {
        let s = Scheme2::new(1, 2).unwrap();
        for (a, w) in s.witnesses().iter().enumerate() {
            assert_eq!(s.address(w).unwrap(), a + 1);
            assert_eq!(s.exact_success(w).unwrap(), 1.0);
        }
    }

    #[test]
    fn every_input_succeeds_with_two_thirds() {
        let s = Scheme2::new(1, 2).unwrap();
        for r in 0..16 {
            let x = index_to_bits(r, 4);
            let dist = s.address_distribution(&x).unwrap();
            assert!((dist.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            let a = s.address(&x).unwrap();
            assert!(dist[a - 1] >= 2.0 / 3.0, "{x:?}: {dist:?}");
        }
    }

    #[test]
    fn exact_distribution_matches_state_vector() {
        for r in 0..16 {
            let x = index_to_bits(r, 4);
            let sv = crate::qsim::bernstein_vazirani_distribution(&x).unwrap();
            for (a, b) in exact_bv_distribution(&x).iter().zip(&sv) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn runs_stay_within_budget() {
        let s = Scheme2::new(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for r in 0..64 {
            let x = index_to_bits(r * 4001 % 256, 8);
            let mut oracle = PhaseOracle::new(x);
            s.quantum_address(&mut oracle, &mut rng).unwrap();
            assert!(oracle.query_count() <= s.query_budget());
        }
    }
}

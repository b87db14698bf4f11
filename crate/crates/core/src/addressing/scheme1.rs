//! Random codebook scheme: `a(x) = i` if `x = w_i`, else `1`.

use num_complex::Complex64;
use rand::Rng;

use super::AddressingScheme;
use crate::discrimination::{
    build_povm, distribution_from_overlaps, gram_from_codewords, DiscriminationPovm, GramMatrix,
};
use crate::error::{Error, Result};
use crate::qsim::{
    grover_find_mismatch, hamming, prepare_psi, psi_overlap, sample, GroverSchedule, QueryOracle, StateVector,
};

pub const DEFAULT_C: f64 = 1.0;
/// Draws allowed for each new codeword before giving up.
pub const MAX_GENERATION_ATTEMPTS: usize = 10_000;
/// Largest tensor power accepted for the discrimination step.
pub const MAX_T_PRIME: u32 = 100_000;
/// Largest `k * m` accepted.
pub const MAX_CODEBOOK_BITS: usize = 1 << 20;

/// `[m/2 - c t sqrt(t log2 t), m/2 + c t sqrt(t log2 t)]`.
pub fn distance_interval(m: usize, c: f64, t: f64) -> (f64, f64) {
    let half_width = c * t * (t * t.log2().max(0.0)).sqrt();
    (m as f64 / 2.0 - half_width, m as f64 / 2.0 + half_width)
}

#[derive(Debug, Clone)]
pub struct Scheme1 {
    m: usize,
    c: f64,
    t: f64,
    codewords: Vec<Vec<bool>>,
    t_prime: u32,
    schedule: GroverSchedule,
    gram: GramMatrix,
    povm: DiscriminationPovm,
    seed: Option<u64>,
}

impl Scheme1 {
    /// Samples `k` words of `m` bits, one at a time, redrawing any word whose
    /// distance to an earlier word falls outside the interval or is `0` or `m`.
    pub fn generate<R: Rng + ?Sized>(k: usize, m: usize, c: f64, rng: &mut R) -> Result<Self> {
        check_shape(k, m)?;
        let t = (m as f64).sqrt();
        let (lo, hi) = distance_interval(m, c, t);
        let mut words: Vec<Vec<bool>> = Vec::with_capacity(k);
        while words.len() < k {
            let mut accepted = false;
            for _ in 0..MAX_GENERATION_ATTEMPTS {
                let candidate: Vec<bool> = (0..m).map(|_| rng.random()).collect();
                if words.iter().all(|w| distance_ok(hamming(w, &candidate), m, lo, hi)) {
                    words.push(candidate);
                    accepted = true;
                    break;
                }
            }
            if !accepted {
                return Err(Error::Construction(format!(
                    "no codeword {} of {k} found in {MAX_GENERATION_ATTEMPTS} draws; try a larger m or c",
                    words.len() + 1
                )));
            }
        }
        Self::from_codewords(words, c, Some(t), crate::qsim::DEFAULT_DELTA)
    }

    /// Builds the scheme from an explicit codebook; `t` defaults to `sqrt(m)`.
    pub fn from_codewords(codewords: Vec<Vec<bool>>, c: f64, t: Option<f64>, delta: f64) -> Result<Self> {
        let k = codewords.len();
        let m = codewords.first().map_or(0, Vec::len);
        check_shape(k, m)?;
        if codewords.iter().any(|w| w.len() != m) {
            return Err(Error::InvalidArgument("codewords must have equal length".into()));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
        }
        let t = t.unwrap_or((m as f64).sqrt());
        let (lo, hi) = distance_interval(m, c, t);
        for i in 0..k {
            for j in i + 1..k {
                let d = hamming(&codewords[i], &codewords[j]);
                if !distance_ok(d, m, lo, hi) {
                    return Err(Error::Construction(format!(
                        "codewords {} and {} are at distance {d}, outside ({}, {}) ∩ [{lo:.3}, {hi:.3}]",
                        i + 1,
                        j + 1,
                        0,
                        m
                    )));
                }
            }
        }
        let t_prime = adaptive_t_prime(&codewords)?;
        let gram = gram_from_codewords(&codewords, t_prime)?;
        let povm = build_povm(&gram)?;
        let schedule = GroverSchedule::for_size(m, delta)?;
        Ok(Self {
            m,
            c,
            t,
            codewords,
            t_prime,
            schedule,
            gram,
            povm,
            seed: None,
        })
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn codewords(&self) -> &[Vec<bool>] {
        &self.codewords
    }

    pub fn t_prime(&self) -> u32 {
        self.t_prime
    }

    pub fn schedule(&self) -> &GroverSchedule {
        &self.schedule
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn povm(&self) -> &DiscriminationPovm {
        &self.povm
    }

    /// Largest `|<psi_{w_i}|psi_{w_j}>|` over distinct pairs.
    pub fn max_overlap(&self) -> f64 {
        max_overlap(&self.codewords)
    }

    /// Outcome distribution of the discrimination measurement on
    /// `|psi_x>^{⊗t'}`; index 0 is the inconclusive outcome.
    pub fn measurement_distribution(&self, x: &[bool]) -> Result<Vec<f64>> {
        self.check_input(x)?;
        let overlaps: Vec<Complex64> = self
            .codewords
            .iter()
            .map(|w| Complex64::new(psi_overlap(w, x).powi(self.t_prime as i32), 0.0))
            .collect();
        Ok(distribution_from_overlaps(&overlaps))
    }

    fn reference_state(&self, w: &[bool]) -> Result<StateVector> {
        let norm = 1.0 / (self.m as f64).sqrt();
        let amplitudes = w
            .iter()
            .map(|&b| Complex64::new(if b { -norm } else { norm }, 0.0))
            .collect();
        StateVector::from_amplitudes(vec![self.m], amplitudes)
    }
}

fn check_shape(k: usize, m: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need k >= 2 codewords, got {k}")));
    }
    if m < 2 {
        return Err(Error::InvalidArgument(format!("need m >= 2, got {m}")));
    }
    if k.saturating_mul(m) > MAX_CODEBOOK_BITS {
        return Err(Error::Capacity {
            what: "codebook bits",
            n: k.saturating_mul(m),
            max: MAX_CODEBOOK_BITS,
        });
    }
    Ok(())
}

fn distance_ok(d: usize, m: usize, lo: f64, hi: f64) -> bool {
    d > 0 && d < m && d as f64 >= lo && d as f64 <= hi
}

fn max_overlap(codewords: &[Vec<bool>]) -> f64 {
    let mut mu: f64 = 0.0;
    for i in 0..codewords.len() {
        for j in i + 1..codewords.len() {
            mu = mu.max(psi_overlap(&codewords[i], &codewords[j]).abs());
        }
    }
    mu
}

/// Smallest `t'` with `mu^{t'} <= 1/k^2`.
fn adaptive_t_prime(codewords: &[Vec<bool>]) -> Result<u32> {
    let k = codewords.len() as f64;
    let target = 1.0 / (k * k);
    let mu = max_overlap(codewords);
    let mut t_prime = 1;
    while mu.powi(t_prime as i32) > target {
        t_prime += 1;
        if t_prime > MAX_T_PRIME {
            return Err(Error::Construction(format!(
                "overlap {mu} needs a tensor power above {MAX_T_PRIME}"
            )));
        }
    }
    Ok(t_prime)
}

impl AddressingScheme for Scheme1 {
    fn k(&self) -> usize {
        self.codewords.len()
    }

    fn m(&self) -> usize {
        self.m
    }

    fn address(&self, x: &[bool]) -> Result<usize> {
        self.check_input(x)?;
        Ok(self.codewords.iter().position(|w| w == x).map_or(1, |i| i + 1))
    }

    fn quantum_address<O, R>(&self, oracle: &mut O, rng: &mut R) -> Result<usize>
    where
        O: QueryOracle,
        R: Rng + ?Sized,
    {
        if oracle.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: oracle.len(),
            });
        }
        let references = self
            .codewords
            .iter()
            .map(|w| self.reference_state(w))
            .collect::<Result<Vec<_>>>()?;
        let mut overlaps = vec![Complex64::new(1.0, 0.0); self.codewords.len()];
        for _ in 0..self.t_prime {
            let psi = prepare_psi(oracle)?;
            for (o, r) in overlaps.iter_mut().zip(&references) {
                *o *= r.inner(&psi)?;
            }
        }
        let outcome = sample(&distribution_from_overlaps(&overlaps), rng);
        if outcome <= 1 {
            return Ok(1);
        }
        match grover_find_mismatch(oracle, &self.codewords[outcome - 1], &self.schedule, rng)? {
            None => Ok(outcome),
            Some(_) => Ok(1),
        }
    }

    fn address_distribution(&self, x: &[bool]) -> Result<Vec<f64>> {
        let outcomes = self.measurement_distribution(x)?;
        let mut dist = vec![0.0; self.k()];
        dist[0] += outcomes[0] + outcomes[1];
        for (i, &p) in outcomes.iter().enumerate().skip(2) {
            let mismatches = hamming(x, &self.codewords[i - 1]);
            let missed = if mismatches == 0 {
                1.0
            } else {
                self.schedule.failure_probability(mismatches)
            };
            dist[i - 1] += p * missed;
            dist[0] += p * (1.0 - missed);
        }
        Ok(dist)
    }

    fn query_budget(&self) -> u64 {
        self.t_prime as u64 + self.schedule.budget()
    }

    fn witnesses(&self) -> Vec<Vec<bool>> {
        self.codewords.clone()
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

    fn orthogonal() -> Scheme1 {
        Scheme1::from_codewords(
            vec![bits("0000"), bits("0110")],
            DEFAULT_C,
            None,
            crate::qsim::DEFAULT_DELTA,
        )
        .unwrap()
    }

    #[test]
    fn orthogonal_pair_needs_one_copy() {
        let s = orthogonal();
        assert_eq!(s.t_prime(), 1);
        assert_eq!(s.max_overlap(), 0.0);
    }

    #[test]
    fn equal_or_complementary_words_rejected() {
        let delta = crate::qsim::DEFAULT_DELTA;
        let same = Scheme1::from_codewords(vec![bits("0110"), bits("0110")], DEFAULT_C, None, delta);
        assert!(matches!(same, Err(Error::Construction(_))));
        let comp = Scheme1::from_codewords(vec![bits("0110"), bits("1001")], DEFAULT_C, None, delta);
        assert!(matches!(comp, Err(Error::Construction(_))));
    }

    #[test]
    fn classical_semantics() {
        let s = orthogonal();
        assert_eq!(s.address(&bits("0110")).unwrap(), 2);
        assert_eq!(s.address(&bits("0000")).unwrap(), 1);
        assert_eq!(s.address(&bits("1111")).unwrap(), 1);
        assert!(s.address(&bits("000")).is_err());
    }

    #[test]
    fn orthogonal_second_codeword_succeeds_with_two_thirds() {
        let s = orthogonal();
        let p = s.exact_success(&bits("0110")).unwrap();
        assert!((p - 2.0 / 3.0).abs() < 1e-12, "{p}");
    }

    #[test]
    fn first_codeword_and_neighbours() {
        let s = orthogonal();
        assert!(s.exact_success(&bits("0000")).unwrap() >= 2.0 / 3.0);
        assert!(s.exact_success(&bits("0111")).unwrap() >= 2.0 / 3.0);
    }

    #[test]
    fn generated_codebook_respects_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = Scheme1::generate(8, 16, DEFAULT_C, &mut rng).unwrap();
        let k = s.k() as f64;
        assert!(s.max_overlap().powi(s.t_prime() as i32) <= 1.0 / (k * k));
        let (lo, hi) = distance_interval(16, DEFAULT_C, 4.0);
        for i in 0..8 {
            for j in i + 1..8 {
                let d = hamming(&s.codewords()[i], &s.codewords()[j]) as f64;
                assert!(d >= lo && d <= hi && d > 0.0 && d < 16.0);
            }
        }
    }

    #[test]
    fn generation_exhaustion_is_reported() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // no three 2-bit words are pairwise at distance 1
        let err = Scheme1::generate(3, 2, DEFAULT_C, &mut rng).unwrap_err();
        assert!(matches!(err, Error::Construction(_)));
    }

    #[test]
    fn sampled_runs_match_distribution_and_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = Scheme1::generate(4, 8, DEFAULT_C, &mut rng).unwrap();
        let x = s.codewords()[2].clone();
        let dist = s.address_distribution(&x).unwrap();
        let trials = 2000;
        let mut hits = 0;
        for _ in 0..trials {
            let mut oracle = PhaseOracle::new(x.clone());
            if s.quantum_address(&mut oracle, &mut rng).unwrap() == 3 {
                hits += 1;
            }
            assert!(oracle.query_count() <= s.query_budget());
        }
        let rate = hits as f64 / trials as f64;
        assert!((rate - dist[2]).abs() < 0.05, "{rate} vs {}", dist[2]);
    }
}

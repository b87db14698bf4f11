use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Tolerance on `sum |a|^2 = 1`.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Pure state over a product of registers of arbitrary finite dimension.
///
/// Register 0 is the most significant digit of the flat amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    fn total(dims: &[usize]) -> Result<usize> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "register dimensions must be positive, got {dims:?}"
            )));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&t| t <= 1 << 26)
            .ok_or(Error::Capacity {
                what: "state vector",
                n: dims.len(),
                max: 26,
            })
    }

    pub fn from_amplitudes(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let total = Self::total(&dims)?;
        if amplitudes.len() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: amplitudes.len(),
            });
        }
        let state = Self { dims, amplitudes };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "state has squared norm {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    /// Computational basis state with the given register values.
    pub fn basis(dims: Vec<usize>, values: &[usize]) -> Result<Self> {
        let total = Self::total(&dims)?;
        if values.len() != dims.len() {
            return Err(Error::DimensionMismatch {
                expected: dims.len(),
                found: values.len(),
            });
        }
        let mut index = 0;
        for (&v, &d) in values.iter().zip(&dims) {
            if v >= d {
                return Err(Error::InvalidArgument(format!(
                    "register value {v} outside dimension {d}"
                )));
            }
            index = index * d + v;
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); total];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { dims, amplitudes })
    }

    /// Equal superposition over every basis state.
    pub fn uniform(dims: Vec<usize>) -> Result<Self> {
        let total = Self::total(&dims)?;
        let a = Complex64::new(1.0 / (total as f64).sqrt(), 0.0);
        Ok(Self {
            dims,
            amplitudes: vec![a; total],
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                found: other.amplitudes.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self::total(&dims)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector { dims, amplitudes })
    }

    pub fn register_dim(&self, register: usize) -> Result<usize> {
        self.dims.get(register).copied().ok_or_else(|| {
            Error::InvalidArgument(format!(
                "register {register} does not exist ({} registers)",
                self.dims.len()
            ))
        })
    }

    fn stride(&self, register: usize) -> usize {
        self.dims[register + 1..].iter().product()
    }

    /// Value held by `register` in the flat basis index.
    pub fn register_value(&self, index: usize, register: usize) -> usize {
        (index / self.stride(register)) % self.dims[register]
    }

    /// Multiplies every amplitude by `phases[value of register]`.
    pub fn apply_diagonal(&mut self, register: usize, phases: &[Complex64]) -> Result<()> {
        let dim = self.register_dim(register)?;
        if phases.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: phases.len(),
            });
        }
        let stride = self.stride(register);
        for (idx, a) in self.amplitudes.iter_mut().enumerate() {
            *a *= phases[(idx / stride) % dim];
        }
        Ok(())
    }

    /// Applies `op` to every fibre of the register (the vector of amplitudes
    /// obtained by varying that register with all others fixed).
    pub fn apply_on_register(&mut self, register: usize, mut op: impl FnMut(&mut [Complex64])) -> Result<()> {
        let dim = self.register_dim(register)?;
        let stride = self.stride(register);
        let block = dim * stride;
        let mut fibre = vec![Complex64::new(0.0, 0.0); dim];
        for outer in (0..self.amplitudes.len()).step_by(block) {
            for inner in 0..stride {
                for (v, slot) in fibre.iter_mut().enumerate() {
                    *slot = self.amplitudes[outer + v * stride + inner];
                }
                op(&mut fibre);
                for (v, slot) in fibre.iter().enumerate() {
                    self.amplitudes[outer + v * stride + inner] = *slot;
                }
            }
        }
        Ok(())
    }

    /// Normalised Walsh-Hadamard transform on a register of dimension `2^s`.
    pub fn hadamard(&mut self, register: usize) -> Result<()> {
        let dim = self.register_dim(register)?;
        if !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "Hadamard transform needs a power-of-two register, got {dim}"
            )));
        }
        let scale = 1.0 / (dim as f64).sqrt();
        self.apply_on_register(register, |fibre| {
            crate::boolfn::transform::walsh_hadamard(fibre);
            fibre.iter_mut().for_each(|a| *a *= scale);
        })
    }

    /// Reflection `2|u><u| - I` about the uniform state of the register.
    pub fn reflect_about_uniform(&mut self, register: usize) -> Result<()> {
        self.apply_on_register(register, |fibre| {
            let mean: Complex64 = fibre.iter().sum::<Complex64>() / fibre.len() as f64;
            fibre.iter_mut().for_each(|a| *a = 2.0 * mean - *a);
        })
    }

    /// Born-rule marginal distribution of one register.
    pub fn distribution(&self, register: usize) -> Result<Vec<f64>> {
        let dim = self.register_dim(register)?;
        let stride = self.stride(register);
        let mut probs = vec![0.0; dim];
        for (idx, a) in self.amplitudes.iter().enumerate() {
            probs[(idx / stride) % dim] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// Samples the register and collapses the state onto the outcome.
    pub fn measure<R: Rng + ?Sized>(&mut self, register: usize, rng: &mut R) -> Result<usize> {
        let probs = self.distribution(register)?;
        let outcome = sample(&probs, rng);
        let (dim, stride) = (self.dims[register], self.stride(register));
        let scale = 1.0 / probs[outcome].sqrt();
        for (idx, a) in self.amplitudes.iter_mut().enumerate() {
            if (idx / stride) % dim == outcome {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(outcome)
    }
}

/// Draws an index from a probability vector.
pub fn sample<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let total: f64 = probs.iter().sum();
    let mut u = rng.random::<f64>() * total;
    let mut last = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        last = i;
        if u < p {
            return i;
        }
        u -= p;
    }
    last
}

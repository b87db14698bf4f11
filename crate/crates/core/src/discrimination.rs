//! Measurement distinguishing `k` nearly orthogonal pure states.
//!
//! With `|<phi_i|phi_j>| <= 1/k^2` for `i != j`, the operators
//! `E_i = (2/3)|phi_i><phi_i|` and `E_0 = I - sum_i E_i` form a POVM and
//! outcome `i` has probability exactly 2/3 on `|phi_i>`. Everything is done in
//! the `k`-dimensional span of the states: writing `G` for the Gram matrix,
//! the columns of `G^{1/2}` are coordinates `g_i` of the states in an
//! orthonormal basis of the span, `sum_i g_i g_i^† = G`, and so
//! `E_0 = I - (2/3) G` there. The ambient tensor-power space is never built.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qsim::{hamming, psi_overlap};

/// Tolerance on eigenvalue signs, unit diagonals and Hermitian symmetry.
pub const PSD_TOLERANCE: f64 = 1e-9;
/// Probability of the correct outcome on each state.
pub const SUCCESS_PROBABILITY: f64 = 2.0 / 3.0;
/// Absolute slack on the `1/k^2` overlap hypothesis.
pub const HYPOTHESIS_SLACK: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Pairwise inner products `G_ij = <phi_i|phi_j>` of `k` unit vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<Complex64>,
}

impl GramMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let k = entries.nrows();
        if k == 0 || entries.ncols() != k {
            return Err(Error::InvalidArgument(format!(
                "Gram matrix must be square and non-empty, got {}x{}",
                k,
                entries.ncols()
            )));
        }
        for i in 0..k {
            if (entries[(i, i)] - c(1.0)).norm() > PSD_TOLERANCE {
                return Err(Error::InvalidArgument(format!(
                    "diagonal entry {i} is {}, expected 1",
                    entries[(i, i)]
                )));
            }
            for j in 0..i {
                if (entries[(i, j)] - entries[(j, i)].conj()).norm() > PSD_TOLERANCE {
                    return Err(Error::InvalidArgument(format!(
                        "entries ({i}, {j}) and ({j}, {i}) are not conjugate"
                    )));
                }
            }
        }
        let gram = Self { entries };
        let min = gram.eigenvalues()[0];
        if min < -PSD_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "Gram matrix has negative eigenvalue {min}"
            )));
        }
        Ok(gram)
    }

    pub fn from_real(k: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != k * k {
            return Err(Error::DimensionMismatch {
                expected: k * k,
                found: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_iterator(k, k, entries.iter().map(|&v| c(v))))
    }

    pub fn k(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        sorted_eigenvalues(&self.entries)
    }

    /// The off-diagonal pair `(i, j)` (0-based) of largest modulus, with that modulus.
    pub fn max_off_diagonal(&self) -> Option<(usize, usize, f64)> {
        let k = self.k();
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.entries[(i, j)].norm()))
            .fold(None, |best, cur| match best {
                Some(b) if b.2 >= cur.2 => Some(b),
                _ => Some(cur),
            })
    }

    /// Checks `|G_ij| <= 1/k^2` off the diagonal.
    pub fn check_hypothesis(&self) -> Result<()> {
        let k = self.k();
        let bound = 1.0 / (k * k) as f64;
        match self.max_off_diagonal() {
            Some((i, j, magnitude)) if magnitude > bound + HYPOTHESIS_SLACK => Err(Error::Hypothesis {
                i: i + 1,
                j: j + 1,
                magnitude,
                bound,
            }),
            _ => Ok(()),
        }
    }
}

fn sorted_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// `G_ij = ((m - 2 d_H(w_i, w_j)) / m)^{t'}`, the Gram matrix of the states `|psi_{w_i}>^{⊗t'}`.
pub fn gram_from_codewords(codewords: &[Vec<bool>], t_prime: u32) -> Result<GramMatrix> {
    let k = codewords.len();
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one codeword".into()));
    }
    let m = codewords[0].len();
    if m == 0 || codewords.iter().any(|w| w.len() != m) {
        return Err(Error::InvalidArgument(
            "codewords must be non-empty and of equal length".into(),
        ));
    }
    let mut entries = DMatrix::from_element(k, k, c(0.0));
    for i in 0..k {
        entries[(i, i)] = c(1.0);
        for j in i + 1..k {
            if hamming(&codewords[i], &codewords[j]) == 0 {
                return Err(Error::InvalidArgument(format!(
                    "codewords {} and {} are identical",
                    i + 1,
                    j + 1
                )));
            }
            let v = psi_overlap(&codewords[i], &codewords[j]).powi(t_prime as i32);
            entries[(i, j)] = c(v);
            entries[(j, i)] = c(v);
        }
    }
    GramMatrix::new(entries)
}

/// The POVM in span coordinates.
#[derive(Debug, Clone)]
pub struct DiscriminationPovm {
    k: usize,
    /// Column `i` holds the coordinates of `|phi_{i+1}>`.
    states: DMatrix<Complex64>,
    /// `E_1..E_k`.
    effects: Vec<DMatrix<Complex64>>,
    inconclusive: DMatrix<Complex64>,
    pub gram_lambda_max: f64,
    pub inconclusive_min_eigenvalue: f64,
}

impl DiscriminationPovm {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `E_i` for `i` in `1..=k`, `E_0` for `i = 0`.
    pub fn effect(&self, i: usize) -> Option<&DMatrix<Complex64>> {
        match i {
            0 => Some(&self.inconclusive),
            _ => self.effects.get(i - 1),
        }
    }

    /// `sum_{i=0}^k E_i`, which should be the identity on the span.
    pub fn effect_sum(&self) -> DMatrix<Complex64> {
        self.effects.iter().fold(self.inconclusive.clone(), |acc, e| acc + e)
    }

    /// Outcome probabilities (index 0 is the inconclusive outcome) given `|phi_i>`, `i` 1-based.
    pub fn outcome_distribution(&self, given: usize) -> Result<Vec<f64>> {
        if given == 0 || given > self.k {
            return Err(Error::InvalidArgument(format!(
                "state index {given} outside 1..={}",
                self.k
            )));
        }
        let v = self.states.column(given - 1);
        let expect = |e: &DMatrix<Complex64>| (v.adjoint() * e * v)[(0, 0)].re;
        let mut probs = Vec::with_capacity(self.k + 1);
        probs.push(expect(&self.inconclusive));
        probs.extend(self.effects.iter().map(expect));
        Ok(probs)
    }
}

/// Builds `E_i = (2/3)|phi_i><phi_i|`, `E_0 = I - sum E_i` from the Gram matrix.
pub fn build_povm(gram: &GramMatrix) -> Result<DiscriminationPovm> {
    gram.check_hypothesis()?;
    let k = gram.k();
    let eig = SymmetricEigen::new(gram.entries.clone());
    let gram_lambda_max = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let root = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| c(l.max(0.0).sqrt())));
    let states = &eig.eigenvectors * root * eig.eigenvectors.adjoint();

    let effects: Vec<DMatrix<Complex64>> = (0..k)
        .map(|i| {
            let v = states.column(i);
            (v * v.adjoint()).map(|z| z * SUCCESS_PROBABILITY)
        })
        .collect();
    let identity = DMatrix::<Complex64>::identity(k, k);
    let inconclusive = effects.iter().fold(identity, |acc, e| acc - e);

    for (i, e) in effects.iter().enumerate() {
        let min = sorted_eigenvalues(e)[0];
        if min < -PSD_TOLERANCE {
            return Err(Error::Internal(format!("E_{} has eigenvalue {min}", i + 1)));
        }
    }
    let inconclusive_min_eigenvalue = sorted_eigenvalues(&inconclusive)[0];
    if inconclusive_min_eigenvalue < -PSD_TOLERANCE {
        return Err(Error::Internal(format!(
            "E_0 has eigenvalue {inconclusive_min_eigenvalue}"
        )));
    }
    Ok(DiscriminationPovm {
        k,
        states,
        effects,
        inconclusive,
        gram_lambda_max,
        inconclusive_min_eigenvalue,
    })
}

/// Outcome probabilities for an arbitrary state `|phi>` given only
/// `overlaps[i] = <phi_{i+1}|phi>`: `Pr[i] = (2/3)|overlap|^2`, rest on outcome 0.
///
/// Valid for states outside the span too, since `E_0` acts as the identity
/// on the orthogonal complement.
pub fn distribution_from_overlaps(overlaps: &[Complex64]) -> Vec<f64> {
    let mut probs = Vec::with_capacity(overlaps.len() + 1);
    probs.push(0.0);
    probs.extend(overlaps.iter().map(|o| SUCCESS_PROBABILITY * o.norm_sqr()));
    probs[0] = (1.0 - probs[1..].iter().sum::<f64>()).max(0.0);
    probs
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaReport {
    pub k: usize,
    /// `||A|phi_j> - |phi_j>||` for each state.
    pub delta_norms: Vec<f64>,
    /// `(k-1)/k^2`
    pub bound: f64,
    pub deltas_within_bound: bool,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// `|lambda(G) - 1| <= 1/2` for every eigenvalue.
    pub spectrum_within_half: bool,
}

/// Computes `||delta_j||` exactly from `G` and checks the perturbation bounds.
///
/// With `H = G - I`, `delta_j = sum_i |phi_i> H_ij`, so `||delta_j||^2 = (H G H)_jj`.
pub fn delta_norm_check(gram: &GramMatrix) -> Result<DeltaReport> {
    gram.check_hypothesis()?;
    let k = gram.k();
    let h = &gram.entries - DMatrix::<Complex64>::identity(k, k);
    let hgh = &h * &gram.entries * &h;
    let delta_norms: Vec<f64> = (0..k).map(|j| hgh[(j, j)].re.max(0.0).sqrt()).collect();
    let bound = (k as f64 - 1.0) / (k * k) as f64;
    let ev = gram.eigenvalues();
    let (lambda_min, lambda_max) = (ev[0], ev[k - 1]);
    Ok(DeltaReport {
        k,
        deltas_within_bound: delta_norms.iter().all(|&d| d <= bound + PSD_TOLERANCE),
        delta_norms,
        bound,
        lambda_min,
        lambda_max,
        spectrum_within_half: ev.iter().all(|l| (l - 1.0).abs() <= 0.5 + PSD_TOLERANCE),
    })
}

/// Random Gram matrix with complex off-diagonal entries of modulus at most `1/k^2`.
///
/// Such a matrix is strictly diagonally dominant, hence positive definite.
pub fn random_gram<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<GramMatrix> {
    if k == 0 {
        return Err(Error::InvalidArgument("need k >= 1".into()));
    }
    let bound = 1.0 / (k * k) as f64;
    let mut entries = DMatrix::from_element(k, k, c(1.0));
    for i in 0..k {
        for j in i + 1..k {
            let z = Complex64::from_polar(rng.random_range(0.0..=bound), rng.random_range(0.0..TAU));
            entries[(i, j)] = z;
            entries[(j, i)] = z.conj();
        }
    }
    GramMatrix::new(entries)
}

/// Numerical facts about the POVM built from one Gram matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PovmCheck {
    pub k: usize,
    pub inconclusive_min_eigenvalue: f64,
    pub gram_lambda_max: f64,
    /// `Pr[outcome i | phi_i]` for each `i`.
    pub success_probabilities: Vec<f64>,
    /// Largest entry of `|sum_i E_i - I|`.
    pub completeness_error: f64,
    pub delta: DeltaReport,
}

impl PovmCheck {
    pub fn max_success_deviation(&self) -> f64 {
        self.success_probabilities
            .iter()
            .map(|p| (p - SUCCESS_PROBABILITY).abs())
            .fold(0.0, f64::max)
    }

    /// Every quantity within `tol` of its stated bound.
    pub fn holds(&self, tol: f64) -> bool {
        self.inconclusive_min_eigenvalue >= -tol
            && self.gram_lambda_max <= 1.5 + tol
            && self.max_success_deviation() <= tol
            && self.completeness_error <= tol
            && self.delta.delta_norms.iter().all(|&d| d <= self.delta.bound + tol)
    }
}

pub fn check_povm(gram: &GramMatrix) -> Result<PovmCheck> {
    let povm = build_povm(gram)?;
    let k = gram.k();
    let success_probabilities = (1..=k)
        .map(|i| povm.outcome_distribution(i).map(|d| d[i]))
        .collect::<Result<Vec<_>>>()?;
    let residual = povm.effect_sum() - DMatrix::<Complex64>::identity(k, k);
    Ok(PovmCheck {
        k,
        inconclusive_min_eigenvalue: povm.inconclusive_min_eigenvalue,
        gram_lambda_max: povm.gram_lambda_max,
        success_probabilities,
        completeness_error: residual.iter().map(|z| z.norm()).fold(0.0, f64::max),
        delta: delta_norm_check(gram)?,
    })
}

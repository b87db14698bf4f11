use serde::{Deserialize, Serialize};

use super::transform::{mobius, subset_sum, walsh_hadamard};
use super::{check_capacity, var_bit, COEFF_THRESHOLD};
use crate::error::{Error, Result};

/// Which monomial basis the coefficients are written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Basis {
    /// `sum_S a_S prod_{i in S} x_i` over `x in {0,1}^n`.
    Monomial01,
    /// `sum_S c_S chi_S(y)` over `y in {±1}^n`, with `y_i = 1 - 2 x_i`.
    FourierPm1,
}

/// A multilinear polynomial on `n` variables.
///
/// Coefficients are stored densely, indexed by subset mask: variable `i`
/// (1-based) is bit `n - i` of the mask, mirroring the truth-table row order.
/// A point of the cube is addressed by its row index `r`; in the ±1 basis the
/// same row denotes `y_i = (-1)^{x_i}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultilinearPolynomial {
    n: usize,
    basis: Basis,
    coefficients: Vec<f64>,
}

impl MultilinearPolynomial {
    pub fn zero(n: usize, basis: Basis) -> Result<Self> {
        check_capacity("polynomial", n)?;
        Ok(Self {
            n,
            basis,
            coefficients: vec![0.0; 1 << n],
        })
    }

    pub fn constant(n: usize, basis: Basis, value: f64) -> Result<Self> {
        let mut p = Self::zero(n, basis)?;
        p.coefficients[0] = value;
        Ok(p)
    }

    pub fn from_coefficients(n: usize, basis: Basis, coefficients: Vec<f64>) -> Result<Self> {
        check_capacity("polynomial", n)?;
        if coefficients.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: coefficients.len(),
            });
        }
        Ok(Self { n, basis, coefficients })
    }

    /// The character `chi_S` (Fourier basis) for the listed 1-based variables.
    pub fn character(n: usize, vars: &[usize]) -> Result<Self> {
        let mut p = Self::zero(n, Basis::FourierPm1)?;
        let mask = super::subset_mask(n, vars)?;
        p.coefficients[mask as usize] = 1.0;
        Ok(p)
    }

    /// Polynomial taking the given values at each row of the cube, written in `basis`.
    pub fn interpolate(n: usize, basis: Basis, mut values: Vec<f64>) -> Result<Self> {
        check_capacity("polynomial", n)?;
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        match basis {
            Basis::FourierPm1 => {
                walsh_hadamard(&mut values);
                let scale = 1.0 / (1u64 << n) as f64;
                values.iter_mut().for_each(|v| *v *= scale);
            }
            Basis::Monomial01 => mobius(&mut values),
        }
        Ok(Self {
            n,
            basis,
            coefficients: values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn coefficient(&self, mask: u32) -> f64 {
        self.coefficients.get(mask as usize).copied().unwrap_or(0.0)
    }

    pub fn set_coefficient(&mut self, mask: u32, value: f64) -> Result<()> {
        let slot = self
            .coefficients
            .get_mut(mask as usize)
            .ok_or_else(|| Error::InvalidArgument(format!("subset mask {mask:#b} outside {} variables", self.n)))?;
        *slot = value;
        Ok(())
    }

    /// Non-negligible coefficients as `(mask, value)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > COEFF_THRESHOLD)
            .map(|(s, &c)| (s as u32, c))
    }

    /// Largest `|S|` whose coefficient exceeds the 1e-9 threshold; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.support().map(|(s, _)| s.count_ones() as usize).max().unwrap_or(0)
    }

    /// Values at every row of the cube.
    pub fn evaluate_all(&self) -> Vec<f64> {
        let mut values = self.coefficients.clone();
        match self.basis {
            Basis::FourierPm1 => walsh_hadamard(&mut values),
            Basis::Monomial01 => subset_sum(&mut values),
        }
        values
    }

    pub fn evaluate(&self, row: usize) -> f64 {
        let row = row as u32;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(s, &c)| {
                let s = s as u32;
                match self.basis {
                    Basis::FourierPm1 if (s & row).count_ones() % 2 == 1 => -c,
                    Basis::FourierPm1 => c,
                    Basis::Monomial01 if s & row == s => c,
                    Basis::Monomial01 => 0.0,
                }
            })
            .sum()
    }

    /// Re-expresses the same function on the cube in the other basis.
    pub fn convert(&self, target: Basis) -> MultilinearPolynomial {
        if target == self.basis {
            return self.clone();
        }
        let values = self.evaluate_all();
        Self::interpolate(self.n, target, values).expect("size already validated")
    }

    fn require_fourier(&self, op: &str) -> Result<()> {
        if self.basis != Basis::FourierPm1 {
            return Err(Error::Precondition(format!("{op} requires a FOURIER_PM1 polynomial")));
        }
        Ok(())
    }

    /// `p_i(y) = (p(y) - p(y^i)) / 2`, i.e. the part of `p` on sets containing `i`.
    pub fn derivative(&self, i: usize) -> Result<MultilinearPolynomial> {
        self.require_fourier("discrete derivative")?;
        let bit = var_bit(self.n, i)?;
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(s, &c)| if s as u32 & bit != 0 { c } else { 0.0 })
            .collect();
        Ok(Self {
            n: self.n,
            basis: self.basis,
            coefficients,
        })
    }

    /// `sum_S |S| c_S^2`, which equals `sum_i ||p_i||_2^2`.
    pub fn derivative_mass(&self) -> Result<f64> {
        self.require_fourier("derivative mass")?;
        Ok(self
            .coefficients
            .iter()
            .enumerate()
            .map(|(s, &c)| (s as u32).count_ones() as f64 * c * c)
            .sum())
    }

    /// `sum_S c_S^2`; equal to `E[p^2]` by Parseval.
    pub fn fourier_weight(&self) -> Result<f64> {
        self.require_fourier("Fourier weight")?;
        Ok(self.coefficients.iter().map(|c| c * c).sum())
    }

    /// Exact mean over the uniform cube.
    pub fn expectation(&self) -> f64 {
        match self.basis {
            Basis::FourierPm1 => self.coefficients[0],
            Basis::Monomial01 => {
                let values = self.evaluate_all();
                values.iter().sum::<f64>() / values.len() as f64
            }
        }
    }

    pub fn variance(&self) -> f64 {
        let values = self.evaluate_all();
        let len = values.len() as f64;
        let mean = values.iter().sum::<f64>() / len;
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / len
    }

    /// `E[|p|^q]` by exhaustive evaluation.
    pub fn absolute_moment(&self, q: f64) -> Result<f64> {
        if q.is_nan() || q < 1.0 {
            return Err(Error::InvalidArgument(format!("moment order must be >= 1, got {q}")));
        }
        let values = self.evaluate_all();
        Ok(values.iter().map(|v| v.abs().powf(q)).sum::<f64>() / values.len() as f64)
    }

    /// `||p||_q = E[|p|^q]^{1/q}`.
    pub fn p_norm(&self, q: f64) -> Result<f64> {
        Ok(self.absolute_moment(q)?.powf(1.0 / q))
    }

    pub fn scale(&self, factor: f64) -> MultilinearPolynomial {
        let coefficients = self.coefficients.iter().map(|c| c * factor).collect();
        Self {
            n: self.n,
            basis: self.basis,
            coefficients,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::subset_mask;

    fn or2_monomial() -> MultilinearPolynomial {
        let mut p = MultilinearPolynomial::zero(2, Basis::Monomial01).unwrap();
        p.set_coefficient(subset_mask(2, &[1]).unwrap(), 1.0).unwrap();
        p.set_coefficient(subset_mask(2, &[2]).unwrap(), 1.0).unwrap();
        p.set_coefficient(subset_mask(2, &[1, 2]).unwrap(), -1.0).unwrap();
        p
    }

    #[test]
    fn or2_round_trip_through_fourier() {
        let p = or2_monomial();
        let q = p.convert(Basis::FourierPm1);
        // OR_2 in ±1 form: 3/4 - y1/4 - y2/4 - y1 y2/4
        let expected = [0.75, -0.25, -0.25, -0.25];
        for (c, e) in q.coefficients().iter().zip(expected) {
            assert!((c - e).abs() < 1e-12);
        }
        let back = q.convert(Basis::Monomial01);
        for (a, b) in back.coefficients().iter().zip(p.coefficients()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(p.degree(), q.degree());
    }

    #[test]
    fn constant_converts_to_itself() {
        let p = MultilinearPolynomial::constant(3, Basis::Monomial01, 2.5).unwrap();
        let q = p.convert(Basis::FourierPm1);
        assert_eq!(q.coefficient(0), 2.5);
        assert!(q.coefficients()[1..].iter().all(|c| *c == 0.0));
    }

    #[test]
    fn evaluate_matches_evaluate_all() {
        let p = or2_monomial();
        let all = p.evaluate_all();
        assert_eq!(all, vec![0.0, 1.0, 1.0, 1.0]);
        for (r, v) in all.iter().enumerate() {
            assert_eq!(p.evaluate(r), *v);
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(
            MultilinearPolynomial::constant(4, Basis::FourierPm1, 1.0)
                .unwrap()
                .degree(),
            0
        );
        assert_eq!(MultilinearPolynomial::character(4, &[1, 2, 3, 4]).unwrap().degree(), 4);
        let tiny = MultilinearPolynomial::from_coefficients(1, Basis::FourierPm1, vec![1.0, 1e-10]).unwrap();
        assert_eq!(tiny.degree(), 0);
    }

    #[test]
    fn derivative_keeps_sets_containing_variable() {
        let chi12 = MultilinearPolynomial::character(2, &[1, 2]).unwrap();
        assert_eq!(chi12.derivative(1).unwrap(), chi12);
        let chi2 = MultilinearPolynomial::character(2, &[2]).unwrap();
        let d = chi2.derivative(1).unwrap();
        assert!(d.coefficients().iter().all(|c| *c == 0.0));
        assert!(or2_monomial().derivative(1).is_err());
    }

    #[test]
    fn derivative_mass_of_character() {
        let chi = MultilinearPolynomial::character(3, &[1, 2, 3]).unwrap();
        assert_eq!(chi.derivative_mass().unwrap(), 3.0);
        let c = MultilinearPolynomial::constant(3, Basis::FourierPm1, 0.7).unwrap();
        assert_eq!(c.derivative_mass().unwrap(), 0.0);
    }

    #[test]
    fn character_norms_are_one() {
        let chi = MultilinearPolynomial::character(3, &[1, 3]).unwrap();
        for q in [1.0, 1.5, 2.0, 4.0, 7.0] {
            assert!((chi.p_norm(q).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!(chi.p_norm(0.5).is_err());
    }

    #[test]
    fn fourth_moment_of_average_of_two_bits() {
        // (y1 + y2)/2 takes 1, 0, 0, -1, so E[p^4] = 2/4.
        let p = MultilinearPolynomial::from_coefficients(2, Basis::FourierPm1, vec![0.0, 0.5, 0.5, 0.0]).unwrap();
        assert!((p.absolute_moment(4.0).unwrap() - 0.5).abs() < 1e-15);
    }
}

//! In-place butterfly transforms over tables indexed by `n`-bit masks.
//!
//! Row indices and subset masks share one bit convention, so every transform
//! here is oblivious to which bit carries which variable.

use std::ops::{Add, Sub};

/// Unnormalised Walsh-Hadamard transform: `out[s] = sum_r (-1)^{|s & r|} in[r]`.
/// Applying it twice multiplies by `len`.
pub fn walsh_hadamard<T>(data: &mut [T])
where
    T: Copy + Add<Output = T> + Sub<Output = T>,
{
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        for block in (0..len).step_by(2 * half) {
            for i in block..block + half {
                let (a, b) = (data[i], data[i + half]);
                data[i] = a + b;
                data[i + half] = a - b;
            }
        }
        half *= 2;
    }
}

/// Subset-sum (zeta) transform: `out[r] = sum_{s ⊆ r} in[s]`.
pub fn subset_sum<T>(data: &mut [T])
where
    T: Copy + Add<Output = T>,
{
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut bit = 1;
    while bit < len {
        for r in 0..len {
            if r & bit != 0 {
                data[r] = data[r] + data[r ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Inverse of [`subset_sum`] (Möbius inversion on the subset lattice).
pub fn mobius<T>(data: &mut [T])
where
    T: Copy + Sub<Output = T>,
{
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut bit = 1;
    while bit < len {
        for r in 0..len {
            if r & bit != 0 {
                data[r] = data[r] - data[r ^ bit];
            }
        }
        bit <<= 1;
    }
}

//! Constructors for the standard functions used throughout the crate.

use super::{subset_mask, var_bit, TruthTable};
use crate::error::{Error, Result};

pub fn constant(n: usize, value: bool) -> Result<TruthTable> {
    TruthTable::from_fn(n, |_| value)
}

/// `OR_n`: 0 only on the all-zeros input.
pub fn or_fn(n: usize) -> Result<TruthTable> {
    TruthTable::from_fn(n, |r| r != 0)
}

pub fn and_fn(n: usize) -> Result<TruthTable> {
    TruthTable::from_fn(n, |r| r == (1 << n) - 1)
}

/// 1 iff strictly more than half of the bits are 1 (ties, for even `n`, give 0).
pub fn majority(n: usize) -> Result<TruthTable> {
    TruthTable::from_fn(n, |r| 2 * r.count_ones() as usize > n)
}

/// XOR of the listed 1-based variables.
pub fn parity(n: usize, vars: &[usize]) -> Result<TruthTable> {
    let mask = subset_mask(n, vars)? as usize;
    TruthTable::from_fn(n, |r| (r & mask).count_ones() % 2 == 1)
}

pub fn dictator(n: usize, i: usize) -> Result<TruthTable> {
    let bit = var_bit(n, i)? as usize;
    TruthTable::from_fn(n, |r| r & bit != 0)
}

/// Address function on `k + log2 k` variables: the last `log2 k` bits, read
/// most-significant first, select which of the first `k` bits is output.
pub fn address_function(k: usize) -> Result<TruthTable> {
    if k < 2 || !k.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "address function needs k a power of two >= 2, got {k}"
        )));
    }
    let a = k.trailing_zeros() as usize;
    let n = k + a;
    TruthTable::from_fn(n, |r| {
        let address = r & (k - 1);
        // data bit x_{address+1} sits at mask position n - (address + 1)
        r >> (n - address - 1) & 1 == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn address_function_two() {
        // f(x1, x2, y) = x1 if y = 0 else x2
        let f = address_function(2).unwrap();
        assert_eq!(f.n(), 3);
        for r in 0..8usize {
            let (x1, x2, y) = (r >> 2 & 1 == 1, r >> 1 & 1 == 1, r & 1 == 1);
            assert_eq!(f.value(r), if y { x2 } else { x1 });
        }
        assert!(address_function(3).is_err());
        assert!(address_function(1).is_err());
    }

    #[test]
    fn or1_is_dictator() {
        assert_eq!(or_fn(1).unwrap(), dictator(1, 1).unwrap());
    }

    #[test]
    fn majority3_is_bitwise_median() {
        let f = majority(3).unwrap();
        for r in 0..8usize {
            let mut bits = [r >> 2 & 1, r >> 1 & 1, r & 1];
            bits.sort();
            assert_eq!(f.value(r), bits[1] == 1);
        }
    }

    #[test]
    fn or_and_values() {
        let or = or_fn(4).unwrap();
        assert!(!or.value(0));
        assert!(or.values()[1..].iter().all(|v| *v));
        let and = and_fn(4).unwrap();
        assert!(and.value(15));
        assert_eq!(and.values().iter().filter(|v| **v).count(), 1);
    }
}

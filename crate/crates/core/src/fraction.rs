//! Exact fractions in reports, serialised as `{"num": .., "den": ..}`.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: u64,
}

impl Fraction {
    /// `num / den` in lowest terms; `den` must be positive.
    pub fn reduced(num: i64, den: u64) -> Self {
        let r = Ratio::<i64>::new(num, den as i64);
        Fraction {
            num: *r.numer(),
            den: *r.denom() as u64,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl From<Ratio<u64>> for Fraction {
    fn from(r: Ratio<u64>) -> Self {
        Fraction {
            num: *r.numer() as i64,
            den: *r.denom(),
        }
    }
}

impl TryFrom<&BigRational> for Fraction {
    type Error = crate::Error;

    fn try_from(r: &BigRational) -> Result<Self, Self::Error> {
        let overflow = || crate::Error::Internal(format!("fraction {r} does not fit in 64 bits"));
        let num = r.numer().to_i64().ok_or_else(overflow)?;
        let den = r.denom().to_u64().ok_or_else(overflow)?;
        Ok(Fraction { num, den })
    }
}

impl From<Fraction> for BigRational {
    fn from(f: Fraction) -> Self {
        BigRational::new(BigInt::from(f.num), BigInt::from(f.den))
    }
}

pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    Fraction::from(*r).serialize(s)
}

pub fn serialize_option<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> Result<S::Ok, S::Error> {
    r.map(Fraction::from).serialize(s)
}

pub fn serialize_vec<S: Serializer>(r: &[Ratio<u64>], s: S) -> Result<S::Ok, S::Error> {
    r.iter().copied().map(Fraction::from).collect::<Vec<_>>().serialize(s)
}

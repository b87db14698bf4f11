//! JSON descriptors that pin a scheme down exactly.
//!
//! Bit strings are written as hexadecimal: the string, read most significant
//! bit first, is an integer printed with `ceil(m / 4)` zero-padded digits.

use serde::{Deserialize, Serialize};

use super::{AddressingScheme, Scheme1, Scheme2};
use crate::error::{Error, Result};

pub const SCHEME_SCHEMA: &str = "qadeg.scheme/v1";

pub fn bits_to_hex(bits: &[bool]) -> String {
    let pad = (4 - bits.len() % 4) % 4;
    let padded: Vec<bool> = std::iter::repeat_n(false, pad).chain(bits.iter().copied()).collect();
    padded
        .chunks(4)
        .map(|nib| {
            let v = nib.iter().fold(0u32, |acc, &b| acc << 1 | b as u32);
            char::from_digit(v, 16).expect("nibble")
        })
        .collect()
}

pub fn bits_from_hex(hex: &str, m: usize) -> Result<Vec<bool>> {
    let digits = m.div_ceil(4);
    if hex.len() != digits {
        return Err(Error::InvalidArgument(format!(
            "expected {digits} hex digits for {m} bits, got {:?}",
            hex
        )));
    }
    let mut bits = Vec::with_capacity(4 * digits);
    for ch in hex.chars() {
        let v = ch
            .to_digit(16)
            .ok_or_else(|| Error::InvalidArgument(format!("invalid hex digit {ch:?}")))?;
        bits.extend((0..4).rev().map(|b| v >> b & 1 == 1));
    }
    let pad = 4 * digits - m;
    if bits[..pad].iter().any(|b| *b) {
        return Err(Error::InvalidArgument(format!(
            "hex string {hex:?} has more than {m} significant bits"
        )));
    }
    Ok(bits.split_off(pad))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SchemeDescriptor {
    Scheme1 {
        schema: String,
        k: usize,
        m: usize,
        c: f64,
        t: f64,
        t_prime: u32,
        delta: f64,
        seed: Option<u64>,
        codewords: Vec<String>,
    },
    Scheme2 {
        schema: String,
        s: usize,
        t: usize,
        delta: f64,
    },
}

impl SchemeDescriptor {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: SchemeDescriptor = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let schema = match &d {
            SchemeDescriptor::Scheme1 { schema, .. } | SchemeDescriptor::Scheme2 { schema, .. } => schema,
        };
        if schema != SCHEME_SCHEMA {
            return Err(Error::InvalidArgument(format!("unsupported scheme schema {schema:?}")));
        }
        Ok(d)
    }
}

impl From<&Scheme1> for SchemeDescriptor {
    fn from(s: &Scheme1) -> Self {
        SchemeDescriptor::Scheme1 {
            schema: SCHEME_SCHEMA.into(),
            k: s.codewords().len(),
            m: AddressingScheme::m(s),
            c: s.c(),
            t: s.t(),
            t_prime: s.t_prime(),
            delta: s.schedule().delta,
            seed: s.seed(),
            codewords: s.codewords().iter().map(|w| bits_to_hex(w)).collect(),
        }
    }
}

impl From<&Scheme2> for SchemeDescriptor {
    fn from(s: &Scheme2) -> Self {
        SchemeDescriptor::Scheme2 {
            schema: SCHEME_SCHEMA.into(),
            s: s.s(),
            t: s.t(),
            delta: s.schedule().delta,
        }
    }
}

impl TryFrom<&SchemeDescriptor> for Scheme1 {
    type Error = Error;

    fn try_from(d: &SchemeDescriptor) -> Result<Self> {
        match d {
            SchemeDescriptor::Scheme1 {
                k,
                m,
                c,
                t,
                t_prime,
                delta,
                seed,
                codewords,
                ..
            } => {
                if codewords.len() != *k {
                    return Err(Error::InvalidArgument(format!(
                        "descriptor lists {} codewords for k = {k}",
                        codewords.len()
                    )));
                }
                let words = codewords
                    .iter()
                    .map(|h| bits_from_hex(h, *m))
                    .collect::<Result<Vec<_>>>()?;
                let scheme = Scheme1::from_codewords(words, *c, Some(*t), *delta)?.with_seed(*seed);
                if scheme.t_prime() != *t_prime {
                    return Err(Error::InvalidArgument(format!(
                        "descriptor t' = {t_prime} disagrees with the adaptive value {}",
                        scheme.t_prime()
                    )));
                }
                Ok(scheme)
            }
            _ => Err(Error::InvalidArgument("descriptor is not a scheme1 descriptor".into())),
        }
    }
}

impl TryFrom<&SchemeDescriptor> for Scheme2 {
    type Error = Error;

    fn try_from(d: &SchemeDescriptor) -> Result<Self> {
        match d {
            SchemeDescriptor::Scheme2 { s, t, delta, .. } => Scheme2::with_delta(*s, *t, *delta),
            _ => Err(Error::InvalidArgument("descriptor is not a scheme2 descriptor".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_examples() {
        assert_eq!(bits_to_hex(&[true, false, true, true]), "b");
        assert_eq!(bits_to_hex(&[true, false, false, false, false, true]), "21");
        assert!(bits_from_hex("f", 3).is_err());
        assert!(bits_from_hex("7g", 8).is_err());
    }

    proptest! {
        #[test]
        fn hex_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..80)) {
            let hex = bits_to_hex(&bits);
            prop_assert_eq!(hex.len(), bits.len().div_ceil(4));
            prop_assert_eq!(bits_from_hex(&hex, bits.len()).unwrap(), bits);
        }
    }
}

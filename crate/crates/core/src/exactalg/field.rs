use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Maximum admissible prime modulus (exclusive bound 2^31, so products of two
/// residues fit comfortably in 64 bits).
const MAX_MODULUS: u64 = 1 << 31;

/// The coefficient field: the rationals or a prime field GF(p).
///
/// Construct prime fields through [`Field::prime`], which checks primality;
/// the `Prime` payload is the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// A prime field GF(p). Fails unless `p` is prime and below 2^31.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    /// 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => u64::from(*p),
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, Field::Rationals)
    }

    pub(crate) fn ensure_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q` or `GF(p)`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = inner
                .trim()
                .parse()
                .map_err(|_| Error::Param(format!("invalid modulus in field spec {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::Param(format!(
            "unknown field spec {s:?} (expected \"Q\" or \"GF(p)\")"
        )))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_construction() {
        assert_eq!(Field::prime(7).unwrap(), Field::Prime(7));
        assert_eq!(Field::prime(2).unwrap(), Field::Prime(2));
        assert_eq!(Field::prime(6), Err(Error::NotPrime(6)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(Field::prime(0), Err(Error::NotPrime(0)));
        assert!(matches!(
            Field::prime(1 << 31),
            Err(Error::ModulusTooLarge(_))
        ));
        // 2^31 - 1 is the Mersenne prime M31, right at the cap.
        assert!(Field::prime((1 << 31) - 1).is_ok());
    }

    #[test]
    fn characteristic() {
        assert_eq!(Field::Rationals.characteristic(), 0);
        assert_eq!(Field::prime(5).unwrap().characteristic(), 5);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for spec in ["Q", "GF(7)", "GF(2)"] {
            let f: Field = spec.parse().unwrap();
            assert_eq!(f.to_string(), spec);
        }
        assert!("GF(9)".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
    }
}

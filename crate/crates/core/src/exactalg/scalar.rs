use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

use super::Field;

/// An exact field element: a rational in lowest terms, or a residue in
/// [0, p) for GF(p).
///
/// Two scalars are equal exactly when their fields and canonical forms are
/// identical, so derived equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Mod(u64),
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_integer(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_integer(field, 1)
    }

    /// Embeds an integer: the rational n/1, or n mod p.
    pub fn from_integer(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rationals => Scalar {
                field,
                repr: Repr::Rational(BigRational::from_integer(BigInt::from(n))),
            },
            Field::Prime(p) => Scalar {
                field,
                repr: Repr::Mod(n.rem_euclid(i64::from(p)) as u64),
            },
        }
    }

    /// The rational num/den in lowest terms. Only valid over the rationals.
    pub fn from_ratio(field: Field, num: BigInt, den: BigInt) -> Result<Scalar> {
        match field {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Scalar {
                    field,
                    repr: Repr::Rational(BigRational::new(num, den)),
                })
            }
            Field::Prime(_) => Err(Error::Param(format!(
                "rational literal not allowed over {field}"
            ))),
        }
    }

    pub fn from_rational(value: BigRational) -> Scalar {
        Scalar {
            field: Field::Rationals,
            repr: Repr::Rational(value),
        }
    }

    /// Parses the instance-file scalar grammar: an optionally signed integer,
    /// or (over the rationals only) `a/b` with positive integer `b`.
    pub fn parse(field: Field, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let invalid = || Error::Param(format!("invalid scalar literal {text:?} over {field}"));
        match text.split_once('/') {
            None => {
                let n: BigInt = text.parse().map_err(|_| invalid())?;
                match field {
                    Field::Rationals => Ok(Scalar {
                        field,
                        repr: Repr::Rational(BigRational::from_integer(n)),
                    }),
                    Field::Prime(p) => {
                        let p_big = BigInt::from(p);
                        let residue = ((n % &p_big) + &p_big) % &p_big;
                        let (_, digits) = residue.to_u64_digits();
                        Ok(Scalar {
                            field,
                            repr: Repr::Mod(digits.first().copied().unwrap_or(0)),
                        })
                    }
                }
            }
            Some((num, den)) => {
                if !field.is_rationals() {
                    return Err(invalid());
                }
                let num: BigInt = num.trim().parse().map_err(|_| invalid())?;
                let den: BigInt = den.trim().parse().map_err(|_| invalid())?;
                if den.is_negative() {
                    return Err(invalid());
                }
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Scalar {
                    field,
                    repr: Repr::Rational(BigRational::new(num, den)),
                })
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_zero(),
            Repr::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_one(),
            Repr::Mod(v) => *v == 1,
        }
    }

    /// The underlying rational, when the scalar lives over the rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(r) => Some(r),
            Repr::Mod(_) => None,
        }
    }

    /// The residue in [0, p), when the scalar lives over a prime field.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Rational(_) => None,
            Repr::Mod(v) => Some(*v),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.field.ensure_same(&other.field)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar {
                field: self.field,
                repr: Repr::Rational(a + b),
            },
            (Repr::Mod(a), Repr::Mod(b)) => Scalar {
                field: self.field,
                repr: Repr::Mod((a + b) % self.modulus()),
            },
            _ => unreachable!("repr always matches field"),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.field.ensure_same(&other.field)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar {
                field: self.field,
                repr: Repr::Rational(a * b),
            },
            (Repr::Mod(a), Repr::Mod(b)) => Scalar {
                field: self.field,
                repr: Repr::Mod((a * b) % self.modulus()),
            },
            _ => unreachable!("repr always matches field"),
        })
    }

    pub fn neg(&self) -> Scalar {
        match &self.repr {
            Repr::Rational(a) => Scalar {
                field: self.field,
                repr: Repr::Rational(-a),
            },
            Repr::Mod(a) => Scalar {
                field: self.field,
                repr: Repr::Mod(if *a == 0 { 0 } else { self.modulus() - a }),
            },
        }
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.repr {
            Repr::Rational(a) => Scalar {
                field: self.field,
                repr: Repr::Rational(a.recip()),
            },
            Repr::Mod(a) => {
                let p = self.modulus();
                Scalar {
                    field: self.field,
                    repr: Repr::Mod(mod_pow(*a, p - 2, p)),
                }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.mul(&other.inv()?)
    }

    fn modulus(&self) -> u64 {
        match self.field {
            Field::Prime(p) => u64::from(p),
            Field::Rationals => unreachable!("modulus only queried over prime fields"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Mod(v) => write!(f, "{v}"),
        }
    }
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

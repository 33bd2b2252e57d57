use std::fmt;

use crate::{Error, Result};

use super::{Field, Scalar};

/// A coordinate vector with a fixed ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: Field,
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: Field, coords: Vec<Scalar>) -> Result<Vector> {
        for c in &coords {
            field.ensure_same(&c.field())?;
        }
        Ok(Vector { field, coords })
    }

    pub fn zero(field: Field, dim: usize) -> Vector {
        Vector {
            field,
            coords: vec![Scalar::zero(field); dim],
        }
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_integers(field: Field, coords: &[i64]) -> Vector {
        Vector {
            field,
            coords: coords
                .iter()
                .map(|&n| Scalar::from_integer(field, n))
                .collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.compatible_with(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(Vector {
            field: self.field,
            coords,
        })
    }

    pub fn scale(&self, factor: &Scalar) -> Result<Vector> {
        self.field.ensure_same(&factor.field())?;
        let coords = self
            .coords
            .iter()
            .map(|c| c.mul(factor))
            .collect::<Result<_>>()?;
        Ok(Vector {
            field: self.field,
            coords,
        })
    }

    pub fn neg(&self) -> Vector {
        Vector {
            field: self.field,
            coords: self.coords.iter().map(Scalar::neg).collect(),
        }
    }

    /// The projective representative: this vector rescaled so its first
    /// nonzero coordinate is 1. `None` for the zero vector.
    ///
    /// Two nonzero vectors are scalar multiples of each other exactly when
    /// their representatives are equal.
    pub fn projective_rep(&self) -> Option<Vector> {
        let lead = self.coords.iter().find(|c| !c.is_zero())?;
        let inv = lead.inv().expect("nonzero leading coordinate");
        Some(self.scale(&inv).expect("same field"))
    }

    pub(crate) fn compatible_with(&self, other: &Vector) -> Result<()> {
        self.field.ensure_same(&other.field)?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

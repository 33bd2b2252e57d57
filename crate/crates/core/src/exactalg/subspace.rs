use std::fmt;

use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

use super::{Field, Matrix, Scalar, Vector};

/// A linear subspace of F^n, stored as the RREF of a spanning set.
///
/// The RREF basis is a canonical form: two subspaces are equal as sets of
/// vectors iff their stored bases are equal, so derived `PartialEq` is
/// genuine subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// Subspace spanned by the given vectors (zero subspace for an empty
    /// list).
    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vector]) -> Result<Subspace> {
        let stacked = Matrix::from_rows(field, ambient_dim, vectors)?;
        let rref = stacked.rref();
        let basis = Matrix::from_rows(
            field,
            ambient_dim,
            &(0..rref.rank)
                .map(|r| rref.reduced.row_vector(r))
                .collect::<Vec<_>>(),
        )?;
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zero(field, 0, ambient_dim),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one vector per matrix row; rows are in RREF.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vector> {
        (0..self.dim()).map(|r| self.basis.row_vector(r)).collect()
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        self.field().ensure_same(&v.field())?;
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.dim(),
            });
        }
        if v.is_zero() {
            return Ok(true);
        }
        let mut rows = self.basis_rows();
        rows.push(v.clone());
        let stacked = Matrix::from_rows(self.field(), self.ambient_dim, &rows)?;
        Ok(stacked.rank() == self.dim())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        for row in other.basis_rows() {
            if !self.contains(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Deterministic pseudo-random nonzero member, for sampling-based
    /// dependence checks. Errors on the zero subspace.
    pub fn random_nonzero(&self, seed: u64, coeff_bound: i64) -> Result<Vector> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_nonzero_with(&mut rng, coeff_bound)
    }

    /// As [`random_nonzero`](Self::random_nonzero) but drawing from a caller
    /// supplied generator, so successive draws differ.
    pub fn random_nonzero_with<R: Rng>(&self, rng: &mut R, coeff_bound: i64) -> Result<Vector> {
        if self.dim() == 0 {
            return Err(Error::ZeroSubspace);
        }
        let field = self.field();
        loop {
            let mut acc = Vector::zero(field, self.ambient_dim);
            for row in self.basis_rows() {
                let c = match field {
                    Field::Rationals => {
                        Scalar::from_integer(field, rng.gen_range(-coeff_bound..=coeff_bound))
                    }
                    Field::Prime(p) => {
                        let r = rng.gen_range(0..u64::from(p));
                        Scalar::from_integer(field, r.to_i64().expect("p < 2^31"))
                    }
                };
                acc = acc.add(&row.scale(&c)?)?;
            }
            if !acc.is_zero() {
                return Ok(acc);
            }
        }
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, row) in self.basis_rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{row}")?;
        }
        write!(f, "}}")
    }
}

/// Sum of a nonempty list of subspaces of a common ambient space.
pub fn subspace_sum(spaces: &[Subspace]) -> Result<Subspace> {
    let Some(first) = spaces.first() else {
        return Err(Error::Param("subspace sum of an empty list".into()));
    };
    let mut rows = Vec::new();
    for s in spaces {
        first.field().ensure_same(&s.field())?;
        if s.ambient_dim() != first.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: first.ambient_dim(),
                got: s.ambient_dim(),
            });
        }
        rows.extend(s.basis_rows());
    }
    Subspace::span(first.field(), first.ambient_dim(), &rows)
}

/// True iff the sum of the listed subspaces is direct, i.e. the dimension of
/// the sum equals the sum of the dimensions.
///
/// Dimensions are summed with multiplicity: listing the same nonzero
/// subspace twice is never direct.
pub fn is_direct_sum(spaces: &[Subspace]) -> Result<bool> {
    let total: usize = spaces.iter().map(Subspace::dim).sum();
    Ok(subspace_sum(spaces)?.dim() == total)
}

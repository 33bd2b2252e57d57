use std::fmt;

use crate::{Error, Result};

use super::{Field, Scalar, Vector};

/// A dense row-major matrix over a single field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of reduction to reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for e in &entries {
            field.ensure_same(&e.field())?;
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = Scalar::one(field);
        }
        m
    }

    /// Stacks vectors as rows. `cols` is explicit so the empty stack still
    /// carries its ambient dimension.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Result<Matrix> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            field.ensure_same(&r.field())?;
            if r.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.dim(),
                });
            }
            entries.extend(r.coords().iter().cloned());
        }
        Matrix::new(field, rows.len(), cols, entries)
    }

    /// Convenience constructor from integer entries.
    pub fn from_integer_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&n| Scalar::from_integer(field, n))
            })
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.cols + col]
    }

    fn entry_mut(&mut self, row: usize, col: usize) -> &mut Scalar {
        &mut self.entries[row * self.cols + col]
    }

    pub fn row_vector(&self, row: usize) -> Vector {
        Vector::new(
            self.field,
            self.entries[row * self.cols..(row + 1) * self.cols].to_vec(),
        )
        .expect("row entries share the matrix field")
    }

    pub fn col_vector(&self, col: usize) -> Vector {
        Vector::new(
            self.field,
            (0..self.rows).map(|r| self.entry(r, col).clone()).collect(),
        )
        .expect("column entries share the matrix field")
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.entry(r, c).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul_vector(&self, v: &Vector) -> Result<Vector> {
        self.field.ensure_same(&v.field())?;
        if v.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.dim(),
            });
        }
        let mut coords = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = Scalar::zero(self.field);
            for c in 0..self.cols {
                acc = acc.add(&self.entry(r, c).mul(v.coord(c))?)?;
            }
            coords.push(acc);
        }
        Vector::new(self.field, coords)
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    ///
    /// The pivot in each column is the first nonzero entry in row order (no
    /// magnitude pivoting; arithmetic is exact), so the output is the unique
    /// RREF and identical across platforms.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.entry(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m
                .entry(pivot_row, col)
                .inv()
                .expect("pivot entry is nonzero");
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m.entry(r, col).is_zero() {
                    let factor = m.entry(r, col).clone();
                    m.sub_scaled_row(r, pivot_row, &factor);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        Rref {
            reduced: m,
            rank: pivot_cols.len(),
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// A basis of the right kernel { x : self * x = 0 }, one vector per free
    /// column of the RREF. Empty when the columns are independent.
    pub fn null_space(&self) -> Vec<Vector> {
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = self.rref();
        let mut basis = Vec::new();
        let mut next_pivot = 0;
        for free_col in 0..self.cols {
            if pivot_cols.get(next_pivot) == Some(&free_col) {
                next_pivot += 1;
                continue;
            }
            let mut coords = vec![Scalar::zero(self.field); self.cols];
            coords[free_col] = Scalar::one(self.field);
            for (row, &pcol) in pivot_cols.iter().enumerate() {
                coords[pcol] = reduced.entry(row, free_col).neg();
            }
            basis.push(Vector::new(self.field, coords).expect("kernel coords share field"));
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, row: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let v = self.entry(row, c).mul(factor).expect("same field");
            *self.entry_mut(row, c) = v;
        }
    }

    /// row(target) -= factor * row(src)
    fn sub_scaled_row(&mut self, target: usize, src: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let delta = self.entry(src, c).mul(factor).expect("same field");
            let v = self.entry(target, c).sub(&delta).expect("same field");
            *self.entry_mut(target, c) = v;
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row_vector(r))?;
        }
        Ok(())
    }
}

/// True iff the vectors are linearly independent; the empty list is
/// independent by convention.
pub fn is_linearly_independent(vs: &[Vector]) -> Result<bool> {
    let Some(first) = vs.first() else {
        return Ok(true);
    };
    for v in &vs[1..] {
        first.compatible_with(v)?;
    }
    let m = Matrix::from_rows(first.field(), first.dim(), vs)?;
    Ok(m.rank() == vs.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportional_rows_have_rank_one() {
        let m = Matrix::from_integer_rows(Field::Rationals, &[&[2, 4], &[1, 2]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(
            r.reduced,
            Matrix::from_integer_rows(Field::Rationals, &[&[1, 2], &[0, 0]])
        );
    }

    #[test]
    fn identity_is_already_reduced() {
        let id = Matrix::identity(Field::Rationals, 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
    }

    #[test]
    fn rank_over_gf5() {
        // Oracle: the 2x2 determinant 1*4 - 2*3 = -2 = 3 mod 5 is nonzero,
        // so the matrix has full rank.
        let gf5 = Field::prime(5).unwrap();
        let det = (4 - 2 * 3i64).rem_euclid(5);
        assert_eq!(det, 3);
        let m = Matrix::from_integer_rows(gf5, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn standard_basis_is_independent() {
        let vs = vec![
            Vector::from_integers(Field::Rationals, &[1, 0]),
            Vector::from_integers(Field::Rationals, &[0, 1]),
        ];
        assert!(is_linearly_independent(&vs).unwrap());
    }

    #[test]
    fn scalar_multiple_is_dependent() {
        let vs = vec![
            Vector::from_integers(Field::Rationals, &[1, 2]),
            Vector::from_integers(Field::Rationals, &[2, 4]),
        ];
        assert!(!is_linearly_independent(&vs).unwrap());
    }

    #[test]
    fn empty_list_is_independent() {
        assert!(is_linearly_independent(&[]).unwrap());
    }

    #[test]
    fn null_space_annihilates() {
        let m = Matrix::from_integer_rows(Field::Rationals, &[&[1, 2, 3], &[2, 4, 6]]);
        let kernel = m.null_space();
        assert_eq!(kernel.len(), 2);
        for x in &kernel {
            assert!(m.mul_vector(x).unwrap().is_zero());
        }
    }

    #[test]
    fn gf2_rank() {
        let gf2 = Field::prime(2).unwrap();
        // Three vectors summing to zero over GF(2).
        let m = Matrix::from_integer_rows(gf2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }
}

//! Independent exact linear algebra oracles for cross checking the
//! library. These are deliberately written from first principles with
//! different algorithmic choices (last row pivoting, no pivot
//! normalization, extended Euclid inverses mod p) so that agreement with
//! the library is evidence rather than tautology.
#![allow(dead_code)]
// Elimination updates two rows under one column index; the plain indexed
// loop keeps that symmetric and obvious.
#![allow(clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::{One, Zero};

use lisf_matroid::exactalg::{Field, Subspace, Vector};

/// Rank of a rational matrix by plain forward elimination, pivoting on the
/// last row with a nonzero entry in the current column.
pub fn rank_q(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).rev().find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[rank][col];
            for c in col..cols {
                let delta = &factor * &m[rank][c];
                m[r][c] = &m[r][c] - delta;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Multiplicative inverse mod p by the extended Euclidean algorithm.
pub fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (i128::from(a % p), i128::from(p));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "{a} is not invertible mod {p}");
    old_s.rem_euclid(i128::from(p)) as u64
}

/// Rank of a matrix over GF(p), same elimination strategy as [`rank_q`].
pub fn rank_mod(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).rev().find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inverse_mod(m[rank][col], p);
        for r in rank + 1..m.len() {
            if m[r][col] == 0 {
                continue;
            }
            let factor = m[r][col] * inv % p;
            for c in col..cols {
                let delta = factor * m[rank][c] % p;
                m[r][c] = (m[r][c] + p - delta) % p;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// A library vector as a plain rational row; panics on prime field input.
pub fn q_row(v: &Vector) -> Vec<BigRational> {
    v.coords()
        .iter()
        .map(|c| c.as_rational().expect("rational vector").clone())
        .collect()
}

/// A library vector as a residue row; panics on rational input.
pub fn mod_row(v: &Vector) -> Vec<u64> {
    v.coords()
        .iter()
        .map(|c| c.as_residue().expect("prime field vector"))
        .collect()
}

/// Rank of a list of library vectors, dispatching on their field.
pub fn rank_of(vectors: &[Vector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    match first.field() {
        Field::Rationals => rank_q(&vectors.iter().map(q_row).collect::<Vec<_>>()),
        Field::Prime(p) => rank_mod(
            &vectors.iter().map(mod_row).collect::<Vec<_>>(),
            u64::from(p),
        ),
    }
}

/// Independence oracle: full rank on the stacked vectors.
pub fn independent(vectors: &[Vector]) -> bool {
    rank_of(vectors) == vectors.len()
}

/// Basis of the intersection of two rational subspaces by the Zassenhaus
/// block construction: reduce [[A | A], [B | 0]]; rows whose left half is
/// zero carry an intersection basis in their right half.
pub fn intersection_q(a: &Subspace, b: &Subspace) -> Vec<Vec<BigRational>> {
    let n = a.ambient_dim();
    assert_eq!(n, b.ambient_dim());
    let mut m: Vec<Vec<BigRational>> = Vec::new();
    for row in a.basis_rows() {
        let r = q_row(&row);
        let mut doubled = r.clone();
        doubled.extend(r);
        m.push(doubled);
    }
    for row in b.basis_rows() {
        let mut r = q_row(&row);
        r.extend(std::iter::repeat_with(BigRational::zero).take(n));
        m.push(r);
    }

    // Forward elimination on the left half only.
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..m.len()).rev().find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[rank][col];
            for c in col..2 * n {
                let delta = &factor * &m[rank][c];
                m[r][c] = &m[r][c] - delta;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }

    m.iter()
        .filter(|row| row[..n].iter().all(Zero::is_zero))
        .map(|row| row[n..].to_vec())
        .filter(|right| right.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Dimension of the intersection of two rational subspaces.
pub fn intersection_dim_q(a: &Subspace, b: &Subspace) -> usize {
    rank_q(&intersection_q(a, b))
}

#[test]
fn oracle_self_checks() {
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    let rows = vec![
        vec![BigRational::one(), two.clone()],
        vec![two, four],
    ];
    assert_eq!(rank_q(&rows), 1);
    assert_eq!(inverse_mod(3, 7), 5);
    assert_eq!(rank_mod(&[vec![1, 2], vec![3, 4]], 5), 2);
    assert_eq!(rank_mod(&[vec![1, 2], vec![2, 4]], 5), 1);
}

//! Test-side linear independence oracle.
//!
//! Deliberately separate from the library's reduced row echelon code:
//! elimination here picks the last usable pivot row instead of the first,
//! does no pivot normalization, and brings its own modular inverse, so a
//! shared systematic mistake is unlikely.

#![allow(dead_code)]
// Elimination updates two rows under one column index; the plain indexed
// loop keeps that symmetric and obvious.
#![allow(clippy::needless_range_loop)]

use lisf_matroid::exactalg::{Field, Vector};
use lisf_matroid::{BigInt, BigRational};

fn zero() -> BigRational {
    BigRational::from_integer(BigInt::from(0))
}

/// Row rank over Q by forward elimination with last-row pivoting.
pub fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let z = zero();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).rfind(|&r| rows[r][c] != z) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in rank + 1..rows.len() {
            if rows[r][c] != z {
                let factor = &rows[r][c] / &pivot;
                for cc in c..cols {
                    let delta = &factor * &rows[rank][cc];
                    rows[r][cc] = &rows[r][cc] - &delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse mod `p` by the extended Euclidean algorithm.
fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (i128::from(a), i128::from(p));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "{a} is not invertible mod {p}");
    old_s.rem_euclid(i128::from(p)) as u64
}

/// Row rank over GF(p), same elimination strategy as [`rank_q`].
pub fn rank_mod(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).rfind(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inverse_mod(rows[rank][c], p);
        for r in rank + 1..rows.len() {
            if rows[r][c] != 0 {
                let factor = rows[r][c] * inv % p;
                for cc in c..cols {
                    rows[r][cc] = (rows[r][cc] + (p - factor * rows[rank][cc] % p)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether the vectors are linearly independent, by the oracle's own rank.
pub fn independent(vs: &[Vector]) -> bool {
    let Some(first) = vs.first() else {
        return true;
    };
    match first.field() {
        Field::Rationals => {
            let rows = vs
                .iter()
                .map(|v| {
                    v.coords()
                        .iter()
                        .map(|s| s.as_rational().expect("rational scalar").clone())
                        .collect()
                })
                .collect();
            rank_q(rows) == vs.len()
        }
        Field::Prime(p) => {
            let rows = vs
                .iter()
                .map(|v| {
                    v.coords()
                        .iter()
                        .map(|s| s.as_residue().expect("residue scalar"))
                        .collect()
                })
                .collect();
            rank_mod(u64::from(p), rows) == vs.len()
        }
    }
}

//! Small exact linear-algebra helpers over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntegerMatrix;

pub type RationalVector = Vec<BigRational>;

pub(crate) fn to_rational(m: &IntegerMatrix) -> Vec<RationalVector> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|v| BigRational::from_integer(v.clone())).collect())
        .collect()
}

/// Reduces `rows` to reduced row echelon form in place, choosing pivots only
/// among the first `cols` columns (later columns are carried along), and
/// returns the pivot columns in increasing order.
pub(crate) fn rref(rows: &mut [RationalVector], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in c..rows[r].len() {
                let delta = &factor * &rows[r][j];
                rows[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the kernel of `m`, one vector of length `m.cols()` per free column.
pub fn nullspace(m: &IntegerMatrix) -> Vec<RationalVector> {
    let cols = m.cols();
    let mut rows = to_rational(m);
    let pivots = rref(&mut rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][f].clone();
            }
            v
        })
        .collect()
}

/// Indices of a maximal linearly independent subfamily, chosen greedily from
/// the front.
pub fn independent_subset(vectors: &[RationalVector], dim: usize) -> Vec<usize> {
    // vectors become columns; pivot columns are exactly the greedy choice
    let mut rows: Vec<RationalVector> = (0..dim)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    rref(&mut rows, vectors.len())
}

/// Inverse of a square rational matrix given as rows, or `None` if singular.
pub fn inverse(m: &[RationalVector]) -> Option<Vec<RationalVector>> {
    let n = m.len();
    let mut aug: Vec<RationalVector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub(crate) fn as_integer(v: &BigRational) -> Option<BigInt> {
    v.is_integer().then(|| v.to_integer())
}

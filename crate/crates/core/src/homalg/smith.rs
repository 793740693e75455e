use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// How the next pivot is chosen in [`smith_normal_form_with`]. The invariant
/// factors do not depend on the choice; the transforms do.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Entry of least nonzero magnitude in the remaining block (row-major ties).
    #[default]
    SmallestMagnitude,
    /// First nonzero entry of the remaining block in column-major order.
    FirstNonzero,
}

/// `diagonal = left · M · right` with `left`, `right` unimodular and the
/// diagonal entries `d_1 | d_2 | ... | d_r` positive.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntegerMatrix,
    pub diagonal: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let r = self.diagonal.rows().min(self.diagonal.cols());
        (0..r)
            .map(|i| self.diagonal.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    smith_normal_form_with(m, PivotStrategy::default())
}

fn choose_pivot(a: &IntegerMatrix, t: usize, strategy: PivotStrategy) -> Option<(usize, usize)> {
    match strategy {
        PivotStrategy::SmallestMagnitude => {
            let mut best: Option<(usize, usize, BigInt)> = None;
            for i in t..a.rows() {
                for j in t..a.cols() {
                    let v = a.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    let mag = v.abs();
                    if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                        best = Some((i, j, mag));
                    }
                }
            }
            best.map(|(i, j, _)| (i, j))
        }
        PivotStrategy::FirstNonzero => {
            (t..a.cols()).find_map(|j| (t..a.rows()).find(|&i| !a.get(i, j).is_zero()).map(|i| (i, j)))
        }
    }
}

pub fn smith_normal_form_with(m: &IntegerMatrix, strategy: PivotStrategy) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntegerMatrix::identity(rows);
    let mut right = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = choose_pivot(&a, t, strategy) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut settled = true;
            for i in (t + 1)..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                if !a.get(i, t).is_zero() {
                    a.swap_rows(t, i);
                    left.swap_rows(t, i);
                    settled = false;
                }
            }
            for j in (t + 1)..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                if !a.get(t, j).is_zero() {
                    a.swap_cols(t, j);
                    right.swap_cols(t, j);
                    settled = false;
                }
            }
            if !settled {
                continue;
            }
            // divisibility: pull an offending row into the pivot row
            let p = a.get(t, t).clone();
            let offending = ((t + 1)..rows)
                .find(|&i| ((t + 1)..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    SmithForm {
        left,
        diagonal: a,
        right,
    }
}

/// Rank by fraction-free Gaussian elimination, independent of the Smith
/// reduction above.
pub fn rank_fraction_free(m: &IntegerMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                a[i][j] = (&a[i][j] * &a[r][c] - &a[i][c] * &a[r][j]) / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntegerMatrix, strategy: PivotStrategy) -> SmithForm {
        let s = smith_normal_form_with(m, strategy);
        let prod = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        assert_eq!(prod, s.diagonal);
        assert!(s.left.determinant().unwrap().abs().is_one());
        assert!(s.right.determinant().unwrap().abs().is_one());
        for i in 0..s.diagonal.rows() {
            for j in 0..s.diagonal.cols() {
                if i != j {
                    assert!(s.diagonal.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn trivial_cases() {
        let z = IntegerMatrix::zeros(3, 2);
        assert_eq!(check(&z, PivotStrategy::SmallestMagnitude).rank(), 0);
        let two = IntegerMatrix::from_rows(&[[2]]).unwrap();
        assert_eq!(check(&two, PivotStrategy::SmallestMagnitude).invariant_factors(), vec![BigInt::from(2)]);
        let empty = IntegerMatrix::zeros(0, 4);
        assert_eq!(check(&empty, PivotStrategy::FirstNonzero).rank(), 0);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) has Smith form diag(1, 6)
        let m = IntegerMatrix::from_rows(&[[2, 0], [0, 3]]).unwrap();
        for strategy in [PivotStrategy::SmallestMagnitude, PivotStrategy::FirstNonzero] {
            let f = check(&m, strategy).invariant_factors();
            assert_eq!(f, vec![BigInt::from(1), BigInt::from(6)]);
        }
    }

    #[test]
    fn cycle_boundary() {
        // boundary of the 4-cycle 0-1-2-3-0, edges (0,1),(0,3),(1,2),(2,3)
        let d1 = IntegerMatrix::from_rows(&[[-1, -1, 0, 0], [1, 0, -1, 0], [0, 0, 1, -1], [0, 1, 0, 1]]).unwrap();
        let s = check(&d1, PivotStrategy::FirstNonzero);
        assert_eq!(s.invariant_factors(), vec![BigInt::one(); 3]);
        assert_eq!(rank_fraction_free(&d1), 3);
    }

    #[test]
    fn torsion_example() {
        let m = IntegerMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).unwrap();
        let a = check(&m, PivotStrategy::SmallestMagnitude).invariant_factors();
        let b = check(&m, PivotStrategy::FirstNonzero).invariant_factors();
        assert_eq!(a, b);
        assert_eq!(a, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }
}

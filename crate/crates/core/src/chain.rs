use std::borrow::Cow;

use crate::error::{domain, Result};
use crate::homalg::IntegerMatrix;

/// Finite free chain complex `C_top -> ... -> C_0`, stored as ranks and the
/// boundary matrices `D_q : C_q -> C_{q-1}` (so `D_0` is `0 × c_0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if ranks.len() != boundaries.len() {
            return domain("one boundary matrix per degree is required");
        }
        for (q, d) in boundaries.iter().enumerate() {
            let below = if q == 0 { 0 } else { ranks[q - 1] };
            if d.rows() != below || d.cols() != ranks[q] {
                return domain(format!(
                    "boundary in degree {q} is {}x{}, expected {below}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[q]
                ));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    pub fn empty() -> Self {
        ChainComplex {
            ranks: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    /// Number of stored degrees (top dimension + 1, or 0 when empty).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn top_dimension(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, q: usize) -> usize {
        self.ranks.get(q).copied().unwrap_or(0)
    }

    /// `D_q`; a zero matrix of the right shape outside the stored range.
    pub fn boundary(&self, q: usize) -> Cow<'_, IntegerMatrix> {
        match self.boundaries.get(q) {
            Some(d) => Cow::Borrowed(d),
            None => Cow::Owned(IntegerMatrix::zeros(if q == 0 { 0 } else { self.rank(q - 1) }, self.rank(q))),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(q, &c)| if q % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn boundary_squares_vanish(&self) -> bool {
        (2..self.len()).all(|q| {
            self.boundary(q - 1)
                .mul(&self.boundary(q))
                .map(|m| m.is_zero())
                .unwrap_or(false)
        })
    }
}

/// Family of matrices `f_q : C_q(X) -> C_q(Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    matrices: Vec<IntegerMatrix>,
}

impl ChainMap {
    pub fn new(matrices: Vec<IntegerMatrix>) -> Self {
        ChainMap { matrices }
    }

    pub fn matrices(&self) -> &[IntegerMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, q: usize) -> Option<&IntegerMatrix> {
        self.matrices.get(q)
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn trace(&self, q: usize) -> Result<i64> {
        let Some(m) = self.matrices.get(q) else {
            return Ok(0);
        };
        let t = m.trace()?;
        i64::try_from(t).or_else(|_| domain("trace does not fit in i64"))
    }

    pub fn traces(&self) -> Result<Vec<i64>> {
        (0..self.len()).map(|q| self.trace(q)).collect()
    }

    pub fn entries_are_units(&self) -> bool {
        use num_traits::{One, Zero};
        self.matrices
            .iter()
            .flat_map(|m| m.entries())
            .all(|e| e.is_zero() || e.is_one() || (-e).is_one())
    }

    /// `self ∘ other`, degree by degree.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.len() != other.len() {
            return domain("chain maps have different lengths");
        }
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { matrices })
    }
}

/// Checks shapes and `f_{q-1} D^X_q = D^Y_q f_q` in every degree. Shape
/// mismatches are domain errors; a failed identity returns `false`.
pub fn verify_chain_map(f: &ChainMap, domain_complex: &ChainComplex, codomain: &ChainComplex) -> Result<bool> {
    if f.len() != domain_complex.len() {
        return domain(format!(
            "chain map has {} degrees, domain complex has {}",
            f.len(),
            domain_complex.len()
        ));
    }
    for (q, m) in f.matrices.iter().enumerate() {
        if m.rows() != codomain.rank(q) || m.cols() != domain_complex.rank(q) {
            return domain(format!("chain map matrix in degree {q} has the wrong shape"));
        }
    }
    for q in 1..f.len() {
        let lhs = f.matrices[q - 1].mul(&domain_complex.boundary(q))?;
        let rhs = codomain.boundary(q).mul(&f.matrices[q])?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> ChainComplex {
        let d1 = IntegerMatrix::from_rows(&[[-1], [1]]).unwrap();
        ChainComplex::new(vec![2, 1], vec![IntegerMatrix::zeros(0, 2), d1]).unwrap()
    }

    #[test]
    fn shapes_are_validated() {
        assert!(ChainComplex::new(vec![2, 1], vec![IntegerMatrix::zeros(0, 2), IntegerMatrix::zeros(1, 1)]).is_err());
        let c = interval();
        assert_eq!(c.euler_characteristic(), 1);
        assert_eq!(c.boundary(2).rows(), 1);
        assert_eq!(c.boundary(2).cols(), 0);
        assert!(c.boundary_squares_vanish());
    }

    #[test]
    fn flip_is_a_chain_map_and_collapse_is_checked() {
        let c = interval();
        let flip = ChainMap::new(vec![
            IntegerMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap(),
            IntegerMatrix::from_rows(&[[-1]]).unwrap(),
        ]);
        assert!(verify_chain_map(&flip, &c, &c).unwrap());
        assert_eq!(flip.traces().unwrap(), vec![0, -1]);
        let wrong = ChainMap::new(vec![
            IntegerMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap(),
            IntegerMatrix::from_rows(&[[1]]).unwrap(),
        ]);
        assert!(!verify_chain_map(&wrong, &c, &c).unwrap());
        let short = ChainMap::new(vec![IntegerMatrix::identity(2)]);
        assert!(verify_chain_map(&short, &c, &c).is_err());
        assert_eq!(flip.compose(&flip).unwrap().traces().unwrap(), vec![2, 1]);
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::rational::{as_integer, independent_subset, inverse, nullspace, RationalVector};
use super::smith::smith_normal_form;
use crate::chain::{verify_chain_map, ChainComplex, ChainMap};
use crate::error::{Error, Result};

/// `H_q ≅ Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<BigInt>,
}

fn serialize_torsion<S: serde::Serializer>(t: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(t.iter().map(ToString::to_string))
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Integral homology in degree `q`, via Smith normal forms of the two
/// adjacent boundary matrices.
pub fn homology(complex: &ChainComplex, q: usize) -> HomologyGroup {
    let rank_q = if q == 0 { 0 } else { smith_normal_form(&complex.boundary(q)).rank() };
    let above = smith_normal_form(&complex.boundary(q + 1)).invariant_factors();
    let one = BigInt::one();
    HomologyGroup {
        betti: complex.rank(q) - rank_q - above.len(),
        torsion: above.into_iter().filter(|d| *d != one).collect(),
    }
}

/// Homology in every degree up to the top dimension of the complex.
pub fn all_homology(complex: &ChainComplex) -> Vec<HomologyGroup> {
    (0..complex.len()).map(|q| homology(complex, q)).collect()
}

#[derive(Clone, Debug)]
struct DegreeBasis {
    /// cycles whose classes form a basis of `H_q ⊗ Q`
    generators: Vec<RationalVector>,
    /// `h × c_q`; reads off homology coordinates of any cycle
    projection: Vec<RationalVector>,
}

/// Precomputed rational homology bases, used to evaluate traces of induced
/// maps on `H_q ⊗ Q`.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    degrees: Vec<DegreeBasis>,
}

impl HomologyBasis {
    pub fn new(complex: &ChainComplex) -> Result<Self> {
        let degrees = (0..complex.len())
            .map(|q| degree_basis(complex, q))
            .collect::<Result<Vec<_>>>()?;
        Ok(HomologyBasis { degrees })
    }

    pub fn betti(&self, q: usize) -> usize {
        self.degrees.get(q).map_or(0, |d| d.generators.len())
    }

    pub fn generators(&self, q: usize) -> &[RationalVector] {
        self.degrees.get(q).map_or(&[], |d| &d.generators)
    }

    /// Trace of the map induced on `H_q ⊗ Q` by a chain-level self map whose
    /// degree-`q` matrix is `f`.
    pub fn trace(&self, q: usize, f: &crate::homalg::IntegerMatrix) -> Result<BigRational> {
        let Some(d) = self.degrees.get(q) else {
            return Ok(BigRational::zero());
        };
        let mut total = BigRational::zero();
        for (k, g) in d.generators.iter().enumerate() {
            // (P · F · g)_k
            let image: Vec<BigRational> = (0..f.rows())
                .map(|i| {
                    let mut s = BigRational::zero();
                    for (j, gj) in g.iter().enumerate() {
                        let e = f.get(i, j);
                        if !e.is_zero() && !gj.is_zero() {
                            s += gj * BigRational::from_integer(e.clone());
                        }
                    }
                    s
                })
                .collect();
            for (pi, v) in d.projection[k].iter().zip(&image) {
                if !pi.is_zero() && !v.is_zero() {
                    total += pi * v;
                }
            }
        }
        Ok(total)
    }
}

fn degree_basis(complex: &ChainComplex, q: usize) -> Result<DegreeBasis> {
    let c = complex.rank(q);
    let cycles = if q == 0 {
        (0..c)
            .map(|i| (0..c).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect()
    } else {
        nullspace(&complex.boundary(q))
    };
    let up = complex.boundary(q + 1);
    let boundaries: Vec<RationalVector> = (0..up.cols())
        .map(|j| up.column(j).into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut family = boundaries.clone();
    family.extend(cycles.iter().cloned());
    let chosen = independent_subset(&family, c);
    let basis_b: Vec<RationalVector> = chosen.iter().filter(|&&i| i < boundaries.len()).map(|&i| family[i].clone()).collect();
    let generators: Vec<RationalVector> = chosen.iter().filter(|&&i| i >= boundaries.len()).map(|&i| family[i].clone()).collect();
    let h = generators.len();
    if h == 0 {
        return Ok(DegreeBasis {
            generators,
            projection: Vec::new(),
        });
    }
    // W = [B | G] is c × k with full column rank; pick k independent rows
    let w: Vec<&RationalVector> = basis_b.iter().chain(&generators).collect();
    let k = w.len();
    let rows_of_w: Vec<RationalVector> = (0..c).map(|i| w.iter().map(|col| col[i].clone()).collect()).collect();
    let rows = independent_subset(&rows_of_w, k);
    if rows.len() != k {
        return Err(Error::Internal(format!("homology basis in degree {q} is not independent")));
    }
    let square: Vec<RationalVector> = rows.iter().map(|&i| rows_of_w[i].clone()).collect();
    let inv = inverse(&square)
        .ok_or_else(|| Error::Internal(format!("singular row block in degree {q}")))?;
    // left inverse of W supported on the chosen rows; keep the generator part
    let projection = inv[k - h..]
        .iter()
        .map(|row| {
            let mut full = vec![BigRational::zero(); c];
            for (j, &r) in rows.iter().enumerate() {
                full[r] = row[j].clone();
            }
            full
        })
        .collect();
    Ok(DegreeBasis {
        generators,
        projection,
    })
}

/// Trace of `H_q(f) ⊗ Q` for a chain self map. The map is verified first.
pub fn homology_trace(complex: &ChainComplex, f: &ChainMap, q: usize) -> Result<i64> {
    if !verify_chain_map(f, complex, complex)? {
        return Err(Error::Precondition("not a chain map".into()));
    }
    let basis = HomologyBasis::new(complex)?;
    basis_trace(&basis, f, q)
}

pub(crate) fn basis_trace(basis: &HomologyBasis, f: &ChainMap, q: usize) -> Result<i64> {
    let Some(m) = f.matrix(q) else {
        return Ok(0);
    };
    let t = basis.trace(q, m)?;
    as_integer(&t)
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(|| Error::Internal(format!("non-integral homology trace {t} in degree {q}")))
}

/// Checks the Hopf trace formula: the alternating sums of chain-level and
/// homology-level traces agree.
pub fn hopf_trace_check(complex: &ChainComplex, f: &ChainMap) -> Result<bool> {
    if !verify_chain_map(f, complex, complex)? {
        return Err(Error::Precondition("not a chain map".into()));
    }
    let basis = HomologyBasis::new(complex)?;
    let mut chain = 0i64;
    let mut hom = 0i64;
    for q in 0..complex.len() {
        let sign = if q % 2 == 0 { 1 } else { -1 };
        chain += sign * f.trace(q)?;
        hom += sign * basis_trace(&basis, f, q)?;
    }
    Ok(chain == hom)
}

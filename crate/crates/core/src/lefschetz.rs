//! Lefschetz numbers and Euler characteristics in both theories.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chain::{ChainComplex, ChainMap};
use crate::cubical::{cubical_induced_chain_map, enumerate_cubes, CubicalComplex, CubicalOptions};
use crate::error::{domain, Error, Result};
use crate::homalg::{all_homology, basis_trace, HomologyBasis};
use crate::image::{approx_fixed_indices, DigitalImage, DigitalMap, DistanceMatrix, Point};
use crate::simplicial::{enumerate_simplices, simplicial_induced_chain_map, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Simplicial,
    Cubical,
}

impl Theory {
    pub const ALL: [Theory; 2] = [Theory::Simplicial, Theory::Cubical];
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Simplicial => "simplicial",
            Theory::Cubical => "cubical",
        })
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplicial" => Ok(Theory::Simplicial),
            "cubical" => Ok(Theory::Cubical),
            _ => domain(format!("unknown theory {s:?}")),
        }
    }
}

/// A cell mapped onto itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedCell {
    pub dimension: usize,
    pub vertices: Vec<Point>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LefschetzReport {
    pub theory: Theory,
    pub value: i64,
    /// chain-level traces per degree
    pub traces: Vec<i64>,
    /// traces on rational homology per degree
    pub homology_traces: Vec<i64>,
    pub fixed_cells: Vec<FixedCell>,
    /// radius used for approximate fixed points: 1 (simplicial) or the
    /// ambient dimension (cubical)
    pub afp_radius: usize,
    pub afp_count: usize,
    pub afp_witnesses: Vec<Point>,
}

/// Cell complex of either theory.
#[derive(Clone, Debug)]
pub enum CellComplex {
    Simplicial(SimplicialComplex),
    Cubical(CubicalComplex),
}

impl CellComplex {
    pub fn build(img: &Arc<DigitalImage>, theory: Theory) -> Result<Self> {
        Ok(match theory {
            Theory::Simplicial => CellComplex::Simplicial(enumerate_simplices(img)),
            Theory::Cubical => CellComplex::Cubical(enumerate_cubes(img)?),
        })
    }

    pub fn theory(&self) -> Theory {
        match self {
            CellComplex::Simplicial(_) => Theory::Simplicial,
            CellComplex::Cubical(_) => Theory::Cubical,
        }
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        match self {
            CellComplex::Simplicial(c) => c.image(),
            CellComplex::Cubical(c) => c.image(),
        }
    }

    pub fn chain(&self) -> &ChainComplex {
        match self {
            CellComplex::Simplicial(c) => c.chain(),
            CellComplex::Cubical(c) => c.chain(),
        }
    }

    pub fn counts(&self) -> Vec<usize> {
        match self {
            CellComplex::Simplicial(c) => c.counts(),
            CellComplex::Cubical(c) => c.counts(),
        }
    }

    pub fn self_traces(&self, assignment: &[usize]) -> Vec<i64> {
        match self {
            CellComplex::Simplicial(c) => c.self_traces(assignment),
            CellComplex::Cubical(c) => c.self_traces(assignment),
        }
    }

    pub fn fixed_cells(&self, assignment: &[usize]) -> Vec<FixedCell> {
        let img = self.image();
        match self {
            CellComplex::Simplicial(c) => c
                .fixed_simplices(assignment)
                .into_iter()
                .map(|s| {
                    let pts = s.points(img);
                    let names: Vec<String> = pts.iter().map(ToString::to_string).collect();
                    FixedCell {
                        dimension: s.dimension(),
                        label: format!("<{}>", names.join(",")),
                        vertices: pts,
                    }
                })
                .collect(),
            CellComplex::Cubical(c) => c
                .fixed_cells(assignment)
                .into_iter()
                .map(|cell| FixedCell {
                    dimension: cell.dimension(),
                    vertices: cell.vertices().iter().map(|&v| img.point(v).clone()).collect(),
                    label: cell.label(img),
                })
                .collect(),
        }
    }

    /// Induced chain map of a map between the images of two complexes of the
    /// same theory.
    pub fn induced(&self, f: &DigitalMap, codomain: &CellComplex, options: CubicalOptions) -> Result<ChainMap> {
        match (self, codomain) {
            (CellComplex::Simplicial(a), CellComplex::Simplicial(b)) => simplicial_induced_chain_map(f, a, b),
            (CellComplex::Cubical(a), CellComplex::Cubical(b)) => cubical_induced_chain_map(f, a, b, options),
            _ => domain("complexes of different theories"),
        }
    }
}

fn alternating(traces: &[i64]) -> i64 {
    traces
        .iter()
        .enumerate()
        .map(|(q, t)| if q % 2 == 0 { *t } else { -t })
        .sum()
}

/// Complex, homology basis and distances of one image, reused across many
/// self-maps.
#[derive(Clone, Debug)]
pub struct LefschetzContext {
    complex: CellComplex,
    basis: HomologyBasis,
    distances: DistanceMatrix,
    options: CubicalOptions,
}

impl LefschetzContext {
    pub fn new(img: &Arc<DigitalImage>, theory: Theory) -> Result<Self> {
        Self::with_options(img, theory, CubicalOptions::default())
    }

    pub fn with_options(img: &Arc<DigitalImage>, theory: Theory, options: CubicalOptions) -> Result<Self> {
        let complex = CellComplex::build(img, theory)?;
        if let CellComplex::Cubical(c) = &complex {
            let dimension = img.dimension();
            if c.is_geometric() && dimension > crate::cubical::MAX_CHAIN_MAP_DIMENSION && !options.allow_high_dimension {
                return Err(Error::DimensionGuard {
                    dimension,
                    limit: crate::cubical::MAX_CHAIN_MAP_DIMENSION,
                });
            }
        }
        let basis = HomologyBasis::new(complex.chain())?;
        Ok(LefschetzContext {
            complex,
            basis,
            distances: img.distance_matrix(),
            options,
        })
    }

    pub fn theory(&self) -> Theory {
        self.complex.theory()
    }

    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        self.complex.image()
    }

    /// Approximate-fixed-point radius paired with this theory.
    pub fn afp_radius(&self) -> usize {
        match self.theory() {
            Theory::Simplicial => 1,
            Theory::Cubical => self.image().dimension(),
        }
    }

    /// Lefschetz number of a continuous self-map given by its assignment,
    /// from the diagonals of the induced chain map only.
    pub fn value(&self, assignment: &[usize]) -> i64 {
        alternating(&self.complex.self_traces(assignment))
    }

    /// Full report; recomputes traces on homology and fails with an internal
    /// error if they disagree with the chain level.
    pub fn report(&self, f: &DigitalMap) -> Result<LefschetzReport> {
        f.require_self_map()?;
        f.require_continuous()?;
        if !crate::image::same_image(f.domain(), self.image()) {
            return domain("map does not act on this image");
        }
        let cm = self.complex.induced(f, &self.complex, self.options)?;
        let traces = cm.traces()?;
        let homology_traces = (0..traces.len())
            .map(|q| basis_trace(&self.basis, &cm, q))
            .collect::<Result<Vec<_>>>()?;
        let value = alternating(&traces);
        if value != alternating(&homology_traces) {
            return Err(Error::Internal(format!(
                "Hopf trace formula fails: chain level {value}, homology level {}",
                alternating(&homology_traces)
            )));
        }
        let radius = self.afp_radius();
        let afp: Vec<Point> = approx_fixed_indices(&self.distances, f.assignment(), radius)
            .into_iter()
            .map(|i| self.image().point(i).clone())
            .collect();
        Ok(LefschetzReport {
            theory: self.theory(),
            value,
            traces,
            homology_traces,
            fixed_cells: self.complex.fixed_cells(f.assignment()),
            afp_radius: radius,
            afp_count: afp.len(),
            afp_witnesses: afp,
        })
    }
}

pub fn lefschetz(f: &DigitalMap, theory: Theory, options: CubicalOptions) -> Result<LefschetzReport> {
    f.require_self_map()?;
    LefschetzContext::with_options(f.domain(), theory, options)?.report(f)
}

/// `L(f)` with chain-level traces, checked against homology-level traces.
pub fn simplicial_lefschetz(f: &DigitalMap) -> Result<LefschetzReport> {
    lefschetz(f, Theory::Simplicial, CubicalOptions::default())
}

/// `L̄(f)`; needs `c_1` adjacency and ambient dimension at most 4.
pub fn cubical_lefschetz(f: &DigitalMap) -> Result<LefschetzReport> {
    lefschetz(f, Theory::Cubical, CubicalOptions::default())
}

/// Euler characteristic from chain ranks, cross-checked with Betti numbers.
pub fn euler(img: &Arc<DigitalImage>, theory: Theory) -> Result<i64> {
    let complex = CellComplex::build(img, theory)?;
    let chi = complex.chain().euler_characteristic();
    let from_betti: i64 = all_homology(complex.chain())
        .iter()
        .enumerate()
        .map(|(q, h)| if q % 2 == 0 { h.betti as i64 } else { -(h.betti as i64) })
        .sum();
    if chi != from_betti {
        return Err(Error::Internal(format!("Euler characteristic {chi} disagrees with Betti numbers ({from_betti})")));
    }
    Ok(chi)
}

pub fn simplicial_euler(img: &Arc<DigitalImage>) -> Result<i64> {
    euler(img, Theory::Simplicial)
}

/// No dimension cap: the identity induces the identity chain map in every
/// dimension.
pub fn cubical_euler(img: &Arc<DigitalImage>) -> Result<i64> {
    euler(img, Theory::Cubical)
}

pub fn fixed_cells(f: &DigitalMap, theory: Theory) -> Result<Vec<FixedCell>> {
    Ok(lefschetz(f, theory, CubicalOptions::default())?.fixed_cells)
}

/// `|L| ≤ #(approximate fixed points) ≤ #X`, with radius 1 (simplicial) or
/// the ambient dimension (cubical).
pub fn afp_lower_bound_check(f: &DigitalMap, theory: Theory) -> Result<bool> {
    let r = lefschetz(f, theory, CubicalOptions::default())?;
    let magnitude = r.value.unsigned_abs() as usize;
    Ok(magnitude <= r.afp_count && magnitude <= f.domain().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn theory_round_trip() {
        for t in Theory::ALL {
            assert_eq!(t.to_string().parse::<Theory>().unwrap(), t);
        }
        assert!("cellular".parse::<Theory>().is_err());
        assert_eq!(serde_json::to_string(&Theory::Cubical).unwrap(), "\"cubical\"");
    }

    #[test]
    fn rotations() {
        let z = fixtures::image("imageZ").unwrap();
        let rot = fixtures::rotation_180(&z).unwrap();
        let s = simplicial_lefschetz(&rot).unwrap();
        assert_eq!((s.value, s.traces.clone()), (0, vec![0, 0]));
        let c = cubical_lefschetz(&rot).unwrap();
        assert_eq!((c.value, c.traces.clone()), (1, vec![0, 0, 1]));
        assert_eq!(c.fixed_cells.len(), 1);
        assert_eq!(c.fixed_cells[0].dimension, 2);
        assert!(afp_lower_bound_check(&rot, Theory::Cubical).unwrap());
    }

    #[test]
    fn empty_image_has_zero_lefschetz_number() {
        let empty = Arc::new(DigitalImage::with_ct(2, Vec::<Point>::new(), 1).unwrap());
        let f = DigitalMap::identity(empty.clone());
        assert_eq!(simplicial_lefschetz(&f).unwrap().value, 0);
        assert_eq!(cubical_lefschetz(&f).unwrap().value, 0);
        assert_eq!(cubical_euler(&empty).unwrap(), 0);
    }

    #[test]
    fn context_fast_path_matches_report() {
        let y = fixtures::image("imageY").unwrap();
        let rot = fixtures::rotation_180(&y).unwrap();
        for theory in Theory::ALL {
            let ctx = LefschetzContext::new(&y, theory).unwrap();
            assert_eq!(ctx.value(rot.assignment()), ctx.report(&rot).unwrap().value);
        }
    }
}

//! `c_1`-cubical chain complexes.
//!
//! Cells are kept as lists of vertex indices in *binary order*: for a
//! q-cube with nondegenerate axes `j_1 < ... < j_q`, vertex `k` takes the
//! upper endpoint along `j_i` exactly when bit `i - 1` of `k` is set. Front
//! and back faces are then the vertices with that bit clear or set, again in
//! binary order, which makes boundaries and induced maps purely
//! combinatorial.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::chain::{verify_chain_map, ChainComplex, ChainMap};
use crate::error::{domain, Error, Result};
use crate::homalg::IntegerMatrix;
use crate::image::{same_image, Adjacency, DigitalImage, DigitalMap, Point};

/// Ambient dimension up to which induced cubical maps are known to be chain
/// maps.
pub const MAX_CHAIN_MAP_DIMENSION: usize = 4;

/// `{a}` or `{a, a+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn degenerate(a: i64) -> Self {
        Interval { lo: a, hi: a }
    }

    pub fn unit(a: i64) -> Self {
        Interval { lo: a, hi: a + 1 }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `A_i`: keep the lower endpoint.
    Front,
    /// `B_i`: keep the upper endpoint.
    Back,
}

/// Product of elementary intervals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementaryCube {
    intervals: Vec<Interval>,
}

impl ElementaryCube {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.iter().any(|i| i.hi != i.lo && i.hi != i.lo + 1) {
            return domain("elementary intervals have length 0 or 1");
        }
        Ok(ElementaryCube { intervals })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn dimension(&self) -> usize {
        self.nondegenerate_axes().len()
    }

    pub fn nondegenerate_axes(&self) -> Vec<usize> {
        (0..self.intervals.len()).filter(|&i| !self.intervals[i].is_degenerate()).collect()
    }

    /// Collapses coordinate `axis` (0-based) to one endpoint.
    pub fn face(&self, axis: usize, side: Side) -> Result<ElementaryCube> {
        let Some(iv) = self.intervals.get(axis) else {
            return domain(format!("axis {axis} out of range for a cube in Z^{}", self.intervals.len()));
        };
        let mut intervals = self.intervals.clone();
        intervals[axis] = Interval::degenerate(match side {
            Side::Front => iv.lo,
            Side::Back => iv.hi,
        });
        Ok(ElementaryCube { intervals })
    }

    /// Vertices in binary order.
    pub fn vertices(&self) -> Vec<Point> {
        let axes = self.nondegenerate_axes();
        (0..1usize << axes.len())
            .map(|k| {
                let mut c: Vec<i64> = self.intervals.iter().map(|i| i.lo).collect();
                for (b, &ax) in axes.iter().enumerate() {
                    if k >> b & 1 == 1 {
                        c[ax] += 1;
                    }
                }
                Point::new(c)
            })
            .collect()
    }

    /// `Σ_i (−1)^i (A_{j_i} σ − B_{j_i} σ)` over the nondegenerate axes.
    pub fn boundary(&self) -> Vec<(ElementaryCube, i64)> {
        let mut out = Vec::new();
        for (i, &ax) in self.nondegenerate_axes().iter().enumerate() {
            let sign = if i % 2 == 0 { -1 } else { 1 };
            out.push((self.face(ax, Side::Front).unwrap(), sign));
            out.push((self.face(ax, Side::Back).unwrap(), -sign));
        }
        out
    }
}

impl fmt::Display for ElementaryCube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.intervals.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("x"))
    }
}

/// A cell of a cubical complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicalCell {
    /// point indices in binary order
    vertices: Vec<usize>,
    #[serde(skip)]
    sorted: Vec<usize>,
    /// geometric cube; absent for edges of an explicit graph
    cube: Option<ElementaryCube>,
}

impl CubicalCell {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn cube(&self) -> Option<&ElementaryCube> {
        self.cube.as_ref()
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len().trailing_zeros() as usize
    }

    pub fn label(&self, img: &DigitalImage) -> String {
        match &self.cube {
            Some(c) => c.to_string(),
            None => {
                let pts: Vec<String> = self.vertices.iter().map(|&v| img.point(v).to_string()).collect();
                pts.join("-")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CubicalOptions {
    /// Build induced maps above [`MAX_CHAIN_MAP_DIMENSION`]; the chain-map
    /// identity is still verified.
    pub allow_high_dimension: bool,
}

#[derive(Clone, Debug)]
pub struct CubicalComplex {
    image: Arc<DigitalImage>,
    cells: Vec<Vec<CubicalCell>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
    chain: ChainComplex,
    geometric: bool,
}

fn girth_at_least_five(img: &DigitalImage) -> bool {
    let n = img.len();
    for u in 0..n {
        for v in (u + 1)..n {
            let common = img.neighbors(u).iter().filter(|&&w| img.is_adjacent(v, w)).count();
            if common >= 2 || (common == 1 && img.is_adjacent(u, v)) {
                return false;
            }
        }
    }
    true
}

/// Cubical complex of a `c_1` image. Explicit graphs without triangles and
/// 4-cycles are also accepted; their complex is the graph itself.
pub fn enumerate_cubes(img: &Arc<DigitalImage>) -> Result<CubicalComplex> {
    let (cells, geometric) = match img.adjacency() {
        Adjacency::Ct(1) => (geometric_cells(img), true),
        Adjacency::Explicit(_) if girth_at_least_five(img) => (graph_cells(img), false),
        Adjacency::Explicit(_) => {
            return Err(Error::UnsupportedAdjacency(
                "cubical homology needs c1 adjacency (or an explicit graph with no 3- or 4-cycles)".into(),
            ))
        }
        other => {
            return Err(Error::UnsupportedAdjacency(format!("cubical homology needs c1 adjacency, got {other}")))
        }
    };
    let lookup: Vec<HashMap<Vec<usize>, usize>> = cells
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, cell)| (cell.sorted.clone(), i)).collect())
        .collect();
    let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
    let mut boundaries = Vec::with_capacity(cells.len());
    for (q, c) in cells.iter().enumerate() {
        if q == 0 {
            boundaries.push(IntegerMatrix::zeros(0, c.len()));
            continue;
        }
        let mut d = IntegerMatrix::zeros(ranks[q - 1], c.len());
        for (j, cell) in c.iter().enumerate() {
            for i in 0..q {
                let sign = if i % 2 == 0 { -1 } else { 1 };
                let (front, back) = split_face(&cell.vertices, i);
                d.add_to(lookup_sorted(&lookup[q - 1], front)?, j, sign);
                d.add_to(lookup_sorted(&lookup[q - 1], back)?, j, -sign);
            }
        }
        boundaries.push(d);
    }
    let chain = ChainComplex::new(ranks, boundaries)?;
    Ok(CubicalComplex {
        image: img.clone(),
        cells,
        lookup,
        chain,
        geometric,
    })
}

fn split_face(vertices: &[usize], bit: usize) -> (Vec<usize>, Vec<usize>) {
    let mut front = Vec::with_capacity(vertices.len() / 2);
    let mut back = Vec::with_capacity(vertices.len() / 2);
    for (k, &v) in vertices.iter().enumerate() {
        if k >> bit & 1 == 0 {
            front.push(v);
        } else {
            back.push(v);
        }
    }
    (front, back)
}

fn lookup_sorted(table: &HashMap<Vec<usize>, usize>, mut vertices: Vec<usize>) -> Result<usize> {
    vertices.sort_unstable();
    table
        .get(&vertices)
        .copied()
        .ok_or_else(|| Error::Internal(format!("face {vertices:?} missing from the complex")))
}

fn make_cell(vertices: Vec<usize>, cube: Option<ElementaryCube>) -> CubicalCell {
    let mut sorted = vertices.clone();
    sorted.sort_unstable();
    CubicalCell { vertices, sorted, cube }
}

fn geometric_cells(img: &DigitalImage) -> Vec<Vec<CubicalCell>> {
    let n = img.dimension();
    let mut by_dim: Vec<Vec<CubicalCell>> = Vec::new();
    if img.is_empty() {
        return by_dim;
    }
    for p in img.points() {
        for mask in 0usize..1 << n {
            let intervals: Vec<Interval> = (0..n)
                .map(|ax| {
                    let a = p.coords()[ax];
                    if mask >> ax & 1 == 1 {
                        Interval::unit(a)
                    } else {
                        Interval::degenerate(a)
                    }
                })
                .collect();
            let cube = ElementaryCube { intervals };
            let idx: Option<Vec<usize>> = cube.vertices().iter().map(|v| img.index_of(v)).collect();
            if let Some(idx) = idx {
                let q = mask.count_ones() as usize;
                while by_dim.len() <= q {
                    by_dim.push(Vec::new());
                }
                by_dim[q].push(make_cell(idx, Some(cube)));
            }
        }
    }
    for cells in &mut by_dim {
        cells.sort_by(|a, b| a.cube.cmp(&b.cube));
    }
    by_dim
}

fn graph_cells(img: &DigitalImage) -> Vec<Vec<CubicalCell>> {
    if img.is_empty() {
        return Vec::new();
    }
    let vertices = (0..img.len()).map(|v| make_cell(vec![v], None)).collect();
    let edges: Vec<CubicalCell> = img.edges().map(|(a, b)| make_cell(vec![a, b], None)).collect();
    if edges.is_empty() {
        vec![vertices]
    } else {
        vec![vertices, edges]
    }
}

impl CubicalComplex {
    pub fn new(image: Arc<DigitalImage>) -> Result<Self> {
        enumerate_cubes(&image)
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn cells(&self, q: usize) -> &[CubicalCell] {
        self.cells.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Whether cells are genuine elementary cubes of a `c_1` image.
    pub fn is_geometric(&self) -> bool {
        self.geometric
    }

    fn require_dimension(&self, options: CubicalOptions) -> Result<()> {
        let dimension = self.image.dimension();
        if self.geometric && dimension > MAX_CHAIN_MAP_DIMENSION && !options.allow_high_dimension {
            return Err(Error::DimensionGuard {
                dimension,
                limit: MAX_CHAIN_MAP_DIMENSION,
            });
        }
        Ok(())
    }

    /// Coefficient of `target` in the image of `cell` under `assignment`.
    fn column_entry(&self, cell: &CubicalCell, w: &[usize]) -> Result<Option<(usize, i64)>> {
        let q = cell.dimension();
        let mut sorted = w.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() < w.len() {
            return Ok(None);
        }
        let row = *self
            .lookup
            .get(q)
            .and_then(|t| t.get(&sorted))
            .ok_or_else(|| Error::Internal(format!("image {w:?} of a {q}-cube is not a cube")))?;
        let tau = &self.cells[q][row];
        Ok(Some((row, orientation(&tau.vertices, w, q)?)))
    }

    /// Diagonal entries of the induced map of a self-map, summed per degree.
    pub fn self_traces(&self, assignment: &[usize]) -> Vec<i64> {
        let mut w = Vec::new();
        self.cells
            .iter()
            .map(|cells| {
                cells
                    .iter()
                    .map(|cell| {
                        w.clear();
                        w.extend(cell.vertices.iter().map(|&v| assignment[v]));
                        self_sign(cell, &w)
                    })
                    .sum()
            })
            .collect()
    }

    /// Cells whose vertex set is mapped onto itself.
    pub fn fixed_cells(&self, assignment: &[usize]) -> Vec<&CubicalCell> {
        let mut w = Vec::new();
        self.cells
            .iter()
            .flatten()
            .filter(|cell| {
                w.clear();
                w.extend(cell.vertices.iter().map(|&v| assignment[v]));
                self_sign(cell, &w) != 0
            })
            .collect()
    }
}

fn self_sign(cell: &CubicalCell, w: &[usize]) -> i64 {
    if !w.iter().all(|x| cell.sorted.binary_search(x).is_ok()) {
        return 0;
    }
    let mut s = w.to_vec();
    s.sort_unstable();
    if s != cell.sorted {
        return 0;
    }
    orientation(&cell.vertices, w, cell.dimension()).unwrap_or(0)
}

/// Sign with which the binary-ordered vertex list `w` traverses the cube
/// whose binary-ordered vertices are `tau`.
fn orientation(tau: &[usize], w: &[usize], q: usize) -> Result<i64> {
    let pos = |v: usize| tau.iter().position(|&t| t == v).expect("vertex sets agree");
    let m: Vec<usize> = w.iter().map(|&v| pos(v)).collect();
    let c = m[0];
    let mut perm = Vec::with_capacity(q);
    for i in 0..q {
        let d = m[1 << i] ^ c;
        if !d.is_power_of_two() {
            return Err(Error::Internal("cube image is not affine".into()));
        }
        perm.push(d.trailing_zeros() as usize);
    }
    for (k, &mk) in m.iter().enumerate() {
        let expected = (0..q).filter(|&i| k >> i & 1 == 1).fold(c, |acc, i| acc ^ (1 << perm[i]));
        if mk != expected {
            return Err(Error::Internal("cube image is not affine".into()));
        }
    }
    let mut sign = if c.count_ones().is_multiple_of(2) { 1 } else { -1 };
    for i in 0..q {
        for j in (i + 1)..q {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

/// Chain map induced by a continuous map between cubical complexes.
///
/// A cube whose image has fewer distinct vertices than the cube maps to 0.
/// The chain-map identity is verified; a failure is an internal error.
pub fn cubical_induced_chain_map(
    f: &DigitalMap,
    domain_complex: &CubicalComplex,
    codomain: &CubicalComplex,
    options: CubicalOptions,
) -> Result<ChainMap> {
    f.require_continuous()?;
    if !same_image(f.domain(), &domain_complex.image) || !same_image(f.codomain(), &codomain.image) {
        return domain("complexes do not belong to the map's domain and codomain");
    }
    domain_complex.require_dimension(options)?;
    codomain.require_dimension(options)?;
    let a = f.assignment();
    let mut matrices = Vec::with_capacity(domain_complex.len());
    for (q, cells) in domain_complex.cells.iter().enumerate() {
        let mut m = IntegerMatrix::zeros(codomain.chain.rank(q), cells.len());
        for (j, cell) in cells.iter().enumerate() {
            let w: Vec<usize> = cell.vertices.iter().map(|&v| a[v]).collect();
            if let Some((row, sign)) = codomain.column_entry(cell, &w)? {
                m.set(row, j, sign);
            }
        }
        matrices.push(m);
    }
    let cm = ChainMap::new(matrices);
    if !verify_chain_map(&cm, &domain_complex.chain, &codomain.chain)? {
        return Err(Error::Internal(format!(
            "induced cubical map is not a chain map (ambient dimension {})",
            domain_complex.image.dimension()
        )));
    }
    Ok(cm)
}

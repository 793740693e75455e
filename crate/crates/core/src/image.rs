//! Finite digital images, digitally continuous maps, paths and distances.
//!
//! Points of an image are kept sorted lexicographically; every index used in
//! this crate (simplex vertices, cube vertices, map assignments) refers to
//! that canonical order.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// A lattice point in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<i64>> for Point {
    fn from(coords: Vec<i64>) -> Self {
        Point(coords)
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(coords: [i64; N]) -> Self {
        Point(coords.to_vec())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Adjacency relation of an image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// `c_t`: distinct points are adjacent when at most `t` coordinates differ
    /// by ±1 and the others coincide.
    Ct(usize),
    /// An explicit edge set, as unordered pairs of point indices.
    Explicit(Vec<(usize, usize)>),
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Adjacency::Ct(t) => write!(f, "c{t}"),
            Adjacency::Explicit(e) => write!(f, "explicit ({} edges)", e.len()),
        }
    }
}

/// Shortest-path distance; `None` stands for +∞ (no path).
pub type Distance = Option<usize>;

/// A finite digital image `(X, κ)`.
#[derive(Clone, Debug)]
pub struct DigitalImage {
    dimension: usize,
    points: Vec<Point>,
    adjacency: Adjacency,
    index: HashMap<Point, usize>,
    neighbors: Vec<Vec<usize>>,
    closed: Vec<FixedBitSet>,
}

impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension
            && self.points == other.points
            && self.neighbors == other.neighbors
    }
}

impl Eq for DigitalImage {}

fn ct_adjacent(p: &Point, q: &Point, t: usize) -> bool {
    let mut differing = 0;
    for (a, b) in p.0.iter().zip(&q.0) {
        match (a - b).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    differing >= 1 && differing <= t
}

impl DigitalImage {
    /// Builds an image. Points may come in any order and are sorted; indices in
    /// an `Explicit` edge list refer to the order in which points were given.
    pub fn new(
        dimension: usize,
        points: impl IntoIterator<Item = Point>,
        adjacency: Adjacency,
    ) -> Result<Self> {
        if dimension == 0 {
            return domain("ambient dimension must be at least 1");
        }
        let given: Vec<Point> = points.into_iter().collect();
        for p in &given {
            if p.dimension() != dimension {
                return domain(format!("point {p} does not have {dimension} coordinates"));
            }
        }
        let mut order: Vec<usize> = (0..given.len()).collect();
        order.sort_by(|&a, &b| given[a].cmp(&given[b]));
        let mut rank = vec![0usize; given.len()];
        for (r, &g) in order.iter().enumerate() {
            rank[g] = r;
        }
        let points: Vec<Point> = order.iter().map(|&g| given[g].clone()).collect();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return domain(format!("duplicate point {}", w[0]));
        }

        let n = points.len();
        let mut neighbors = vec![Vec::new(); n];
        let adjacency = match adjacency {
            Adjacency::Ct(t) => {
                if t == 0 || t > dimension {
                    return domain(format!("c{t} adjacency requires 1 <= t <= {dimension}"));
                }
                for i in 0..n {
                    for j in (i + 1)..n {
                        if ct_adjacent(&points[i], &points[j], t) {
                            neighbors[i].push(j);
                            neighbors[j].push(i);
                        }
                    }
                }
                Adjacency::Ct(t)
            }
            Adjacency::Explicit(edges) => {
                let mut normalized = Vec::with_capacity(edges.len());
                for (a, b) in edges {
                    if a >= n || b >= n {
                        return domain(format!("edge ({a},{b}) references a missing point"));
                    }
                    if a == b {
                        return domain(format!("self-pair ({a},{a}) in explicit adjacency"));
                    }
                    let (a, b) = (rank[a], rank[b]);
                    normalized.push((a.min(b), a.max(b)));
                }
                normalized.sort_unstable();
                normalized.dedup();
                for &(a, b) in &normalized {
                    neighbors[a].push(b);
                    neighbors[b].push(a);
                }
                for list in &mut neighbors {
                    list.sort_unstable();
                }
                Adjacency::Explicit(normalized)
            }
        };

        let closed = neighbors
            .iter()
            .enumerate()
            .map(|(i, list)| {
                let mut set = FixedBitSet::with_capacity(n);
                set.insert(i);
                for &j in list {
                    set.insert(j);
                }
                set
            })
            .collect();
        let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(DigitalImage {
            dimension,
            points,
            adjacency,
            index,
            neighbors,
            closed,
        })
    }

    /// Image with `c_t` adjacency.
    pub fn with_ct(dimension: usize, points: impl IntoIterator<Item = Point>, t: usize) -> Result<Self> {
        Self::new(dimension, points, Adjacency::Ct(t))
    }

    /// Image with an explicit edge set given as point pairs.
    pub fn with_edges(
        dimension: usize,
        points: impl IntoIterator<Item = Point>,
        edges: impl IntoIterator<Item = (Point, Point)>,
    ) -> Result<Self> {
        let points: Vec<Point> = points.into_iter().collect();
        let lookup: HashMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (Some(&i), Some(&j)) = (lookup.get(&a), lookup.get(&b)) else {
                return domain(format!("edge {a}-{b} references a point outside the image"));
            };
            pairs.push((i, j));
        }
        Self::new(dimension, points.clone(), Adjacency::Explicit(pairs))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    /// True for `c_1` adjacency, the setting of cubical homology.
    pub fn is_c1(&self) -> bool {
        self.adjacency == Adjacency::Ct(1)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn require(&self, p: &Point) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::Domain(format!("point {p} is not in the image")))
    }

    /// Sorted adjacency list of point `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// Closed neighbourhood `{j : j ⟺ i}` as a bit set over point indices.
    pub fn closed_neighborhood(&self, i: usize) -> &FixedBitSet {
        &self.closed[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.closed[i].contains(j)
    }

    pub fn is_close(&self, i: usize, j: usize) -> bool {
        self.closed[i].contains(j)
    }

    /// `p ↔ q`. Antireflexive: a point is never adjacent to itself.
    pub fn adjacent(&self, p: &Point, q: &Point) -> Result<bool> {
        Ok(self.is_adjacent(self.require(p)?, self.require(q)?))
    }

    /// `p ⟺ q`: adjacent or equal.
    pub fn close(&self, p: &Point, q: &Point) -> Result<bool> {
        Ok(self.is_close(self.require(p)?, self.require(q)?))
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Breadth-first distances from point `i`.
    pub fn distances_from(&self, i: usize) -> Vec<Distance> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        dist[i] = Some(0);
        queue.push_back(i);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &v in &self.neighbors[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs distance table.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        let n = self.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            table.extend(self.distances_from(i));
        }
        DistanceMatrix { n, table }
    }

    /// Length of a shortest path between `p` and `q`, or `None` when they lie
    /// in different components.
    pub fn geodesic_distance(&self, p: &Point, q: &Point) -> Result<Distance> {
        let (i, j) = (self.require(p)?, self.require(q)?);
        Ok(self.distances_from(i)[j])
    }

    pub fn shortest_path(&self, p: &Point, q: &Point) -> Result<Option<Path>> {
        let (start, goal) = (self.require(p)?, self.require(q)?);
        let mut parent = vec![usize::MAX; self.len()];
        let mut queue = VecDeque::from([start]);
        parent[start] = start;
        while let Some(u) = queue.pop_front() {
            if u == goal {
                break;
            }
            for &v in &self.neighbors[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[goal] == usize::MAX {
            return Ok(None);
        }
        let mut rev = vec![goal];
        let mut cur = goal;
        while cur != start {
            cur = parent[cur];
            rev.push(cur);
        }
        rev.reverse();
        Ok(Some(Path {
            vertices: rev.into_iter().map(|i| self.points[i].clone()).collect(),
        }))
    }

    /// Connected components, each a sorted list of point indices; components
    /// are ordered by their least point.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.neighbors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subimage on the given point indices with the induced adjacency.
    pub fn induced_subimage(&self, indices: &[usize]) -> Result<DigitalImage> {
        let mut keep: Vec<usize> = indices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&i| i >= self.len()) {
            return domain(format!("index {bad} out of range"));
        }
        let points = keep.iter().map(|&i| self.points[i].clone());
        match &self.adjacency {
            Adjacency::Ct(t) => DigitalImage::with_ct(self.dimension, points, *t),
            Adjacency::Explicit(_) => {
                let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
                let edges = self
                    .edges()
                    .filter_map(|(a, b)| Some((*pos.get(&a)?, *pos.get(&b)?)))
                    .collect();
                DigitalImage::new(self.dimension, points, Adjacency::Explicit(edges))
            }
        }
    }
}

/// Dense all-pairs distance table of one image.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    table: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn get(&self, i: usize, j: usize) -> Distance {
        self.table[i * self.n + j]
    }

    /// `d(i, j) <= bound`, treating +∞ as exceeding every bound.
    pub fn within(&self, i: usize, j: usize, bound: usize) -> bool {
        matches!(self.get(i, j), Some(d) if d <= bound)
    }
}

/// A digital path: consecutive vertices are adjacent or equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<Point>,
}

impl Path {
    pub fn new(img: &DigitalImage, vertices: Vec<Point>) -> Result<Path> {
        if vertices.is_empty() {
            return domain("a path needs at least one vertex");
        }
        for w in vertices.windows(2) {
            if !img.close(&w[0], &w[1])? {
                return domain(format!("path step {} -> {} is not a closeness step", w[0], w[1]));
            }
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A total map between two digital images, stored as an index assignment.
#[derive(Clone, Debug)]
pub struct DigitalMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    assignment: Vec<usize>,
}

impl PartialEq for DigitalMap {
    fn eq(&self, other: &Self) -> bool {
        same_image(&self.domain, &other.domain)
            && same_image(&self.codomain, &other.codomain)
            && self.assignment == other.assignment
    }
}

impl Eq for DigitalMap {}

pub(crate) fn same_image(a: &Arc<DigitalImage>, b: &Arc<DigitalImage>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Continuity check on a raw assignment.
pub fn is_continuous_assignment(domain: &DigitalImage, codomain: &DigitalImage, assignment: &[usize]) -> bool {
    domain
        .edges()
        .all(|(x, y)| codomain.is_close(assignment[x], assignment[y]))
}

impl DigitalMap {
    pub fn new(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != domain.len() {
            return domain_err(format!(
                "assignment has {} entries for a domain of {} points",
                assignment.len(),
                domain.len()
            ));
        }
        if let Some(&bad) = assignment.iter().find(|&&v| v >= codomain.len()) {
            return domain_err(format!("assigned index {bad} is outside the codomain"));
        }
        Ok(DigitalMap {
            domain,
            codomain,
            assignment,
        })
    }

    /// Builds a map from a point function; every value must lie in the codomain.
    pub fn from_fn(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        mut f: impl FnMut(&Point) -> Point,
    ) -> Result<Self> {
        let mut assignment = Vec::with_capacity(domain.len());
        for p in domain.points() {
            let q = f(p);
            let j = codomain
                .index_of(&q)
                .ok_or_else(|| Error::Domain(format!("{p} maps to {q}, which is not in the codomain")))?;
            assignment.push(j);
        }
        Self::new(domain, codomain, assignment)
    }

    pub fn identity(img: Arc<DigitalImage>) -> Self {
        let assignment = (0..img.len()).collect();
        DigitalMap {
            domain: img.clone(),
            codomain: img,
            assignment,
        }
    }

    pub fn constant(img: Arc<DigitalImage>, p: &Point) -> Result<Self> {
        let j = img.require(p)?;
        Ok(DigitalMap {
            domain: img.clone(),
            codomain: img.clone(),
            assignment: vec![j; img.len()],
        })
    }

    /// Inclusion of `sub` into `sup`; every point of `sub` must lie in `sup`.
    pub fn inclusion(sub: Arc<DigitalImage>, sup: Arc<DigitalImage>) -> Result<Self> {
        Self::from_fn(sub, sup, |p| p.clone())
    }

    /// `f ∘ g` (apply `g` first).
    pub fn compose(f: &DigitalMap, g: &DigitalMap) -> Result<Self> {
        if !same_image(&g.codomain, &f.domain) {
            return domain_err("cannot compose: codomain of g differs from domain of f");
        }
        Ok(DigitalMap {
            domain: g.domain.clone(),
            codomain: f.codomain.clone(),
            assignment: g.assignment.iter().map(|&v| f.assignment[v]).collect(),
        })
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, p: &Point) -> Result<&Point> {
        let i = self.domain.require(p)?;
        Ok(self.codomain.point(self.assignment[i]))
    }

    pub fn is_self_map(&self) -> bool {
        same_image(&self.domain, &self.codomain)
    }

    pub fn is_constant(&self) -> bool {
        self.assignment.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_continuous(&self) -> bool {
        is_continuous_assignment(&self.domain, &self.codomain, &self.assignment)
    }

    pub(crate) fn require_continuous(&self) -> Result<()> {
        if self.is_continuous() {
            Ok(())
        } else {
            Err(Error::Precondition("map is not digitally continuous".into()))
        }
    }

    pub(crate) fn require_self_map(&self) -> Result<()> {
        if self.is_self_map() {
            Ok(())
        } else {
            domain_err("operation requires a self-map")
        }
    }

    /// `{x : f(x) = x}`.
    pub fn fixed_points(&self) -> Result<Vec<Point>> {
        self.approx_fixed_points(0)
    }

    /// `{x : there is a path of length <= n from x to f(x)}`.
    pub fn approx_fixed_points(&self, n: usize) -> Result<Vec<Point>> {
        self.require_self_map()?;
        let idx = if n == 0 {
            (0..self.domain.len()).filter(|&i| self.assignment[i] == i).collect::<Vec<_>>()
        } else {
            let dist = self.domain.distance_matrix();
            approx_fixed_indices(&dist, &self.assignment, n)
        };
        Ok(idx.into_iter().map(|i| self.domain.point(i).clone()).collect())
    }
}

pub(crate) fn approx_fixed_indices(dist: &DistanceMatrix, assignment: &[usize], n: usize) -> Vec<usize> {
    (0..assignment.len())
        .filter(|&i| dist.within(i, assignment[i], n))
        .collect()
}

fn domain_err<T>(msg: impl Into<String>) -> Result<T> {
    domain(msg)
}

/// Normal product adjacency `NP_u` on `X_1 × ... × X_k`: the tuples differ,
/// and their coordinates are adjacent in at most `u` positions and equal in
/// all others.
pub fn np_adjacent(u: usize, images: &[&DigitalImage], a: &[Point], b: &[Point]) -> Result<bool> {
    if a.len() != images.len() || b.len() != images.len() {
        return domain("tuple arity does not match the number of factors");
    }
    if u == 0 || u > images.len() {
        return domain(format!("NP_u requires 1 <= u <= {}", images.len()));
    }
    let mut adjacent_positions = 0;
    for ((img, p), q) in images.iter().zip(a).zip(b) {
        if p == q {
            img.require(p)?;
            continue;
        }
        if !img.adjacent(p, q)? {
            return Ok(false);
        }
        adjacent_positions += 1;
    }
    Ok(adjacent_positions >= 1 && adjacent_positions <= u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(w: i64, h: i64, t: usize) -> Arc<DigitalImage> {
        let pts = (0..w).flat_map(|x| (0..h).map(move |y| Point::from([x, y])));
        Arc::new(DigitalImage::with_ct(2, pts, t).unwrap())
    }

    fn cycle4_explicit() -> Arc<DigitalImage> {
        let pts: Vec<Point> = (0..4).map(|i| Point::from([i])).collect();
        let edges = (0..4).map(|i| (i, (i + 1) % 4)).collect();
        Arc::new(DigitalImage::new(1, pts, Adjacency::Explicit(edges)).unwrap())
    }

    #[test]
    fn adjacency_under_c1_and_c2() {
        let g1 = grid(2, 2, 1);
        let g2 = grid(2, 2, 2);
        let (o, e, d) = (Point::from([0, 0]), Point::from([1, 0]), Point::from([1, 1]));
        assert!(g1.adjacent(&o, &e).unwrap());
        assert!(!g1.adjacent(&o, &d).unwrap());
        assert!(g2.adjacent(&o, &d).unwrap());
        assert!(!g1.adjacent(&o, &o).unwrap());
        assert!(g1.close(&o, &o).unwrap());
    }

    #[test]
    fn close_rejects_distance_two() {
        let line = Arc::new(DigitalImage::with_ct(2, (0..3).map(|x| Point::from([x, 0])), 1).unwrap());
        assert!(line.close(&Point::from([0, 0]), &Point::from([1, 0])).unwrap());
        assert!(!line.close(&Point::from([0, 0]), &Point::from([2, 0])).unwrap());
    }

    #[test]
    fn unknown_point_is_domain_error() {
        let g = grid(2, 2, 1);
        assert!(matches!(g.adjacent(&Point::from([5, 5]), &Point::from([0, 0])), Err(Error::Domain(_))));
    }

    #[test]
    fn construction_validates_input() {
        assert!(DigitalImage::with_ct(2, [Point::from([0, 0]), Point::from([0, 0])], 1).is_err());
        assert!(DigitalImage::with_ct(2, [Point::from([0])], 1).is_err());
        assert!(DigitalImage::with_ct(2, [Point::from([0, 0])], 3).is_err());
        assert!(DigitalImage::new(1, [Point::from([0])], Adjacency::Explicit(vec![(0, 0)])).is_err());
        assert!(DigitalImage::new(1, [Point::from([0])], Adjacency::Explicit(vec![(0, 1)])).is_err());
    }

    #[test]
    fn explicit_indices_follow_input_order() {
        let pts = vec![Point::from([2]), Point::from([0]), Point::from([1])];
        // edge between the given points (2) and (0)
        let img = DigitalImage::new(1, pts, Adjacency::Explicit(vec![(0, 1)])).unwrap();
        assert!(img.adjacent(&Point::from([0]), &Point::from([2])).unwrap());
        assert!(!img.adjacent(&Point::from([0]), &Point::from([1])).unwrap());
        assert_eq!(img.adjacency(), &Adjacency::Explicit(vec![(0, 2)]));
    }

    #[test]
    fn continuity_on_c4() {
        let c4 = cycle4_explicit();
        assert!(DigitalMap::identity(c4.clone()).is_continuous());
        assert!(DigitalMap::constant(c4.clone(), &Point::from([2])).unwrap().is_continuous());
        // x0 -> x0, x1 -> x2 breaks the edge x0 x1
        let bad = DigitalMap::new(c4.clone(), c4.clone(), vec![0, 2, 2, 3]).unwrap();
        assert!(!bad.is_continuous());
        // identity except x3 -> x2: the edge x3 x0 lands on x2, x0, which are antipodal
        let folded = DigitalMap::new(c4.clone(), c4.clone(), vec![0, 1, 2, 2]).unwrap();
        assert!(!folded.is_continuous());
        // identity except x3 -> x1 is continuous: x1 is close to both x0 and x2
        let folded = DigitalMap::new(c4.clone(), c4, vec![0, 1, 2, 1]).unwrap();
        assert!(folded.is_continuous());
    }

    #[test]
    fn distances() {
        let sq = grid(2, 2, 1);
        let (a, b, c) = (Point::from([0, 0]), Point::from([1, 0]), Point::from([1, 1]));
        assert_eq!(sq.geodesic_distance(&a, &a).unwrap(), Some(0));
        assert_eq!(sq.geodesic_distance(&a, &b).unwrap(), Some(1));
        assert_eq!(sq.geodesic_distance(&a, &c).unwrap(), Some(2));
        let split = DigitalImage::with_ct(1, [Point::from([0]), Point::from([5])], 1).unwrap();
        assert_eq!(split.geodesic_distance(&Point::from([0]), &Point::from([5])).unwrap(), None);
        let path = sq.shortest_path(&a, &c).unwrap().unwrap();
        assert_eq!(path.len(), 2);
        assert!(split.shortest_path(&Point::from([0]), &Point::from([5])).unwrap().is_none());
    }

    #[test]
    fn path_validation() {
        let sq = grid(2, 2, 1);
        assert!(Path::new(&sq, vec![Point::from([0, 0]), Point::from([0, 0]), Point::from([0, 1])]).is_ok());
        assert!(Path::new(&sq, vec![Point::from([0, 0]), Point::from([1, 1])]).is_err());
        assert!(Path::new(&sq, vec![]).is_err());
    }

    #[test]
    fn compose_and_identity() {
        let y = grid(3, 2, 1);
        let rot = DigitalMap::from_fn(y.clone(), y.clone(), |p| Point::from([2 - p.coords()[0], 1 - p.coords()[1]])).unwrap();
        let id = DigitalMap::identity(y.clone());
        assert_eq!(DigitalMap::compose(&id, &rot).unwrap(), rot);
        assert_eq!(DigitalMap::compose(&rot, &rot).unwrap(), id);
        let c = DigitalMap::constant(y.clone(), &Point::from([1, 1])).unwrap();
        assert_eq!(DigitalMap::compose(&c, &rot).unwrap(), c);
        let other = grid(2, 2, 1);
        let g = DigitalMap::identity(other);
        assert!(DigitalMap::compose(&rot, &g).is_err());
    }

    #[test]
    fn approximate_fixed_points_of_rotation() {
        let y = grid(3, 2, 1);
        let rot = DigitalMap::from_fn(y.clone(), y.clone(), |p| Point::from([2 - p.coords()[0], 1 - p.coords()[1]])).unwrap();
        assert!(rot.fixed_points().unwrap().is_empty());
        assert_eq!(rot.approx_fixed_points(1).unwrap(), vec![Point::from([1, 0]), Point::from([1, 1])]);
        assert_eq!(rot.approx_fixed_points(3).unwrap().len(), 6);
    }

    #[test]
    fn normal_product_adjacency() {
        let xs = DigitalImage::with_ct(1, (0..3).map(|i| Point::from([i])), 1).unwrap();
        let t = DigitalImage::with_ct(1, (0..2).map(|i| Point::from([i])), 1).unwrap();
        let f = [&xs, &t];
        let p = |a: i64, b: i64| vec![Point::from([a]), Point::from([b])];
        assert!(np_adjacent(1, &f, &p(0, 0), &p(0, 1)).unwrap());
        assert!(!np_adjacent(1, &f, &p(0, 0), &p(1, 1)).unwrap());
        assert!(np_adjacent(2, &f, &p(0, 0), &p(1, 1)).unwrap());
        assert!(!np_adjacent(2, &f, &p(0, 0), &p(0, 0)).unwrap());
        assert!(np_adjacent(1, &f, &p(0, 0), &[Point::from([0])]).is_err());
    }

    #[test]
    fn subimage_keeps_adjacency() {
        let c4 = cycle4_explicit();
        let sub = c4.induced_subimage(&[0, 1, 3]).unwrap();
        assert_eq!(sub.edge_count(), 2);
        let g = grid(3, 3, 1);
        let ring = g.induced_subimage(&[0, 1, 2, 3, 5, 6, 7, 8]).unwrap();
        assert_eq!(ring.edge_count(), 8);
    }
}

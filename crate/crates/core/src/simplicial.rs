//! Clique (simplicial) chain complexes of digital images.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::chain::{verify_chain_map, ChainComplex, ChainMap};
use crate::error::{domain, Error, Result};
use crate::homalg::IntegerMatrix;
use crate::image::{same_image, DigitalImage, DigitalMap, Point};

/// An oriented simplex, stored as strictly increasing point indices of its
/// image. Since point indices follow the canonical point order, the stored
/// tuple is the positively oriented representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Simplex {
    vertices: Vec<usize>,
}

impl Simplex {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn points(&self, img: &DigitalImage) -> Vec<Point> {
        self.vertices.iter().map(|&v| img.point(v).clone()).collect()
    }
}

/// Clique complex of an image with its boundary matrices.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    image: Arc<DigitalImage>,
    cells: Vec<Vec<Simplex>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
    chain: ChainComplex,
}

impl SimplicialComplex {
    pub fn new(image: Arc<DigitalImage>) -> Self {
        enumerate_simplices(&image)
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn simplices(&self, q: usize) -> &[Simplex] {
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

    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        let q = vertices.len().checked_sub(1)?;
        self.lookup.get(q)?.get(vertices).copied()
    }

    /// Diagonal entries of the induced chain map of a self-map, summed per
    /// degree. Skips building matrices; the assignment must be continuous.
    pub fn self_traces(&self, assignment: &[usize]) -> Vec<i64> {
        let mut w = Vec::new();
        self.cells
            .iter()
            .map(|cells| {
                cells
                    .iter()
                    .map(|s| {
                        w.clear();
                        w.extend(s.vertices.iter().map(|&v| assignment[v]));
                        diagonal_sign(&s.vertices, &w)
                    })
                    .sum()
            })
            .collect()
    }

    /// Simplices whose vertex set is mapped onto itself.
    pub fn fixed_simplices(&self, assignment: &[usize]) -> Vec<&Simplex> {
        let mut w = Vec::new();
        self.cells
            .iter()
            .flatten()
            .filter(|s| {
                w.clear();
                w.extend(s.vertices.iter().map(|&v| assignment[v]));
                diagonal_sign(&s.vertices, &w) != 0
            })
            .collect()
    }
}

/// Coefficient of `s` in the image of `s`, given the image vertices `w`.
fn diagonal_sign(s: &[usize], w: &[usize]) -> i64 {
    if !w.iter().all(|x| s.contains(x)) {
        return 0;
    }
    let mut sorted = w.to_vec();
    match sort_with_parity(&mut sorted) {
        Some(sign) if sorted == s => sign,
        _ => 0,
    }
}

/// Sorts in place and returns the parity sign of the sorting permutation, or
/// `None` if two entries coincide.
pub(crate) fn sort_with_parity(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    // insertion sort; simplices are tiny
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some(sign)
}

fn extend_cliques(img: &DigitalImage, clique: &mut Vec<usize>, candidates: &[usize], out: &mut Vec<Vec<Simplex>>) {
    let q = clique.len() - 1;
    if out.len() <= q {
        out.push(Vec::new());
    }
    out[q].push(Simplex {
        vertices: clique.clone(),
    });
    for (k, &v) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[k + 1..].iter().copied().filter(|&u| img.is_adjacent(v, u)).collect();
        clique.push(v);
        extend_cliques(img, clique, &next, out);
        clique.pop();
    }
}

/// All cliques of the adjacency graph, per dimension, in lexicographic order
/// of their sorted vertex tuples, with boundary matrices.
pub fn enumerate_simplices(img: &Arc<DigitalImage>) -> SimplicialComplex {
    let mut cells: Vec<Vec<Simplex>> = Vec::new();
    for v in 0..img.len() {
        let later: Vec<usize> = img.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        let mut clique = vec![v];
        extend_cliques(img, &mut clique, &later, &mut cells);
    }
    for c in &mut cells {
        c.sort();
    }
    let lookup: Vec<HashMap<Vec<usize>, usize>> = cells
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, s)| (s.vertices.clone(), i)).collect())
        .collect();
    let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
    let mut boundaries = Vec::with_capacity(cells.len());
    for (q, c) in cells.iter().enumerate() {
        if q == 0 {
            boundaries.push(IntegerMatrix::zeros(0, c.len()));
            continue;
        }
        let mut d = IntegerMatrix::zeros(ranks[q - 1], c.len());
        for (j, s) in c.iter().enumerate() {
            for i in 0..=q {
                let mut face = s.vertices.clone();
                face.remove(i);
                let row = lookup[q - 1][&face];
                d.set(row, j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        boundaries.push(d);
    }
    let chain = ChainComplex::new(ranks, boundaries).expect("clique complex shapes are consistent");
    SimplicialComplex {
        image: img.clone(),
        cells,
        lookup,
        chain,
    }
}

/// Chain map induced by a continuous map. The chain-map identity is checked
/// and a failure is reported as an internal error.
pub fn simplicial_induced_chain_map(
    f: &DigitalMap,
    domain_complex: &SimplicialComplex,
    codomain: &SimplicialComplex,
) -> Result<ChainMap> {
    f.require_continuous()?;
    if !same_image(f.domain(), &domain_complex.image) || !same_image(f.codomain(), &codomain.image) {
        return domain("complexes do not belong to the map's domain and codomain");
    }
    let a = f.assignment();
    let mut matrices = Vec::with_capacity(domain_complex.len());
    for (q, cells) in domain_complex.cells.iter().enumerate() {
        let mut m = IntegerMatrix::zeros(codomain.chain.rank(q), cells.len());
        for (j, s) in cells.iter().enumerate() {
            let mut w: Vec<usize> = s.vertices.iter().map(|&v| a[v]).collect();
            let Some(sign) = sort_with_parity(&mut w) else {
                continue;
            };
            let row = codomain
                .index_of(&w)
                .ok_or_else(|| Error::Internal(format!("image of simplex {:?} is not a simplex", s.vertices)))?;
            m.set(row, j, sign);
        }
        matrices.push(m);
    }
    let cm = ChainMap::new(matrices);
    if !verify_chain_map(&cm, &domain_complex.chain, &codomain.chain)? {
        return Err(Error::Internal("induced simplicial map is not a chain map".into()));
    }
    Ok(cm)
}

//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;
use std::sync::Arc;

use lefdt_core::{fixtures, DigitalImage, DigitalMap, Point};
use rand::seq::SliceRandom;
use rand::Rng;

/// `trace(M^len)` for the closeness matrix `M = I + A`: the number of closed
/// walks of length `len` where a step may stay put. For a cycle `C_n` with
/// `len = n` this counts the continuous self-maps.
pub fn closed_walk_count(img: &DigitalImage, len: u32) -> u128 {
    let n = img.len();
    let m: Vec<Vec<u128>> = (0..n)
        .map(|i| (0..n).map(|j| u128::from(i == j || img.is_adjacent(i, j))).collect())
        .collect();
    let mut power: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect();
    for _ in 0..len {
        power = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| power[i][k] * m[k][j]).sum()).collect())
            .collect();
    }
    (0..n).map(|i| power[i][i]).sum()
}

/// Every function `dom -> cod` that is continuous, by plain enumeration of
/// all `|cod|^|dom|` functions.
pub fn brute_force_maps(dom: &DigitalImage, cod: &DigitalImage) -> Vec<Vec<usize>> {
    let (n, m) = (dom.len(), cod.len());
    let total = (m as u64).pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let a: Vec<usize> = (0..n)
            .map(|_| {
                let v = (c % m as u64) as usize;
                c /= m as u64;
                v
            })
            .collect();
        let ok = (0..n).all(|x| {
            (0..n).all(|y| !dom.is_adjacent(x, y) || a[x] == a[y] || cod.is_adjacent(a[x], a[y]))
        });
        if ok {
            out.push(a);
        }
    }
    out
}

/// Shortest-path distance by a fresh breadth-first search.
pub fn bfs_distance(img: &DigitalImage, from: usize, to: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; img.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for v in 0..img.len() {
            if img.is_adjacent(u, v) && dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    (dist[to] != usize::MAX).then_some(dist[to])
}

/// Random subset of the box `[0, side)^dim` with `points` points and
/// `c_t` adjacency.
pub fn random_image<R: Rng>(rng: &mut R, dim: usize, side: i64, points: usize, t: usize) -> Arc<DigitalImage> {
    let mut all: Vec<Point> = (0..side.pow(dim as u32))
        .map(|mut code| {
            Point::new(
                (0..dim)
                    .map(|_| {
                        let c = code % side;
                        code /= side;
                        c
                    })
                    .collect(),
            )
        })
        .collect();
    all.shuffle(rng);
    all.truncate(points);
    Arc::new(DigitalImage::with_ct(dim, all, t).unwrap())
}

/// A random continuous map, from a depth-first search with shuffled
/// candidates.
pub fn random_continuous_map<R: Rng>(rng: &mut R, dom: &Arc<DigitalImage>, cod: &Arc<DigitalImage>) -> DigitalMap {
    let n = dom.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut assignment = vec![usize::MAX; n];
    fn extend<R: Rng>(
        rng: &mut R,
        k: usize,
        order: &[usize],
        dom: &DigitalImage,
        cod: &DigitalImage,
        a: &mut Vec<usize>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        let mut cands: Vec<usize> = (0..cod.len())
            .filter(|&c| {
                dom.neighbors(x).iter().all(|&y| a[y] == usize::MAX || a[y] == c || cod.is_adjacent(a[y], c))
            })
            .collect();
        cands.shuffle(rng);
        for c in cands {
            a[x] = c;
            if extend(rng, k + 1, order, dom, cod, a) {
                return true;
            }
        }
        a[x] = usize::MAX;
        false
    }
    assert!(extend(rng, 0, &order, dom, cod, &mut assignment));
    DigitalMap::new(dom.clone(), cod.clone(), assignment).unwrap()
}

/// Fixture images with at most `max_points` points.
pub fn small_fixtures(max_points: usize) -> Vec<(&'static str, Arc<DigitalImage>)> {
    fixtures::image_names()
        .into_iter()
        .map(|n| (n, fixtures::image(n).unwrap()))
        .filter(|(_, img)| img.len() <= max_points)
        .collect()
}

pub fn self_map(img: &Arc<DigitalImage>, a: Vec<usize>) -> DigitalMap {
    DigitalMap::new(img.clone(), img.clone(), a).unwrap()
}

use std::collections::VecDeque;
use std::ops::ControlFlow;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::SearchGuard;
use crate::error::Result;
use crate::image::{DigitalImage, DigitalMap};

/// Vertex order used by the backtracking search: breadth-first from the
/// least point of each component, components by least point.
pub(crate) fn search_order(img: &DigitalImage) -> Vec<usize> {
    let n = img.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in img.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

/// Backtracking enumerator of continuous maps `domain -> codomain`,
/// optionally restricted to `x ↦ allowed[x]`.
pub(crate) struct MapSearch<'a> {
    domain: &'a DigitalImage,
    codomain: &'a DigitalImage,
    order: Vec<usize>,
    /// for each level, the already-assigned neighbours of `order[level]`
    earlier: Vec<Vec<usize>>,
}

impl<'a> MapSearch<'a> {
    pub(crate) fn new(domain: &'a DigitalImage, codomain: &'a DigitalImage) -> Self {
        let order = search_order(domain);
        let mut level_of = vec![usize::MAX; domain.len()];
        for (k, &v) in order.iter().enumerate() {
            level_of[v] = k;
        }
        let earlier = order
            .iter()
            .enumerate()
            .map(|(k, &v)| domain.neighbors(v).iter().copied().filter(|&u| level_of[u] < k).collect())
            .collect();
        MapSearch {
            domain,
            codomain,
            order,
            earlier,
        }
    }

    fn candidates(&self, level: usize, assignment: &[usize], allowed: Option<&[FixedBitSet]>, out: &mut Vec<usize>) {
        out.clear();
        let v = self.order[level];
        let earlier = &self.earlier[level];
        let fits = |c: usize| {
            allowed.is_none_or(|a| a[v].contains(c))
                && earlier.iter().all(|&u| self.codomain.is_close(assignment[u], c))
        };
        if let Some(&first) = earlier.first() {
            out.extend(self.codomain.closed_neighborhood(assignment[first]).ones().filter(|&c| fits(c)));
        } else if let Some(a) = allowed {
            out.extend(a[v].ones().filter(|&c| fits(c)));
        } else {
            out.extend(0..self.codomain.len());
        }
    }

    /// Calls `visit` with every continuous assignment. Returns the number of
    /// maps visited; stops early when `visit` breaks.
    pub(crate) fn run(
        &self,
        allowed: Option<&[FixedBitSet]>,
        guard: &SearchGuard,
        partial: &mut u64,
        mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<u64> {
        let n = self.domain.len();
        let mut assignment = vec![0usize; n];
        if n == 0 {
            let _ = visit(&assignment);
            return Ok(1);
        }
        if self.codomain.is_empty() {
            return Ok(0);
        }
        let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut cursor = vec![0usize; n];
        let mut maps = 0u64;
        let mut level = 0usize;
        let mut buf = Vec::new();
        self.candidates(0, &assignment, allowed, &mut buf);
        std::mem::swap(&mut stacks[0], &mut buf);
        loop {
            if cursor[level] == stacks[level].len() {
                cursor[level] = 0;
                if level == 0 {
                    return Ok(maps);
                }
                level -= 1;
                continue;
            }
            let c = stacks[level][cursor[level]];
            cursor[level] += 1;
            assignment[self.order[level]] = c;
            *partial += 1;
            guard.check_partial(*partial)?;
            if level + 1 == n {
                maps += 1;
                guard.check_maps(maps)?;
                if visit(&assignment).is_break() {
                    return Ok(maps);
                }
                continue;
            }
            level += 1;
            let mut next = std::mem::take(&mut stacks[level]);
            self.candidates(level, &assignment, allowed, &mut next);
            stacks[level] = next;
            cursor[level] = 0;
        }
    }
}

/// Streams every continuous map `domain -> codomain` to `visit` as a raw
/// assignment (point index to point index). Returns the number of maps
/// visited.
pub fn visit_continuous_maps(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    guard: &SearchGuard,
    visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<u64> {
    let mut partial = 0;
    MapSearch::new(domain, codomain).run(None, guard, &mut partial, visit)
}

/// Number of continuous maps `domain -> codomain`.
pub fn count_continuous_maps(domain: &DigitalImage, codomain: &DigitalImage, guard: &SearchGuard) -> Result<u64> {
    visit_continuous_maps(domain, codomain, guard, |_| ControlFlow::Continue(()))
}

/// All continuous maps `domain -> codomain`, in search order.
pub fn continuous_maps(
    domain: &Arc<DigitalImage>,
    codomain: &Arc<DigitalImage>,
    guard: &SearchGuard,
) -> Result<Vec<DigitalMap>> {
    let mut out = Vec::new();
    visit_continuous_maps(domain, codomain, guard, |a| {
        out.push(a.to_vec());
        ControlFlow::Continue(())
    })?;
    out.into_iter()
        .map(|a| DigitalMap::new(domain.clone(), codomain.clone(), a))
        .collect()
}

pub fn continuous_self_maps(img: &Arc<DigitalImage>, guard: &SearchGuard) -> Result<Vec<DigitalMap>> {
    continuous_maps(img, img, guard)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{is_continuous_assignment, Point};

    fn line(n: i64) -> DigitalImage {
        DigitalImage::with_ct(1, (0..n).map(|i| Point::new(vec![i])), 1).unwrap()
    }

    #[test]
    fn small_counts() {
        let g = SearchGuard::default();
        assert_eq!(count_continuous_maps(&line(1), &line(1), &g).unwrap(), 1);
        assert_eq!(count_continuous_maps(&line(2), &line(2), &g).unwrap(), 4);
        // paths of length 2 in a 3-point line with loops: closed walks counted by (I+A)^2 row sums
        assert_eq!(count_continuous_maps(&line(3), &line(3), &g).unwrap(), 17);
    }

    #[test]
    fn matches_brute_force() {
        let sq = DigitalImage::with_ct(2, [[0, 0], [0, 1], [1, 0], [1, 1], [2, 0]].map(Point::from), 1).unwrap();
        let n = sq.len();
        let mut brute = 0;
        for code in 0..n.pow(n as u32) {
            let a: Vec<usize> = (0..n).map(|i| code / n.pow(i as u32) % n).collect();
            if is_continuous_assignment(&sq, &sq, &a) {
                brute += 1;
            }
        }
        let g = SearchGuard::default();
        assert_eq!(count_continuous_maps(&sq, &sq, &g).unwrap(), brute);
    }

    #[test]
    fn guard_aborts() {
        let g = SearchGuard::new(u64::MAX, 3);
        assert!(count_continuous_maps(&line(2), &line(2), &g).is_err());
        let g = SearchGuard::new(2, u64::MAX);
        assert!(count_continuous_maps(&line(2), &line(2), &g).is_err());
    }

    #[test]
    fn early_stop() {
        let g = SearchGuard::default();
        let mut seen = 0;
        let visited = visit_continuous_maps(&line(3), &line(3), &g, |_| {
            seen += 1;
            if seen == 2 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!((seen, visited), (2, 2));
    }
}

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use super::classes::{homotopy_class_of, is_homotopic, one_step_assignments, HomotopyCertificate, HomotopyKind};
use super::enumerate::continuous_maps;
use super::SearchGuard;
use crate::error::{Error, Result};
use crate::image::{is_continuous_assignment, DigitalImage, DigitalMap, Point};

/// Maps `forward: X -> Y` and `backward: Y -> X` whose composites are
/// homotopic to the identities.
#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub kind: HomotopyKind,
    pub forward: DigitalMap,
    pub backward: DigitalMap,
}

/// Searches all pairs of continuous maps `X -> Y`, `Y -> X`. Only feasible
/// for tiny images.
pub fn is_homotopy_equivalent(
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
    kind: HomotopyKind,
    guard: &SearchGuard,
) -> Result<Option<HomotopyEquivalence>> {
    if x.is_empty() || y.is_empty() {
        return Ok((x.is_empty() && y.is_empty()).then(|| HomotopyEquivalence {
            kind,
            forward: DigitalMap::identity(x.clone()),
            backward: DigitalMap::identity(y.clone()),
        }));
    }
    let id_x: HashSet<Vec<usize>> = homotopy_class_of(&DigitalMap::identity(x.clone()), kind, guard)?.into_iter().collect();
    let id_y: HashSet<Vec<usize>> = homotopy_class_of(&DigitalMap::identity(y.clone()), kind, guard)?.into_iter().collect();
    let forward = continuous_maps(x, y, guard)?;
    let backward = continuous_maps(y, x, guard)?;
    guard.check_partial(forward.len() as u64 * backward.len() as u64)?;
    for f in &forward {
        for g in &backward {
            let gf: Vec<usize> = f.assignment().iter().map(|&v| g.assignment()[v]).collect();
            if !id_x.contains(&gf) {
                continue;
            }
            let fg: Vec<usize> = g.assignment().iter().map(|&v| f.assignment()[v]).collect();
            if id_y.contains(&fg) {
                return Ok(Some(HomotopyEquivalence {
                    kind,
                    forward: f.clone(),
                    backward: g.clone(),
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThinMode {
    /// Repeatedly delete up to `max_batch` points at once, each retracted
    /// onto an adjacent surviving point, whenever the retraction is
    /// continuous and one step from the identity. Single deletions are
    /// always tried first.
    Greedy { max_batch: usize },
    /// Smallest subimage homotopy equivalent to the input.
    Exhaustive,
}

impl ThinMode {
    pub fn greedy() -> Self {
        ThinMode::Greedy { max_batch: 1 }
    }
}

impl fmt::Display for ThinMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThinMode::Greedy { max_batch: 1 } => f.write_str("greedy"),
            ThinMode::Greedy { max_batch } => write!(f, "greedy(batch {max_batch})"),
            ThinMode::Exhaustive => f.write_str("exhaustive"),
        }
    }
}

/// A subimage together with a certified homotopy equivalence to the
/// original.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub kind: HomotopyKind,
    pub mode: ThinMode,
    pub original: Arc<DigitalImage>,
    pub reduced: Arc<DigitalImage>,
    /// original -> reduced
    pub forward: DigitalMap,
    /// reduced -> original
    pub backward: DigitalMap,
    /// identity of the original ≃ backward ∘ forward
    pub original_certificate: HomotopyCertificate,
    /// identity of the reduced image ≃ forward ∘ backward
    pub reduced_certificate: HomotopyCertificate,
    /// points removed at each greedy step
    pub deleted: Vec<Vec<Point>>,
    /// true only when the search proved no smaller subimage works
    pub minimal: bool,
}

impl Reduction {
    /// Rechecks both certificates and their endpoints.
    pub fn validate(&self) -> bool {
        let ends = |c: &HomotopyCertificate, img: &Arc<DigitalImage>, other: Result<DigitalMap>| {
            let Ok(other) = other else { return false };
            c.kind == self.kind && c.validate() && *c.start() == DigitalMap::identity(img.clone()) && *c.end() == other
        };
        self.forward.is_continuous()
            && self.backward.is_continuous()
            && ends(&self.original_certificate, &self.original, DigitalMap::compose(&self.backward, &self.forward))
            && ends(&self.reduced_certificate, &self.reduced, DigitalMap::compose(&self.forward, &self.backward))
    }

    /// `backward ∘ w ∘ forward`, a self-map of the original image.
    pub fn lift(&self, w: &DigitalMap) -> Result<DigitalMap> {
        DigitalMap::compose(&self.backward, &DigitalMap::compose(w, &self.forward)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "mode": self.mode.to_string(),
            "originalSize": self.original.len(),
            "reducedSize": self.reduced.len(),
            "reducedPoints": self.reduced.points(),
            "deleted": self.deleted,
            "steps": self.deleted.len(),
            "certified": self.validate(),
            "minimal": self.minimal,
        })
    }
}

fn identity_certificate(img: &Arc<DigitalImage>, kind: HomotopyKind) -> HomotopyCertificate {
    HomotopyCertificate {
        kind,
        steps: vec![DigitalMap::identity(img.clone())],
    }
}

/// Deletes points while certified single-step retractions exist.
pub fn thin(img: &Arc<DigitalImage>, kind: HomotopyKind, mode: ThinMode, guard: &SearchGuard) -> Result<Reduction> {
    match mode {
        ThinMode::Greedy { max_batch } => thin_greedy(img, kind, max_batch.max(1), mode),
        ThinMode::Exhaustive => thin_exhaustive(img, kind, guard),
    }
}

/// Finds a set of at most `batch` points (exactly `batch` when possible is
/// not attempted; sizes grow from 1) and targets giving a retraction one
/// step from the identity.
fn find_retraction(cur: &DigitalImage, kind: HomotopyKind, batch: usize) -> Option<Vec<usize>> {
    let n = cur.len();
    let identity: Vec<usize> = (0..n).collect();
    for size in 1..=batch.min(n.saturating_sub(1)) {
        for set in (0..n).combinations(size) {
            let targets: Vec<Vec<usize>> = set
                .iter()
                .map(|&x| cur.neighbors(x).iter().copied().filter(|y| !set.contains(y)).collect())
                .collect();
            if targets.iter().any(Vec::is_empty) {
                continue;
            }
            for choice in targets.iter().map(|t| t.iter().copied()).multi_cartesian_product() {
                let mut r = identity.clone();
                for (&x, &y) in set.iter().zip(&choice) {
                    r[x] = y;
                }
                if is_continuous_assignment(cur, cur, &r) && one_step_assignments(cur, cur, &identity, &r, kind) {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn thin_greedy(img: &Arc<DigitalImage>, kind: HomotopyKind, batch: usize, mode: ThinMode) -> Result<Reduction> {
    // `to_current[x]` = image of original point x under the composite retraction,
    // as an index into the current image
    let mut current = img.clone();
    let mut to_current: Vec<usize> = (0..img.len()).collect();
    let mut deleted = Vec::new();
    let mut steps = vec![DigitalMap::identity(img.clone())];
    while let Some(r) = find_retraction(&current, kind, batch) {
        let keep: Vec<usize> = (0..current.len()).filter(|&i| r[i] == i).collect();
        deleted.push((0..current.len()).filter(|&i| r[i] != i).map(|i| current.point(i).clone()).collect());
        let next = Arc::new(current.induced_subimage(&keep)?);
        let mut new_index = vec![usize::MAX; current.len()];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        to_current = to_current.iter().map(|&c| new_index[r[c]]).collect();
        current = next;
        // inclusion ∘ composite retraction, as a self-map of the original
        let step = DigitalMap::from_fn(img.clone(), img.clone(), |p| {
            current.point(to_current[img.index_of(p).expect("own point")]).clone()
        })?;
        steps.push(step);
    }
    let forward = DigitalMap::new(img.clone(), current.clone(), to_current)?;
    let backward = DigitalMap::inclusion(current.clone(), img.clone())?;
    let reduction = Reduction {
        kind,
        mode,
        original: img.clone(),
        reduced: current.clone(),
        forward,
        backward,
        original_certificate: HomotopyCertificate { kind, steps },
        reduced_certificate: identity_certificate(&current, kind),
        deleted,
        minimal: false,
    };
    if !reduction.validate() {
        return Err(Error::Internal("greedy reduction failed its own certificate".into()));
    }
    Ok(reduction)
}

fn thin_exhaustive(img: &Arc<DigitalImage>, kind: HomotopyKind, guard: &SearchGuard) -> Result<Reduction> {
    let n = img.len();
    for size in 1..=n {
        for subset in (0..n).combinations(size) {
            let sub = Arc::new(img.induced_subimage(&subset)?);
            let Some(eq) = is_homotopy_equivalent(img, &sub, kind, guard)? else {
                continue;
            };
            let gf = DigitalMap::compose(&eq.backward, &eq.forward)?;
            let fg = DigitalMap::compose(&eq.forward, &eq.backward)?;
            let original_certificate = is_homotopic(&DigitalMap::identity(img.clone()), &gf, kind, guard)?
                .ok_or_else(|| Error::Internal("equivalence lost its certificate".into()))?;
            let reduced_certificate = is_homotopic(&DigitalMap::identity(sub.clone()), &fg, kind, guard)?
                .ok_or_else(|| Error::Internal("equivalence lost its certificate".into()))?;
            let deleted = vec![(0..n).filter(|i| !subset.contains(i)).map(|i| img.point(i).clone()).collect()];
            return Ok(Reduction {
                kind,
                mode: ThinMode::Exhaustive,
                original: img.clone(),
                reduced: sub,
                forward: eq.forward,
                backward: eq.backward,
                original_certificate,
                reduced_certificate,
                deleted,
                minimal: true,
            });
        }
    }
    // only reached for the empty image
    Ok(Reduction {
        kind,
        mode: ThinMode::Exhaustive,
        original: img.clone(),
        reduced: img.clone(),
        forward: DigitalMap::identity(img.clone()),
        backward: DigitalMap::identity(img.clone()),
        original_certificate: identity_certificate(img, kind),
        reduced_certificate: identity_certificate(img, kind),
        deleted: Vec::new(),
        minimal: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn c4_is_equivalent_to_a_point_but_greedy_cannot_see_it() {
        let c4 = fixtures::image("cycle_04").unwrap();
        let p = fixtures::image("point").unwrap();
        let g = SearchGuard::default();
        assert!(is_homotopy_equivalent(&c4, &p, HomotopyKind::Ordinary, &g).unwrap().is_some());
        assert!(is_homotopy_equivalent(&c4, &p, HomotopyKind::Strong, &g).unwrap().is_none());
        let greedy = thin(&c4, HomotopyKind::Ordinary, ThinMode::greedy(), &g).unwrap();
        assert_eq!(greedy.reduced.len(), 4);
        assert!(greedy.deleted.is_empty());
        let best = thin(&c4, HomotopyKind::Ordinary, ThinMode::Exhaustive, &g).unwrap();
        assert_eq!(best.reduced.len(), 1);
        assert!(best.minimal && best.validate());
    }

    #[test]
    fn greedy_collapses_a_path() {
        let line = Arc::new(DigitalImage::with_ct(1, (0..5).map(|i| Point::new(vec![i])), 1).unwrap());
        let r = thin(&line, HomotopyKind::Strong, ThinMode::greedy(), &SearchGuard::default()).unwrap();
        assert_eq!(r.reduced.len(), 1);
        assert!(r.validate());
        assert_eq!(r.original_certificate.len(), 4);
        let lifted = r.lift(&DigitalMap::identity(r.reduced.clone())).unwrap();
        assert!(lifted.is_constant());
    }
}

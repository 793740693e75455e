use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::enumerate::MapSearch;
use super::SearchGuard;
use crate::error::{domain, Error, Result};
use crate::image::{same_image, DigitalImage, DigitalMap};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomotopyKind {
    /// `NP_1` on `X × [0,m]`: `g(x) ⟺ h(x)` for every `x`.
    #[default]
    Ordinary,
    /// `NP_2` on `X × [0,m]`: `g(x) ⟺ h(y)` whenever `x ⟺ y`.
    Strong,
}

impl HomotopyKind {
    pub fn from_strong(strong: bool) -> Self {
        if strong {
            HomotopyKind::Strong
        } else {
            HomotopyKind::Ordinary
        }
    }
}

impl fmt::Display for HomotopyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomotopyKind::Ordinary => "ordinary",
            HomotopyKind::Strong => "strong",
        })
    }
}

impl FromStr for HomotopyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinary" => Ok(HomotopyKind::Ordinary),
            "strong" => Ok(HomotopyKind::Strong),
            _ => domain(format!("unknown homotopy kind {s:?}")),
        }
    }
}

/// One-step relation on raw assignments of maps `domain -> codomain`.
pub(crate) fn one_step_assignments(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    g: &[usize],
    h: &[usize],
    kind: HomotopyKind,
) -> bool {
    match kind {
        HomotopyKind::Ordinary => (0..g.len()).all(|x| codomain.is_close(g[x], h[x])),
        HomotopyKind::Strong => (0..g.len()).all(|x| {
            codomain.is_close(g[x], h[x]) && domain.neighbors(x).iter().all(|&y| codomain.is_close(g[x], h[y]))
        }),
    }
}

fn require_parallel(g: &DigitalMap, h: &DigitalMap) -> Result<()> {
    if !same_image(g.domain(), h.domain()) || !same_image(g.codomain(), h.codomain()) {
        return domain("maps have different domains or codomains");
    }
    g.require_continuous()?;
    h.require_continuous()
}

/// Whether `g` and `h` are joined by a homotopy of length one.
pub fn one_step_homotopic(g: &DigitalMap, h: &DigitalMap, kind: HomotopyKind) -> Result<bool> {
    require_parallel(g, h)?;
    Ok(one_step_assignments(g.domain(), g.codomain(), g.assignment(), h.assignment(), kind))
}

/// For each domain point, the codomain points `h(x)` may take if `h` is to be
/// one step away from `g`.
pub(crate) fn one_step_allowed(
    domain: &DigitalImage,
    codomain: &DigitalImage,
    g: &[usize],
    kind: HomotopyKind,
) -> Vec<FixedBitSet> {
    (0..domain.len())
        .map(|x| {
            let mut set = codomain.closed_neighborhood(g[x]).clone();
            if kind == HomotopyKind::Strong {
                for &y in domain.neighbors(x) {
                    set.intersect_with(codomain.closed_neighborhood(g[y]));
                }
            }
            set
        })
        .collect()
}

/// Breadth-first exploration of the one-step graph from a start map.
pub(crate) struct ClassWalk<'a> {
    domain: &'a DigitalImage,
    codomain: &'a DigitalImage,
    search: MapSearch<'a>,
    kind: HomotopyKind,
    guard: SearchGuard,
    partial: u64,
    pub(crate) maps: Vec<Vec<usize>>,
    pub(crate) parent: Vec<Option<usize>>,
    index: HashMap<Vec<usize>, usize>,
    queue: VecDeque<usize>,
}

impl<'a> ClassWalk<'a> {
    pub(crate) fn new(
        domain: &'a DigitalImage,
        codomain: &'a DigitalImage,
        start: Vec<usize>,
        kind: HomotopyKind,
        guard: SearchGuard,
    ) -> Self {
        let mut index = HashMap::new();
        index.insert(start.clone(), 0);
        ClassWalk {
            domain,
            codomain,
            search: MapSearch::new(domain, codomain),
            kind,
            guard,
            partial: 0,
            maps: vec![start],
            parent: vec![None],
            index,
            queue: VecDeque::from([0]),
        }
    }

    /// Expands maps until `stop` accepts a newly discovered map (returning
    /// its id) or the class is exhausted (`None`).
    pub(crate) fn run(&mut self, mut stop: impl FnMut(&[usize]) -> bool) -> Result<Option<usize>> {
        if stop(&self.maps[0]) {
            return Ok(Some(0));
        }
        while let Some(current) = self.queue.pop_front() {
            let allowed = one_step_allowed(self.domain, self.codomain, &self.maps[current], self.kind);
            let mut found = None;
            let mut fresh = Vec::new();
            let index = &self.index;
            self.search.run(Some(&allowed), &self.guard, &mut self.partial, |h| {
                if !index.contains_key(h) {
                    fresh.push(h.to_vec());
                }
                ControlFlow::Continue(())
            })?;
            for h in fresh {
                if self.index.contains_key(&h) {
                    continue;
                }
                let id = self.maps.len();
                self.guard.check_maps(id as u64 + 1)?;
                self.index.insert(h.clone(), id);
                let hit = stop(&h);
                self.maps.push(h);
                self.parent.push(Some(current));
                self.queue.push_back(id);
                if hit && found.is_none() {
                    found = Some(id);
                }
            }
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    pub(crate) fn path_to(&self, id: usize) -> Vec<usize> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

/// A finite sequence of continuous maps, consecutive ones one step apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyCertificate {
    pub kind: HomotopyKind,
    pub steps: Vec<DigitalMap>,
}

impl HomotopyCertificate {
    pub fn start(&self) -> &DigitalMap {
        &self.steps[0]
    }

    pub fn end(&self) -> &DigitalMap {
        self.steps.last().expect("certificates are nonempty")
    }

    /// Number of one-step moves.
    pub fn len(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rechecks continuity of every step and the one-step relation between
    /// consecutive steps.
    pub fn validate(&self) -> bool {
        !self.steps.is_empty()
            && self.steps.iter().all(DigitalMap::is_continuous)
            && self.steps.windows(2).all(|w| {
                same_image(w[0].domain(), w[1].domain())
                    && same_image(w[0].codomain(), w[1].codomain())
                    && one_step_assignments(w[0].domain(), w[0].codomain(), w[0].assignment(), w[1].assignment(), self.kind)
            })
    }

    /// `{"kind": ..., "steps": [[[i, j], ...], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let steps: Vec<Vec<[usize; 2]>> = self
            .steps
            .iter()
            .map(|m| m.assignment().iter().enumerate().map(|(i, &j)| [i, j]).collect())
            .collect();
        serde_json::json!({ "kind": self.kind, "steps": steps })
    }

    fn from_ids(walk: &ClassWalk<'_>, ids: &[usize], f: &DigitalMap, kind: HomotopyKind) -> Result<Self> {
        let steps = ids
            .iter()
            .map(|&i| DigitalMap::new(f.domain().clone(), f.codomain().clone(), walk.maps[i].clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(HomotopyCertificate { kind, steps })
    }
}

/// Decides `f ≃ g` by breadth-first search over one-step moves from `f`.
/// The certificate is a shortest homotopy.
pub fn is_homotopic(
    f: &DigitalMap,
    g: &DigitalMap,
    kind: HomotopyKind,
    guard: &SearchGuard,
) -> Result<Option<HomotopyCertificate>> {
    require_parallel(f, g)?;
    let mut walk = ClassWalk::new(f.domain(), f.codomain(), f.assignment().to_vec(), kind, *guard);
    let target = g.assignment();
    match walk.run(|h| h == target)? {
        Some(id) => Ok(Some(HomotopyCertificate::from_ids(&walk, &walk.path_to(id), f, kind)?)),
        None => Ok(None),
    }
}

/// All maps (as raw assignments) homotopic to `f`, sorted.
pub fn homotopy_class_of(f: &DigitalMap, kind: HomotopyKind, guard: &SearchGuard) -> Result<Vec<Vec<usize>>> {
    f.require_continuous()?;
    let mut walk = ClassWalk::new(f.domain(), f.codomain(), f.assignment().to_vec(), kind, *guard);
    walk.run(|_| false)?;
    let mut maps = walk.maps;
    maps.sort();
    Ok(maps)
}

/// A homotopy from the identity to a constant map, if one exists.
pub fn contraction(img: &Arc<DigitalImage>, kind: HomotopyKind, guard: &SearchGuard) -> Result<Option<HomotopyCertificate>> {
    if img.is_empty() {
        return Ok(None);
    }
    let id = DigitalMap::identity(img.clone());
    let mut walk = ClassWalk::new(img, img, id.assignment().to_vec(), kind, *guard);
    let is_constant = |h: &[usize]| h.windows(2).all(|w| w[0] == w[1]);
    match walk.run(is_constant)? {
        Some(target) => Ok(Some(HomotopyCertificate::from_ids(&walk, &walk.path_to(target), &id, kind)?)),
        None => Ok(None),
    }
}

pub fn is_contractible(img: &Arc<DigitalImage>, guard: &SearchGuard) -> Result<bool> {
    Ok(contraction(img, HomotopyKind::Ordinary, guard)?.is_some())
}

pub fn is_strongly_contractible(img: &Arc<DigitalImage>, guard: &SearchGuard) -> Result<bool> {
    Ok(contraction(img, HomotopyKind::Strong, guard)?.is_some())
}

/// Partition of all continuous self-maps into homotopy classes. Maps inside a
/// class are sorted, and classes are ordered by their least map.
#[derive(Clone, Debug)]
pub struct HomotopyClasses {
    image: Arc<DigitalImage>,
    kind: HomotopyKind,
    classes: Vec<Vec<Vec<usize>>>,
    class_of: HashMap<Vec<usize>, usize>,
}

impl HomotopyClasses {
    pub fn kind(&self) -> HomotopyKind {
        self.kind
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn map_count(&self) -> usize {
        self.class_of.len()
    }

    /// Raw assignments of class `i`.
    pub fn class(&self, i: usize) -> &[Vec<usize>] {
        &self.classes[i]
    }

    pub fn class_maps(&self, i: usize) -> Vec<DigitalMap> {
        self.classes[i].iter().map(|a| self.make(a.clone())).collect()
    }

    /// Least map of class `i`.
    pub fn representative(&self, i: usize) -> DigitalMap {
        self.make(self.classes[i][0].clone())
    }

    pub fn class_of(&self, f: &DigitalMap) -> Option<usize> {
        self.class_of.get(f.assignment()).copied()
    }

    fn make(&self, a: Vec<usize>) -> DigitalMap {
        DigitalMap::new(self.image.clone(), self.image.clone(), a).expect("stored maps are valid")
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the one-step graph on all continuous self-maps.
pub fn homotopy_classes(img: &Arc<DigitalImage>, kind: HomotopyKind, guard: &SearchGuard) -> Result<HomotopyClasses> {
    let search = MapSearch::new(img, img);
    let mut partial = 0;
    let mut maps: Vec<Vec<usize>> = Vec::new();
    search.run(None, guard, &mut partial, |a| {
        maps.push(a.to_vec());
        ControlFlow::Continue(())
    })?;
    let index: HashMap<Vec<usize>, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut parent: Vec<usize> = (0..maps.len()).collect();
    for (i, g) in maps.iter().enumerate() {
        let allowed = one_step_allowed(img, img, g, kind);
        let mut neighbours = Vec::new();
        search.run(Some(&allowed), guard, &mut partial, |h| {
            neighbours.push(index[h]);
            ControlFlow::Continue(())
        })?;
        for j in neighbours {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    for (i, m) in maps.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(m.clone());
    }
    let mut classes: Vec<Vec<Vec<usize>>> = groups.into_values().collect();
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |m| (m.clone(), i)))
        .collect();
    Ok(HomotopyClasses {
        image: img.clone(),
        kind,
        classes,
        class_of,
    })
}

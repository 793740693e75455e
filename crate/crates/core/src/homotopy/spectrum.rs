use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::classes::{ClassWalk, HomotopyKind};
use super::enumerate::visit_continuous_maps;
use super::SearchGuard;
use crate::cubical::CubicalOptions;
use crate::error::Result;
use crate::image::{approx_fixed_indices, DigitalImage, DigitalMap};
use crate::lefschetz::{LefschetzContext, Theory};

/// A set of integer values, each with the first map found realising it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumResult {
    witnesses: BTreeMap<i64, DigitalMap>,
    /// number of maps scanned
    pub maps_scanned: u64,
}

impl SpectrumResult {
    pub(crate) fn new() -> Self {
        SpectrumResult {
            witnesses: BTreeMap::new(),
            maps_scanned: 0,
        }
    }

    pub(crate) fn record(&mut self, value: i64, witness: impl FnOnce() -> DigitalMap) {
        self.witnesses.entry(value).or_insert_with(witness);
    }

    /// Sorted values.
    pub fn values(&self) -> Vec<i64> {
        self.witnesses.keys().copied().collect()
    }

    pub fn witness(&self, value: i64) -> Option<&DigitalMap> {
        self.witnesses.get(&value)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = (i64, &DigitalMap)> {
        self.witnesses.iter().map(|(v, m)| (*v, m))
    }

    pub fn min(&self) -> Option<i64> {
        self.witnesses.keys().next().copied()
    }

    /// `{"values": [...], "witnesses": {"v": [[i, j], ...]}, "mapsScanned": n}`.
    pub fn to_json(&self) -> serde_json::Value {
        let witnesses: serde_json::Map<String, serde_json::Value> = self
            .witnesses
            .iter()
            .map(|(v, m)| {
                let pairs: Vec<[usize; 2]> = m.assignment().iter().enumerate().map(|(i, &j)| [i, j]).collect();
                (v.to_string(), serde_json::json!(pairs))
            })
            .collect();
        serde_json::json!({
            "values": self.values(),
            "witnesses": witnesses,
            "mapsScanned": self.maps_scanned,
        })
    }
}

fn self_map(img: &Arc<DigitalImage>, a: &[usize]) -> DigitalMap {
    DigitalMap::new(img.clone(), img.clone(), a.to_vec()).expect("enumerated maps are valid")
}

/// Every continuous self-map has a fixed point. Stops at the first
/// counterexample.
pub fn has_fpp(img: &Arc<DigitalImage>, guard: &SearchGuard) -> Result<bool> {
    Ok(fpp_counterexample(img, guard)?.is_none())
}

/// A continuous self-map without fixed points, if any.
pub fn fpp_counterexample(img: &Arc<DigitalImage>, guard: &SearchGuard) -> Result<Option<DigitalMap>> {
    let mut found = None;
    visit_continuous_maps(img, img, guard, |a| {
        if a.iter().enumerate().all(|(i, &j)| i != j) {
            found = Some(self_map(img, a));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// `{#Fix(f)}` over all continuous self-maps.
pub fn fixed_point_spectrum(img: &Arc<DigitalImage>, guard: &SearchGuard) -> Result<SpectrumResult> {
    let mut out = SpectrumResult::new();
    out.maps_scanned = visit_continuous_maps(img, img, guard, |a| {
        let fixed = a.iter().enumerate().filter(|&(i, &j)| i == j).count() as i64;
        out.record(fixed, || self_map(img, a));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Lefschetz numbers of all continuous self-maps in the given theory.
pub fn lefschetz_spectrum(
    img: &Arc<DigitalImage>,
    theory: Theory,
    options: CubicalOptions,
    guard: &SearchGuard,
) -> Result<SpectrumResult> {
    let ctx = LefschetzContext::with_options(img, theory, options)?;
    let mut out = SpectrumResult::new();
    out.maps_scanned = visit_continuous_maps(img, img, guard, |a| {
        out.record(ctx.value(a), || self_map(img, a));
        ControlFlow::Continue(())
    })?;
    // witnesses get the full treatment, including the Hopf cross-check
    for (v, m) in out.witnesses() {
        let checked = ctx.report(m)?.value;
        if checked != v {
            return Err(crate::Error::Internal(format!("fast Lefschetz value {v} disagrees with report {checked}")));
        }
    }
    Ok(out)
}

/// Numbers of `n`-approximate fixed points over the homotopy class of `f`.
///
/// With `HomotopyKind::Ordinary` this is `S_{a^n}(f)`; with
/// `HomotopyKind::Strong` and `n = 1` it is `S_a^*(f)`.
pub fn afp_spectrum(f: &DigitalMap, n: usize, kind: HomotopyKind, guard: &SearchGuard) -> Result<SpectrumResult> {
    f.require_self_map()?;
    f.require_continuous()?;
    let img = f.domain();
    let dist = img.distance_matrix();
    let mut walk = ClassWalk::new(img, img, f.assignment().to_vec(), kind, *guard);
    walk.run(|_| false)?;
    let mut maps = walk.maps;
    maps.sort();
    let mut out = SpectrumResult::new();
    out.maps_scanned = maps.len() as u64;
    for a in &maps {
        let count = approx_fixed_indices(&dist, a, n).len() as i64;
        out.record(count, || self_map(img, a));
    }
    Ok(out)
}

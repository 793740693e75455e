//! Built-in example images and maps.

use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::image::{DigitalImage, DigitalMap, Point};
use crate::io::{parse_image, parse_map};

macro_rules! fixture_table {
    ($($name:literal),* $(,)?) => {
        const FILES: &[(&str, &str)] = &[$(($name, include_str!(concat!("../fixtures/", $name, ".json")))),*];
    };
}

fixture_table!(
    "point",
    "cube_1",
    "cube_2",
    "cube_3",
    "cube_4",
    "imageY",
    "imageZ",
    "imageX",
    "robot",
    "robot_strong_reduction",
    "robot_reduction",
    "cycle_03",
    "cycle_04",
    "cycle_05",
    "cycle_06",
    "cycle_07",
    "cycle_08",
    "cycle_09",
    "cycle_10",
    "cycle_11",
    "cycle_12",
    "cycle_13",
    "cycle_14",
    "map_rotY",
    "map_rotZ",
    "map_rotX",
);

fn source(name: &str) -> Result<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::Domain(format!("no fixture named {name:?}")))
}

/// Names of the image fixtures.
pub fn image_names() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).filter(|n| !n.starts_with("map_")).collect()
}

/// Names of the map fixtures.
pub fn map_names() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).filter(|n| n.starts_with("map_")).collect()
}

/// Raw JSON text of a fixture.
pub fn text(name: &str) -> Result<&'static str> {
    source(name)
}

pub fn image(name: &str) -> Result<Arc<DigitalImage>> {
    Ok(Arc::new(parse_image(source(name)?)?))
}

pub fn map(name: &str) -> Result<DigitalMap> {
    parse_map(source(name)?, image)
}

/// The `n`-cycle fixture.
pub fn cycle(n: usize) -> Result<Arc<DigitalImage>> {
    image(&format!("cycle_{n:02}"))
}

/// The unit cube `I^n` with `c_1` adjacency.
pub fn cube(n: usize) -> Result<Arc<DigitalImage>> {
    image(&format!("cube_{n}"))
}

/// Point reflection through the centre of the bounding box. For the unit
/// cube this is the antipodal map.
pub fn rotation_180(img: &Arc<DigitalImage>) -> Result<DigitalMap> {
    let n = img.dimension();
    let lo: Vec<i64> = (0..n).map(|k| img.points().iter().map(|p| p.coords()[k]).min().unwrap_or(0)).collect();
    let hi: Vec<i64> = (0..n).map(|k| img.points().iter().map(|p| p.coords()[k]).max().unwrap_or(0)).collect();
    DigitalMap::from_fn(img.clone(), img.clone(), |p| {
        Point::new((0..n).map(|k| lo[k] + hi[k] - p.coords()[k]).collect())
    })
}

/// Antipodal map of `I^n`: every coordinate `t` goes to `1 - t`.
pub fn antipodal(img: &Arc<DigitalImage>) -> Result<DigitalMap> {
    rotation_180(img)
}

/// Vertices of a cycle graph in traversal order, starting at index 0 and
/// heading to its smaller neighbour.
pub fn cycle_order(img: &DigitalImage) -> Result<Vec<usize>> {
    let n = img.len();
    if n < 3 || (0..n).any(|v| img.neighbors(v).len() != 2) {
        return domain("image is not a cycle");
    }
    let mut order = vec![0];
    let mut prev = 0;
    let mut cur = img.neighbors(0)[0];
    while cur != 0 {
        order.push(cur);
        let next = if img.neighbors(cur)[0] == prev { img.neighbors(cur)[1] } else { img.neighbors(cur)[0] };
        prev = cur;
        cur = next;
        if order.len() > n {
            break;
        }
    }
    if order.len() != n {
        return domain("image is not a single cycle");
    }
    Ok(order)
}

/// Reflection `x_k ↦ x_{-k}` of a cycle, fixing `x_0` (and `x_{n/2}` when
/// `n` is even).
pub fn flip_map(img: &Arc<DigitalImage>) -> Result<DigitalMap> {
    let order = cycle_order(img)?;
    let n = order.len();
    let mut a = vec![0; n];
    for k in 0..n {
        a[order[k]] = order[(n - k) % n];
    }
    DigitalMap::new(img.clone(), img.clone(), a)
}

/// Rotation `x_k ↦ x_{k+s}` of a cycle.
pub fn cycle_rotation(img: &Arc<DigitalImage>, s: usize) -> Result<DigitalMap> {
    let order = cycle_order(img)?;
    let n = order.len();
    let mut a = vec![0; n];
    for k in 0..n {
        a[order[k]] = order[(k + s) % n];
    }
    DigitalMap::new(img.clone(), img.clone(), a)
}

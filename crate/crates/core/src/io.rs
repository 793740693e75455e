//! JSON file formats for images and maps.
//!
//! Image: `{"dimension": n, "adjacency": "c1" | "c2" | {"ct": t} |
//! {"explicit": [[i, j], ...]}, "points": [[..], ...]}` with points in
//! strictly increasing lexicographic order. Map: `{"domain": path,
//! "codomain": path, "assignment": [[i, j], ...]}`, paths relative to the map
//! file, indices 0-based.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::image::{Adjacency, DigitalImage, DigitalMap, Point};

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ImageFile {
    dimension: usize,
    adjacency: AdjacencyFile,
    points: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum AdjacencyFile {
    Named(String),
    Ct { ct: usize },
    Explicit { explicit: Vec<[usize; 2]> },
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    domain: String,
    codomain: String,
    assignment: Vec<[usize; 2]>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses and validates an image document.
pub fn parse_image(text: &str) -> Result<DigitalImage> {
    let file: ImageFile = parse_json(text)?;
    if file.dimension == 0 {
        return domain("dimension must be at least 1");
    }
    let adjacency = match file.adjacency {
        AdjacencyFile::Named(name) => {
            let t = name
                .strip_prefix('c')
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("unknown adjacency {name:?}")))?;
            Adjacency::Ct(t)
        }
        AdjacencyFile::Ct { ct } => Adjacency::Ct(ct),
        AdjacencyFile::Explicit { explicit } => Adjacency::Explicit(explicit.iter().map(|&[a, b]| (a, b)).collect()),
    };
    if let Some(p) = file.points.iter().find(|p| p.len() != file.dimension) {
        return domain(format!("point {p:?} does not have {} coordinates", file.dimension));
    }
    if let Some(w) = file.points.windows(2).find(|w| w[0] >= w[1]) {
        return domain(format!(
            "points must be listed in strictly increasing order: {:?} then {:?}",
            w[0], w[1]
        ));
    }
    DigitalImage::new(file.dimension, file.points.into_iter().map(Point::new), adjacency)
}

pub fn image_to_json(img: &DigitalImage) -> Value {
    let adjacency = match img.adjacency() {
        Adjacency::Ct(t) => json!(format!("c{t}")),
        Adjacency::Explicit(_) => {
            let edges: Vec<[usize; 2]> = img.edges().map(|(a, b)| [a, b]).collect();
            json!({ "explicit": edges })
        }
    };
    json!({
        "dimension": img.dimension(),
        "adjacency": adjacency,
        "points": img.points(),
    })
}

pub fn read_image(path: impl AsRef<Path>) -> Result<Arc<DigitalImage>> {
    let text = fs::read_to_string(path)?;
    Ok(Arc::new(parse_image(&text)?))
}

pub fn write_image(path: impl AsRef<Path>, img: &DigitalImage) -> Result<()> {
    let text = serde_json::to_string_pretty(&image_to_json(img)).map_err(|e| Error::Internal(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

/// Parses a map document, resolving the image references with `resolve`.
/// When both references are equal the map is a self-map of one image.
pub fn parse_map(text: &str, mut resolve: impl FnMut(&str) -> Result<Arc<DigitalImage>>) -> Result<DigitalMap> {
    let file: MapFile = parse_json(text)?;
    let dom = resolve(&file.domain)?;
    let cod = if file.codomain == file.domain {
        dom.clone()
    } else {
        resolve(&file.codomain)?
    };
    let mut assignment = vec![usize::MAX; dom.len()];
    for &[i, j] in &file.assignment {
        if i >= dom.len() {
            return domain(format!("assignment index {i} is outside the domain"));
        }
        if assignment[i] != usize::MAX {
            return domain(format!("point {i} is assigned twice"));
        }
        assignment[i] = j;
    }
    if let Some(i) = assignment.iter().position(|&j| j == usize::MAX) {
        return domain(format!("point {i} has no image"));
    }
    DigitalMap::new(dom, cod, assignment)
}

/// Reads a map file; image paths are resolved relative to its directory.
pub fn read_map(path: impl AsRef<Path>) -> Result<DigitalMap> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_map(&text, |rel| read_image(base.join(rel)))
}

pub fn map_to_json(f: &DigitalMap, domain_ref: &str, codomain_ref: &str) -> Value {
    let pairs: Vec<[usize; 2]> = f.assignment().iter().enumerate().map(|(i, &j)| [i, j]).collect();
    json!({ "domain": domain_ref, "codomain": codomain_ref, "assignment": pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_spellings() {
        let a = parse_image(r#"{"dimension":2,"adjacency":"c2","points":[[0,0],[1,1]]}"#).unwrap();
        assert_eq!(a.edge_count(), 1);
        let b = parse_image(r#"{"dimension":2,"adjacency":{"ct":1},"points":[[0,0],[1,1]]}"#).unwrap();
        assert_eq!(b.edge_count(), 0);
        let c = parse_image(r#"{"dimension":1,"adjacency":{"explicit":[[0,2]]},"points":[[0],[1],[5]]}"#).unwrap();
        assert!(c.is_adjacent(0, 2));
    }

    #[test]
    fn validation() {
        let unsorted = r#"{"dimension":1,"adjacency":"c1","points":[[1],[0]]}"#;
        assert!(matches!(parse_image(unsorted), Err(Error::Domain(_))));
        let dup = r#"{"dimension":1,"adjacency":"c1","points":[[0],[0]]}"#;
        assert!(parse_image(dup).is_err());
        let short = r#"{"dimension":2,"adjacency":"c1","points":[[0]]}"#;
        assert!(parse_image(short).is_err());
        assert!(matches!(parse_image("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_image(r#"{"dimension":1,"adjacency":"k4","points":[]}"#), Err(Error::Parse(_))));
        assert!(parse_image(r#"{"dimension":1,"adjacency":"c2","points":[[0]]}"#).is_err());
    }

    #[test]
    fn image_round_trip() {
        let text = r#"{"dimension":1,"adjacency":{"explicit":[[0,1],[1,2],[0,2]]},"points":[[0],[1],[2]]}"#;
        let img = parse_image(text).unwrap();
        let again = parse_image(&image_to_json(&img).to_string()).unwrap();
        assert_eq!(img, again);
    }

    #[test]
    fn maps() {
        let img = Arc::new(parse_image(r#"{"dimension":1,"adjacency":"c1","points":[[0],[1]]}"#).unwrap());
        let resolve = |_: &str| Ok(img.clone());
        let f = parse_map(r#"{"domain":"a","codomain":"a","assignment":[[1,0],[0,1]]}"#, resolve).unwrap();
        assert_eq!(f.assignment(), &[1, 0]);
        assert!(f.is_self_map());
        assert!(parse_map(r#"{"domain":"a","codomain":"a","assignment":[[0,1]]}"#, resolve).is_err());
        assert!(parse_map(r#"{"domain":"a","codomain":"a","assignment":[[0,1],[0,0]]}"#, resolve).is_err());
        assert!(parse_map(r#"{"domain":"a","codomain":"a","assignment":[[0,1],[1,2]]}"#, resolve).is_err());
        let json = map_to_json(&f, "a", "a");
        let back = parse_map(&json.to_string(), resolve).unwrap();
        assert_eq!(back, f);
    }
}

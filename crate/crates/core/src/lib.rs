//! Lefschetz numbers, homology and homotopy search for finite digital images.
//!
//! A digital image is a finite set of lattice points with a symmetric,
//! antireflexive adjacency relation. This crate builds the two homology
//! theories usually attached to such images (the clique/simplicial complex
//! and the `c_1` cubical complex), the chain maps induced by digitally
//! continuous maps, and the Lefschetz numbers `L(f)` and `L̄(f)` obtained
//! from them. On top of that it decides (strong) homotopy between self-maps
//! by exhaustive search, computes fixed point and Lefschetz spectra, and
//! thins images along certified homotopy equivalences.
//!
//! ```
//! use lefdt_core::{fixtures, lefschetz};
//!
//! let y = fixtures::image("imageY").unwrap();
//! let rotation = fixtures::rotation_180(&y).unwrap();
//! let report = lefschetz::simplicial_lefschetz(&rotation).unwrap();
//! assert_eq!(report.value, 1);
//! assert_eq!(report.traces, vec![0, -1]);
//! ```

pub mod chain;
pub mod cubical;
pub mod error;
pub mod fixtures;
pub mod homalg;
pub mod homotopy;
pub mod image;
pub mod io;
pub mod lefschetz;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
pub use image::{Adjacency, DigitalImage, DigitalMap, Point};
pub use lefschetz::Theory;

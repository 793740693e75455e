//! Exhaustive search over continuous maps: homotopy classes, contractibility,
//! spectra, homotopy equivalences and thinning.
//!
//! Homotopies of arbitrary length are decided by reachability in the graph
//! whose vertices are continuous maps and whose edges are one-step
//! homotopies.

mod classes;
mod enumerate;
mod equivalence;
mod guard;
mod spectrum;

pub use classes::{
    contraction, homotopy_class_of, homotopy_classes, is_contractible, is_homotopic, is_strongly_contractible,
    one_step_homotopic, HomotopyCertificate, HomotopyClasses, HomotopyKind,
};
pub use enumerate::{continuous_maps, continuous_self_maps, count_continuous_maps, visit_continuous_maps};
pub use equivalence::{is_homotopy_equivalent, thin, HomotopyEquivalence, Reduction, ThinMode};
pub use guard::{SearchGuard, GUARD_ENV};
pub use spectrum::{afp_spectrum, fixed_point_spectrum, fpp_counterexample, has_fpp, lefschetz_spectrum, SpectrumResult};

//! Exact integer linear algebra: matrices, Smith normal form, homology.

mod homology;
mod matrix;
pub mod rational;
mod smith;

pub use homology::{all_homology, homology, homology_trace, hopf_trace_check, HomologyBasis, HomologyGroup};
pub(crate) use homology::basis_trace;
pub use matrix::IntegerMatrix;
pub use smith::{rank_fraction_free, smith_normal_form, smith_normal_form_with, PivotStrategy, SmithForm};

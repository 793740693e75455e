use thiserror::Error;

/// Errors produced by the library.
///
/// The variants are coarse on purpose: the CLI maps them onto exit codes
/// (validation, parse, resource) and everything else is reported verbatim.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of an operation (unknown point,
    /// mismatched images, arity mismatch, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition does not hold (e.g. a discontinuous map).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The operation is not defined for the image's adjacency relation.
    #[error("unsupported adjacency: {0}")]
    UnsupportedAdjacency(String),

    /// The cubical induced map is only known to be a chain map up to
    /// ambient dimension 4.
    #[error(
        "ambient dimension {dimension} exceeds {limit}; the cubical induced map is only \
         known to be a chain map up to dimension {limit} (override with --unsafe-high-dimension)"
    )]
    DimensionGuard { dimension: usize, limit: usize },

    /// A search exceeded its configured budget; results are never truncated.
    #[error("resource guard exceeded: more than {limit} {what}")]
    Resource { what: &'static str, limit: u64 },

    /// Malformed input file.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal invariant failed. This indicates a bug or, with the
    /// high-dimension override, a counterexample to the chain-map property.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::Distance;

/// Errors produced by the library.
///
/// `Rejected*` variants are precondition failures on caller input;
/// `ContractViolation` means a supplied colorer or oracle broke its declared
/// guarantee; `Invariant` means an internal self-check of the engine failed
/// and the run cannot be trusted.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vertex id {vertex} (graph has {count} vertices)")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("invalid tree node id {node} (decomposition has {count} nodes)")]
    InvalidNode { node: usize, count: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("rejected: {0}")]
    Rejected(String),

    #[error(
        "rejected: precoloring has weak diameter {distance} > {limit}; \
         witnessed by vertices {a} and {b}"
    )]
    PrecoloringTooSpread {
        a: usize,
        b: usize,
        distance: Distance,
        limit: usize,
    },

    #[error(
        "contract violation in {who}: measured weak diameter {measured} \
         exceeds declared guarantee {guarantee}{}",
        pair.map(|(a, b)| format!("; witnessed by vertices {a} and {b}"))
            .unwrap_or_default()
    )]
    ContractViolation {
        who: String,
        measured: Distance,
        guarantee: BigUint,
        pair: Option<(usize, usize)>,
    },

    #[error("engine invariant violated: {0}")]
    Invariant(String),

    #[error("enumeration too large: product of list sizes {product} exceeds cap {cap}")]
    TooLarge { product: BigUint, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn rejected(msg: impl Into<String>) -> Self {
        Error::Rejected(msg.into())
    }
}

//! Automorphism groups, distinguishing numbers, and distinguishing indices
//! of finite simple graphs, together with co-normal and Cartesian product
//! constructions and a census harness that mechanically checks the
//! structural claims the library is organized around (product automorphism
//! factorization, rigidity of products, distinguishing-number bound chains,
//! spanning-subgraph index bounds, ...) on exhaustive small-graph corpora.
//!
//! The `examples/` directory is the guided tour: one runnable program per
//! capability (`families`, `products`, `automorphisms`, `distinguishing`,
//! `labelings`, `theorem_census`). A thin `conormal` binary exposes the
//! same functionality as `compute` / `product` / `verify` subcommands with
//! machine-readable output.

#![forbid(unsafe_code)]

pub mod census;
pub mod checks;
pub mod cli;
pub mod distinguishing;
pub mod graph;
pub mod graph6;
pub mod products;
mod search;
mod solver;
pub mod symmetry;

pub use graph::{FamilyKind, Graph, GraphError, TwinStatus};
pub use products::{cartesian, conormal, conormal_power, ProductIndexMap};
pub use symmetry::{AutomorphismGroup, Permutation};

use std::time::Instant;

/// Limits for the backtracking searches (group enumeration, isomorphism,
/// labeling search) and for the randomized certificate search.
///
/// Exceeding the node limit or the deadline is a hard error, never a
/// silent truncation: an incomplete automorphism group would corrupt every
/// distinguishing value computed from it.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub node_limit: u64,
    pub retry_limit: u32,
    pub deadline: Option<Instant>,
}

pub const DEFAULT_NODE_LIMIT: u64 = 5_000_000;
pub const DEFAULT_RETRY_LIMIT: u32 = 512;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            node_limit: DEFAULT_NODE_LIMIT,
            retry_limit: DEFAULT_RETRY_LIMIT,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn with_node_limit(node_limit: u64) -> Self {
        Budget { node_limit, ..Budget::default() }
    }
}

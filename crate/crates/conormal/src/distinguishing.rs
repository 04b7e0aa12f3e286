//! Distinguishing numbers and indices, constructive product labelings, the
//! spanning-subgraph lift for edge labelings, and traceability.
//!
//! A vertex labeling is distinguishing when no non-trivial automorphism
//! preserves every label; the distinguishing number `D` is the least label
//! count admitting one. The distinguishing index `D'` is the edge analogue
//! and is only defined when the automorphism group acts faithfully on the
//! edge set — on `K2` the non-trivial automorphism fixes the unique edge,
//! so no edge labeling can break it. Undefinedness is an explicit error
//! here, never a sentinel value, so census statistics cannot silently
//! absorb it.
//!
//! Two solver modes:
//!
//! - `Exact`: enumerate the full automorphism group, then decide for
//!   `d = 1, 2, ...` whether a distinguishing `d`-labeling exists. Values
//!   are true minima.
//! - `Certificate`: rigidity gives value 1; otherwise seeded random
//!   labelings are verified by a labeling-stabilizer search until one is
//!   distinguishing. Values 1 and 2 are still exact (non-rigidity forces
//!   the lower bound 2); larger values are upper bounds and flagged so.

use crate::graph::Graph;
use crate::search::SearchStop;
use crate::solver::{ItemAction, LabelingSearch};
use crate::symmetry::{
    automorphisms, colored_automorphism_exists, edge_action, is_automorphism, is_rigid,
    AutomorphismGroup, SymmetryError,
};
use crate::Budget;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistinguishingError {
    #[error("labeling needs at least one label")]
    EmptyLabelSet,
    #[error("label {label} out of range 1..={max}")]
    LabelOutOfRange { label: usize, max: usize },
    #[error("labeling has {got} entries, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("distinguishing index is undefined on a graph with no edges")]
    NoEdges,
    #[error("distinguishing index is undefined: the automorphism group does not act faithfully on the edges")]
    NonFaithfulEdgeAction,
    #[error("the provided labeling is not distinguishing")]
    NotDistinguishing,
    #[error("not a spanning subgraph of the host graph")]
    NotSpanningSubgraph,
    #[error("subgroup hypothesis failed: an automorphism of the host is not an automorphism of the subgraph")]
    SubgroupHypothesisFailed,
    #[error("traceability search supports order <= {limit}, got {order}")]
    TraceabilityBudget { order: usize, limit: usize },
    #[error("labeling search budget exceeded (limit {limit}, explored {explored}); established lower bound {lower_bound}")]
    SolveBudget { limit: u64, explored: u64, lower_bound: usize },
    #[error("labeling search deadline exceeded")]
    SolveTimeout,
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMode {
    Exact,
    Certificate,
}

/// What establishes the lower bound of a reported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundBasis {
    /// All smaller label counts were exhausted.
    Exhaustive,
    /// A non-trivial automorphism exists, so one label cannot suffice.
    NontrivialGroup,
    /// The graph is rigid.
    Rigid,
}

/// Positive integer labels on vertices, values in `1..=label_count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexLabeling {
    labels: Vec<usize>,
    label_count: usize,
}

/// Positive integer labels on edge-list positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeLabeling {
    labels: Vec<usize>,
    label_count: usize,
}

macro_rules! labeling_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn new(labels: Vec<usize>, label_count: usize) -> Result<Self, DistinguishingError> {
                if label_count == 0 {
                    return Err(DistinguishingError::EmptyLabelSet);
                }
                for &l in &labels {
                    if l == 0 || l > label_count {
                        return Err(DistinguishingError::LabelOutOfRange {
                            label: l,
                            max: label_count,
                        });
                    }
                }
                Ok($ty { labels, label_count })
            }

            /// The constant all-ones labeling.
            pub fn constant(len: usize) -> Self {
                $ty { labels: vec![1; len], label_count: 1 }
            }

            pub fn labels(&self) -> &[usize] {
                &self.labels
            }

            pub fn label_count(&self) -> usize {
                self.label_count
            }
        }
    };
}

labeling_impl!(VertexLabeling);
labeling_impl!(EdgeLabeling);

/// A verified distinguishing labeling, vertex or edge flavored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "labeling", rename_all = "lowercase")]
pub enum Witness {
    Vertex(VertexLabeling),
    Edge(EdgeLabeling),
}

/// Outcome of a distinguishing-number or -index computation.
#[derive(Debug, Clone, Serialize)]
pub struct DistinguishingResult {
    pub value: usize,
    pub mode: SolveMode,
    /// True when `value` is the exact minimum; certificate-mode values of
    /// 3 or more are upper bounds only.
    pub exact: bool,
    pub lower_bound_basis: LowerBoundBasis,
    pub witness: Witness,
}

/// True iff no non-identity element of `group` preserves every vertex label.
///
/// `group` must be the complete automorphism group of `g`.
pub fn is_distinguishing_vertices(
    g: &Graph,
    group: &AutomorphismGroup,
    labeling: &VertexLabeling,
) -> Result<bool, DistinguishingError> {
    if labeling.labels.len() != g.order() {
        return Err(DistinguishingError::DimensionMismatch {
            got: labeling.labels.len(),
            expected: g.order(),
        });
    }
    Ok(group.non_identity().all(|sigma| {
        (0..g.order()).any(|v| labeling.labels[v] != labeling.labels[sigma.apply(v)])
    }))
}

/// Edge analogue of [`is_distinguishing_vertices`], via the induced action
/// on edge-list positions.
pub fn is_distinguishing_edges(
    g: &Graph,
    group: &AutomorphismGroup,
    labeling: &EdgeLabeling,
) -> Result<bool, DistinguishingError> {
    if labeling.labels.len() != g.size() {
        return Err(DistinguishingError::DimensionMismatch {
            got: labeling.labels.len(),
            expected: g.size(),
        });
    }
    for sigma in group.non_identity() {
        let action = edge_action(g, sigma)?;
        if (0..g.size()).all(|e| labeling.labels[e] == labeling.labels[action[e]]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Distinguishing number `D(g)`.
pub fn distinguishing_number(
    g: &Graph,
    mode: SolveMode,
    seed: u64,
    budget: &Budget,
) -> Result<DistinguishingResult, DistinguishingError> {
    match mode {
        SolveMode::Exact => {
            let group = automorphisms(g, budget)?;
            let actions: Vec<ItemAction> = group
                .non_identity()
                .map(|p| ItemAction::new(p.image().to_vec()))
                .collect();
            let (value, labels, basis) = exact_minimum(g.order(), &actions, budget)?;
            let witness = VertexLabeling::new(labels, value)?;
            debug_assert!(is_distinguishing_vertices(g, &group, &witness)?);
            Ok(DistinguishingResult {
                value,
                mode,
                exact: true,
                lower_bound_basis: basis,
                witness: Witness::Vertex(witness),
            })
        }
        SolveMode::Certificate => {
            if is_rigid(g, budget)? {
                return Ok(DistinguishingResult {
                    value: 1,
                    mode,
                    exact: true,
                    lower_bound_basis: LowerBoundBasis::Rigid,
                    witness: Witness::Vertex(VertexLabeling::constant(g.order())),
                });
            }
            let (value, labels) = certificate_search(g.order(), seed, budget, |labels| {
                let colors: Vec<u32> = labels.iter().map(|&l| l as u32).collect();
                Ok(!colored_automorphism_exists(g, &colors, budget)?)
            })?;
            Ok(DistinguishingResult {
                value,
                mode,
                exact: value <= 2,
                lower_bound_basis: LowerBoundBasis::NontrivialGroup,
                witness: Witness::Vertex(VertexLabeling::new(labels, value)?),
            })
        }
    }
}

/// Distinguishing index `D'(g)`.
///
/// Errors when `g` has no edges or when some non-trivial automorphism
/// fixes every edge (then no edge labeling can be distinguishing).
pub fn distinguishing_index(
    g: &Graph,
    mode: SolveMode,
    seed: u64,
    budget: &Budget,
) -> Result<DistinguishingResult, DistinguishingError> {
    if g.size() == 0 {
        return Err(DistinguishingError::NoEdges);
    }
    if !edge_action_is_faithful(g) {
        return Err(DistinguishingError::NonFaithfulEdgeAction);
    }
    match mode {
        SolveMode::Exact => {
            let group = automorphisms(g, budget)?;
            let mut actions = Vec::with_capacity(group.order() - 1);
            for sigma in group.non_identity() {
                actions.push(ItemAction::new(edge_action(g, sigma)?));
            }
            let (value, labels, basis) = exact_minimum(g.size(), &actions, budget)?;
            let witness = EdgeLabeling::new(labels, value)?;
            debug_assert!(is_distinguishing_edges(g, &group, &witness)?);
            Ok(DistinguishingResult {
                value,
                mode,
                exact: true,
                lower_bound_basis: basis,
                witness: Witness::Edge(witness),
            })
        }
        SolveMode::Certificate => {
            if is_rigid(g, budget)? {
                return Ok(DistinguishingResult {
                    value: 1,
                    mode,
                    exact: true,
                    lower_bound_basis: LowerBoundBasis::Rigid,
                    witness: Witness::Edge(EdgeLabeling::constant(g.size())),
                });
            }
            let (value, labels) = certificate_search(g.size(), seed, budget, |labels| {
                let (sub, colors) = edge_colored_subdivision(g, labels);
                Ok(!colored_automorphism_exists(&sub, &colors, budget)?)
            })?;
            Ok(DistinguishingResult {
                value,
                mode,
                exact: value <= 2,
                lower_bound_basis: LowerBoundBasis::NontrivialGroup,
                witness: Witness::Edge(EdgeLabeling::new(labels, value)?),
            })
        }
    }
}

/// True iff no non-trivial automorphism of `g` preserves every vertex
/// label. Unlike [`is_distinguishing_vertices`] this does not need the
/// automorphism group up front: it searches for a label-preserving
/// automorphism directly, so it stays cheap on graphs whose full group is
/// too large to enumerate.
pub fn vertex_labeling_stabilizer_is_trivial(
    g: &Graph,
    labeling: &VertexLabeling,
    budget: &Budget,
) -> Result<bool, DistinguishingError> {
    if labeling.labels.len() != g.order() {
        return Err(DistinguishingError::DimensionMismatch {
            got: labeling.labels.len(),
            expected: g.order(),
        });
    }
    let colors: Vec<u32> = labeling.labels.iter().map(|&l| l as u32).collect();
    Ok(!colored_automorphism_exists(g, &colors, budget)?)
}

/// Edge analogue of [`vertex_labeling_stabilizer_is_trivial`], via the
/// colored subdivision encoding.
pub fn edge_labeling_stabilizer_is_trivial(
    g: &Graph,
    labeling: &EdgeLabeling,
    budget: &Budget,
) -> Result<bool, DistinguishingError> {
    if labeling.labels.len() != g.size() {
        return Err(DistinguishingError::DimensionMismatch {
            got: labeling.labels.len(),
            expected: g.size(),
        });
    }
    let (sub, colors) = edge_colored_subdivision(g, &labeling.labels);
    Ok(!colored_automorphism_exists(&sub, &colors, budget)?)
}

/// The kernel of the edge action is generated by the endpoint swaps of K2
/// components and by permutations of isolated vertices, so faithfulness is
/// a structural test. (Cross-checked against the literal kernel on all
/// small graphs in the test suite.)
pub fn edge_action_is_faithful(g: &Graph) -> bool {
    let has_k2_component =
        g.edges().iter().any(|&(u, v)| g.degree(u) == 1 && g.degree(v) == 1);
    let isolated = g.vertices().filter(|&v| g.degree(v) == 0).count();
    !has_k2_component && isolated <= 1
}

/// Exact minimum over label counts: decide d = 1, 2, ... in turn. The node
/// budget covers the whole sweep; a budget error reports the last fully
/// exhausted label count as the established lower bound.
fn exact_minimum(
    num_items: usize,
    actions: &[ItemAction],
    budget: &Budget,
) -> Result<(usize, Vec<usize>, LowerBoundBasis), DistinguishingError> {
    if actions.is_empty() {
        return Ok((1, vec![1; num_items], LowerBoundBasis::Rigid));
    }
    let mut used: u64 = 0;
    for d in 2..=num_items {
        let remaining = Budget {
            node_limit: budget.node_limit.saturating_sub(used),
            ..*budget
        };
        let mut search = LabelingSearch::new(num_items, actions, &remaining);
        let outcome = search.find(d);
        used += search.nodes_explored();
        match outcome {
            Ok(Some(labels)) => return Ok((d, labels, LowerBoundBasis::Exhaustive)),
            Ok(None) => continue,
            Err(SearchStop::Budget { .. }) => {
                return Err(DistinguishingError::SolveBudget {
                    limit: budget.node_limit,
                    explored: used,
                    lower_bound: d,
                })
            }
            Err(SearchStop::Timeout) => return Err(DistinguishingError::SolveTimeout),
        }
    }
    unreachable!("an all-distinct labeling is always distinguishing for a faithful action")
}

/// Seeded candidate stream for certificate mode: for each label count, one
/// deterministic striped labeling and then `retry_limit` random ones. The
/// first verified success wins, so results are a function of the seed.
fn certificate_search(
    num_items: usize,
    seed: u64,
    budget: &Budget,
    mut verify: impl FnMut(&[usize]) -> Result<bool, DistinguishingError>,
) -> Result<(usize, Vec<usize>), DistinguishingError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in 2..=num_items.max(2) {
        for attempt in 0..=budget.retry_limit {
            let labels: Vec<usize> = if attempt == 0 {
                (0..num_items).map(|i| i % d + 1).collect()
            } else {
                (0..num_items).map(|_| rng.gen_range(1..=d)).collect()
            };
            if verify(&labels)? {
                return Ok((d, labels));
            }
        }
    }
    unreachable!("the striped labeling at d = num_items has all labels distinct")
}

/// Subdivision encoding used for edge-labeling stabilizers: one new vertex
/// per edge, colored by the edge label; automorphisms of the colored
/// subdivision correspond exactly to label-preserving automorphisms of `g`.
fn edge_colored_subdivision(g: &Graph, edge_labels: &[usize]) -> (Graph, Vec<u32>) {
    let n = g.order();
    let mut edges = Vec::with_capacity(2 * g.size());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, n + e));
        edges.push((v, n + e));
    }
    let sub = Graph::new(n + g.size(), edges).expect("subdivision of a valid graph is valid");
    let mut colors = vec![0u32; n + g.size()];
    for (e, &l) in edge_labels.iter().enumerate() {
        colors[n + e] = 1 + l as u32;
    }
    (sub, colors)
}

/// Product labeling that shifts a distinguishing labeling of the left
/// factor by a block of labels per right-factor row: row `i` (0-based)
/// gets labels `i*d + C(g)`. Verifies that `c` is distinguishing first.
pub fn construct_l1(
    g: &Graph,
    h: &Graph,
    c: &VertexLabeling,
    budget: &Budget,
) -> Result<VertexLabeling, DistinguishingError> {
    let group = automorphisms(g, budget)?;
    if !is_distinguishing_vertices(g, &group, c)? {
        return Err(DistinguishingError::NotDistinguishing);
    }
    let map = crate::products::ProductIndexMap::for_factors(g, h);
    let d = c.label_count();
    let mut labels = vec![0usize; map.len()];
    for gj in 0..g.order() {
        for hi in 0..h.order() {
            labels[map.index(gj, hi)] = hi * d + c.labels()[gj];
        }
    }
    VertexLabeling::new(labels, d * h.order())
}

/// Mirror of [`construct_l1`] built from a distinguishing labeling of the
/// right factor: column `j` gets labels `j*d + C'(h)`.
pub fn construct_l2(
    g: &Graph,
    h: &Graph,
    c_right: &VertexLabeling,
    budget: &Budget,
) -> Result<VertexLabeling, DistinguishingError> {
    let group = automorphisms(h, budget)?;
    if !is_distinguishing_vertices(h, &group, c_right)? {
        return Err(DistinguishingError::NotDistinguishing);
    }
    let map = crate::products::ProductIndexMap::for_factors(g, h);
    let d = c_right.label_count();
    let mut labels = vec![0usize; map.len()];
    for gj in 0..g.order() {
        for hi in 0..h.order() {
            labels[map.index(gj, hi)] = gj * d + c_right.labels()[hi];
        }
    }
    VertexLabeling::new(labels, g.order() * d)
}

/// Extends a distinguishing edge labeling of a spanning subgraph to the
/// host graph by assigning every non-subgraph edge one repeated label.
///
/// Hypotheses checked: `sub` spans `host`, every automorphism of `host` is
/// an automorphism of `sub`, and `labeling` is distinguishing on `sub`.
pub fn lift_edge_labeling(
    host: &Graph,
    sub: &Graph,
    labeling: &EdgeLabeling,
    repeated_label: usize,
    budget: &Budget,
) -> Result<EdgeLabeling, DistinguishingError> {
    if !Graph::is_spanning_subgraph_of(sub, host) {
        return Err(DistinguishingError::NotSpanningSubgraph);
    }
    let host_group = automorphisms(host, budget)?;
    for sigma in host_group.elements() {
        if !is_automorphism(sub, sigma)? {
            return Err(DistinguishingError::SubgroupHypothesisFailed);
        }
    }
    let sub_group = automorphisms(sub, budget)?;
    if !is_distinguishing_edges(sub, &sub_group, labeling)? {
        return Err(DistinguishingError::NotDistinguishing);
    }
    if repeated_label == 0 {
        return Err(DistinguishingError::LabelOutOfRange { label: 0, max: labeling.label_count() });
    }
    let labels: Vec<usize> = host
        .edges()
        .iter()
        .map(|&(u, v)| match sub.edge_index(u, v) {
            Some(e) => labeling.labels()[e],
            None => repeated_label,
        })
        .collect();
    EdgeLabeling::new(labels, labeling.label_count().max(repeated_label))
}

const TRACEABILITY_ORDER_LIMIT: usize = 24;

/// Hamiltonian-path existence by subset dynamic programming over
/// (visited set, endpoint) states.
pub fn is_traceable(g: &Graph) -> Result<bool, DistinguishingError> {
    let n = g.order();
    if n > TRACEABILITY_ORDER_LIMIT {
        return Err(DistinguishingError::TraceabilityBudget {
            order: n,
            limit: TRACEABILITY_ORDER_LIMIT,
        });
    }
    if n == 1 {
        return Ok(true);
    }
    if !g.is_connected() {
        return Ok(false);
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut ends = vec![0u32; 1usize << n];
    for v in 0..n {
        ends[1usize << v] = 1 << v;
    }
    let adj_mask: Vec<u32> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| g.adjacent(v, u))
                .fold(0u32, |m, u| m | 1 << u)
        })
        .collect();
    for mask in 1..=full {
        let mut reach = ends[mask as usize];
        if reach == 0 {
            continue;
        }
        if mask == full {
            return Ok(true);
        }
        while reach != 0 {
            let last = reach.trailing_zeros() as usize;
            reach &= reach - 1;
            let mut nexts = adj_mask[last] & !mask;
            while nexts != 0 {
                let next = nexts.trailing_zeros() as usize;
                nexts &= nexts - 1;
                ends[(mask | 1 << next) as usize] |= 1 << next;
            }
        }
    }
    Ok(ends[full as usize] != 0)
}

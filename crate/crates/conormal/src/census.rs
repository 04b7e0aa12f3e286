//! Exhaustive small-graph corpora and the census driver that sweeps claim
//! verifiers over them.
//!
//! Instances are enumerated in a fixed order (claims in registry order,
//! graphs in corpus order, ordered pairs row-major), verifiers run in
//! parallel, and reports come back in instance order, so two census runs
//! with the same configuration produce identical report streams.

use crate::checks::{claim_info, run_claim, CheckConfig, CheckError, CheckReport, ClaimInstance, ClaimKind, Verdict, CLAIMS};
use crate::graph::Graph;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("labeled enumeration supports n <= {limit}, got {n}")]
    OrderTooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Check(#[from] CheckError),
}

const LABELED_LIMIT: usize = 5;
const UP_TO_ISO_LIMIT: usize = 6;

fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e);
    Graph::new(n, edges).expect("mask edges are valid")
}

/// Smallest edge mask over all vertex relabelings; brute force, which is
/// the point — it doubles as an isomorphism oracle independent of the
/// refinement search.
fn canonical_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> u64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut mapped = 0u64;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                let j = pairs.iter().position(|&p| p == (a, b)).expect("pair in range");
                mapped |= 1 << j;
            }
        }
        best = best.min(mapped);
        // next lexicographic permutation
        let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("successor exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    best
}

/// All labeled graphs on `n` vertices in increasing edge-mask order,
/// optionally restricted to connected graphs and/or deduplicated up to
/// isomorphism (keeping the smallest mask per class).
pub fn enumerate_small_graphs(
    n: usize,
    connected_only: bool,
    up_to_iso: bool,
) -> Result<Vec<Graph>, CensusError> {
    let limit = if up_to_iso { UP_TO_ISO_LIMIT } else { LABELED_LIMIT };
    if n == 0 || n > limit {
        return Err(CensusError::OrderTooLarge { n, limit });
    }
    let pairs = vertex_pairs(n);
    let mut out = Vec::new();
    for mask in 0..1u64 << pairs.len() {
        if up_to_iso && canonical_mask(n, &pairs, mask) != mask {
            continue;
        }
        let g = graph_from_mask(n, &pairs, mask);
        if connected_only && !g.is_connected() {
            continue;
        }
        out.push(g);
    }
    Ok(out)
}

/// Every labeled graph with order between 1 and `n_max`, smaller orders
/// first; the pair corpus used by the claim censuses.
pub fn graphs_up_to(n_max: usize, connected_only: bool) -> Result<Vec<Graph>, CensusError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(enumerate_small_graphs(n, connected_only, false)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub total: usize,
    pub holds: usize,
    pub violated: usize,
    pub skipped_hypotheses: usize,
    pub skipped_budget: usize,
}

impl CensusSummary {
    fn add(&mut self, verdict: Verdict) {
        self.total += 1;
        match verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::SkippedHypotheses => self.skipped_hypotheses += 1,
            Verdict::SkippedBudget => self.skipped_budget += 1,
        }
    }
}

pub struct CensusOutcome {
    pub reports: Vec<CheckReport>,
    pub summary: CensusSummary,
}

enum Task {
    Single(usize),
    Pair(usize, usize),
    Power(usize, usize),
    Family,
}

/// Runs the selected claims over the corpus. Pair claims see every ordered
/// pair, single-graph claims every graph, power claims every graph with
/// the given exponent, and the family table runs once.
pub fn run_census(
    corpus: &[Graph],
    claim_ids: &[&str],
    power_k: usize,
    cfg: &CheckConfig,
) -> Result<CensusOutcome, CensusError> {
    let mut tasks: Vec<(&'static str, Task)> = Vec::new();
    for id in claim_ids {
        let info = claim_info(id).ok_or_else(|| CheckError::UnknownClaim(id.to_string()))?;
        match info.kind {
            ClaimKind::Family => tasks.push((info.id, Task::Family)),
            ClaimKind::Single => {
                tasks.extend((0..corpus.len()).map(|i| (info.id, Task::Single(i))))
            }
            ClaimKind::Power => {
                tasks.extend((0..corpus.len()).map(|i| (info.id, Task::Power(i, power_k))))
            }
            ClaimKind::Pair => {
                for i in 0..corpus.len() {
                    for j in 0..corpus.len() {
                        tasks.push((info.id, Task::Pair(i, j)));
                    }
                }
            }
        }
    }
    let report_lists: Vec<Vec<CheckReport>> = tasks
        .par_iter()
        .map(|(id, task)| {
            let instance = match *task {
                Task::Single(i) => ClaimInstance::Single(&corpus[i]),
                Task::Pair(i, j) => ClaimInstance::Pair(&corpus[i], &corpus[j]),
                Task::Power(i, k) => ClaimInstance::Power(&corpus[i], k),
                Task::Family => ClaimInstance::Family,
            };
            run_claim(id, instance, cfg).expect("task construction matches claim kinds")
        })
        .collect();
    let mut summary = CensusSummary::default();
    let reports: Vec<CheckReport> = report_lists.into_iter().flatten().collect();
    for r in &reports {
        summary.add(r.verdict);
    }
    Ok(CensusOutcome { reports, summary })
}

/// Claim ids selected by a filter: `all` or one registered id.
pub fn resolve_claim_filter(filter: &str) -> Result<Vec<&'static str>, CheckError> {
    if filter == "all" {
        Ok(CLAIMS.iter().map(|c| c.id).collect())
    } else {
        claim_info(filter)
            .map(|c| vec![c.id])
            .ok_or_else(|| CheckError::UnknownClaim(filter.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::are_isomorphic;
    use crate::Budget;

    #[test]
    fn labeled_counts() {
        assert_eq!(enumerate_small_graphs(3, false, false).unwrap().len(), 8);
        assert_eq!(enumerate_small_graphs(1, false, false).unwrap().len(), 1);
        assert_eq!(enumerate_small_graphs(4, true, false).unwrap().len(), 38);
        assert!(enumerate_small_graphs(9, false, false).is_err());
    }

    #[test]
    fn iso_dedup_matches_pairwise_oracle() {
        // independent dedup: keep a graph iff no earlier one is isomorphic
        let labeled = enumerate_small_graphs(4, true, false).unwrap();
        let mut reps: Vec<Graph> = Vec::new();
        for g in labeled {
            if !reps
                .iter()
                .any(|r| are_isomorphic(r, &g, &Budget::default()).unwrap().is_some())
            {
                reps.push(g);
            }
        }
        let canon = enumerate_small_graphs(4, true, true).unwrap();
        assert_eq!(canon.len(), 6);
        assert_eq!(reps.len(), canon.len());
        for (a, b) in reps.iter().zip(&canon) {
            assert!(are_isomorphic(a, b, &Budget::default()).unwrap().is_some());
        }
    }

    #[test]
    fn census_over_tiny_corpus() {
        let corpus = graphs_up_to(2, false).unwrap();
        let outcome =
            run_census(&corpus, &["lem-2.4-neighborhoods", "lem-2.5-dominating"], 3, &CheckConfig::default())
                .unwrap();
        assert_eq!(outcome.summary.total, 2 * corpus.len() * corpus.len());
        assert_eq!(outcome.summary.violated, 0);
        assert_eq!(outcome.summary.holds, outcome.summary.total);
    }

    #[test]
    fn census_reports_are_ordered_deterministically() {
        let corpus = graphs_up_to(2, false).unwrap();
        let a = run_census(&corpus, &["lem-2.5-dominating"], 3, &CheckConfig::default()).unwrap();
        let b = run_census(&corpus, &["lem-2.5-dominating"], 3, &CheckConfig::default()).unwrap();
        let render = |o: &CensusOutcome| {
            o.reports.iter().map(|r| serde_json::to_string(r).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(render(&a), render(&b));
    }

    #[test]
    fn unknown_claim_filter() {
        assert!(resolve_claim_filter("bogus-id").is_err());
        assert_eq!(resolve_claim_filter("all").unwrap().len(), CLAIMS.len());
        assert_eq!(resolve_claim_filter("thm-2.2-bounds").unwrap(), vec!["thm-2.2-bounds"]);
    }
}

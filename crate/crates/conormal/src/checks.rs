//! One verifier per registered claim, each producing a [`CheckReport`].
//!
//! A verifier first evaluates every hypothesis of its claim and reports
//! them individually; unmet hypotheses yield a `skipped-hypotheses`
//! verdict, never a silent pass, so census summaries show exactly how much
//! of a corpus each claim governs. Search-budget exhaustion yields
//! `skipped-budget` with the failing step in the reason. A `violated`
//! verdict always carries the computed values as a witness.
//!
//! For claims of "if and only if" shape, `holds` means the biconditional
//! was evaluated: the condition and the conclusion were both computed and
//! agreed on the instance.

use crate::distinguishing::{
    distinguishing_index, distinguishing_number, edge_action_is_faithful,
    edge_labeling_stabilizer_is_trivial, is_traceable, lift_edge_labeling, DistinguishingResult,
    SolveMode, Witness,
};
use crate::graph::{Graph, TwinStatus};
use crate::graph6::to_graph6;
use crate::products::{cartesian, conormal, conormal_power, ProductIndexMap};
use crate::symmetry::{
    are_isomorphic, aut_factorizes, automorphisms, is_automorphism, is_rigid,
    product_automorphism,
};
use crate::Budget;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("claim {claim} expects {expected}")]
    InstanceMismatch { claim: &'static str, expected: &'static str },
}

/// Solver configuration shared by all verifiers.
#[derive(Debug, Clone, Copy)]
pub struct CheckConfig {
    pub mode: SolveMode,
    pub seed: u64,
    pub budget: Budget,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { mode: SolveMode::Exact, seed: 0, budget: Budget::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "holds")]
    Holds,
    #[serde(rename = "violated")]
    Violated,
    #[serde(rename = "skipped-hypotheses")]
    SkippedHypotheses,
    #[serde(rename = "skipped-budget")]
    SkippedBudget,
}

#[derive(Debug, Clone, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ReportValue {
    Int(i64),
    Bool(bool),
    Text(String),
    List(Vec<i64>),
}

impl From<usize> for ReportValue {
    fn from(v: usize) -> Self {
        ReportValue::Int(v as i64)
    }
}

impl From<bool> for ReportValue {
    fn from(v: bool) -> Self {
        ReportValue::Bool(v)
    }
}

/// Outcome record of one verifier run.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub claim: &'static str,
    pub instance: BTreeMap<String, String>,
    pub hypotheses: Vec<Hypothesis>,
    pub computed: BTreeMap<String, ReportValue>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, ReportValue>>,
}

struct Check {
    claim: &'static str,
    instance: BTreeMap<String, String>,
    hypotheses: Vec<Hypothesis>,
    computed: BTreeMap<String, ReportValue>,
    witness: Option<BTreeMap<String, ReportValue>>,
}

impl Check {
    fn new(claim: &'static str, instance: BTreeMap<String, String>) -> Self {
        Check { claim, instance, hypotheses: Vec::new(), computed: BTreeMap::new(), witness: None }
    }

    fn require(&mut self, name: &str, met: bool) {
        self.hypotheses.push(Hypothesis { name: name.to_string(), met });
    }

    fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.met)
    }

    fn set(&mut self, key: &str, value: impl Into<ReportValue>) {
        self.computed.insert(key.to_string(), value.into());
    }

    fn report(self, verdict: Verdict, reason: Option<String>) -> CheckReport {
        CheckReport {
            claim: self.claim,
            instance: self.instance,
            hypotheses: self.hypotheses,
            computed: self.computed,
            verdict,
            reason,
            witness: self.witness,
        }
    }

    fn skipped_hypotheses(self) -> CheckReport {
        let unmet: Vec<String> = self
            .hypotheses
            .iter()
            .filter(|h| !h.met)
            .map(|h| h.name.clone())
            .collect();
        let reason = format!("hypotheses not met: {}", unmet.join(", "));
        self.report(Verdict::SkippedHypotheses, Some(reason))
    }

    fn skipped_budget(self, reason: String) -> CheckReport {
        self.report(Verdict::SkippedBudget, Some(reason))
    }

    /// `holds` on true; on false, a violation carrying the computed values.
    fn verdict(mut self, holds: bool) -> CheckReport {
        if holds {
            self.report(Verdict::Holds, None)
        } else {
            self.witness = Some(self.computed.clone());
            self.report(Verdict::Violated, None)
        }
    }
}

/// Bails out of the enclosing verifier with a `skipped-budget` report.
macro_rules! try_solve {
    ($check:expr, $expr:expr) => {
        match $expr {
            Ok(value) => value,
            Err(e) => return $check.skipped_budget(e.to_string()),
        }
    };
}

fn pair_instance(g: &Graph, h: &Graph) -> BTreeMap<String, String> {
    BTreeMap::from([("left".to_string(), to_graph6(g)), ("right".to_string(), to_graph6(h))])
}

fn single_instance(g: &Graph) -> BTreeMap<String, String> {
    BTreeMap::from([("graph".to_string(), to_graph6(g))])
}

#[derive(Clone, Copy)]
enum Quantity {
    Number,
    Index,
}

/// Solves in the configured mode, escalating to exact when a certificate
/// run only produced an upper bound.
fn solve_exact_value(
    g: &Graph,
    quantity: Quantity,
    cfg: &CheckConfig,
) -> Result<DistinguishingResult, crate::distinguishing::DistinguishingError> {
    let run = |mode| match quantity {
        Quantity::Number => distinguishing_number(g, mode, cfg.seed, &cfg.budget),
        Quantity::Index => distinguishing_index(g, mode, cfg.seed, &cfg.budget),
    };
    let first = run(cfg.mode)?;
    if first.exact {
        Ok(first)
    } else {
        run(SolveMode::Exact)
    }
}

fn open_eq(g: &Graph, u: usize, v: usize) -> bool {
    u == v || matches!(g.twin_status(u, v), Ok(TwinStatus::FalseTwins))
}

// ---------------------------------------------------------------------------
// claim registry
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimKind {
    /// One graph.
    Single,
    /// An ordered pair of graphs.
    Pair,
    /// One graph plus a power exponent.
    Power,
    /// Self-contained instance list.
    Family,
}

#[derive(Debug, Clone, Copy)]
pub struct ClaimInfo {
    pub id: &'static str,
    pub kind: ClaimKind,
    pub statement: &'static str,
}

pub const CLAIMS: &[ClaimInfo] = &[
    ClaimInfo {
        id: "family-values",
        kind: ClaimKind::Family,
        statement: "reference D and D' values for paths, cycles, and complete graphs",
    },
    ClaimInfo {
        id: "thm-1.2-factorization",
        kind: ClaimKind::Pair,
        statement: "for non-isomorphic non-rigid G, H: Aut(G*H) = Aut(G) x Aut(H) iff neither factor has false twins or a dominating vertex",
    },
    ClaimInfo {
        id: "thm-1.3-rigid-pair",
        kind: ClaimKind::Pair,
        statement: "for rigid isomorphic G, H the product group has order exactly 2",
    },
    ClaimInfo {
        id: "thm-1.4-rigid-iff",
        kind: ClaimKind::Pair,
        statement: "G*H is rigid iff G and H are non-isomorphic and both rigid",
    },
    ClaimInfo {
        id: "thm-2.1-product-maps",
        kind: ClaimKind::Pair,
        statement: "pairs of factor automorphisms act on the product; for isomorphic factors the coordinate exchange does too",
    },
    ClaimInfo {
        id: "thm-2.2-bounds",
        kind: ClaimKind::Pair,
        statement: "max{D(G box H), D(G), D(H)} <= D(G*H) <= min{D(G)|V(H)|, |V(G)|D(H)} for connected factors",
    },
    ClaimInfo {
        id: "thm-2.3-cartesian-equality",
        kind: ClaimKind::Pair,
        statement: "D(G*H) = D(G box H) for connected, non-isomorphic, non-rigid factors with no false twins and no dominating vertices",
    },
    ClaimInfo {
        id: "lem-2.4-neighborhoods",
        kind: ClaimKind::Pair,
        statement: "equal open neighborhoods in G*H happen exactly at coordinatewise open-neighborhood equalities",
    },
    ClaimInfo {
        id: "lem-2.5-dominating",
        kind: ClaimKind::Pair,
        statement: "(g,h) dominates G*H iff g dominates G and h dominates H",
    },
    ClaimInfo {
        id: "thm-2.6-group-order",
        kind: ClaimKind::Pair,
        statement: "for rigid G and non-rigid H: |Aut(G*H)| = |Aut(H)| iff G has no dominating vertex and H has no false twin",
    },
    ClaimInfo {
        id: "thm-2.7-power-number",
        kind: ClaimKind::Power,
        statement: "D of the k-th co-normal power of a connected graph with no false twins and no dominating vertex is 2 (k >= 3, or k >= 2 for rigid graphs)",
    },
    ClaimInfo {
        id: "thm-3.1-traceable",
        kind: ClaimKind::Single,
        statement: "a traceable graph of order at least 7 has D' <= 2",
    },
    ClaimInfo {
        id: "lem-3.2-spanning",
        kind: ClaimKind::Pair,
        statement: "if H spans or almost spans G then D'(G) <= D'(H) + 1",
    },
    ClaimInfo {
        id: "lem-3.3-subgroup-lift",
        kind: ClaimKind::Pair,
        statement: "if H spans G and Aut(G) <= Aut(H) then D'(G) <= D'(H), witnessed by relabeling non-subgraph edges",
    },
    ClaimInfo {
        id: "thm-3.4-index-bounds",
        kind: ClaimKind::Pair,
        statement: "D'(G*H) <= D'(G box H) + 1 for connected factors, and without the +1 under the factorization hypotheses",
    },
    ClaimInfo {
        id: "thm-3.5-power-index",
        kind: ClaimKind::Power,
        statement: "D' of the k-th co-normal power of a connected graph with no false twins and no dominating vertex is 2 (k >= 3, or k >= 2 for rigid graphs)",
    },
    ClaimInfo {
        id: "thm-3.6-complete-factor",
        kind: ClaimKind::Pair,
        statement: "D'(G * K_m) = 2 for connected G of order >= 2 and m >= 2, except D'(K2*K2) = 3",
    },
    ClaimInfo {
        id: "cor-3.7-path-cycle",
        kind: ClaimKind::Pair,
        statement: "co-normal products of paths and cycles have D' = 2, except D'(P2*P2) = 3",
    },
];

pub fn claim_info(id: &str) -> Option<&'static ClaimInfo> {
    CLAIMS.iter().find(|c| c.id == id)
}

/// Instance a claim runs on; the shape must match the claim kind.
#[derive(Clone, Copy)]
pub enum ClaimInstance<'a> {
    Single(&'a Graph),
    Pair(&'a Graph, &'a Graph),
    Power(&'a Graph, usize),
    Family,
}

/// Runs one registered claim on one instance.
pub fn run_claim(
    id: &str,
    instance: ClaimInstance<'_>,
    cfg: &CheckConfig,
) -> Result<Vec<CheckReport>, CheckError> {
    let info = claim_info(id).ok_or_else(|| CheckError::UnknownClaim(id.to_string()))?;
    let mismatch = || CheckError::InstanceMismatch {
        claim: info.id,
        expected: match info.kind {
            ClaimKind::Single => "one graph",
            ClaimKind::Pair => "two graphs",
            ClaimKind::Power => "one graph and a power exponent",
            ClaimKind::Family => "no inputs",
        },
    };
    match (info.id, instance) {
        ("family-values", ClaimInstance::Family) => Ok(check_family_values(cfg)),
        ("thm-1.2-factorization", ClaimInstance::Pair(g, h)) => {
            Ok(vec![check_factorization(g, h, cfg)])
        }
        ("thm-1.3-rigid-pair", ClaimInstance::Pair(g, h)) => Ok(vec![check_rigid_pair(g, h, cfg)]),
        ("thm-1.4-rigid-iff", ClaimInstance::Pair(g, h)) => Ok(vec![check_rigid_iff(g, h, cfg)]),
        ("thm-2.1-product-maps", ClaimInstance::Pair(g, h)) => {
            Ok(vec![check_product_maps(g, h, cfg)])
        }
        ("thm-2.2-bounds", ClaimInstance::Pair(g, h)) => Ok(vec![check_bound_chain(g, h, cfg)]),
        ("thm-2.3-cartesian-equality", ClaimInstance::Pair(g, h)) => {
            Ok(vec![check_cartesian_equality(g, h, cfg)])
        }
        ("lem-2.4-neighborhoods", ClaimInstance::Pair(g, h)) => {
            Ok(vec![check_neighborhood_lemma(g, h)])
        }
        ("lem-2.5-dominating", ClaimInstance::Pair(g, h)) => {
            Ok(vec![check_dominating_lemma(g, h)])
        }
        ("thm-2.6-group-order", ClaimInstance::Pair(g, h)) => {
            Ok(vec![check_group_order(g, h, cfg)])
        }
        ("thm-2.7-power-number", ClaimInstance::Power(g, k)) => {
            Ok(vec![check_power_number(g, k, cfg)])
        }
        ("thm-3.1-traceable", ClaimInstance::Single(g)) => {
            Ok(vec![check_traceable_bound(g, cfg)])
        }
        ("lem-3.2-spanning", ClaimInstance::Pair(g, h)) => Ok(vec![check_spanning_bound(g, h, cfg)]),
        ("lem-3.3-subgroup-lift", ClaimInstance::Pair(g, h)) => {
            Ok(vec![check_subgroup_lift(g, h, cfg)])
        }
        ("thm-3.4-index-bounds", ClaimInstance::Pair(g, h)) => {
            Ok(vec![check_index_bounds(g, h, cfg)])
        }
        ("thm-3.5-power-index", ClaimInstance::Power(g, k)) => {
            Ok(vec![check_power_index(g, k, cfg)])
        }
        ("thm-3.6-complete-factor", ClaimInstance::Pair(g, h)) => {
            Ok(vec![check_complete_factor(g, h, cfg)])
        }
        ("cor-3.7-path-cycle", ClaimInstance::Pair(g, h)) => {
            Ok(vec![check_path_cycle_products(g, h, cfg)])
        }
        _ => Err(mismatch()),
    }
}

// ---------------------------------------------------------------------------
// group-structure claims
// ---------------------------------------------------------------------------

pub fn check_factorization(g: &Graph, h: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("thm-1.2-factorization", pair_instance(g, h));
    c.require("order(G) >= 2", g.order() >= 2);
    c.require("order(H) >= 2", h.order() >= 2);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let iso = try_solve!(c, are_isomorphic(g, h, &cfg.budget));
    c.require("G and H non-isomorphic", iso.is_none());
    let rigid_g = try_solve!(c, is_rigid(g, &cfg.budget));
    let rigid_h = try_solve!(c, is_rigid(h, &cfg.budget));
    c.require("G non-rigid", !rigid_g);
    c.require("H non-rigid", !rigid_h);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let condition = !g.has_false_twins()
        && !h.has_false_twins()
        && !g.has_dominating_vertex()
        && !h.has_dominating_vertex();
    let factorizes = try_solve!(c, aut_factorizes(g, h, &cfg.budget));
    let aut_g = try_solve!(c, automorphisms(g, &cfg.budget)).order();
    let aut_h = try_solve!(c, automorphisms(h, &cfg.budget)).order();
    c.set("no_twins_no_dominating", condition);
    c.set("factorizes", factorizes);
    c.set("aut_left", aut_g);
    c.set("aut_right", aut_h);
    c.verdict(condition == factorizes)
}

pub fn check_rigid_pair(g: &Graph, h: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("thm-1.3-rigid-pair", pair_instance(g, h));
    c.require("order(G) >= 2", g.order() >= 2);
    c.require("order(H) >= 2", h.order() >= 2);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let rigid_g = try_solve!(c, is_rigid(g, &cfg.budget));
    let rigid_h = try_solve!(c, is_rigid(h, &cfg.budget));
    let iso = try_solve!(c, are_isomorphic(g, h, &cfg.budget));
    c.require("G rigid", rigid_g);
    c.require("H rigid", rigid_h);
    c.require("G isomorphic to H", iso.is_some());
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let order = try_solve!(c, automorphisms(&conormal(g, h), &cfg.budget)).order();
    c.set("aut_product", order);
    c.verdict(order == 2)
}

pub fn check_rigid_iff(g: &Graph, h: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("thm-1.4-rigid-iff", pair_instance(g, h));
    c.require("order(G) >= 2", g.order() >= 2);
    c.require("order(H) >= 2", h.order() >= 2);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let rigid_g = try_solve!(c, is_rigid(g, &cfg.budget));
    let rigid_h = try_solve!(c, is_rigid(h, &cfg.budget));
    let iso = try_solve!(c, are_isomorphic(g, h, &cfg.budget));
    let rigid_product = try_solve!(c, is_rigid(&conormal(g, h), &cfg.budget));
    let condition = rigid_g && rigid_h && iso.is_none();
    c.set("factors_rigid_and_non_isomorphic", condition);
    c.set("product_rigid", rigid_product);
    c.verdict(condition == rigid_product)
}

pub fn check_product_maps(g: &Graph, h: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("thm-2.1-product-maps", pair_instance(g, h));
    let aut_g = try_solve!(c, automorphisms(g, &cfg.budget));
    let aut_h = try_solve!(c, automorphisms(h, &cfg.budget));
    let product = conormal(g, h);
    let map = ProductIndexMap::for_factors(g, h);
    let mut all_good = true;
    for a in aut_g.elements() {
        for b in aut_h.elements() {
            let lambda = product_automorphism(a, b, false, &map)
                .expect("factor group elements have matching degrees");
            if !is_automorphism(&product, &lambda).expect("degree matches") {
                all_good = false;
            }
        }
    }
    c.set("pair_maps_checked", aut_g.order() * aut_h.order());
    c.set("pair_maps_are_automorphisms", all_good);
    let mut verdict = all_good;
    if let Some(alpha) = try_solve!(c, are_isomorphic(g, h, &cfg.budget)) {
        let beta = alpha.inverse();
        let exchange = product_automorphism(&alpha, &beta, true, &map)
            .expect("isomorphic factors have equal orders");
        let ok = is_automorphism(&product, &exchange).expect("degree matches");
        c.set("exchange_map_is_automorphism", ok);
        verdict = verdict && ok;
    }
    c.verdict(verdict)
}

pub fn check_group_order(g: &Graph, h: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("thm-2.6-group-order", pair_instance(g, h));
    c.require("order(G) >= 2", g.order() >= 2);
    c.require("order(H) >= 2", h.order() >= 2);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let rigid_g = try_solve!(c, is_rigid(g, &cfg.budget));
    let rigid_h = try_solve!(c, is_rigid(h, &cfg.budget));
    c.require("G rigid", rigid_g);
    c.require("H non-rigid", !rigid_h);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let condition = !g.has_dominating_vertex() && !h.has_false_twins();
    let aut_h = try_solve!(c, automorphisms(h, &cfg.budget)).order();
    let aut_p = try_solve!(c, automorphisms(&conormal(g, h), &cfg.budget)).order();
    c.set("no_dominating_in_left_no_false_twin_in_right", condition);
    c.set("aut_right", aut_h);
    c.set("aut_product", aut_p);
    c.verdict(condition == (aut_p == aut_h))
}

// ---------------------------------------------------------------------------
// product-structure lemmas (pure brute force, no hypotheses)
// ---------------------------------------------------------------------------

pub fn check_neighborhood_lemma(g: &Graph, h: &Graph) -> CheckReport {
    let mut c = Check::new("lem-2.4-neighborhoods", pair_instance(g, h));
    let p = conormal(g, h);
    let map = ProductIndexMap::for_factors(g, h);
    let n = p.order();
    let mut equal_pairs: i64 = 0;
    for x in 0..n {
        for y in x + 1..n {
            let lhs = (0..n).all(|w| p.adjacent(x, w) == p.adjacent(y, w));
            let (a, b) = map.decode(x);
            let (cc, d) = map.decode(y);
            let case_i = a == cc && b != d && open_eq(h, b, d);
            let case_ii = b == d && a != cc && open_eq(g, a, cc);
            let case_iii = open_eq(g, a, cc) && open_eq(h, b, d);
            let rhs = case_i || case_ii || case_iii;
            if lhs != rhs {
                c.set("counterexample_pair", ReportValue::List(vec![x as i64, y as i64]));
                c.set("equal_neighborhoods", lhs);
                c.set("characterization", rhs);
                return c.verdict(false);
            }
            if lhs {
                equal_pairs += 1;
            }
        }
    }
    c.set("equal_neighborhood_pairs", ReportValue::Int(equal_pairs));
    c.verdict(true)
}

pub fn check_dominating_lemma(g: &Graph, h: &Graph) -> CheckReport {
    let mut c = Check::new("lem-2.5-dominating", pair_instance(g, h));
    let p = conormal(g, h);
    let map = ProductIndexMap::for_factors(g, h);
    let mut dominating: i64 = 0;
    for v in p.vertices() {
        let lhs = p.degree(v) == p.order() - 1;
        let (a, b) = map.decode(v);
        let rhs = g.degree(a) == g.order() - 1 && h.degree(b) == h.order() - 1;
        if lhs != rhs {
            c.set("counterexample_vertex", v);
            c.set("dominates_product", lhs);
            c.set("coordinates_dominate_factors", rhs);
            return c.verdict(false);
        }
        if lhs {
            dominating += 1;
        }
    }
    c.set("dominating_vertices", ReportValue::Int(dominating));
    c.verdict(true)
}

// ---------------------------------------------------------------------------
// distinguishing-number claims
// ---------------------------------------------------------------------------

pub fn check_bound_chain(g: &Graph, h: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("thm-2.2-bounds", pair_instance(g, h));
    c.require("order(G) >= 2", g.order() >= 2);
    c.require("order(H) >= 2", h.order() >= 2);
    c.require("G connected", g.is_connected());
    c.require("H connected", h.is_connected());
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    // the chain relates exact minima, so exact mode regardless of config
    let exact = CheckConfig { mode: SolveMode::Exact, ..*cfg };
    let d_g = try_solve!(c, solve_exact_value(g, Quantity::Number, &exact)).value;
    let d_h = try_solve!(c, solve_exact_value(h, Quantity::Number, &exact)).value;
    let d_box = try_solve!(c, solve_exact_value(&cartesian(g, h), Quantity::Number, &exact)).value;
    let d_star = try_solve!(c, solve_exact_value(&conormal(g, h), Quantity::Number, &exact)).value;
    let lower = d_box.max(d_g).max(d_h);
    let upper = (d_g * h.order()).min(g.order() * d_h);
    c.set("D_left", d_g);
    c.set("D_right", d_h);
    c.set("D_cartesian", d_box);
    c.set("D_conormal", d_star);
    c.set("lower_bound", lower);
    c.set("upper_bound", upper);
    c.verdict(lower <= d_star && d_star <= upper)
}

pub fn check_cartesian_equality(g: &Graph, h: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("thm-2.3-cartesian-equality", pair_instance(g, h));
    c.require("order(G) >= 2", g.order() >= 2);
    c.require("order(H) >= 2", h.order() >= 2);
    c.require("G connected", g.is_connected());
    c.require("H connected", h.is_connected());
    c.require("no false twins in G", !g.has_false_twins());
    c.require("no false twins in H", !h.has_false_twins());
    c.require("no dominating vertex in G", !g.has_dominating_vertex());
    c.require("no dominating vertex in H", !h.has_dominating_vertex());
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let iso = try_solve!(c, are_isomorphic(g, h, &cfg.budget));
    c.require("G and H non-isomorphic", iso.is_none());
    let rigid_g = try_solve!(c, is_rigid(g, &cfg.budget));
    let rigid_h = try_solve!(c, is_rigid(h, &cfg.budget));
    c.require("G non-rigid", !rigid_g);
    c.require("H non-rigid", !rigid_h);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let exact = CheckConfig { mode: SolveMode::Exact, ..*cfg };
    let d_star = try_solve!(c, solve_exact_value(&conormal(g, h), Quantity::Number, &exact)).value;
    let d_box = try_solve!(c, solve_exact_value(&cartesian(g, h), Quantity::Number, &exact)).value;
    c.set("D_conormal", d_star);
    c.set("D_cartesian", d_box);
    c.verdict(d_star == d_box)
}

pub fn check_power_number(g: &Graph, k: usize, cfg: &CheckConfig) -> CheckReport {
    power_claim(g, k, cfg, Quantity::Number, "thm-2.7-power-number")
}

pub fn check_power_index(g: &Graph, k: usize, cfg: &CheckConfig) -> CheckReport {
    power_claim(g, k, cfg, Quantity::Index, "thm-3.5-power-index")
}

const POWER_ORDER_CAP: usize = 10_000;

fn power_claim(
    g: &Graph,
    k: usize,
    cfg: &CheckConfig,
    quantity: Quantity,
    claim: &'static str,
) -> CheckReport {
    let mut instance = single_instance(g);
    instance.insert("k".to_string(), k.to_string());
    let mut c = Check::new(claim, instance);
    c.require("order >= 2", g.order() >= 2);
    c.require("connected", g.is_connected());
    c.require("no false twins", !g.has_false_twins());
    c.require("no dominating vertex", !g.has_dominating_vertex());
    c.require("k >= 2", k >= 2);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    if k == 2 {
        let rigid = try_solve!(c, is_rigid(g, &cfg.budget));
        c.require("k >= 3, or k = 2 with G rigid", rigid);
        if !c.hypotheses_met() {
            return c.skipped_hypotheses();
        }
    }
    match g.order().checked_pow(k as u32) {
        Some(order) if order <= POWER_ORDER_CAP => {}
        _ => {
            return c.skipped_budget(format!(
                "power order {}^{k} exceeds the cap of {POWER_ORDER_CAP} vertices",
                g.order()
            ))
        }
    }
    let power = conormal_power(g, k).expect("k >= 2");
    c.set("power_order", power.order());
    let result = try_solve!(c, solve_exact_value(&power, quantity, cfg));
    match quantity {
        Quantity::Number => c.set("D_power", result.value),
        Quantity::Index => c.set("Dprime_power", result.value),
    }
    c.verdict(result.value == 2)
}

// ---------------------------------------------------------------------------
// distinguishing-index claims
// ---------------------------------------------------------------------------

pub fn check_traceable_bound(g: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("thm-3.1-traceable", single_instance(g));
    c.require("order >= 7", g.order() >= 7);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let traceable = try_solve!(c, is_traceable(g));
    c.require("traceable", traceable);
    c.require("D' defined", g.size() > 0 && edge_action_is_faithful(g));
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let result = try_solve!(c, solve_exact_value(g, Quantity::Index, cfg));
    c.set("Dprime", result.value);
    c.verdict(result.value <= 2)
}

pub fn check_index_bounds(g: &Graph, h: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("thm-3.4-index-bounds", pair_instance(g, h));
    c.require("order(G) >= 2", g.order() >= 2);
    c.require("order(H) >= 2", h.order() >= 2);
    c.require("G connected", g.is_connected());
    c.require("H connected", h.is_connected());
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let star = conormal(g, h);
    let boxed = cartesian(g, h);
    c.require("D'(G*H) defined", star.size() > 0 && edge_action_is_faithful(&star));
    c.require("D'(G box H) defined", boxed.size() > 0 && edge_action_is_faithful(&boxed));
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let d_star = try_solve!(c, solve_exact_value(&star, Quantity::Index, cfg)).value;
    let d_box = try_solve!(c, solve_exact_value(&boxed, Quantity::Index, cfg)).value;
    c.set("Dprime_conormal", d_star);
    c.set("Dprime_cartesian", d_box);
    let mut holds = d_star <= d_box + 1;
    c.set("weak_bound_holds", holds);

    // part (ii) under the factorization hypotheses
    let structural = !g.has_false_twins()
        && !h.has_false_twins()
        && !g.has_dominating_vertex()
        && !h.has_dominating_vertex();
    if structural {
        let iso = try_solve!(c, are_isomorphic(g, h, &cfg.budget));
        let rigid_g = try_solve!(c, is_rigid(g, &cfg.budget));
        let rigid_h = try_solve!(c, is_rigid(h, &cfg.budget));
        if iso.is_none() && !rigid_g && !rigid_h {
            let tight = d_star <= d_box;
            c.set("tight_bound_applies", true);
            c.set("tight_bound_holds", tight);
            holds = holds && tight;
        } else {
            c.set("tight_bound_applies", false);
        }
    } else {
        c.set("tight_bound_applies", false);
    }
    c.verdict(holds)
}

pub fn check_complete_factor(g: &Graph, h: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("thm-3.6-complete-factor", pair_instance(g, h));
    let m = h.order();
    c.require("order(G) >= 2", g.order() >= 2);
    c.require("G connected", g.is_connected());
    c.require("H complete", *h == Graph::complete(m));
    c.require("order(H) >= 2", m >= 2);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let expected = if g.order() == 2 && m == 2 { 3 } else { 2 };
    let product = conormal(g, h);
    let result = try_solve!(c, solve_exact_value(&product, Quantity::Index, cfg));
    c.set("Dprime", result.value);
    c.set("expected", expected);
    c.verdict(result.value == expected)
}

fn is_path_graph(g: &Graph) -> bool {
    g.is_connected()
        && g.size() + 1 == g.order()
        && g.vertices().all(|v| g.degree(v) <= 2)
}

fn is_cycle_graph(g: &Graph) -> bool {
    g.order() >= 3 && g.is_connected() && g.vertices().all(|v| g.degree(v) == 2)
}

pub fn check_path_cycle_products(g: &Graph, h: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("cor-3.7-path-cycle", pair_instance(g, h));
    let g_path = is_path_graph(g);
    let g_cycle = is_cycle_graph(g);
    let h_path = is_path_graph(h);
    let h_cycle = is_cycle_graph(h);
    c.require("G is a path or cycle", g_path || g_cycle);
    c.require("H is a path or cycle", h_path || h_cycle);
    c.require("paths have order >= 2", (!g_path || g.order() >= 2) && (!h_path || h.order() >= 2));
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let expected = if g_path && h_path && g.order() == 2 && h.order() == 2 { 3 } else { 2 };
    let product = conormal(g, h);
    let result = try_solve!(c, solve_exact_value(&product, Quantity::Index, cfg));
    c.set("Dprime", result.value);
    c.set("expected", expected);
    c.verdict(result.value == expected)
}

// ---------------------------------------------------------------------------
// spanning-subgraph claims
// ---------------------------------------------------------------------------

/// `sub` spans `host - v` for some vertex `v`, vertices renumbered densely.
fn almost_spans(sub: &Graph, host: &Graph) -> bool {
    host.order() == sub.order() + 1
        && host.vertices().any(|v| {
            let reduced = host.delete_vertex(v).expect("order >= 2 here");
            Graph::is_spanning_subgraph_of(sub, &reduced)
        })
}

pub fn check_spanning_bound(host: &Graph, sub: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("lem-3.2-spanning", pair_instance(host, sub));
    let spans = Graph::is_spanning_subgraph_of(sub, host);
    let almost = !spans && almost_spans(sub, host);
    c.require("H spans G or almost spans G", spans || almost);
    c.require("D'(G) defined", host.size() > 0 && edge_action_is_faithful(host));
    c.require("D'(H) defined", sub.size() > 0 && edge_action_is_faithful(sub));
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    c.set("spans", spans);
    c.set("almost_spans", almost);
    let d_host = try_solve!(c, solve_exact_value(host, Quantity::Index, cfg)).value;
    let d_sub = try_solve!(c, solve_exact_value(sub, Quantity::Index, cfg)).value;
    c.set("Dprime_host", d_host);
    c.set("Dprime_subgraph", d_sub);
    c.verdict(d_host <= d_sub + 1)
}

pub fn check_subgroup_lift(host: &Graph, sub: &Graph, cfg: &CheckConfig) -> CheckReport {
    let mut c = Check::new("lem-3.3-subgroup-lift", pair_instance(host, sub));
    c.require("H spans G", Graph::is_spanning_subgraph_of(sub, host));
    c.require("D'(G) defined", host.size() > 0 && edge_action_is_faithful(host));
    c.require("D'(H) defined", sub.size() > 0 && edge_action_is_faithful(sub));
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let host_group = try_solve!(c, automorphisms(host, &cfg.budget));
    let subgroup = host_group
        .elements()
        .iter()
        .all(|sigma| is_automorphism(sub, sigma).expect("same order"));
    c.require("Aut(G) is a subgroup of Aut(H)", subgroup);
    if !c.hypotheses_met() {
        return c.skipped_hypotheses();
    }
    let host_result = try_solve!(c, solve_exact_value(host, Quantity::Index, cfg));
    let sub_result = try_solve!(c, solve_exact_value(sub, Quantity::Index, cfg));
    c.set("Dprime_host", host_result.value);
    c.set("Dprime_subgraph", sub_result.value);
    let Witness::Edge(sub_labeling) = &sub_result.witness else {
        unreachable!("index solves produce edge witnesses")
    };
    let lifted = try_solve!(c, lift_edge_labeling(host, sub, sub_labeling, 1, &cfg.budget));
    let lift_ok = try_solve!(c, edge_labeling_stabilizer_is_trivial(host, &lifted, &cfg.budget));
    c.set("lifted_labeling_distinguishing", lift_ok);
    c.verdict(host_result.value <= sub_result.value && lift_ok)
}

// ---------------------------------------------------------------------------
// family value table
// ---------------------------------------------------------------------------

pub fn check_family_values(cfg: &CheckConfig) -> Vec<CheckReport> {
    struct Row {
        family: &'static str,
        n: usize,
        graph: Graph,
        expected_number: Option<usize>,
        expected_index: Option<usize>,
    }
    let mut rows = Vec::new();
    for n in 3..=8 {
        rows.push(Row {
            family: "path",
            n,
            graph: Graph::path(n),
            expected_number: Some(2),
            expected_index: Some(2),
        });
    }
    for n in 3..=10 {
        let expected = if n <= 5 { 3 } else { 2 };
        rows.push(Row {
            family: "cycle",
            n,
            graph: Graph::cycle(n),
            expected_number: Some(expected),
            expected_index: Some(expected),
        });
    }
    for n in 2..=5 {
        rows.push(Row {
            family: "complete",
            n,
            graph: Graph::complete(n),
            expected_number: Some(n),
            expected_index: if n == 4 { Some(3) } else { None },
        });
    }
    rows.into_iter()
        .map(|row| {
            let mut instance = BTreeMap::new();
            instance.insert("family".to_string(), row.family.to_string());
            instance.insert("n".to_string(), row.n.to_string());
            instance.insert("graph".to_string(), to_graph6(&row.graph));
            let mut c = Check::new("family-values", instance);
            let mut holds = true;
            if let Some(expected) = row.expected_number {
                let value =
                    try_solve!(c, solve_exact_value(&row.graph, Quantity::Number, cfg)).value;
                c.set("D", value);
                c.set("expected_D", expected);
                holds &= value == expected;
            }
            if let Some(expected) = row.expected_index {
                let value =
                    try_solve!(c, solve_exact_value(&row.graph, Quantity::Index, cfg)).value;
                c.set("Dprime", value);
                c.set("expected_Dprime", expected);
                holds &= value == expected;
            }
            c.verdict(holds)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// aggregate drivers mirroring the per-area groupings
// ---------------------------------------------------------------------------

/// Both neighborhood and dominating-vertex product lemmas.
pub fn check_product_lemmas(g: &Graph, h: &Graph) -> Vec<CheckReport> {
    vec![check_neighborhood_lemma(g, h), check_dominating_lemma(g, h)]
}

/// All four group-structure claims on one pair.
pub fn check_group_theorems(g: &Graph, h: &Graph, cfg: &CheckConfig) -> Vec<CheckReport> {
    vec![
        check_factorization(g, h, cfg),
        check_rigid_pair(g, h, cfg),
        check_rigid_iff(g, h, cfg),
        check_group_order(g, h, cfg),
    ]
}

/// D and D' power claims for one base graph and exponent.
pub fn check_power_theorems(g: &Graph, k: usize, cfg: &CheckConfig) -> Vec<CheckReport> {
    vec![check_power_number(g, k, cfg), check_power_index(g, k, cfg)]
}

/// Index bound, complete-factor, and path/cycle product claims on one pair.
pub fn check_index_theorems(g: &Graph, h: &Graph, cfg: &CheckConfig) -> Vec<CheckReport> {
    vec![
        check_index_bounds(g, h, cfg),
        check_complete_factor(g, h, cfg),
        check_path_cycle_products(g, h, cfg),
    ]
}

/// Both spanning-subgraph claims on one (host, subgraph) pair.
pub fn check_spanning_lemmas(host: &Graph, sub: &Graph, cfg: &CheckConfig) -> Vec<CheckReport> {
    vec![check_spanning_bound(host, sub, cfg), check_subgroup_lift(host, sub, cfg)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    #[test]
    fn bound_chain_examples() {
        let r = check_bound_chain(&Graph::path(3), &Graph::path(2), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);

        let r = check_bound_chain(&Graph::complete(2), &Graph::complete(2), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["D_conormal"], ReportValue::Int(4));
        assert_eq!(r.computed["upper_bound"], ReportValue::Int(4));

        let disconnected = Graph::edgeless(3).unwrap();
        let r = check_bound_chain(&disconnected, &Graph::path(2), &cfg());
        assert_eq!(r.verdict, Verdict::SkippedHypotheses);
    }

    #[test]
    fn bound_chain_is_tight_below_for_rigid_factors() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 3), (1, 4)]).unwrap();
        // complementation preserves the group, and the edge counts differ
        let h = g.complement();
        assert!(is_rigid(&h, &Budget::default()).unwrap());
        assert!(are_isomorphic(&g, &h, &Budget::default()).unwrap().is_none());
        let r = check_bound_chain(&g, &h, &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["D_conormal"], ReportValue::Int(1));
        assert_eq!(r.computed["lower_bound"], ReportValue::Int(1));
    }

    #[test]
    fn cartesian_equality_examples() {
        let r = check_cartesian_equality(&Graph::path(4), &Graph::cycle(5), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["D_conormal"], ReportValue::Int(2));
        assert_eq!(r.computed["D_cartesian"], ReportValue::Int(2));

        // the star has false twins, so the claim does not apply
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = check_cartesian_equality(&star, &Graph::path(4), &cfg());
        assert_eq!(r.verdict, Verdict::SkippedHypotheses);
    }

    #[test]
    fn product_lemma_examples() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        for r in check_product_lemmas(&star, &Graph::path(3)) {
            assert_eq!(r.verdict, Verdict::Holds);
        }
        let r = check_dominating_lemma(&Graph::complete(3), &Graph::complete(3));
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["dominating_vertices"], ReportValue::Int(9));
        let r = check_neighborhood_lemma(&Graph::path(4), &Graph::path(5));
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["equal_neighborhood_pairs"], ReportValue::Int(0));
    }

    #[test]
    fn group_theorem_examples() {
        let r = check_factorization(&Graph::path(4), &Graph::cycle(5), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["factorizes"], ReportValue::Bool(true));

        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = check_factorization(&star, &Graph::path(4), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["factorizes"], ReportValue::Bool(false));

        let rigid =
            Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 3), (1, 4)]).unwrap();
        let r = check_rigid_pair(&rigid, &rigid, &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["aut_product"], ReportValue::Int(2));

        let other = rigid.complement();
        let r = check_rigid_iff(&rigid, &other, &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["product_rigid"], ReportValue::Bool(true));

        let r = check_rigid_iff(&Graph::complete(2), &Graph::complete(2), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["product_rigid"], ReportValue::Bool(false));
    }

    #[test]
    fn product_maps_hold_on_small_pairs() {
        let r = check_product_maps(&Graph::path(4), &Graph::path(3), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        // isomorphic factors also exercise the exchange map
        let r = check_product_maps(&Graph::path(3), &Graph::path(3), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["exchange_map_is_automorphism"], ReportValue::Bool(true));
    }

    #[test]
    fn complete_factor_examples() {
        let k2 = Graph::complete(2);
        let r = check_complete_factor(&k2, &k2, &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["Dprime"], ReportValue::Int(3));

        let r = check_complete_factor(&Graph::path(3), &k2, &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["Dprime"], ReportValue::Int(2));

        let r = check_complete_factor(&Graph::path(3), &Graph::path(3), &cfg());
        assert_eq!(r.verdict, Verdict::SkippedHypotheses);
    }

    #[test]
    fn path_cycle_examples() {
        let r = check_path_cycle_products(&Graph::cycle(3), &Graph::cycle(3), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["Dprime"], ReportValue::Int(2));

        let r = check_path_cycle_products(&Graph::path(2), &Graph::path(2), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["Dprime"], ReportValue::Int(3));

        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = check_path_cycle_products(&star, &Graph::path(3), &cfg());
        assert_eq!(r.verdict, Verdict::SkippedHypotheses);
    }

    #[test]
    fn spanning_lemma_examples() {
        // C5 spanned by P5 along the cycle
        let c5 = Graph::cycle(5);
        let p5_along = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let r = check_spanning_bound(&c5, &p5_along, &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.computed["Dprime_host"], ReportValue::Int(3));
        assert_eq!(r.computed["Dprime_subgraph"], ReportValue::Int(2));

        // K4 spanned by P4: 3 <= 2 + 1
        let p4_in_k4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = check_spanning_bound(&Graph::complete(4), &p4_in_k4, &cfg());
        assert_eq!(r.verdict, Verdict::Holds);

        // rotation of C4 is not an automorphism of the spanning path
        let c4 = Graph::cycle(4);
        let p4_along = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = check_subgroup_lift(&c4, &p4_along, &cfg());
        assert_eq!(r.verdict, Verdict::SkippedHypotheses);
    }

    #[test]
    fn traceable_examples() {
        let r = check_traceable_bound(&Graph::path(7), &cfg());
        assert_eq!(r.verdict, Verdict::Holds);
        let r = check_traceable_bound(&Graph::path(5), &cfg());
        assert_eq!(r.verdict, Verdict::SkippedHypotheses);
    }

    #[test]
    fn power_claims_skip_on_unmet_hypotheses() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = check_power_number(&star, 3, &cfg());
        assert_eq!(r.verdict, Verdict::SkippedHypotheses);
        let r = check_power_number(&Graph::path(4), 1, &cfg());
        assert_eq!(r.verdict, Verdict::SkippedHypotheses);
    }

    #[test]
    fn unknown_claim_is_an_error() {
        let g = Graph::path(3);
        assert!(matches!(
            run_claim("bogus-id", ClaimInstance::Single(&g), &cfg()),
            Err(CheckError::UnknownClaim(_))
        ));
        assert!(matches!(
            run_claim("thm-2.2-bounds", ClaimInstance::Single(&g), &cfg()),
            Err(CheckError::InstanceMismatch { .. })
        ));
    }

    #[test]
    fn family_values_hold() {
        let reports = check_family_values(&cfg());
        assert_eq!(reports.len(), 6 + 8 + 4);
        for r in &reports {
            assert_eq!(r.verdict, Verdict::Holds, "instance {:?}", r.instance);
        }
    }
}

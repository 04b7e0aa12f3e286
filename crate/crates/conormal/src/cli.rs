//! Command-line surface: single computations, product construction, claim
//! verification, and census runs, with machine-readable output.
//!
//! Exit codes: 0 success (or all checks hold), 1 at least one violated
//! check, 2 input error, 3 budget or timeout, 4 undefined quantity.
//!
//! In `--output records` mode every result is one JSON object per line
//! with sorted keys; reruns with identical configuration are byte-identical
//! except for the `elapsed_ms` timing field.

use crate::census::{graphs_up_to, resolve_claim_filter, run_census, CensusError};
use crate::checks::{run_claim, CheckConfig, CheckError, CheckReport, ClaimInstance, ClaimKind, Verdict, CLAIMS};
use crate::distinguishing::{
    distinguishing_index, distinguishing_number, is_traceable, DistinguishingError,
    DistinguishingResult, SolveMode,
};
use crate::graph::{Graph, GraphError};
use crate::graph6::{from_edge_list, from_graph6, to_edge_list, to_graph6, FormatError};
use crate::products::{cartesian, conormal};
use crate::symmetry::{automorphisms, is_rigid, SymmetryError};
use crate::{Budget, DEFAULT_NODE_LIMIT, DEFAULT_RETRY_LIMIT};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::io::Read;
use std::time::{Duration, Instant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_UNDEFINED: i32 = 4;

/// Solver and output configuration attached to every run.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub mode: SolveMode,
    pub seed: u64,
    pub node_budget: u64,
    pub retry_budget: u32,
    pub timeout_seconds: u64,
    pub output: OutputFormat,
}

impl RunConfig {
    /// Budget snapshot; the deadline starts counting now.
    pub fn budget(&self) -> Budget {
        Budget {
            node_limit: self.node_budget,
            retry_limit: self.retry_budget,
            deadline: (self.timeout_seconds > 0)
                .then(|| Instant::now() + Duration::from_secs(self.timeout_seconds)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Records,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Certificate,
}

impl From<ModeArg> for SolveMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => SolveMode::Exact,
            ModeArg::Certificate => SolveMode::Certificate,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WhatArg {
    Aut,
    #[value(name = "D", alias = "d")]
    Number,
    #[value(name = "Dprime", alias = "dprime")]
    Index,
    Predicates,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Conormal,
    Cartesian,
}

#[derive(Parser)]
#[command(
    name = "conormal",
    about = "Automorphism groups, distinguishing numbers/indices, graph products, and claim censuses",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Solver mode for D and D'
    #[arg(long, global = true, value_enum, default_value = "exact")]
    mode: Option<ModeArg>,

    /// Seed for randomized certificate searches (recorded in records)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Node limit for backtracking searches
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_LIMIT)]
    node_budget: u64,

    /// Retry limit per label count in certificate mode
    #[arg(long, global = true, default_value_t = DEFAULT_RETRY_LIMIT)]
    retries: u32,

    /// Wall-clock limit in seconds (0 disables)
    #[arg(long, global = true, default_value_t = 0)]
    timeout: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value = "human")]
    output: Option<OutputFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a quantity of one graph (graph6/edge-list literal, file, or '-')
    Compute {
        #[arg(value_enum)]
        what: WhatArg,
        /// Input graph; stdin when omitted
        input: Option<String>,
        /// Include the full automorphism list in `aut` records
        #[arg(long)]
        dump_elements: bool,
    },
    /// Construct a product and print it (graph6, or edge list above 62 vertices)
    Product {
        #[arg(value_enum)]
        kind: KindArg,
        /// Iterate the product k times on a single input
        #[arg(long)]
        power: Option<usize>,
        left: String,
        right: Option<String>,
    },
    /// Run claim verifiers on explicit inputs or over a corpus
    Verify {
        /// Claim id or `all` (see `verify --claim list`)
        #[arg(long)]
        claim: String,
        /// Corpus: a graph6 file path or `gen:n=K[,connected]`
        #[arg(long)]
        corpus: Option<String>,
        /// Exponent for power claims
        #[arg(long, default_value_t = 3)]
        power: usize,
        /// Explicit instance graphs (count depends on the claim)
        inputs: Vec<String>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<SymmetryError> for Failure {
    fn from(e: SymmetryError) -> Self {
        let code = match e {
            SymmetryError::BudgetExceeded { .. } | SymmetryError::Timeout => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<DistinguishingError> for Failure {
    fn from(e: DistinguishingError) -> Self {
        let code = match &e {
            DistinguishingError::NoEdges | DistinguishingError::NonFaithfulEdgeAction => {
                EXIT_UNDEFINED
            }
            DistinguishingError::SolveBudget { .. }
            | DistinguishingError::SolveTimeout
            | DistinguishingError::TraceabilityBudget { .. } => EXIT_BUDGET,
            DistinguishingError::Symmetry(inner) => return Failure::from(inner.clone()),
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Check(inner) => inner.into(),
            other => Failure::input(other.to_string()),
        }
    }
}

/// Parses arguments from the process environment and runs; returns the
/// process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = RunConfig {
        mode: cli.mode.unwrap_or(ModeArg::Exact).into(),
        seed: cli.seed,
        node_budget: cli.node_budget,
        retry_budget: cli.retries,
        timeout_seconds: cli.timeout,
        output: cli.output.unwrap_or(OutputFormat::Human),
    };
    if config.node_budget == 0 || config.retry_budget == 0 {
        eprintln!("error: budgets must be positive");
        return EXIT_INPUT;
    }
    let outcome = match cli.command {
        Command::Compute { what, input, dump_elements } => {
            cmd_compute(what, input.as_deref(), dump_elements, &config)
        }
        Command::Product { kind, power, left, right } => {
            cmd_product(kind, power, &left, right.as_deref(), &config)
        }
        Command::Verify { claim, corpus, power, inputs } => {
            cmd_verify(&claim, corpus.as_deref(), power, &inputs, &config)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

// ---------------------------------------------------------------------------
// input handling
// ---------------------------------------------------------------------------

fn read_input_text(arg: Option<&str>) -> Result<String, Failure> {
    match arg {
        None | Some("-") => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
        Some(s) if std::path::Path::new(s).is_file() => Ok(std::fs::read_to_string(s)?),
        Some(s) => Ok(s.to_string()),
    }
}

/// graph6 unless the first non-space character is a digit, which graph6
/// cannot produce; then the `n m` edge-list format.
fn parse_graph_text(text: &str) -> Result<Graph, Failure> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Failure::input("empty graph input"));
    }
    if trimmed.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        Ok(from_edge_list(trimmed)?)
    } else {
        let first = trimmed.lines().next().unwrap_or_default().trim();
        Ok(from_graph6(first)?)
    }
}

fn load_graph(arg: Option<&str>) -> Result<Graph, Failure> {
    parse_graph_text(&read_input_text(arg)?)
}

fn load_corpus(spec: &str) -> Result<Vec<Graph>, Failure> {
    if let Some(params) = spec.strip_prefix("gen:") {
        let mut n: Option<usize> = None;
        let mut connected = false;
        for token in params.split(',') {
            if let Some(v) = token.strip_prefix("n=") {
                n = v.parse().ok();
            } else if token == "connected" {
                connected = true;
            } else {
                return Err(Failure::input(format!("unknown corpus token {token:?}")));
            }
        }
        let n = n.ok_or_else(|| Failure::input("corpus spec needs n=K"))?;
        Ok(graphs_up_to(n, connected)?)
    } else {
        let text = std::fs::read_to_string(spec)?;
        let mut graphs = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            graphs.push(from_graph6(line)?);
        }
        if graphs.is_empty() {
            return Err(Failure::input(format!("corpus file {spec} contains no graphs")));
        }
        Ok(graphs)
    }
}

// ---------------------------------------------------------------------------
// record output
// ---------------------------------------------------------------------------

fn graph_meta(g: &Graph) -> Value {
    json!({ "order": g.order(), "size": g.size(), "graph6": to_graph6(g) })
}

fn emit_record(mut record: Map<String, Value>, config: &RunConfig, start: Instant) {
    record.insert("seed".to_string(), json!(config.seed));
    record.insert(
        "mode".to_string(),
        json!(match config.mode {
            SolveMode::Exact => "exact",
            SolveMode::Certificate => "certificate",
        }),
    );
    record.insert("elapsed_ms".to_string(), json!(start.elapsed().as_millis() as u64));
    println!("{}", Value::Object(record));
}

fn result_record(what: &str, g: &Graph, r: &DistinguishingResult) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".to_string(), json!("compute"));
    m.insert("what".to_string(), json!(what));
    m.insert("graph".to_string(), graph_meta(g));
    m.insert("value".to_string(), json!(r.value));
    m.insert("exact".to_string(), json!(r.exact));
    m.insert(
        "lower_bound_basis".to_string(),
        serde_json::to_value(r.lower_bound_basis).expect("serializable"),
    );
    m.insert("witness".to_string(), serde_json::to_value(&r.witness).expect("serializable"));
    m
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

fn cmd_compute(
    what: WhatArg,
    input: Option<&str>,
    dump_elements: bool,
    config: &RunConfig,
) -> Result<i32, Failure> {
    let g = load_graph(input)?;
    let start = Instant::now();
    let budget = config.budget();
    match what {
        WhatArg::Aut => {
            let group = automorphisms(&g, &budget)?;
            if config.output == OutputFormat::Records {
                let mut m = Map::new();
                m.insert("command".to_string(), json!("compute"));
                m.insert("what".to_string(), json!("aut"));
                m.insert("graph".to_string(), graph_meta(&g));
                m.insert("group_order".to_string(), json!(group.order()));
                if dump_elements {
                    let elements: Vec<&[usize]> =
                        group.elements().iter().map(|p| p.image()).collect();
                    m.insert("elements".to_string(), json!(elements));
                }
                emit_record(m, config, start);
            } else {
                println!("graph: n={} m={}", g.order(), g.size());
                println!("automorphism group order: {}", group.order());
                if dump_elements {
                    for p in group.elements() {
                        println!("  {p:?}");
                    }
                }
            }
        }
        WhatArg::Number | WhatArg::Index => {
            let (name, result) = match what {
                WhatArg::Number => {
                    ("D", distinguishing_number(&g, config.mode, config.seed, &budget)?)
                }
                _ => ("Dprime", distinguishing_index(&g, config.mode, config.seed, &budget)?),
            };
            if config.output == OutputFormat::Records {
                emit_record(result_record(name, &g, &result), config, start);
            } else {
                let exactness = if result.exact { "exact" } else { "upper bound" };
                println!("graph: n={} m={}", g.order(), g.size());
                println!("{name} = {} ({exactness})", result.value);
                println!("witness: {:?}", result.witness);
            }
        }
        WhatArg::Predicates => {
            let rigid = is_rigid(&g, &budget)?;
            let traceable = is_traceable(&g)?;
            let dominating = g.dominating_vertices();
            if config.output == OutputFormat::Records {
                let mut m = Map::new();
                m.insert("command".to_string(), json!("compute"));
                m.insert("what".to_string(), json!("predicates"));
                m.insert("graph".to_string(), graph_meta(&g));
                m.insert("rigid".to_string(), json!(rigid));
                m.insert("has_false_twins".to_string(), json!(g.has_false_twins()));
                m.insert("dominating_vertices".to_string(), json!(dominating));
                m.insert("connected".to_string(), json!(g.is_connected()));
                m.insert("traceable".to_string(), json!(traceable));
                emit_record(m, config, start);
            } else {
                println!("graph: n={} m={}", g.order(), g.size());
                println!("rigid: {rigid}");
                println!("false twins: {}", g.has_false_twins());
                println!("dominating vertices: {dominating:?}");
                println!("connected: {}", g.is_connected());
                println!("traceable: {traceable}");
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_product(
    kind: KindArg,
    power: Option<usize>,
    left: &str,
    right: Option<&str>,
    _config: &RunConfig,
) -> Result<i32, Failure> {
    let apply = |a: &Graph, b: &Graph| match kind {
        KindArg::Conormal => conormal(a, b),
        KindArg::Cartesian => cartesian(a, b),
    };
    let lg = load_graph(Some(left))?;
    let result = match power {
        Some(0) => return Err(Failure::input("power must be at least 1")),
        Some(k) => {
            if right.is_some() {
                return Err(Failure::input("--power takes a single input graph"));
            }
            let mut acc = lg.clone();
            for _ in 1..k {
                acc = apply(&acc, &lg);
            }
            acc
        }
        None => {
            let rg = load_graph(Some(
                right.ok_or_else(|| Failure::input("product needs two input graphs"))?,
            ))?;
            apply(&lg, &rg)
        }
    };
    if result.order() <= 62 {
        println!("{}", to_graph6(&result));
    } else {
        eprintln!(
            "note: {} vertices exceed the graph6 single-byte order range; emitting edge list",
            result.order()
        );
        print!("{}", to_edge_list(&result));
    }
    Ok(EXIT_OK)
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "violated",
        Verdict::SkippedHypotheses => "skipped-hypotheses",
        Verdict::SkippedBudget => "skipped-budget",
    }
}

fn emit_report(report: &CheckReport, config: &RunConfig, start: Instant) {
    if config.output == OutputFormat::Records {
        let value = serde_json::to_value(report).expect("serializable");
        let Value::Object(mut m) = value else { unreachable!("reports are objects") };
        m.insert("command".to_string(), json!("verify"));
        emit_record(m, config, start);
    } else {
        let mut line = format!("[{}] {}", verdict_name(report.verdict), report.claim);
        for (k, v) in &report.instance {
            line.push_str(&format!(" {k}={v}"));
        }
        if !report.computed.is_empty() {
            let computed: Vec<String> = report
                .computed
                .iter()
                .map(|(k, v)| format!("{k}={}", serde_json::to_string(v).expect("serializable")))
                .collect();
            line.push_str(&format!("  [{}]", computed.join(" ")));
        }
        if let Some(reason) = &report.reason {
            line.push_str(&format!("  ({reason})"));
        }
        println!("{line}");
    }
}

fn cmd_verify(
    claim: &str,
    corpus: Option<&str>,
    power_k: usize,
    inputs: &[String],
    config: &RunConfig,
) -> Result<i32, Failure> {
    if claim == "list" {
        for info in CLAIMS {
            println!("{:28} {}", info.id, info.statement);
        }
        return Ok(EXIT_OK);
    }
    let ids = resolve_claim_filter(claim)?;
    let cfg = CheckConfig { mode: config.mode, seed: config.seed, budget: config.budget() };
    let start = Instant::now();

    let reports: Vec<CheckReport> = if !inputs.is_empty() {
        let graphs: Vec<Graph> =
            inputs.iter().map(|s| load_graph(Some(s))).collect::<Result<_, _>>()?;
        let mut out = Vec::new();
        let mut matched = false;
        for id in &ids {
            let info = crate::checks::claim_info(id).expect("resolved ids are registered");
            let instance = match (info.kind, graphs.len()) {
                (ClaimKind::Single, 1) => ClaimInstance::Single(&graphs[0]),
                (ClaimKind::Power, 1) => ClaimInstance::Power(&graphs[0], power_k),
                (ClaimKind::Pair, 2) => ClaimInstance::Pair(&graphs[0], &graphs[1]),
                (ClaimKind::Family, _) => ClaimInstance::Family,
                _ => continue,
            };
            matched = true;
            out.extend(run_claim(id, instance, &cfg)?);
        }
        if !matched {
            return Err(Failure::input(format!(
                "no selected claim accepts {} input graph(s)",
                graphs.len()
            )));
        }
        out
    } else if let Some(spec) = corpus {
        let corpus = load_corpus(spec)?;
        let outcome = run_census(&corpus, &ids, power_k, &cfg)?;
        outcome.reports
    } else {
        // without inputs or corpus only self-contained claims can run
        let runnable: Vec<&str> = ids
            .iter()
            .copied()
            .filter(|id| {
                crate::checks::claim_info(id).map(|i| i.kind) == Some(ClaimKind::Family)
            })
            .collect();
        if runnable.is_empty() {
            return Err(Failure::input(
                "this claim needs input graphs or --corpus <file|gen:n=K[,connected]>",
            ));
        }
        let mut out = Vec::new();
        for id in runnable {
            out.extend(run_claim(id, ClaimInstance::Family, &cfg)?);
        }
        out
    };

    let mut violated = 0usize;
    let mut holds = 0usize;
    let mut skipped_hyp = 0usize;
    let mut skipped_budget = 0usize;
    for report in &reports {
        emit_report(report, config, start);
        match report.verdict {
            Verdict::Holds => holds += 1,
            Verdict::Violated => violated += 1,
            Verdict::SkippedHypotheses => skipped_hyp += 1,
            Verdict::SkippedBudget => skipped_budget += 1,
        }
    }
    if config.output == OutputFormat::Records {
        let mut m = Map::new();
        m.insert("command".to_string(), json!("verify-summary"));
        m.insert("total".to_string(), json!(reports.len()));
        m.insert("holds".to_string(), json!(holds));
        m.insert("violated".to_string(), json!(violated));
        m.insert("skipped_hypotheses".to_string(), json!(skipped_hyp));
        m.insert("skipped_budget".to_string(), json!(skipped_budget));
        emit_record(m, config, start);
    } else {
        println!(
            "checks: {} total, {holds} hold, {violated} violated, {skipped_hyp} skipped (hypotheses), {skipped_budget} skipped (budget)",
            reports.len()
        );
    }
    Ok(if violated > 0 { EXIT_VIOLATION } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_text_sniffing() {
        assert_eq!(parse_graph_text("C~").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph_text("3 2\n0 1\n1 2\n").unwrap(), Graph::path(3));
        assert_eq!(parse_graph_text(">>graph6<<C~\n").unwrap(), Graph::complete(4));
        assert!(parse_graph_text("").is_err());
        assert!(parse_graph_text("\u{7}bad").is_err());
    }

    #[test]
    fn corpus_specs() {
        assert_eq!(load_corpus("gen:n=2").unwrap().len(), 3);
        assert_eq!(load_corpus("gen:n=3,connected").unwrap().len(), 6);
        assert!(load_corpus("gen:connected").is_err());
        assert!(load_corpus("gen:n=2,bogus").is_err());
    }

    #[test]
    fn failure_codes() {
        let f: Failure = FormatError::Empty.into();
        assert_eq!(f.code, EXIT_INPUT);
        let f: Failure = DistinguishingError::NonFaithfulEdgeAction.into();
        assert_eq!(f.code, EXIT_UNDEFINED);
        let f: Failure =
            DistinguishingError::SolveBudget { limit: 1, explored: 2, lower_bound: 2 }.into();
        assert_eq!(f.code, EXIT_BUDGET);
        let f: Failure = SymmetryError::BudgetExceeded { limit: 1, explored: 2 }.into();
        assert_eq!(f.code, EXIT_BUDGET);
        let f: Failure = DistinguishingError::Symmetry(SymmetryError::Timeout).into();
        assert_eq!(f.code, EXIT_BUDGET);
        let f: Failure = CheckError::UnknownClaim("x".into()).into();
        assert_eq!(f.code, EXIT_INPUT);
    }
}

//! `rigidbar`: rigidity and sparsity checks for looped graphs.
//!
//! Every randomized verdict is reported together with its one-sided error
//! bound, and every run echoes the seed it used, so reports are replayable.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use rigidbar_core::algebra::{PrimeField, RandomSource, DEFAULT_PRIME};
use rigidbar_core::characterisation::{
    combinatorial_independent, combinatorial_rigid, conjecture_instance_check_with, Witness,
};
use rigidbar_core::generators::{one_extension_chain, random_looped_graph, zero_extension_chain};
use rigidbar_core::graph::{ElementId, LoopedGraph};
use rigidbar_core::rigidity::{
    find_circuit_with, generic_rank_estimate, motion_space, random_rational_realisation,
    RankOptions,
};
use rigidbar_core::sparsity::{has_tight_spanning_subgraph, is_tight, pebble_game, SparsityParams};

const EXIT_INPUT_ERROR: u8 = 1;
const EXIT_DISAGREEMENT: u8 = 2;
const EXIT_INAPPLICABLE: u8 = 3;

/// Integer coordinate range for exact rational realisations.
const COORDINATE_BOUND: i64 = 1_000_000;

#[derive(Parser)]
#[command(name = "rigidbar", version, about = "Rigidity and sparsity checks for looped graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide independence and rigidity of a graph in dimension d
    Check(CheckArgs),
    /// Run the pebble game: sparsity verdict, matroid rank and certificates
    Sparsity(SparsityArgs),
    /// Print the motion space at a random exact realisation
    Motions(MotionsArgs),
    /// Extract a minimal dependent element set, or report independence
    Circuit(CircuitArgs),
    /// Cross-validate rigidity of loop-augmented graphs against t-tight
    /// spanning subgraphs on a stream of random instances
    Sweep(SweepArgs),
    /// Generate instance files: random graphs or extension chains
    Gen(GenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Algebraic,
    Combinatorial,
    Both,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::Algebraic => "algebraic",
            Mode::Combinatorial => "combinatorial",
            Mode::Both => "both",
        }
    }
}

#[derive(clap::Args)]
struct CheckArgs {
    /// Graph JSON file
    graph: PathBuf,
    /// Ambient dimension
    #[arg(long)]
    d: usize,
    /// Which route to run; `both` cross-validates and exits 2 on mismatch
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    mode: Mode,
    /// RNG seed (falls back to RIGIDBAR_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Independent random evaluations for the rank estimate
    #[arg(long, default_value_t = 3)]
    trials: u32,
    /// Prime modulus for randomized rank computations
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Echo rank diagnostics to stderr
    #[arg(long)]
    verbose: bool,
}

#[derive(clap::Args)]
struct SparsityArgs {
    /// Graph JSON file
    graph: PathBuf,
    /// Count parameter: every vertex set X may induce at most k|X| elements
    #[arg(long)]
    k: usize,
    /// RNG seed, echoed in the report for uniformity (sparsity is exact)
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(clap::Args)]
struct MotionsArgs {
    /// Graph JSON file
    graph: PathBuf,
    /// Ambient dimension
    #[arg(long)]
    d: usize,
    /// RNG seed (falls back to RIGIDBAR_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(clap::Args)]
struct CircuitArgs {
    /// Graph JSON file
    graph: PathBuf,
    /// Ambient dimension
    #[arg(long)]
    d: usize,
    /// RNG seed (falls back to RIGIDBAR_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Independent random evaluations per rank estimate
    #[arg(long, default_value_t = 3)]
    trials: u32,
    /// Prime modulus for randomized rank computations
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Loops added per vertex are d - t; tight subgraphs are t-tight
    #[arg(long)]
    t: usize,
    /// Ambient dimension
    #[arg(long)]
    d: usize,
    /// Number of random instances
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Largest vertex count for generated instances
    #[arg(long, default_value_t = 8)]
    max_vertices: usize,
    /// RNG seed (falls back to RIGIDBAR_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Independent random evaluations per rank estimate
    #[arg(long, default_value_t = 3)]
    trials: u32,
    /// Prime modulus for randomized rank computations
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Sweep even when d < 2t - 1, where the two routes are not known to
    /// agree; mismatches are then annotated, not treated as failures
    #[arg(long)]
    allow_open_range: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Random,
    ZeroExtChain,
    OneExtChain,
}

#[derive(clap::Args)]
struct GenArgs {
    /// What to generate
    #[arg(long, value_enum)]
    kind: GenKind,
    /// Exact number of vertices
    #[arg(long)]
    vertices: usize,
    /// Loops per generated vertex (chains: appended to each fresh vertex)
    #[arg(long, default_value_t = 0)]
    loops_per_vertex: usize,
    /// Ambient dimension steering extension chains; ignored for `random`
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// RNG seed (falls back to RIGIDBAR_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct AlgebraicSection {
    rank: usize,
    row_count: usize,
    column_count: usize,
    independent: bool,
    rigid: bool,
    trials_used: u32,
    error_bound: f64,
}

#[derive(Serialize)]
struct CombinatorialSection {
    applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    independent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rigid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    independence_witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rigidity_witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct CheckReport {
    command: &'static str,
    input_digest: String,
    seed: u64,
    d: usize,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    algebraic: Option<AlgebraicSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    combinatorial: Option<CombinatorialSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
    wall_time_ms: u64,
}

#[derive(Serialize)]
struct SparsityReport {
    command: &'static str,
    input_digest: String,
    seed: u64,
    k: usize,
    is_sparse: bool,
    matroid_rank: usize,
    is_tight: bool,
    violation: Option<Vec<usize>>,
    tight_spanning_subgraph: Option<serde_json::Value>,
    wall_time_ms: u64,
}

#[derive(Serialize)]
struct MotionsReport {
    command: &'static str,
    input_digest: String,
    seed: u64,
    d: usize,
    coordinate_bound: i64,
    points: Vec<Vec<String>>,
    normals: Vec<Vec<String>>,
    dimension: usize,
    basis: Vec<Vec<Vec<String>>>,
    wall_time_ms: u64,
}

#[derive(Serialize)]
struct CircuitReport {
    command: &'static str,
    input_digest: String,
    seed: u64,
    d: usize,
    trials: u32,
    prime: u64,
    independent: bool,
    circuit: Option<Vec<ElementId>>,
    pivot: Option<ElementId>,
    error_bound: f64,
    wall_time_ms: u64,
}

#[derive(Serialize)]
struct SweepLine {
    index: usize,
    vertices: usize,
    edges: usize,
    loops: usize,
    algebraic: bool,
    combinatorial: bool,
    agree: bool,
    error_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

#[derive(Serialize)]
struct SweepSummary {
    command: &'static str,
    t: usize,
    d: usize,
    count: usize,
    max_vertices: usize,
    seed: u64,
    trials: u32,
    prime: u64,
    open_range: bool,
    agreements: usize,
    disagreements: usize,
    max_error_bound: f64,
    wall_time_ms: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    };
    let outcome = match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Sparsity(args) => cmd_sparsity(args),
        Command::Motions(args) => cmd_motions(args),
        Command::Circuit(args) => cmd_circuit(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Gen(args) => cmd_gen(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("RIGIDBAR_SEED") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| anyhow!("RIGIDBAR_SEED is not a valid u64 seed: {text:?}")),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(std::env::VarError::NotUnicode(_)) => bail!("RIGIDBAR_SEED is not valid unicode"),
    }
}

fn read_graph(path: &Path) -> Result<(LoopedGraph, String)> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let text = std::str::from_utf8(&bytes)
        .with_context(|| format!("{} is not UTF-8", path.display()))?;
    let g = LoopedGraph::from_json_str(text)
        .with_context(|| format!("{} is not a valid graph", path.display()))?;
    let mut digest = String::with_capacity(71);
    digest.push_str("sha256:");
    for byte in Sha256::digest(&bytes) {
        digest.push_str(&format!("{byte:02x}"));
    }
    Ok((g, digest))
}

fn rank_options(trials: u32, prime: u64) -> Result<RankOptions> {
    if trials == 0 {
        bail!("--trials must be at least 1");
    }
    let field = PrimeField::new(prime).map_err(|e| anyhow!("--prime {prime}: {e}"))?;
    Ok(RankOptions { trials, field })
}

fn emit<T: Serialize>(report: &T) -> Result<()> {
    println!("{}", serde_json::to_string(report).context("report serialization")?);
    Ok(())
}

fn witness_value(w: &Witness) -> serde_json::Value {
    match w {
        Witness::SparsityViolation(x) => {
            serde_json::json!({"kind": "sparsity_violation", "vertices": x.members()})
        }
        Witness::CliqueFound(x) => serde_json::json!({"kind": "clique", "vertices": x.members()}),
        Witness::TightSubgraph(h) => serde_json::json!({"kind": "tight_subgraph", "graph": h}),
    }
}

fn cmd_check(args: CheckArgs) -> Result<u8> {
    let start = Instant::now();
    let (g, input_digest) = read_graph(&args.graph)?;
    if args.d == 0 {
        bail!("--d must be at least 1");
    }
    if args.mode != Mode::Algebraic && args.d < 2 {
        bail!("the combinatorial route requires --d at least 2; use --mode algebraic for d = 1");
    }
    let seed = resolve_seed(args.seed)?;
    let mut rs = RandomSource::from_seed(seed);
    let rows = g.element_count();
    let cols = args.d * g.vertex_count();

    let mut algebraic = None;
    let mut trials = None;
    let mut prime = None;
    if args.mode != Mode::Combinatorial {
        let opts = rank_options(args.trials, args.prime)?;
        let est = generic_rank_estimate(&g, args.d, &mut rs, &opts);
        if args.verbose {
            eprintln!(
                "rank {} (rows {rows}, columns {cols}) after {} trials, error bound {:.3e}",
                est.rank, est.trials, est.failure_bound
            );
        }
        algebraic = Some(AlgebraicSection {
            rank: est.rank,
            row_count: rows,
            column_count: cols,
            independent: est.rank == rows,
            rigid: est.rank == cols,
            trials_used: est.trials,
            error_bound: est.failure_bound,
        });
        trials = Some(args.trials);
        prime = Some(args.prime);
    }

    let mut combinatorial = None;
    if args.mode != Mode::Algebraic {
        let ci = combinatorial_independent(&g, args.d)?;
        if ci.hypothesis_ok {
            let cr = combinatorial_rigid(&g, args.d)?;
            combinatorial = Some(CombinatorialSection {
                applicable: true,
                independent: ci.verdict,
                rigid: cr.verdict,
                independence_witness: ci.witness.as_ref().map(witness_value),
                rigidity_witness: cr.witness.as_ref().map(witness_value),
                note: None,
            });
        } else {
            combinatorial = Some(CombinatorialSection {
                applicable: false,
                independent: None,
                rigid: None,
                independence_witness: None,
                rigidity_witness: None,
                note: Some(format!(
                    "inapplicable: some vertex has fewer than {} loop(s)",
                    args.d / 2
                )),
            });
        }
    }

    let agree = match (&algebraic, &combinatorial) {
        (Some(a), Some(c)) if c.applicable => {
            Some(c.independent == Some(a.independent) && c.rigid == Some(a.rigid))
        }
        _ => None,
    };
    let inapplicable =
        args.mode == Mode::Combinatorial && combinatorial.as_ref().is_some_and(|c| !c.applicable);

    emit(&CheckReport {
        command: "check",
        input_digest,
        seed,
        d: args.d,
        mode: args.mode.as_str(),
        trials,
        prime,
        algebraic,
        combinatorial,
        agree,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })?;

    if inapplicable {
        Ok(EXIT_INAPPLICABLE)
    } else if agree == Some(false) {
        Ok(EXIT_DISAGREEMENT)
    } else {
        Ok(0)
    }
}

fn cmd_sparsity(args: SparsityArgs) -> Result<u8> {
    let start = Instant::now();
    let (g, input_digest) = read_graph(&args.graph)?;
    let params = SparsityParams::new(args.k).map_err(|e| anyhow!("--k {}: {e}", args.k))?;
    let seed = resolve_seed(args.seed)?;
    let verdict = pebble_game(&g, &params);
    let tight_spanning = has_tight_spanning_subgraph(&g, &params)
        .map(|h| serde_json::to_value(&h).expect("graph serializes"));
    emit(&SparsityReport {
        command: "sparsity",
        input_digest,
        seed,
        k: args.k,
        is_sparse: verdict.is_sparse,
        matroid_rank: verdict.matroid_rank,
        is_tight: is_tight(&g, &params),
        violation: verdict.violation.map(|x| x.members().to_vec()),
        tight_spanning_subgraph: tight_spanning,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })?;
    Ok(0)
}

fn cmd_motions(args: MotionsArgs) -> Result<u8> {
    let start = Instant::now();
    let (g, input_digest) = read_graph(&args.graph)?;
    if args.d == 0 {
        bail!("--d must be at least 1");
    }
    let seed = resolve_seed(args.seed)?;
    let mut rs = RandomSource::from_seed(seed);
    let r = random_rational_realisation(&g, args.d, COORDINATE_BOUND, &mut rs);
    let motions = motion_space(&g, &r)?;
    fn strings<Q: ToString>(xs: &[Q]) -> Vec<String> {
        xs.iter().map(|q| q.to_string()).collect()
    }
    emit(&MotionsReport {
        command: "motions",
        input_digest,
        seed,
        d: args.d,
        coordinate_bound: COORDINATE_BOUND,
        points: (0..g.vertex_count()).map(|v| strings(r.point(v))).collect(),
        normals: (0..g.loop_count()).map(|l| strings(r.normal(l))).collect(),
        dimension: motions.len(),
        basis: motions
            .iter()
            .map(|m| m.velocities().iter().map(|vel| strings(vel)).collect())
            .collect(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    })?;
    Ok(0)
}

fn cmd_circuit(args: CircuitArgs) -> Result<u8> {
    let start = Instant::now();
    let (g, input_digest) = read_graph(&args.graph)?;
    if args.d == 0 {
        bail!("--d must be at least 1");
    }
    let seed = resolve_seed(args.seed)?;
    let opts = rank_options(args.trials, args.prime)?;
    let mut rs = RandomSource::from_seed(seed);
    let witness = find_circuit_with(&g, args.d, &mut rs, &opts);
    let rows = g.element_count();
    let cap = rows.min(args.d * g.vertex_count());
    // Union bound over every rank estimate the extraction can make: one
    // initial test, then per attempt one scan over elements plus the
    // self-verification of the candidate circuit.
    let per_estimate = (cap as f64 / args.prime as f64).powi(args.trials as i32);
    let error_bound = ((6 * rows + 7) as f64 * per_estimate).min(1.0);
    let (circuit, pivot) = match witness {
        Some(w) => (Some(w.elements), Some(w.pivot)),
        None => (None, None),
    };
    emit(&CircuitReport {
        command: "circuit",
        input_digest,
        seed,
        d: args.d,
        trials: args.trials,
        prime: args.prime,
        independent: circuit.is_none(),
        circuit,
        pivot,
        error_bound,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })?;
    Ok(0)
}

fn cmd_sweep(args: SweepArgs) -> Result<u8> {
    let start = Instant::now();
    if args.t == 0 {
        bail!("--t must be at least 1");
    }
    if args.max_vertices == 0 {
        bail!("--max-vertices must be at least 1");
    }
    let open_range = args.d + 1 < 2 * args.t;
    if open_range && !args.allow_open_range {
        bail!(
            "d = {} is below 2t - 1 = {}; the correspondence is unproved there. \
             Pass --allow-open-range to sweep anyway",
            args.d,
            2 * args.t - 1
        );
    }
    if open_range && args.d < args.t {
        bail!("even with --allow-open-range, d must be at least t to add d - t loops");
    }
    if !open_range && args.d < 2 {
        bail!("--d must be at least 2");
    }
    let seed = resolve_seed(args.seed)?;
    let opts = rank_options(args.trials, args.prime)?;
    let t_params = SparsityParams::new(args.t).expect("t >= 1");
    let mut agreements = 0usize;
    let mut disagreements = 0usize;
    let mut max_error_bound = 0.0f64;
    for index in 0..args.count {
        let mut rs = RandomSource::from_seed(seed.wrapping_add(index as u64));
        let g = random_looped_graph(&mut rs, args.max_vertices, args.t + 1);
        let (algebraic, combinatorial, error_bound) = if open_range {
            let augmented = g.add_uniform_loops(args.d - args.t);
            let est = generic_rank_estimate(&augmented, args.d, &mut rs, &opts);
            let rigid = est.rank == args.d * augmented.vertex_count();
            let tight = has_tight_spanning_subgraph(&g, &t_params).is_some();
            (rigid, tight, est.failure_bound)
        } else {
            let check = conjecture_instance_check_with(&g, args.t, args.d, &mut rs, &opts)?;
            let aug_rows = g.element_count() + (args.d - args.t) * g.vertex_count();
            let cap = aug_rows.min(args.d * g.vertex_count());
            let bound = (cap as f64 / args.prime as f64).powi(args.trials as i32);
            (check.algebraic, check.combinatorial, bound)
        };
        let agree = algebraic == combinatorial;
        if agree {
            agreements += 1;
        } else {
            disagreements += 1;
        }
        max_error_bound = max_error_bound.max(error_bound);
        emit(&SweepLine {
            index,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            loops: g.loop_count(),
            algebraic,
            combinatorial,
            agree,
            error_bound,
            note: (!agree && open_range).then_some("outside proved range"),
        })?;
    }
    emit(&SweepSummary {
        command: "sweep",
        t: args.t,
        d: args.d,
        count: args.count,
        max_vertices: args.max_vertices,
        seed,
        trials: args.trials,
        prime: args.prime,
        open_range,
        agreements,
        disagreements,
        max_error_bound,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })?;
    if disagreements > 0 && !open_range {
        Ok(EXIT_DISAGREEMENT)
    } else {
        Ok(0)
    }
}

fn cmd_gen(args: GenArgs) -> Result<u8> {
    if args.vertices == 0 {
        bail!("--vertices must be at least 1");
    }
    if args.d == 0 {
        bail!("--d must be at least 1");
    }
    let seed = resolve_seed(args.seed)?;
    let mut rs = RandomSource::from_seed(seed);
    let g = match args.kind {
        GenKind::Random => {
            let n = args.vertices;
            let density = rs.uniform_below(101);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rs.uniform_below(100) < density {
                        edges.push((u, v));
                    }
                }
            }
            let loops = (0..n)
                .flat_map(|v| std::iter::repeat_n(v, args.loops_per_vertex))
                .collect();
            LoopedGraph::new(n, edges, loops).expect("generated elements are valid")
        }
        GenKind::ZeroExtChain => {
            if args.vertices < args.d {
                bail!(
                    "a zero-extension chain in dimension {} needs at least {} vertices",
                    args.d,
                    args.d
                );
            }
            zero_extension_chain(&mut rs, args.d, args.vertices, args.loops_per_vertex)
                .context("zero-extension chain")?
        }
        GenKind::OneExtChain => {
            if args.vertices < args.d + 1 {
                bail!(
                    "a one-extension chain in dimension {} needs at least {} vertices",
                    args.d,
                    args.d + 1
                );
            }
            one_extension_chain(&mut rs, args.d, args.vertices, args.loops_per_vertex)
                .context("one-extension chain")?
        }
    };
    let bytes = format!("{}\n", g.to_json_string());
    match args.out {
        Some(path) => fs::write(&path, bytes)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{bytes}"),
    }
    Ok(0)
}

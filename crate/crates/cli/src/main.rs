//! Command-line front end: graph generation, atlas and coefficient tables,
//! motif censuses, spectral moments, detector tables, the consensus
//! simulator and the aggregation-identity verifier.
//!
//! Exit codes: 0 success, 2 usage error, 3 capability error (a request the
//! pipeline cannot serve, e.g. a moment order beyond the radius), 4 input
//! format error, 5 verification failure, 6 disconnected input where
//! connectivity is required.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_moments::{
    build_atlas, build_coefficient_table, build_detector_table, census, distributed_moment,
    moment4_closed_form, moment5_closed_form, parse_edge_list, per_node_triangles, sum_check_from,
    ConsensusConfig, Error, Graph, LocalCensus, MomentVector, Rational,
};
use num::bigint::BigInt;
use num::traits::{ToPrimitive, Zero};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "graph-moments",
    version,
    about = "Spectral moments of undirected graphs from subgraph counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it in edge-list format
    Gen(GenArgs),
    /// Print the catalog of connected graphs with at most k nodes and k edges
    Atlas(AtlasArgs),
    /// Print the closed-walk coefficient table
    Coeffs(CoeffsArgs),
    /// Count motif embeddings in a host graph
    Census(CensusArgs),
    /// Compute spectral moments of a host graph
    Moments(MomentsArgs),
    /// Print detector-set sizes for atlas members
    Detectors(DetectorsArgs),
    /// Simulate decentralized moment aggregation by average consensus
    Distsim(DistsimArgs),
    /// Check the per-motif and moment aggregation identities on a host
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Ring,
    Path,
    Complete,
    Er,
}

#[derive(Args)]
struct GenArgs {
    /// Graph family
    #[arg(value_enum)]
    kind: GenKind,
    /// Node count
    n: usize,
    /// Edge probability, required for `er`
    p: Option<f64>,
    /// PRNG seed for `er` (ChaCha8 stream, platform independent)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AtlasArgs {
    /// Size bound: at most k nodes and k edges
    #[arg(long, default_value_t = 7)]
    k: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Largest walk length to cover
    #[arg(long, default_value_t = 7)]
    k_max: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Tsv,
    Text,
}

#[derive(Args)]
struct CensusArgs {
    /// Host graph in edge-list format
    #[arg(long)]
    input: PathBuf,
    /// Motif size bound (2..=7)
    #[arg(long, default_value_t = 5)]
    k: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Motifs,
    Trace,
    ClosedForm,
    All,
}

#[derive(Args)]
struct MomentsArgs {
    /// Host graph in edge-list format
    #[arg(long)]
    input: PathBuf,
    /// Compute moments m_1..m_k_max
    #[arg(long, default_value_t = 5)]
    k_max: usize,
    /// Computation route; `all` cross-checks every route
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DetectorsArgs {
    /// Atlas bound for the motifs listed
    #[arg(long, default_value_t = 7)]
    k: usize,
    /// Radii to tabulate
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
    radii: Vec<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DistsimArgs {
    /// Host graph in edge-list format
    #[arg(long)]
    input: PathBuf,
    /// Neighborhood radius each node observes
    #[arg(short, long)]
    r: usize,
    /// Moment order to aggregate (at most 2r+1)
    #[arg(short, long)]
    k: usize,
    /// Relative convergence tolerance
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long, default_value_t = 100_000)]
    max_rounds: usize,
    /// Write a per-round value trace to this file
    #[arg(long)]
    trace_out: Option<PathBuf>,
    /// Keep every t-th round in the trace
    #[arg(long, default_value_t = 1)]
    thin: usize,
    /// Write the per-node measurements to this file
    #[arg(long)]
    measurements_out: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Host graph in edge-list format
    #[arg(long)]
    input: PathBuf,
    /// Neighborhood radius each node observes
    #[arg(short, long)]
    r: usize,
    /// Check every moment order up to this (at most 2r+1)
    #[arg(long)]
    k_max: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

enum CliError {
    Core(Error),
    /// A request the pipeline cannot serve at the given bounds.
    Capability(String),
    Input(String),
    Output(String),
    Usage(String),
    /// Verification ran and at least one identity failed.
    VerificationFailed,
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Core(err)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(err) => match err {
                Error::Parse { .. } => 4,
                Error::Capability { .. }
                | Error::CensusTooLarge { .. }
                | Error::CanonBound { .. }
                | Error::MissingCoefficients { .. } => 3,
                Error::Disconnected => 6,
                Error::NodeOutOfRange { .. } | Error::Parameter(_) => 2,
            },
            CliError::Capability(_) => 3,
            CliError::Input(_) => 4,
            CliError::Output(_) => 1,
            CliError::Usage(_) => 2,
            CliError::VerificationFailed => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(err) => err.to_string(),
            CliError::Capability(msg)
            | CliError::Input(msg)
            | CliError::Output(msg)
            | CliError::Usage(msg) => msg.clone(),
            CliError::VerificationFailed => "verification failed".into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen(args) => cmd_gen(args),
        Command::Atlas(args) => cmd_atlas(args),
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Census(args) => cmd_census(args),
        Command::Moments(args) => cmd_moments(args),
        Command::Detectors(args) => cmd_detectors(args),
        Command::Distsim(args) => cmd_distsim(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_edge_list(&text)?)
}

fn write_out(output: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Output(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn header(command: &str) -> String {
    format!("# graph-moments {command} schema={SCHEMA}\n")
}

/// Decimal with `sig` significant digits.
fn format_sig(value: f64, sig: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{:.*}", sig - 1, 0.0);
    }
    let mag = value.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - mag).max(0) as usize;
    format!("{value:.decimals$}")
}

fn format_fraction(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// n * m_k, always an integer (the closed-walk count).
fn walk_count(value: &Rational, n: usize) -> BigInt {
    (value * Rational::from(BigInt::from(n))).to_integer()
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("node count must be at least 1".into()));
    }
    let graph = match args.kind {
        GenKind::Ring => graph_moments::gen::ring(args.n),
        GenKind::Path => graph_moments::gen::path(args.n),
        GenKind::Complete => graph_moments::gen::complete(args.n),
        GenKind::Er => {
            let p = args.p.ok_or_else(|| {
                CliError::Usage("`gen er <N> <P>` needs an edge probability".into())
            })?;
            graph_moments::gen::erdos_renyi(args.n, p, args.seed)?
        }
    };
    if args.kind != GenKind::Er && args.p.is_some() {
        return Err(CliError::Usage("edge probability only applies to `er`".into()));
    }
    write_out(&args.output, &graph.to_edge_list())
}

fn cmd_atlas(args: AtlasArgs) -> Result<(), CliError> {
    let atlas = build_atlas(args.k)?;
    let body = atlas.catalog();
    write_out(&args.output, &format!("{}{body}", header("atlas")))
}

fn cmd_coeffs(args: CoeffsArgs) -> Result<(), CliError> {
    let table = build_coefficient_table(args.k_max)?;
    let body = table.golden_text();
    write_out(&args.output, &format!("{}{body}", header("coeffs")))
}

fn cmd_census(args: CensusArgs) -> Result<(), CliError> {
    let host = read_graph(&args.input)?;
    let counts = census(&host, args.k)?;
    let atlas = build_atlas(args.k)?;
    let mut out = header("census");
    if args.format == Format::Tsv {
        out.push_str("# motif\tname\tcount\n");
    }
    for member in atlas.members() {
        let count = counts.count(&member.key);
        match args.format {
            Format::Tsv => {
                writeln!(out, "{}\t{}\t{}", member.key.hex(), member.id, count).unwrap()
            }
            Format::Text => writeln!(
                out,
                "motif={} name={} count={}",
                member.key.hex(),
                member.id,
                count
            )
            .unwrap(),
        }
    }
    write_out(&args.output, &out)
}

/// Closed-form moments exist for k <= 5: 0, 2E/n, 6T/n, the degree/4-cycle
/// form and the triangle/5-cycle form.
fn closed_form_moment(g: &Graph, k: usize) -> Result<Option<Rational>, Error> {
    let n = BigInt::from(g.node_count());
    Ok(match k {
        1 => Some(Rational::zero()),
        2 => Some(Rational::new(BigInt::from(2 * g.edge_count()), n)),
        3 => {
            let triangles: u64 = per_node_triangles(g).iter().sum::<u64>() / 3;
            Some(Rational::new(BigInt::from(6 * triangles), n))
        }
        4 => Some(moment4_closed_form(g)?),
        5 => Some(moment5_closed_form(g)?),
        _ => None,
    })
}

fn cmd_moments(args: MomentsArgs) -> Result<(), CliError> {
    let host = read_graph(&args.input)?;
    if args.k_max == 0 {
        return Err(CliError::Usage("k_max must be at least 1".into()));
    }
    if host.node_count() == 0 {
        return Err(CliError::Usage("host graph has no nodes".into()));
    }
    let needs_motifs = matches!(args.method, Method::Motifs | Method::All);
    if args.method != Method::Trace && args.k_max > 7 {
        return Err(CliError::Capability(format!(
            "only the trace route goes beyond k=7, got k_max={} (use --method trace)",
            args.k_max
        )));
    }
    let trace = MomentVector::from_trace(&host, args.k_max)?;
    let motifs = if needs_motifs && args.k_max >= 2 {
        let table = build_coefficient_table(args.k_max.clamp(2, 7))?;
        Some(MomentVector::from_motifs(&host, args.k_max, &table)?)
    } else {
        None
    };

    let mut out = header("moments");
    if args.format == Format::Tsv {
        let mut cols = vec!["k", "n_mk", "mk"];
        match args.method {
            Method::Motifs => cols.push("motifs"),
            Method::Trace => cols.push("trace"),
            Method::ClosedForm => cols.push("closed_form"),
            Method::All => cols.extend(["motifs", "trace", "closed_form", "agree"]),
        }
        writeln!(out, "# {}", cols.join("\t")).unwrap();
    }
    for k in 1..=args.k_max {
        // The closed forms stop at k=5; rows beyond print as dashes.
        let reference: Option<Rational> = match args.method {
            Method::Trace | Method::All => Some(trace.get(k).clone()),
            Method::Motifs => Some(match k {
                1 => Rational::zero(),
                _ => motifs.as_ref().unwrap().get(k).clone(),
            }),
            Method::ClosedForm => closed_form_moment(&host, k)?,
        };
        let mut cells: Vec<String> = vec![k.to_string()];
        match &reference {
            Some(m) => {
                cells.push(walk_count(m, host.node_count()).to_string());
                cells.push(format_sig(m.to_f64().unwrap_or(f64::NAN), 12));
            }
            None => cells.extend(["-".into(), "-".into()]),
        }
        match args.method {
            Method::Motifs | Method::Trace | Method::ClosedForm => {
                cells.push(reference.as_ref().map_or_else(|| "-".into(), format_fraction));
            }
            Method::All => {
                let motif_value = match k {
                    1 => Rational::zero(),
                    _ => motifs.as_ref().unwrap().get(k).clone(),
                };
                let closed = closed_form_moment(&host, k)?;
                let agree = motif_value == *trace.get(k)
                    && closed.as_ref().is_none_or(|c| c == trace.get(k));
                cells.push(format_fraction(&motif_value));
                cells.push(format_fraction(trace.get(k)));
                cells.push(closed.as_ref().map_or_else(|| "-".into(), format_fraction));
                cells.push(if agree { "yes" } else { "no" }.into());
            }
        }
        match args.format {
            Format::Tsv => writeln!(out, "{}", cells.join("\t")).unwrap(),
            Format::Text => {
                write!(out, "k={} n_mk={} mk={}", cells[0], cells[1], cells[2]).unwrap();
                for extra in &cells[3..] {
                    write!(out, " {extra}").unwrap();
                }
                out.push('\n');
            }
        }
    }
    write_out(&args.output, &out)
}

fn cmd_detectors(args: DetectorsArgs) -> Result<(), CliError> {
    if args.radii.is_empty() {
        return Err(CliError::Usage("need at least one radius".into()));
    }
    let atlas = build_atlas(args.k)?;
    let table = build_detector_table(&atlas, &args.radii)?;
    let body = table.golden_text();
    write_out(&args.output, &format!("{}{body}", header("detectors")))
}

fn cmd_distsim(args: DistsimArgs) -> Result<(), CliError> {
    let host = read_graph(&args.input)?;
    let bound = args.k.clamp(2, 7);
    let table = build_coefficient_table(bound)?;
    let atlas = build_atlas(bound)?;
    let detectors = build_detector_table(&atlas, &[args.r])?;
    let cfg = ConsensusConfig {
        tolerance: args.tolerance,
        max_rounds: args.max_rounds,
        snapshot_every: args.trace_out.as_ref().map(|_| args.thin.max(1)),
        ..ConsensusConfig::default()
    };
    let result = distributed_moment(&host, args.r, args.k, &table, &detectors, &cfg)?;
    if let Some(path) = &args.trace_out {
        let mut trace = header("distsim-trace");
        trace.push_str("# round\tnode\tvalue\n");
        for (round, values) in &result.trace.snapshots {
            for (node, value) in values.iter().enumerate() {
                writeln!(trace, "{round}\t{node}\t{value:.17e}").unwrap();
            }
        }
        fs::write(path, trace)
            .map_err(|e| CliError::Output(format!("cannot write {}: {e}", path.display())))?;
    }
    if let Some(path) = &args.measurements_out {
        let body = graph_moments::measurement_dump(&result.measurements);
        fs::write(path, format!("{}{body}", header("measurements")))
            .map_err(|e| CliError::Output(format!("cannot write {}: {e}", path.display())))?;
    }
    if !result.trace.converged {
        eprintln!(
            "warning: consensus did not converge within {} rounds",
            result.trace.rounds
        );
    }
    let summary = format!(
        "{}k={} r={} rounds={} estimate={:.16e} exact={}\n",
        header("distsim"),
        args.k,
        args.r,
        result.trace.rounds,
        result.estimate,
        format_fraction(&result.exact),
    );
    write_out(&args.output, &summary)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let host = read_graph(&args.input)?;
    let k_cap = 2 * args.r + 1;
    if args.k_max > k_cap {
        return Err(CliError::Core(Error::Capability {
            k: args.k_max,
            k_max: k_cap,
            r: args.r,
        }));
    }
    if args.k_max == 0 {
        return Err(CliError::Usage("k_max must be at least 1".into()));
    }
    let bound = args.k_max.clamp(2, 7);
    let table = build_coefficient_table(bound)?;
    let atlas = build_atlas(bound)?;
    let detectors = build_detector_table(&atlas, &[args.r])?;
    let local = LocalCensus::build(&host, bound)?;
    let motifs = census(&host, bound)?;

    let mut out = header("verify");
    let mut all_hold = true;
    for k in 1..=args.k_max {
        let report = sum_check_from(&local, &motifs, &host, args.r, k, &table, &detectors)?;
        for m in &report.motifs {
            writeln!(
                out,
                "k={k} motif={} sum_h={} D={} F={} {}",
                m.key.hex(),
                m.local_sum,
                m.detector_count,
                m.frequency,
                if m.holds { "ok" } else { "MISMATCH" }
            )
            .unwrap();
        }
        writeln!(
            out,
            "k={k} mu_sum={} n_mk={} {}",
            format_fraction(&report.mu_total),
            format_fraction(&report.walk_count),
            if report.mu_matches_oracle {
                "ok"
            } else {
                "MISMATCH"
            }
        )
        .unwrap();
        all_hold &= report.all_hold();
    }
    writeln!(out, "{}", if all_hold { "PASS" } else { "FAIL" }).unwrap();
    write_out(&args.output, &out)?;
    if all_hold {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

//! Command-line front end for the exact digraph toolkit.
//!
//! Three subcommands: `construct` builds a family member (optionally a
//! tensor power) and exports it, `verify` runs claim suites and reports
//! pass/fail per claim, `minpoly` prints the minimal polynomial and a
//! diagonalizability verdict for a matrix file.
//!
//! Exit codes: 0 all claims pass, 1 at least one claim failed, 2 usage or
//! resource error. Output files are written atomically (temp file + rename).

use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use symdg_core::construct::{build_gamma_bounded, build_sigma_bounded, tensor_power};
use symdg_core::digraph::DOT_VERTEX_CAP;
use symdg_core::exact::{minimal_polynomial, parse_matrix_text, write_matrix_text};
use symdg_core::verify::{verify_selected, SuiteKind, VerifyOptions};
use symdg_core::{Digraph, DEFAULT_ENUM_BOUND, DEFAULT_MAX_ARCS};

#[derive(Parser)]
#[command(
    name = "symdg",
    version,
    about = "Construct highly symmetric digraphs and machine-verify their properties",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap on explicit group enumeration.
    #[arg(long, global = true, env = "SYMDG_ENUM_BOUND", default_value_t = DEFAULT_ENUM_BOUND)]
    enum_bound: u128,

    /// Cap on explicit arc-tuple enumeration.
    #[arg(long, global = true, env = "SYMDG_MAX_ARCS", default_value_t = DEFAULT_MAX_ARCS)]
    max_arcs: u128,

    /// Worker threads for parallel checks (0 uses all cores).
    #[arg(long, global = true, env = "SYMDG_JOBS", default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member and export the digraph.
    #[command(subcommand)]
    Construct(ConstructFamily),
    /// Run verification suites and report every claim.
    Verify(VerifyArgs),
    /// Print the minimal polynomial of a matrix file and whether the matrix
    /// is diagonalizable.
    Minpoly {
        /// Matrix file: a `rows cols` header, then entries (integers or p/q).
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum ConstructFamily {
    /// The 2-valent rank-s member on 2^(s+1)·s vertices (s >= 2).
    Gamma {
        /// Family rank.
        #[arg(long = "s")]
        s: usize,
        #[command(flatten)]
        export: ExportArgs,
    },
    /// The 160-valent vertex-primitive member on 441 vertices.
    Sigma {
        #[command(flatten)]
        export: ExportArgs,
    },
}

#[derive(Args)]
struct ExportArgs {
    /// Tensor power to apply before export (1 exports the member itself).
    #[arg(long, default_value_t = 1)]
    power: usize,

    /// Export format.
    #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
    format: ExportFormat,

    /// Output file; written atomically, with a manifest alongside.
    /// Prints to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Vertex cap for GraphViz export.
    #[arg(long, default_value_t = DOT_VERTEX_CAP)]
    dot_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    /// Arc-list JSON, re-importable by the toolkit.
    Json,
    /// GraphViz source.
    Dot,
    /// Adjacency matrix, `rows cols` header then 0/1 entries.
    Matrix,
    /// Human-readable out-neighbor lists.
    Text,
}

impl ExportFormat {
    fn name(self) -> &'static str {
        match self {
            ExportFormat::Json => "json",
            ExportFormat::Dot => "dot",
            ExportFormat::Matrix => "matrix",
            ExportFormat::Text => "text",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite selection.
    #[arg(value_enum)]
    suite: SuiteChoice,

    /// Family ranks for the rank-parameterized suite.
    #[arg(long = "s", value_delimiter = ',', default_values_t = vec![2, 3, 4, 5])]
    ranks: Vec<usize>,

    /// Highest tensor power considered by the tensor suite.
    #[arg(long, default_value_t = 2)]
    power: usize,

    /// Write the full JSON report to this file.
    #[arg(long)]
    report: Option<PathBuf>,

    /// Corrupt one designated input per suite; the run must then fail.
    #[arg(long)]
    inject_fault: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteChoice {
    /// Every suite, including negative controls and scope notes.
    All,
    Gamma,
    Sigma,
    Tensor,
    Kronecker,
    Controls,
}

impl SuiteChoice {
    fn kinds(self) -> Vec<SuiteKind> {
        match self {
            SuiteChoice::All => SuiteKind::ALL.to_vec(),
            SuiteChoice::Gamma => vec![SuiteKind::Gamma],
            SuiteChoice::Sigma => vec![SuiteKind::Sigma],
            SuiteChoice::Tensor => vec![SuiteKind::Tensor],
            SuiteChoice::Kronecker => vec![SuiteKind::Kronecker],
            SuiteChoice::Controls => vec![SuiteKind::Controls],
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, tolerating a reader that closed the pipe early
/// (`symdg construct ... | head`); other write failures are surfaced.
/// Exit codes stay meaningful under truncation because callers compute
/// them from results, never from whether printing succeeded.
fn write_stdout(text: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(error) if error.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    match cli.command {
        Command::Construct(family) => run_construct(family, cli.enum_bound, cli.max_arcs),
        Command::Verify(args) => run_verify(args, cli.enum_bound, cli.max_arcs),
        Command::Minpoly { file } => run_minpoly(&file),
    }
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

struct BuiltInstance {
    family: &'static str,
    rank: Option<usize>,
    digraph: Digraph,
}

fn run_construct(family: ConstructFamily, enum_bound: u128, max_arcs: u128) -> anyhow::Result<u8> {
    let (built, export) = match family {
        ConstructFamily::Gamma { s, export } => {
            if s < 2 {
                bail!("--s must be at least 2; the rank-1 member degenerates");
            }
            let instance = build_gamma_bounded(s, enum_bound)?;
            (
                BuiltInstance {
                    family: "gamma",
                    rank: Some(s),
                    digraph: instance.digraph,
                },
                export,
            )
        }
        ConstructFamily::Sigma { export } => {
            let instance = build_sigma_bounded(enum_bound)?;
            (
                BuiltInstance {
                    family: "sigma",
                    rank: None,
                    digraph: instance.digraph,
                },
                export,
            )
        }
    };

    if export.power < 1 {
        bail!("--power must be at least 1");
    }
    guard_power_size(&built.digraph, export.power, max_arcs)?;
    let digraph = tensor_power(&built.digraph, export.power)?;

    let payload = match export.format {
        ExportFormat::Json => digraph.to_json()?,
        ExportFormat::Dot => digraph.to_dot_capped(export.dot_cap)?,
        ExportFormat::Matrix => write_matrix_text(&digraph.adjacency_matrix()),
        ExportFormat::Text => render_text(&digraph),
    };

    match &export.out {
        None => {
            write_stdout(&payload).context("writing to stdout")?;
        }
        Some(path) => {
            write_atomic(path, &payload)?;
            let manifest = manifest_json(&built, &export, &digraph, path)?;
            let manifest_file = manifest_path(path);
            write_atomic(&manifest_file, &manifest)?;
            eprintln!(
                "wrote {} ({} vertices, {} arcs) and {}",
                path.display(),
                digraph.vertex_count(),
                digraph.arc_count(),
                manifest_file.display()
            );
        }
    }
    Ok(0)
}

/// Refuses tensor powers whose arc count cannot be materialized.
fn guard_power_size(digraph: &Digraph, power: usize, max_arcs: u128) -> anyhow::Result<()> {
    let mut arcs: u128 = digraph.arc_count() as u128;
    let factor = digraph.arc_count() as u128;
    for _ in 1..power {
        arcs = arcs
            .checked_mul(factor)
            .filter(|&a| a <= max_arcs)
            .with_context(|| {
                format!(
                    "tensor power {power} needs more than {max_arcs} arcs; raise --max-arcs to force it"
                )
            })?;
    }
    Ok(())
}

fn render_text(digraph: &Digraph) -> String {
    let mut out = String::new();
    writeln!(out, "vertices {}", digraph.vertex_count()).unwrap();
    writeln!(out, "arcs {}", digraph.arc_count()).unwrap();
    for v in 0..digraph.vertex_count() {
        let neighbors: Vec<String> = digraph
            .out_neighbors(v)
            .iter()
            .map(|w| w.to_string())
            .collect();
        writeln!(out, "{v}: {}", neighbors.join(" ")).unwrap();
    }
    out
}

fn manifest_json(
    built: &BuiltInstance,
    export: &ExportArgs,
    digraph: &Digraph,
    payload_path: &Path,
) -> anyhow::Result<String> {
    let manifest = serde_json::json!({
        "family": built.family,
        "rank": built.rank,
        "power": export.power,
        "vertices": digraph.vertex_count(),
        "arcs": digraph.arc_count(),
        "valency": digraph.regular_valency(),
        "format": export.format.name(),
        "payload_file": payload_path.file_name().and_then(|n| n.to_str()),
        "toolkit_version": env!("CARGO_PKG_VERSION"),
    });
    Ok(serde_json::to_string_pretty(&manifest)?)
}

fn manifest_path(payload: &Path) -> PathBuf {
    let mut name = payload.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    payload.with_file_name(name)
}

/// Writes via a temp file in the target directory, then renames into place.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temp file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())
        .with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn run_verify(args: VerifyArgs, enum_bound: u128, max_arcs: u128) -> anyhow::Result<u8> {
    let options = VerifyOptions {
        gamma_ranks: args.ranks,
        tensor_power: args.power,
        enum_bound,
        max_arcs,
        inject_fault: args.inject_fault,
    };
    let report = verify_selected(&args.suite.kinds(), &options)?;
    write_stdout(&report.render_text()).context("writing to stdout")?;
    if let Some(path) = &args.report {
        write_atomic(path, &report.to_json()?)?;
        eprintln!("report written to {}", path.display());
    }
    if report.is_success() {
        Ok(0)
    } else {
        eprintln!("failed claims: {}", report.failed_ids().join(", "));
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// minpoly
// ---------------------------------------------------------------------------

fn run_minpoly(file: &Path) -> anyhow::Result<u8> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let matrix = parse_matrix_text(&text)?;
    let poly = minimal_polynomial(&matrix)?;
    let coefficients: Vec<String> = poly
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            }
        })
        .collect();
    let verdict = if poly.is_squarefree()? {
        "DIAGONALIZABLE"
    } else {
        "NOT DIAGONALIZABLE"
    };
    let output = format!(
        "minimal polynomial: {poly}\ncoefficients (ascending): {}\n{verdict}\n",
        coefficients.join(" ")
    );
    write_stdout(&output).context("writing to stdout")?;
    Ok(0)
}

//! Command implementations behind the `vieta` binary.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use thiserror::Error;

use vieta_core::bench::{run_bench_with, BenchConfig, BenchError, CSV_HEADER};
use vieta_core::exactdet::{DetError, LAPLACE_DEFAULT_MAX};
use vieta_core::method::{MatrixKind, MethodRegistry};
use vieta_core::verify::{run_suite, IdentityRegistry, VerifyConfig, VerifyError};
use vieta_core::{parse_rational, NodeSet, Rational};

pub const LAPLACE_ENV: &str = "VIETA_LAPLACE_MAX";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Guard(String),
    #[error("{0} identit(y/ies) reported failures")]
    VerificationFailed(usize),
}

impl CliError {
    /// 2 for bad input, 3 for a size guard, 1 for a failed verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Guard(_) => 3,
            CliError::VerificationFailed(_) => 1,
        }
    }
}

fn input(err: impl std::fmt::Display) -> CliError {
    CliError::Input(err.to_string())
}

impl From<DetError> for CliError {
    fn from(err: DetError) -> Self {
        match err {
            DetError::TooLarge { .. } => CliError::Guard(err.to_string()),
            DetError::NotSquare { .. } => CliError::Input(err.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(err: VerifyError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<BenchError> for CliError {
    fn from(err: BenchError) -> Self {
        match err {
            BenchError::Guard { .. } => CliError::Guard(err.to_string()),
            _ => CliError::Input(err.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "vieta", version, about = "Exact Vieta, Vandermonde, Wronskian and Jacobian determinants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a matrix and print it as JSON or CSV
    Build {
        /// vieta, vandermonde, wronskian or jacobian
        kind: String,
        #[command(flatten)]
        nodes: NodeArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Evaluation point for the wronskian
        #[arg(long, default_value = "0")]
        at: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a determinant
    Det {
        kind: String,
        #[command(flatten)]
        det: DetArgs,
    },
    /// Same as `det wronskian`
    Wronskian {
        #[command(flatten)]
        det: DetArgs,
    },
    /// Same as `det jacobian`
    Jacobian {
        #[command(flatten)]
        det: DetArgs,
    },
    /// Run randomized identity checks and print one JSON report per identity
    Verify(VerifyArgs),
    /// Time determinant methods on random node sets, CSV output
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct NodeArgs {
    /// Comma-separated rationals, e.g. 1,2,-3/4
    #[arg(long, allow_hyphen_values = true)]
    pub nodes: Option<String>,
    /// JSON file of the form {"nodes": ["1", "-3/4"]}
    #[arg(long)]
    pub nodes_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DetArgs {
    #[command(flatten)]
    pub nodes: NodeArgs,
    /// closed, laplace or bareiss
    #[arg(long, default_value = "closed")]
    pub method: String,
    /// Evaluation point for the wronskian
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub at: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// "all" or a comma-separated list of identity names
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Inclusive node-count range, "lo..hi" or a single size
    #[arg(long = "n", default_value = "1..8")]
    pub n_range: String,
    /// Coefficient bound B: numerators in [-B, B], denominators in [1, B]
    #[arg(long, default_value_t = 50)]
    pub bound: i64,
    /// Include elapsed_ms in each report line
    #[arg(long)]
    pub timings: bool,
    /// List identity names and exit
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated node counts
    #[arg(long = "n", default_value = "4,8,16")]
    pub sizes: String,
    #[arg(long, default_value = "closed,bareiss")]
    pub methods: String,
    #[arg(long, default_value_t = 1)]
    pub repeats: usize,
    /// Bit length bound for numerators and denominators
    #[arg(long = "bits", default_value_t = 16)]
    pub entry_bits: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "vieta")]
    pub kind: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Reads the Laplace guard from the environment, defaulting to 8.
pub fn laplace_limit_from_env() -> Result<usize, CliError> {
    match std::env::var(LAPLACE_ENV) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{LAPLACE_ENV} must be a non-negative integer, got {raw:?}"))),
        Err(_) => Ok(LAPLACE_DEFAULT_MAX),
    }
}

pub fn load_nodes(args: &NodeArgs) -> Result<NodeSet, CliError> {
    match (&args.nodes, &args.nodes_file) {
        (Some(_), Some(_)) => Err(input("give either --nodes or --nodes-file, not both")),
        (None, None) => Err(input("no nodes given; use --nodes or --nodes-file")),
        (Some(text), None) => NodeSet::parse_list(text).map_err(|e| input(format!("--nodes: {e}"))),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
            parse_nodes_json(&text).map_err(|e| input(format!("{}: {e}", path.display())))
        }
    }
}

/// Parses `{"nodes": ["1", "-3/4", ...]}`. Entries must be strings.
pub fn parse_nodes_json(text: &str) -> Result<NodeSet, String> {
    let doc: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let items = doc
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or("expected an object with a \"nodes\" array")?;
    let nodes = items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let s = item
                .as_str()
                .ok_or_else(|| format!("nodes[{i}] must be a string, got {item}"))?;
            parse_rational(s).map_err(|e| format!("nodes[{i}]: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    NodeSet::new(nodes).map_err(|e| e.to_string())
}

pub fn parse_kind(name: &str, at: &str) -> Result<MatrixKind, CliError> {
    let kind: MatrixKind = name.parse().map_err(input)?;
    Ok(match kind {
        MatrixKind::Wronskian { .. } => MatrixKind::Wronskian {
            at: parse_rational(at).map_err(|e| input(format!("--at: {e}")))?,
        },
        other => other,
    })
}

/// `"lo..hi"` (inclusive) or `"n"`.
pub fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| input(format!("invalid node range {text:?}")))
    };
    match text.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi.trim_start_matches('='))?)),
        None => {
            let n = parse(text)?;
            Ok((n, n))
        }
    }
}

pub fn parse_sizes(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| input(format!("invalid size {s:?} in --n")))
        })
        .collect()
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| input(format!("stdout: {e}"))),
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build { kind, nodes, format, at, out } => {
            let kind = parse_kind(&kind, &at)?;
            let ns = load_nodes(&nodes)?;
            let m = kind.build(&ns);
            let text = match format {
                Format::Json => m.to_json() + "\n",
                Format::Csv => m.to_csv(),
            };
            emit(out.as_deref(), &text)
        }
        Command::Det { kind, det } => cmd_det(&kind, det),
        Command::Wronskian { det } => cmd_det("wronskian", det),
        Command::Jacobian { det } => cmd_det("jacobian", det),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

pub fn determinant(kind: &MatrixKind, ns: &NodeSet, method: &str) -> Result<Rational, CliError> {
    let registry = MethodRegistry::with_laplace_limit(laplace_limit_from_env()?);
    let method = registry.get(method).ok_or_else(|| {
        input(format!(
            "unknown method {method:?} (expected one of {})",
            registry.names().join(", ")
        ))
    })?;
    Ok(method.determinant(kind, ns)?)
}

fn cmd_det(kind: &str, args: DetArgs) -> Result<(), CliError> {
    let kind = parse_kind(kind, &args.at)?;
    let ns = load_nodes(&args.nodes)?;
    let value = determinant(&kind, &ns, &args.method)?;
    emit(args.out.as_deref(), &format!("{value}\n"))
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let registry = IdentityRegistry::builtin();
    if args.list {
        let listing: String = registry
            .iter()
            .map(|id| format!("{}\t{}\n", id.name(), id.description()))
            .collect();
        return emit(args.out.as_deref(), &listing);
    }
    let (n_min, n_max) = parse_range(&args.n_range)?;
    let cfg = VerifyConfig {
        trials: args.trials,
        seed: args.seed,
        n_min,
        n_max,
        bound: args.bound,
        laplace_limit: laplace_limit_from_env()?,
    };
    let reports = run_suite(&registry, &args.suite, &cfg)?;
    let mut text = String::new();
    for report in &reports {
        text.push_str(&report.to_json_line(args.timings));
        text.push('\n');
        eprintln!(
            "{:<18} {:>6} trials {:>4} failures {:>7} ms",
            report.identity, report.trials, report.failures, report.elapsed_ms
        );
    }
    emit(args.out.as_deref(), &text)?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(CliError::VerificationFailed(failed));
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let cfg = BenchConfig {
        sizes: parse_sizes(&args.sizes)?,
        methods: args.methods.split(',').map(|m| m.trim().to_string()).collect(),
        repeats: args.repeats,
        entry_bits: args.entry_bits,
        seed: args.seed,
        kind: parse_kind(&args.kind, "0")?,
    };
    let registry = MethodRegistry::with_laplace_limit(laplace_limit_from_env()?);
    cfg.validate(&registry)?;

    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(fs::File::create(path).map_err(|e| input(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut write_err = None;
    let mut write_line = |line: &str| {
        if write_err.is_none() {
            if let Err(e) = writeln!(sink, "{line}") {
                write_err = Some(e);
            }
        }
    };
    write_line(CSV_HEADER);
    run_bench_with(&cfg, &registry, |record| write_line(&record.to_csv_row()))?;
    match write_err {
        Some(e) => Err(input(format!("writing benchmark output: {e}"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_json_schema() {
        let ns = parse_nodes_json(r#"{"nodes": ["1", "-3/4", "2/5"]}"#).unwrap();
        assert_eq!(ns.to_string(), "1,-3/4,2/5");
        assert!(parse_nodes_json(r#"{"nodes": [1, 2]}"#).unwrap_err().contains("nodes[0] must be a string"));
        assert!(parse_nodes_json(r#"{"nodes": ["1", "2/0"]}"#).unwrap_err().starts_with("nodes[1]"));
        assert!(parse_nodes_json(r#"{"nodes": []}"#).is_err());
        assert!(parse_nodes_json(r#"["1"]"#).is_err());
    }

    #[test]
    fn both_node_sources_rejected() {
        let args = NodeArgs { nodes: Some("1".into()), nodes_file: Some("x.json".into()) };
        assert_eq!(load_nodes(&args).unwrap_err().exit_code(), 2);
        let none = NodeArgs { nodes: None, nodes_file: None };
        assert_eq!(load_nodes(&none).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn ranges_and_sizes() {
        assert_eq!(parse_range("1..8").unwrap(), (1, 8));
        assert_eq!(parse_range("3..=5").unwrap(), (3, 5));
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert!(parse_range("a..b").is_err());
        assert_eq!(parse_sizes("4, 8,16").unwrap(), vec![4, 8, 16]);
        assert!(parse_sizes("4,,8").is_err());
    }

    #[test]
    fn kinds() {
        assert_eq!(parse_kind("vieta", "0").unwrap(), MatrixKind::Vieta);
        assert_eq!(
            parse_kind("wronskian", "-1/2").unwrap(),
            MatrixKind::Wronskian { at: Rational::from_ratio(-1, 2) }
        );
        assert_eq!(parse_kind("hilbert", "0").unwrap_err().exit_code(), 2);
        assert_eq!(parse_kind("wronskian", "x").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(DetError::TooLarge { n: 9, limit: 8 }).exit_code(), 3);
        assert_eq!(CliError::from(VerifyError::UnknownIdentity("x".into())).exit_code(), 2);
        assert_eq!(CliError::VerificationFailed(1).exit_code(), 1);
    }
}

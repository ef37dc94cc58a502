//! Command-line front end: ideal files, flags and report output.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::Rationals;
use crate::groebner::Ideal;
use crate::mpoly::{parse_poly_at_line, DegreeOrder, MpolyError, TermOrder};
use crate::pipeline::{decompose, Backend, PipelineConfig, PipelineError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_RETRY: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Pipeline(PipelineError::RetryExhausted { .. }) => EXIT_RETRY,
            _ => EXIT_INPUT,
        }
    }
}

/// A parsed ideal file: variable names and the ideal over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFile {
    pub names: Vec<String>,
    pub ideal: Ideal<Rationals>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, column, message: message.into() }
}

fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

fn parse_header(line: &str) -> Result<Vec<String>, CliError> {
    let col = |s: &str| line.find(s).map_or(1, |i| i + 1);
    let rest = line
        .trim()
        .strip_prefix("ring")
        .ok_or_else(|| parse_error(1, 1, "expected header 'ring Q[...]'"))?
        .trim_start();
    let inner = rest
        .strip_prefix("Q[")
        .and_then(|r| r.trim_end().strip_suffix(']'))
        .ok_or_else(|| parse_error(1, col("Q"), "expected 'Q[' variables ']'"))?;
    let mut names: Vec<String> = Vec::new();
    for raw in inner.split(',') {
        let name = raw.trim();
        if !is_identifier(name) {
            return Err(parse_error(1, col(raw).max(1), format!("invalid variable name '{name}'")));
        }
        if names.iter().any(|n| n == name) {
            return Err(parse_error(1, col(raw), format!("duplicate variable '{name}'")));
        }
        names.push(name.to_string());
    }
    Ok(names)
}

/// Parses `ring Q[X,Y,...]` followed by one generator per line. Blank lines
/// and lines starting with `#` are skipped. Generators are primitivized.
pub fn parse_ideal(text: &str) -> Result<IdealFile, CliError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let Some((hline, header)) = lines.next() else {
        return Err(parse_error(1, 1, "empty input"));
    };
    let names = parse_header(header).map_err(|e| match e {
        CliError::Parse { column, message, .. } => parse_error(hline + 1, column, message),
        other => other,
    })?;
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut gens = Vec::new();
    for (i, l) in lines {
        let f = parse_poly_at_line(l, &vars, i + 1).map_err(|e| match e {
            MpolyError::Parse { line, column, message } => parse_error(line, column, message),
            other => parse_error(i + 1, 1, other.to_string()),
        })?;
        gens.push(f.normalize(&TermOrder::DegLex));
    }
    let ideal = Ideal::new(Rationals, names.len(), gens).expect("generators share the ring");
    Ok(IdealFile { names, ideal })
}

/// Prints an ideal in the file format read by [`parse_ideal`].
pub fn format_ideal(file: &IdealFile) -> String {
    let mut out = format!("ring Q[{}]\n", file.names.join(","));
    for g in file.ideal.generators() {
        out.push_str(&g.fmt_with(&file.names));
        out.push('\n');
    }
    out
}

#[derive(Debug, Parser)]
#[command(name = "idealdec", version, about = "Absolute primary decomposition data for curve ideals over Q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose the ideal in an ideal file.
    Decompose(DecomposeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Deglex,
    Degrevlex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Groebner,
    Resultant,
    Auto,
}

#[derive(Debug, clap::Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Dimension of the components; only 1 is supported.
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, env = "IDEALDEC_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, value_enum, default_value = "deglex")]
    pub order: OrderArg,
    #[arg(long, value_enum, default_value = "auto")]
    pub backend: BackendArg,
    #[arg(long)]
    pub prime_override: Option<u64>,
    #[arg(long, default_value_t = 5)]
    pub max_retries: usize,
    #[arg(long, default_value_t = 10)]
    pub coeff_bound: i64,
}

impl DecomposeArgs {
    pub fn config(&self) -> PipelineConfig {
        PipelineConfig {
            seed: self.seed,
            coeff_bound: self.coeff_bound,
            max_retries: self.max_retries,
            prime_override: self.prime_override,
            order: match self.order {
                OrderArg::Deglex => DegreeOrder::Deglex,
                OrderArg::Degrevlex => DegreeOrder::Degrevlex,
            },
            backend: match self.backend {
                BackendArg::Groebner => Backend::Groebner,
                BackendArg::Resultant => Backend::Resultant,
                BackendArg::Auto => Backend::Auto,
            },
            ..PipelineConfig::default()
        }
    }
}

/// Runs the decompose command and renders the report.
pub fn decompose_command(args: &DecomposeArgs) -> Result<String, CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|source| CliError::Io { path: args.input.clone(), source })?;
    let file = parse_ideal(&text)?;
    if args.dim != 1 {
        return Err(PipelineError::UnsupportedDimension(args.dim).into());
    }
    let ideal = file.ideal.clone().with_dimension(args.dim);
    let report = decompose(&ideal, &args.config())?;
    Ok(match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json(&file.names)).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => report.to_text(&file.names),
    })
}

/// Parses `argv`, runs, writes to `out`/`err`, returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Decompose(args) => match decompose_command(&args) {
            Ok(s) => {
                let _ = out.write_all(s.as_bytes());
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                if let CliError::Pipeline(PipelineError::RetryExhausted { trace, .. }) = &e {
                    for t in trace {
                        let _ = writeln!(err, "  {t}");
                    }
                }
                e.exit_code()
            }
        },
    }
}

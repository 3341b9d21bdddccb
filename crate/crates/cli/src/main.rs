mod commands;
mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hilbaut::fock::DegreeMode;
use hilbaut::surface::{parse_document, preset, validate, InputDocument};
use hilbaut::Error;

/// Invariants of natural automorphisms of Hilbert schemes of points.
#[derive(Parser, Debug)]
#[command(name = "hilbaut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Lefschetz number of f^[n].
    Lefschetz(Options),
    /// Graded trace series of the induced action, up to a weight.
    TraceSeries(Options),
    /// Betti numbers of S^[k] for k ≤ n.
    Poincare(Options),
    /// h^{p,0}(S^[k], L_k) for k ≤ n and the closed form for h^{2n−1,0}.
    Hodge(Options),
    /// dim Aut(S^[n]) from the Hodge row of the anticanonical bundle.
    AutDim(Options),
    /// Conjectural h^{p,q}(S^[n], L_n).
    Conjecture(Options),
    /// Fixed components of f^[n] and the Lefschetz cross-check.
    FixedPoints(Options),
    /// Eigenvalues of f^[n]* on the Nakajima basis.
    Spectrum(Options),
    /// Spectral radius and entropy of f^[n].
    Entropy(Options),
}

#[derive(Args, Debug, Clone)]
struct Options {
    /// Name of a shipped example.
    #[arg(long, conflicts_with = "input", value_parser = clap::builder::PossibleValuesParser::new(hilbaut::surface::PRESET_NAMES))]
    preset: Option<String>,
    /// JSON input document, or `-` for standard input.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Number of points.
    #[arg(long)]
    n: Option<u32>,
    /// Largest weight kept in trace series.
    #[arg(long)]
    max_weight: Option<u32>,
    /// Degree convention for trace series (default: shifted).
    #[arg(long, value_enum)]
    degree_mode: Option<Mode>,
    /// Substitute an integer for t.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Hodge row label of the surface (default: `trivial`, or `canonical-dual` for aut-dim).
    #[arg(long)]
    row: Option<String>,
    /// Hodge table label of the surface (default: `trivial`).
    #[arg(long)]
    table: Option<String>,
    /// Enumeration cap: basis size for `spectrum`, largest n for `fixed-points`.
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Shifted,
    Literal,
}

impl From<Mode> for DegreeMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Shifted => DegreeMode::Shifted,
            Mode::Literal => DegreeMode::Literal,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_BOUND: u8 = 4;

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::UnknownPreset(_) => EXIT_PARSE,
            Error::BoundExceeded { .. } | Error::TruncationTooSmall { .. } => EXIT_BOUND,
            Error::IncompatibleSeries(_) | Error::NotAUnit | Error::HodgeMismatch { .. } => 1,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn load(opts: &Options) -> Result<InputDocument, Failure> {
    match (&opts.preset, &opts.input) {
        (Some(name), _) => {
            let (spec, datum) = preset(name)?;
            Ok(InputDocument {
                preset: Some(name.clone()),
                spec,
                datum,
            })
        }
        (None, Some(path)) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
                s
            } else {
                std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
            };
            Ok(parse_document(&text)?)
        }
        (None, None) => Err(Failure::usage("one of --preset or --input is required")),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let (name, opts) = commands::split(&cli.command);
    commands::check_flags(name, opts)?;
    let input = load(opts)?;
    let violations = validate(&input.spec);
    if !violations.is_empty() {
        return Err(Error::Validation(violations).into());
    }
    let out = commands::dispatch(name, opts, &input)?;
    render::render(name, opts, &input, out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

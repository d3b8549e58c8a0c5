use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cliffpauli_core::field::{ComplexFloat, FieldKind, FieldTag, GaussianRational, Rational, DEFAULT_TOLERANCE};

mod commands;

use commands::{CliError, Context};

#[derive(Parser, Debug)]
#[command(name = "cliffpauli", version, about = "Intertwiners between Clifford algebra generator sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Scalar field; overrides the field named in the input file.
    #[arg(long)]
    field: Option<FieldTag>,
    /// Comparison tolerance for the complex-float field.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check both generator sets of an instance and classify them.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Report basis classifications and which case relates the two sets.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Compute an intertwiner T with γ^a = c T^{-1} β^a T.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Where to write the result; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Recompute the residual of a stored solution.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Run the randomized identity suite.
    Selftest {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Generate a random instance and its ground-truth sidecar.
    Gen {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Odd-dimension case 1-6 to construct.
        #[arg(long)]
        case: Option<u8>,
        /// Coefficient bound; 3 for exact fields and 1 for floats by default.
        #[arg(long)]
        bound: Option<f64>,
        /// Instance path; the ground truth goes to `<stem>.truth.json` next to it.
        #[arg(long)]
        output: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::other(format!("cannot read {}: {e}", path.display())))
}

/// Picks the field from the flag, else from the file, and runs `body` with it.
macro_rules! dispatch {
    ($tag:expr, $tol:expr, |$ctx:ident : $F:ident| $body:expr) => {{
        let tag: FieldTag = $tag;
        match tag {
            FieldTag::RealExact => {
                type $F = Rational;
                let $ctx = Context::new(FieldKind::new(tag, $tol));
                $body
            }
            FieldTag::ComplexExact => {
                type $F = GaussianRational;
                let $ctx = Context::new(FieldKind::new(tag, $tol));
                $body
            }
            FieldTag::ComplexFloat => {
                type $F = ComplexFloat;
                let $ctx = Context::new(FieldKind::new(tag, $tol));
                $body
            }
        }
    }};
}

fn file_field(text: &str, flag: Option<FieldTag>) -> Result<FieldTag, CliError> {
    match flag {
        Some(tag) => Ok(tag),
        None => commands::header_field(text),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Validate { input, field } => {
            let text = read(&input)?;
            let tag = file_field(&text, field.field)?;
            dispatch!(tag, field.tolerance, |ctx: F| ctx.validate::<F>(&text))
        }
        Command::Classify { input, field } => {
            let text = read(&input)?;
            let tag = file_field(&text, field.field)?;
            dispatch!(tag, field.tolerance, |ctx: F| ctx.classify::<F>(&text))
        }
        Command::Solve { input, output, field } => {
            let text = read(&input)?;
            let tag = file_field(&text, field.field)?;
            dispatch!(tag, field.tolerance, |ctx: F| ctx.solve::<F>(&text, output.as_deref()))
        }
        Command::Verify { input, solution, field } => {
            let text = read(&input)?;
            let solution = read(&solution)?;
            let tag = file_field(&text, field.field)?;
            dispatch!(tag, field.tolerance, |ctx: F| ctx.verify::<F>(&text, &solution))
        }
        Command::Selftest { p, q, seed, trials, field } => {
            let tag = field.field.unwrap_or(FieldTag::RealExact);
            dispatch!(tag, field.tolerance, |ctx: F| ctx.selftest::<F>(p, q, seed, trials))
        }
        Command::Gen { p, q, seed, case, bound, output, field } => {
            let tag = field.field.unwrap_or(FieldTag::RealExact);
            dispatch!(tag, field.tolerance, |ctx: F| ctx.gen::<F>(p, q, seed, case, bound, &output))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            print!("{}", err.report);
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

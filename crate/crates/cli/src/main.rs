//! Command-line surface for the wall-crossing engines.
//!
//! Every subcommand reads UTF-8 inputs, computes exactly and writes one
//! deterministic JSON record (keys in fixed order, rationals as `p/q`
//! strings). Exit codes: 0 success, 2 input error, 3 pole at the
//! evaluation point.

mod commands;
mod formats;
mod parallel;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use hallcross_core::exactalg::parse_ratfunc;
use hallcross_core::quiver::{Quiver, SlopeFunction};

use commands::CliError;
use formats::{parse_dim_vector, parse_int_list, parse_tiers, PathFile, QuiverFile, StabilityFile};

#[derive(Parser)]
#[command(
    name = "hallcross",
    version,
    about = "Exact wall-crossing computations for quiver moduli"
)]
struct Cli {
    /// Worker threads for the parallelizable products (results are
    /// bit-identical for any value).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Write the output record here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Truncation order for series output.
    #[arg(long, global = true, default_value_t = 16)]
    max_order: i64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Delta/epsilon invariants and the generalized DT number of a class.
    QuiverDt {
        /// Quiver file: {"vertices": [...], "arrows": [["s","t"], ...]}
        #[arg(long)]
        quiver: PathBuf,
        /// Comma-separated theta vector.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Comma-separated kappa vector (default: all ones).
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
        /// Extra lexicographic tiers, ';'-separated vectors.
        #[arg(long, allow_hyphen_values = true)]
        tiers: Option<String>,
        /// Dimension vector, comma-separated.
        #[arg(long)]
        dim: String,
        /// Also evaluate epsilon at this rational point.
        #[arg(long, allow_hyphen_values = true)]
        q_at: Option<String>,
    },
    /// Verify the HN-recursion identity for one stability.
    HnCheck {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        dim: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        tiers: Option<String>,
    },
    /// Verify dominant wall-crossing between a wall and a side stability.
    WallcrossCheck {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        dim: String,
        #[arg(long, allow_hyphen_values = true)]
        wall_theta: String,
        #[arg(long, allow_hyphen_values = true)]
        wall_kappa: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        wall_tiers: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        tiers: Option<String>,
    },
    /// S/U/Ũ coefficient tables of a hop path.
    Coeffs {
        /// Path file: {"hops": [{"wall": ..., "side": ...}], "bound": [...]}
        #[arg(long)]
        path: PathBuf,
    },
    /// K-Hall functional evaluations on the category of vector spaces.
    Vect {
        /// One of delta, epsilon, product.
        #[arg(long)]
        op: String,
        #[arg(long)]
        n: usize,
        /// Schur-word expression, e.g. "s[1,-1]^2 - 2*s[0,0]".
        #[arg(long = "char", allow_hyphen_values = true)]
        char_expr: String,
        /// Block sizes for op=product, comma-separated.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Residue at u = 1 of u⁻¹·f(u), by both extraction rules.
    Residue {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Constant term of the Weyl density against an irreducible character.
    Weyl {
        #[arg(long)]
        n: usize,
        /// Highest weight, comma-separated non-increasing integers.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Parse a rational function to canonical form.
    Parse {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Optionally expand at zero, infinity or one (order --max-order).
        #[arg(long)]
        expand: Option<String>,
    },
}

fn read_quiver(path: &PathBuf) -> Result<Quiver, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let file: QuiverFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("bad quiver file: {e}")))?;
    file.build().map_err(CliError::Input)
}

fn build_stability(
    theta: &str,
    kappa: Option<&String>,
    tiers: Option<&String>,
) -> Result<SlopeFunction, CliError> {
    let record = StabilityFile {
        theta: parse_int_list(theta).map_err(CliError::Input)?,
        kappa: kappa
            .map(|k| parse_int_list(k))
            .transpose()
            .map_err(CliError::Input)?,
        tiers: tiers
            .map(|t| parse_tiers(t))
            .transpose()
            .map_err(CliError::Input)?
            .unwrap_or_default(),
    };
    record.build().map_err(|e| CliError::Input(e.to_string()))
}

fn parse_nonzero_dim(text: &str) -> Result<hallcross_core::DimVector, CliError> {
    let d = parse_dim_vector(text).map_err(CliError::Input)?;
    if d.is_zero() {
        return Err(CliError::Input("dimension vector must be nonzero".into()));
    }
    Ok(d)
}

fn parse_rational_constant(text: &str) -> Result<hallcross_core::Rat, CliError> {
    let parsed = parse_ratfunc(text).map_err(|e| CliError::Input(format!("bad rational: {e}")))?;
    if !parsed.func.den().is_constant() || !parsed.func.num().is_constant() {
        return Err(CliError::Input("expected a rational constant".into()));
    }
    parsed
        .func
        .eval_at(&hallcross_core::exactalg::rat_int(0))
        .map_err(|e| CliError::Input(format!("bad rational: {e}")))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::QuiverDt {
            quiver,
            theta,
            kappa,
            tiers,
            dim,
            q_at,
        } => {
            let q = read_quiver(quiver)?;
            let mu = build_stability(theta, kappa.as_ref(), tiers.as_ref())?;
            let alpha = parse_nonzero_dim(dim)?;
            let q0 = q_at
                .as_ref()
                .map(|s| parse_rational_constant(s))
                .transpose()?;
            render(&commands::quiver_dt(&q, &mu, &alpha, q0.as_ref())?)
        }
        Command::HnCheck {
            quiver,
            dim,
            theta,
            kappa,
            tiers,
        } => {
            let q = read_quiver(quiver)?;
            let mu = build_stability(theta, kappa.as_ref(), tiers.as_ref())?;
            let alpha = parse_nonzero_dim(dim)?;
            render(&commands::hn_check(&q, &mu, &alpha)?)
        }
        Command::WallcrossCheck {
            quiver,
            dim,
            wall_theta,
            wall_kappa,
            wall_tiers,
            theta,
            kappa,
            tiers,
        } => {
            let q = read_quiver(quiver)?;
            let wall = build_stability(wall_theta, wall_kappa.as_ref(), wall_tiers.as_ref())?;
            let side = build_stability(theta, kappa.as_ref(), tiers.as_ref())?;
            let alpha = parse_nonzero_dim(dim)?;
            render(&commands::wallcross_check(&q, &wall, &side, &alpha)?)
        }
        Command::Coeffs { path } => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let file: PathFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("bad path file: {e}")))?;
            render(&commands::coeffs(&file)?)
        }
        Command::Vect {
            op,
            n,
            char_expr,
            blocks,
        } => {
            let blocks = blocks
                .as_ref()
                .map(|b| {
                    parse_int_list(b)
                        .map_err(CliError::Input)?
                        .into_iter()
                        .map(|v| {
                            usize::try_from(v)
                                .map_err(|_| CliError::Input("block sizes must be positive".into()))
                        })
                        .collect::<Result<Vec<usize>, CliError>>()
                })
                .transpose()?;
            render(&commands::vect(op, *n, char_expr, blocks, cli.jobs)?)
        }
        Command::Residue { f } => render(&commands::residue(f)?),
        Command::Weyl { n, lambda } => {
            let lam = parse_int_list(lambda).map_err(CliError::Input)?;
            render(&commands::weyl(*n, lam, cli.jobs)?)
        }
        Command::Parse { f, expand } => {
            render(&commands::parse(f, expand.as_deref(), cli.max_order)?)
        }
    }
}

fn render<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(out) => (out, 0u8),
        Err(e) => {
            let record =
                serde_json::to_string_pretty(&e.record()).unwrap_or_else(|_| String::from("{}"));
            (record, e.exit_code())
        }
    };
    let text = text + "\n";
    match &cli.output {
        None => print!("{text}"),
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    ExitCode::from(code)
}

mod commands;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use catx_core::charcalc::{JPrime, ModuleKind, NablaConvention, NablaWeights};
use catx_core::{CartanType, Guard, Subset};
use clap::{Args, Parser, Subcommand};

/// Exact root-system, Weyl-group, character and incidence-algebra computations.
#[derive(Parser)]
#[command(name = "catx", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cartan matrix and positive roots of a type.
    Roots(RootsArgs),
    /// Weyl group data: longest elements, coset representatives, inversion sets.
    Weyl(WeylArgs),
    /// Write the character of M, E or nabla as JSON, or re-emit a character file.
    Char(CharArgs),
    /// Split a character file into simple characters.
    Decompose(DecomposeArgs),
    /// Run verification checks over a parameter grid and emit a JSON report.
    Verify(suite::VerifyArgs),
    /// Structure of the incidence algebra A_n and Krull-Schmidt decomposition of modules.
    Algebra(AlgebraArgs),
}

#[derive(Args, Clone)]
pub struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct TypeArgs {
    /// Cartan type such as A2, B3, G2.
    #[arg(long = "type", value_name = "TYPE")]
    pub cartan_type: String,
    /// Largest rank accepted without --override (at most 4).
    #[arg(long, default_value_t = 4)]
    pub max_rank: usize,
    /// Lift the rank and size guards.
    #[arg(long = "override")]
    pub allow_large: bool,
}

impl TypeArgs {
    pub fn resolve(&self) -> Result<(CartanType, Guard)> {
        let guard = Guard {
            allow_large: self.allow_large,
        };
        Ok((parse_type(&self.cartan_type, self.max_rank, self.allow_large)?, guard))
    }
}

#[derive(Args, Clone)]
pub struct ConventionArgs {
    /// Which set indexes the weights of nabla: I(theta) minus J, or I minus J.
    #[arg(long, value_name = "itheta-minus-j|i-minus-j", default_value = "itheta-minus-j")]
    pub jprime_convention: String,
    /// v-component of the nabla weights: w^-1 (inverse) or w_J w^-1 (wj-inverse).
    #[arg(long, value_name = "inverse|wj-inverse", default_value = "inverse")]
    pub nabla_weights: String,
}

impl ConventionArgs {
    pub fn resolve(&self) -> Result<NablaConvention> {
        Ok(NablaConvention {
            jprime: self.jprime_convention.parse::<JPrime>().map_err(anyhow::Error::msg)?,
            weights: self.nabla_weights.parse::<NablaWeights>().map_err(anyhow::Error::msg)?,
        })
    }
}

#[derive(Args)]
pub struct RootsArgs {
    #[command(flatten)]
    pub t: TypeArgs,
    /// Also write the Cartan matrix as CSV to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args)]
pub struct WeylArgs {
    #[command(flatten)]
    pub t: TypeArgs,
    /// A subset J of simple indices, e.g. "1,2" or "[]".
    #[arg(long)]
    pub j: Option<String>,
    /// An element given as a word in the simple reflections, e.g. "1,2,1".
    #[arg(long)]
    pub word: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args)]
pub struct CharArgs {
    /// Cartan type (not used with --input).
    #[arg(long = "type", value_name = "TYPE", required_unless_present = "input")]
    pub cartan_type: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub max_rank: usize,
    #[arg(long = "override")]
    pub allow_large: bool,
    /// I(theta) as a subset of simple indices.
    #[arg(long, default_value = "[]")]
    pub itheta: String,
    /// J, a subset of I(theta).
    #[arg(long, default_value = "[]")]
    pub j: String,
    /// Module: M, E or nabla.
    #[arg(long, default_value = "E")]
    pub kind: String,
    /// Label of the formal character.
    #[arg(long, default_value = "theta")]
    pub label: String,
    #[command(flatten)]
    pub conv: ConventionArgs,
    /// Read a character file and write it back in canonical form.
    #[arg(long, conflicts_with = "cartan_type")]
    pub input: Option<PathBuf>,
    /// Reject non-canonical coset representatives instead of fixing them.
    #[arg(long)]
    pub strict: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct DecomposeArgs {
    /// Character file to decompose.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub strict: bool,
    /// canonical, reversed or shuffled (uses --seed).
    #[arg(long, default_value = "canonical")]
    pub tie_break: String,
    #[arg(long, default_value_t = catx_core::incidence::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long = "override")]
    pub allow_large: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args)]
pub struct AlgebraArgs {
    /// n, the size of the underlying set.
    #[arg(long)]
    pub n: usize,
    /// Module file to decompose into indecomposables.
    #[arg(long)]
    pub module: Option<PathBuf>,
    #[arg(long, default_value_t = catx_core::incidence::DEFAULT_SEED)]
    pub seed: u64,
    /// Also write the Cartan matrix as CSV to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long = "override")]
    pub allow_large: bool,
    #[command(flatten)]
    pub output: Output,
}

pub fn parse_type(s: &str, max_rank: usize, allow_large: bool) -> Result<CartanType> {
    if max_rank > 4 && !allow_large {
        bail!("--max-rank {max_rank} exceeds 4; pass --override to allow it");
    }
    let t: CartanType = s.parse()?;
    if t.rank() > max_rank && !allow_large {
        bail!("type {t} has rank {} above the limit {max_rank}", t.rank());
    }
    Ok(t)
}

pub fn parse_subset(s: &str) -> Result<Subset> {
    s.parse::<Subset>().map_err(anyhow::Error::msg)
}

pub fn parse_kind(s: &str) -> Result<ModuleKind> {
    s.parse::<ModuleKind>().map_err(anyhow::Error::msg)
}

/// Writes `text` to `path`, or to standard output.
pub fn emit(text: &str, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| anyhow::anyhow!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Roots(a) => commands::roots(a),
        Command::Weyl(a) => commands::weyl(a),
        Command::Char(a) => commands::character(a),
        Command::Decompose(a) => commands::decompose(a),
        Command::Verify(a) => suite::verify(a),
        Command::Algebra(a) => commands::algebra(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("catx: error: {e:#}");
            ExitCode::from(2)
        }
    }
}

//! Batch verifier for structure-constant data: weak bialgebras, bialgebroids,
//! separable Frobenius structures and monoidal functor fragments.
//!
//! Exit codes: 0 all checks passed, 1 axiom failure (the certificate lists
//! witnesses), 2 input error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qgroupoid_cli::commands::{self, CommandOutput, GenOptions, NamedInput, Rendered};
use qgroupoid_cli::doc::{to_canonical_json, FieldDesc};
use qgroupoid_cli::CliError;

#[derive(Parser)]
#[command(
    name = "qgroupoid",
    version,
    about = "Exact verifier for weak bialgebras, bialgebroids and monoidal functor fragments"
)]
struct Cli {
    /// Output format for certificates.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the algebra axioms of a structure-constant algebra.
    CheckAlgebra { input: String },
    /// Verify the weak bialgebra axiom suite.
    CheckWba { input: String },
    /// Verify the right bialgebroid axiom suite, including the Takeuchi data.
    CheckBialgebroid { input: String },
    /// Verify a separable Frobenius structure.
    CheckFrobenius { input: String },
    /// Derive the bialgebroid and base Frobenius structure of a weak bialgebra.
    DeriveBialgebroid { input: String },
    /// Rebuild a weak bialgebra from a bialgebroid and a Frobenius structure.
    DeriveWba {
        bialgebroid: String,
        frobenius: Option<String>,
    },
    /// Factor a monoidal functor fragment through bimodules over its base.
    Factorize { input: String },
    /// Decide essential strength of a fragment at one pair of objects.
    Strength {
        input: String,
        /// The pair of object names, as `a,b`.
        #[arg(long)]
        pair: String,
    },
    /// Verify a separable Frobenius structure on a functor fragment.
    FrobeniusFunctor { input: String },
    /// Generate corpus inputs.
    Gen {
        /// groupoid-wba, group-wba, dual-group-wba, matrix-frobenius,
        /// forgetful-fragment or invariants-fragment.
        #[arg(long)]
        kind: String,
        /// Q or Fp:<p>.
        #[arg(long, default_value = "Q")]
        field: String,
        /// discrete, pair or group (for groupoid kinds).
        #[arg(long, default_value = "discrete")]
        pattern: String,
        /// Number of groupoid objects.
        #[arg(long, default_value_t = 2)]
        objects: usize,
        /// z<n> or s3 (for group kinds).
        #[arg(long, default_value = "z2")]
        group: String,
        /// Matrix size for matrix-frobenius.
        #[arg(long, default_value_t = 2)]
        size: usize,
        /// Longest tensor word in generated fragments.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

fn read_input(path: &str) -> Result<NamedInput, CliError> {
    let bytes = if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        buf
    } else {
        std::fs::read(path)?
    };
    Ok(NamedInput {
        source: path.to_string(),
        bytes,
    })
}

fn run(cli: &Cli) -> Result<CommandOutput, CliError> {
    match &cli.command {
        Cmd::CheckAlgebra { input } => commands::check_algebra_cmd(&read_input(input)?),
        Cmd::CheckWba { input } => commands::check_wba_cmd(&read_input(input)?),
        Cmd::CheckBialgebroid { input } => commands::check_bialgebroid_cmd(&read_input(input)?),
        Cmd::CheckFrobenius { input } => commands::check_frobenius_cmd(&read_input(input)?),
        Cmd::DeriveBialgebroid { input } => commands::derive_bialgebroid_cmd(&read_input(input)?),
        Cmd::DeriveWba {
            bialgebroid,
            frobenius,
        } => {
            let b = read_input(bialgebroid)?;
            let f = frobenius.as_ref().map(|p| read_input(p)).transpose()?;
            commands::derive_wba_cmd(&b, f.as_ref())
        }
        Cmd::Factorize { input } => commands::factorize_cmd(&read_input(input)?),
        Cmd::Strength { input, pair } => commands::strength_cmd(&read_input(input)?, pair),
        Cmd::FrobeniusFunctor { input } => commands::frobenius_functor_cmd(&read_input(input)?),
        Cmd::Gen {
            kind,
            field,
            pattern,
            objects,
            group,
            size,
            depth,
        } => commands::gen_cmd(&GenOptions {
            kind: kind.clone(),
            field: FieldDesc::from_flag(field)?,
            pattern: pattern.clone(),
            objects: *objects,
            group: group.clone(),
            size: *size,
            depth: *depth,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            match &output.rendered {
                Rendered::Certificate(cert) => match cli.format {
                    Format::Text => print!("{}", cert.to_text()),
                    Format::Json => print!("{}", cert.to_json()),
                },
                Rendered::Document(doc) => print!("{}", to_canonical_json(doc)),
            }
            if output.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

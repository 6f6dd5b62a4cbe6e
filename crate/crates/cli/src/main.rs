use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use contact_duality::error::Error;
use contact_duality::finba::DEFAULT_MAX_ATOMS;
use contact_duality::io::{self, Document};

mod commands;
mod render;

use render::Outcome;

#[derive(Parser, Debug)]
#[command(name = "contact-duality", version, about = "Finite contact algebras and their dual spaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Largest accepted atom count.
    #[arg(long, env = "CONTACT_DUALITY_MAX_ATOMS", default_value_t = DEFAULT_MAX_ATOMS, global = true)]
    max_atoms: usize,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pal,
    Dval,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check the axioms of any document (kind detected from its keys).
    Validate { file: PathBuf },
    /// List the clusters of a contact or local contact algebra.
    Clusters { file: PathBuf },
    /// Dual space of a local contact algebra, with the λ^g table.
    Dualize { file: PathBuf },
    /// Regular closed algebra of a finite space.
    Lift { file: PathBuf },
    /// Dual of a map (a morphism) or of a morphism (a map).
    DualMap { file: PathBuf },
    /// Check a morphism against PAL1–PAL6 or DVAL1–DVAL4.
    CheckMorphism {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Pal)]
        kind: Kind,
    },
    /// OUTER ⋄ INNER: apply INNER first, then OUTER, then modify.
    Compose { outer: PathBuf, inner: PathBuf },
    /// Naturality checks for a space, map, algebra or morphism.
    Roundtrip {
        file: PathBuf,
        /// Self-maps sampled for spaces with more than four points.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Calculator for regions of the rational line, e.g. "[-inf,0] u [1/2,3/4]".
    Region {
        #[command(subcommand)]
        op: RegionOp,
    },
}

#[derive(Subcommand, Debug)]
pub enum RegionOp {
    Join { a: String, b: String },
    Meet { a: String, b: String },
    Complement { a: String },
    Le { a: String, b: String },
    Contact { a: String, b: String },
    WayBelow { a: String, b: String },
    Bounded { a: String },
    /// A bounded H with F ≪ H ≪ G.
    Interpolate { f: String, g: String },
    /// Preimage of F under x ↦ αx + β.
    AffineDual {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
        f: String,
    },
}

/// A failure that ends the run with exit status 2.
#[derive(Debug)]
pub struct Structural(pub String);

pub struct Loaded {
    pub doc: Document,
}

/// Reads and parses a document, positioning errors as `file:line:col`.
pub fn load(path: &Path, max_atoms: usize) -> Result<Loaded, Structural> {
    let text = fs::read_to_string(path).map_err(|e| Structural(format!("{}: {e}", path.display())))?;
    io::parse_document(&text, max_atoms)
        .map(|doc| Loaded { doc })
        .map_err(|e| Structural(locate(path, &text, &e)))
}

fn locate(path: &Path, text: &str, e: &Error) -> String {
    let (line, col) = match e {
        Error::Syntax { line, col, .. } => (*line, *col),
        Error::UnknownName(n) | Error::DuplicateName(n) => find_token(text, n).unwrap_or((1, 1)),
        _ => (1, 1),
    };
    let msg = match e {
        Error::Syntax { msg, .. } => msg.clone(),
        other => other.to_string(),
    };
    format!("{}:{line}:{col}: {msg}", path.display())
}

fn find_token(text: &str, name: &str) -> Option<(usize, usize)> {
    let needle = format!("\"{name}\"");
    let offset = text.find(&needle)?;
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    Some((line, col))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        max_atoms: cli.max_atoms,
        seed: cli.seed,
    };
    let result = match &cli.verb {
        Verb::Validate { file } => commands::validate(&ctx, file),
        Verb::Clusters { file } => commands::clusters(&ctx, file),
        Verb::Dualize { file } => commands::dualize(&ctx, file),
        Verb::Lift { file } => commands::lift(&ctx, file),
        Verb::DualMap { file } => commands::dual_map(&ctx, file),
        Verb::CheckMorphism { file, kind } => commands::check_morphism(&ctx, file, *kind),
        Verb::Compose { outer, inner } => commands::compose(&ctx, outer, inner),
        Verb::Roundtrip { file, samples } => commands::roundtrip(&ctx, file, *samples),
        Verb::Region { op } => commands::region(op),
    };
    match result.and_then(|out| emit(&out, cli.format).map(|()| out)) {
        Ok(out) if out.pass => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(Structural(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Outcome, format: Format) -> Result<(), Structural> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
        Format::Text => print!("{}", out.text),
        Format::Dot => match &out.dot {
            Some(dot) => print!("{dot}"),
            None => return Err(Structural("dot output is not available for this verb".into())),
        },
    }
    Ok(())
}

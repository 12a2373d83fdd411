//! p1dyn: exact reports over self-maps of the projective line — resultant
//! divisors, stability classes, minimal resultants with certificates,
//! Lattès families and critical conductors.

mod checks;
mod commands;
mod ser;

use clap::{Parser, Subcommand, ValueEnum};
use commands::Failure;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "p1dyn", version, about = "Exact invariants of self-maps of P¹")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ex1,
    Ex2,
    Nf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Section {
    All,
    Examples,
    Lattes,
    Critical,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: resultant divisor, stability, minimal resultant,
    /// critical conductor
    Analyze {
        map: PathBuf,
        #[arg(long, default_value_t = 8)]
        budget: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        skip_critical: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Emit a map description for one of the documented families
    Family {
        #[arg(value_enum)]
        kind: FamilyArg,
        #[arg(long = "N")]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The Lattès map of multiplication by n on y² = x³ + Ax + B
    Lattes {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Minimal resultant divisor with per-place certificates
    Minimal {
        map: PathBuf,
        #[arg(long, default_value_t = 8)]
        budget: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Critical conductor with per-place collision attribution
    Critical {
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Recompute the documented claims and report computed vs expected
    PaperCheck {
        #[arg(long, value_enum, default_value_t = Section::All)]
        section: Section,
        #[arg(long, default_value_t = 8)]
        budget: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: &Option<PathBuf>, format: Format, v: serde_json::Value) -> Result<(), Failure> {
    if format == Format::Tsv {
        return Err(Failure::Usage(
            "tsv output is only available for paper-check".into(),
        ));
    }
    emit(out, format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
}

fn run() -> Result<(), Failure> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze {
            map,
            budget,
            seed,
            skip_critical,
            out,
            format,
        } => {
            let v = commands::cmd_analyze(map, *budget, *seed, *skip_critical)?;
            emit_json(out, *format, v)
        }
        Command::Family {
            kind,
            n,
            a,
            b,
            p,
            out,
            format,
        } => {
            let kind = match kind {
                FamilyArg::Ex1 => commands::FamilyKind::Ex1,
                FamilyArg::Ex2 => commands::FamilyKind::Ex2,
                FamilyArg::Nf => commands::FamilyKind::Nf,
            };
            let v = commands::cmd_family(&kind, *n, a.as_deref(), b.as_deref(), *p)?;
            emit_json(out, *format, v)
        }
        Command::Lattes {
            a,
            b,
            n,
            out,
            format,
        } => {
            let v = commands::cmd_lattes(a, b, *n)?;
            emit_json(out, *format, v)
        }
        Command::Minimal {
            map,
            budget,
            seed,
            out,
            format,
        } => {
            let v = commands::cmd_minimal(map, *budget, *seed)?;
            emit_json(out, *format, v)
        }
        Command::Critical { map, out, format } => {
            let v = commands::cmd_critical(map)?;
            emit_json(out, *format, v)
        }
        Command::PaperCheck {
            section,
            budget,
            seed: _,
            out,
            format,
        } => {
            let section = match section {
                Section::All => "all",
                Section::Examples => "examples",
                Section::Lattes => "lattes",
                Section::Critical => "critical",
            };
            let rows = checks::paper_check_rows(section, *budget);
            match format {
                Format::Tsv => emit(out, checks::rows_tsv(&rows)),
                Format::Json => emit(
                    out,
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&checks::rows_json(&rows)).unwrap()
                    ),
                ),
            }
        }
    }
}

fn main() {
    let code = match std::panic::catch_unwind(run) {
        Ok(Ok(())) => 0,
        Ok(Err(Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            2
        }
        Ok(Err(Failure::Degenerate(msg))) => {
            eprintln!("error: {msg}");
            3
        }
        Err(_) => {
            eprintln!("error: internal invariant violated");
            4
        }
    };
    std::process::exit(code);
}

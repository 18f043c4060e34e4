//! `homleib`: check and construct Hom-Leibniz type algebras given by
//! structure constants.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check or a
//! construction hypothesis fails, 2 on malformed input or invalid usage.

mod check;
mod construct;
mod error;
mod inputs;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homleib::corpus::{corpus_diff, corpus_list, corpus_root, corpus_run};
use homleib::identities::{Catalog, Report};
use homleib::scalar::FieldSpec;

use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "homleib", version, about = "Exact checks and constructions for Hom-Leibniz type algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Worker threads for basis-assignment evaluation (output order does not depend on it).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Seed for every random draw (`--fuzz`).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check identities of a presentation and print the report.
    Check(check::CheckArgs),
    /// Build a new presentation (or action file) and verify it.
    Construct(construct::ConstructArgs),
    /// Re-render a machine report read from a file or standard input.
    Report(ReportArgs),
    /// Run corpus entries and compare them with their golden reports.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Machine report to read (standard input when omitted).
    file: Option<PathBuf>,
    /// Field the residuals are written over.
    #[arg(long, default_value = "rationals")]
    field: String,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Entry ids (all entries when omitted).
    ids: Vec<String>,
    /// Print the entry reports instead of comparing them.
    #[arg(long)]
    print: bool,
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Machine => report.render_machine(),
    }
}

fn verdict(report: &Report) -> Result<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(f) => Err(CliError::Failed(format!("check failed: {}", f.identity))),
    }
}

fn cmd_check(args: &check::CheckArgs, global: &Global) -> Result<()> {
    let report = check::run(args, global)?;
    print!("{}", render(&report, global.format));
    verdict(&report)
}

fn cmd_construct(args: &construct::ConstructArgs, global: &Global) -> Result<()> {
    let built = construct::run(args)?;
    let mut evidence = built.preconditions.clone();
    evidence.extend(built.verification.clone());
    let text = render(&evidence, global.format);
    if args.out.is_some() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    if built.sound() {
        Ok(())
    } else {
        Err(CliError::Failed("the construction did not verify".into()))
    }
}

fn cmd_report(args: &ReportArgs, global: &Global) -> Result<()> {
    let field = FieldSpec::parse(&args.field).map_err(|e| CliError::usage(format!("--field: {e}")))?;
    let text = match &args.file {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(format!("stdin: {e}")))?;
            s
        }
    };
    let report = if text.trim().is_empty() {
        Report::new(field)
    } else {
        Report::parse_machine(&text, &field).map_err(CliError::Usage)?
    };
    print!("{}", render(&report, global.format));
    Ok(())
}

fn cmd_corpus(args: &CorpusArgs) -> Result<()> {
    let entries = corpus_list(&corpus_root())?;
    let mut unknown = args.ids.iter().filter(|id| !entries.iter().any(|e| &e.id == *id));
    if let Some(id) = unknown.next() {
        return Err(CliError::usage(format!("unknown corpus entry `{id}`")));
    }
    let mut mismatches = 0;
    for entry in entries.iter().filter(|e| args.ids.is_empty() || args.ids.contains(&e.id)) {
        if args.print {
            print!("{}", corpus_run(entry)?);
            continue;
        }
        match corpus_diff(entry)? {
            None => println!("ok {}", entry.id),
            Some(diff) => {
                mismatches += 1;
                println!("MISMATCH {}: {diff}", entry.id);
            }
        }
    }
    if mismatches > 0 {
        return Err(CliError::Failed(format!("{mismatches} corpus entries differ from their golden reports")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = Catalog::from_env() {
        eprintln!("homleib: identity catalog: {e}");
        return ExitCode::from(2);
    }
    let outcome = match &cli.command {
        Command::Check(a) => cmd_check(a, &cli.global),
        Command::Construct(a) => cmd_construct(a, &cli.global),
        Command::Report(a) => cmd_report(a, &cli.global),
        Command::Corpus(a) => cmd_corpus(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("homleib: {e}");
            e.exit_code()
        }
    }
}

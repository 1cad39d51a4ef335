//! `damlc`: command-line front end for data architecture models.
//!
//! Exit codes: 0 success, 1 validation errors, 2 parse or lex failure,
//! 3 usage or I/O error. With several inputs the worst code wins.

mod commands;
mod style;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use daml_core::Template;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Invalid = 1,
    Syntax = 2,
    Usage = 3,
}

impl Status {
    pub fn worst(self, other: Status) -> Status {
        self.max(other)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "damlc",
    version,
    about = "Check, format, export and analyze data architecture models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate models.
    Check(CheckArgs),
    /// Print or rewrite a model in canonical form.
    Fmt(FmtArgs),
    /// Convert a valid model to Graphviz DOT or interchange JSON.
    Export(ExportArgs),
    /// Report topology pattern, reachability or per-node flow.
    Analyze(AnalyzeArgs),
    /// Write a bundled template model into a directory.
    Init(InitArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Treat warnings as errors for the exit code.
    #[arg(long)]
    pub deny_warnings: bool,
    #[arg(long, value_enum, default_value_t = DiagnosticsFormat::Text)]
    pub diagnostics: DiagnosticsFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagnosticsFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct FmtArgs {
    pub file: PathBuf,
    /// Rewrite the file in place when it is not canonical.
    #[arg(long)]
    pub write: bool,
    /// Exit 1 instead of printing when the file is not canonical.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub format: ExportFormat,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    /// Classify the topology and print the evidence paths.
    #[arg(long)]
    pub pattern: bool,
    /// Print the nodes reachable from NODE, one per line.
    #[arg(long, value_name = "NODE")]
    pub reachability: Option<String>,
    /// Print degree, formats and role of every node.
    #[arg(long)]
    pub summary: bool,
}

#[derive(Args, Debug)]
pub struct InitArgs {
    #[arg(long, value_enum)]
    pub template: TemplateName,
    pub dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TemplateName {
    Dosm,
    Lambda,
    Kappa,
    Pipeline,
}

impl From<TemplateName> for Template {
    fn from(t: TemplateName) -> Template {
        match t {
            TemplateName::Dosm => Template::Dosm,
            TemplateName::Lambda => Template::Lambda,
            TemplateName::Kappa => Template::Kappa,
            TemplateName::Pipeline => Template::Pipeline,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Status::Usage as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let status = match cli.command {
        Command::Check(args) => commands::check(&args),
        Command::Fmt(args) => commands::fmt(&args),
        Command::Export(args) => commands::export(&args),
        Command::Analyze(args) => commands::analyze(&args),
        Command::Init(args) => commands::init(&args),
    };
    ExitCode::from(status as u8)
}

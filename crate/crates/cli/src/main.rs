use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod render;

use render::Outcome;

#[derive(Parser, Debug)]
#[command(name = "multicat", version, about = "Check laws of finite multicategories and cartesian structures")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Arity bound for every enumerative check. Overrides the document's own bound.
    #[arg(long, env = "MULTICAT_BOUND", global = true)]
    bound: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlongArg {
    Tot,
    Bij,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the multicategory laws of a document.
    Validate { doc: String },
    /// Check a cartesian structure by both law formulations.
    CheckCartesian {
        doc: String,
        /// Reindexing table: {"gamma": [...]}, {"gamma": "unique"} or {"gamma": "rig:<file>"}.
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Emit the free cartesian multicategory on a document, or check it.
    FreeCartesian {
        doc: String,
        /// Run the cartesian law suite instead of emitting the document.
        #[arg(long)]
        check: bool,
    },
    /// Universal products, or with --equivalence all three product notions.
    Products {
        doc: String,
        #[arg(long)]
        equivalence: bool,
        /// Instances on which conversions and the direct span check run.
        #[arg(long, default_value_t = 16)]
        sample: usize,
    },
    /// Isomorphism classes of objects and the tensor monoid if representable.
    Burnside { doc: String },
    /// Pull a multicategory back along Tot or Bij and check the result.
    BaseChange {
        doc: String,
        #[arg(long, value_enum)]
        along: AlongArg,
    },
    /// Check a set-valued model of a cartesian theory.
    CheckModel { theory: String, model: String },
    /// Print a built-in example document.
    Examples { name: Option<String> },
}

/// Read a path, or standard input for `-`.
pub fn read_input(path: &str) -> Result<String, commands::CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| commands::CliError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| commands::CliError::Io(format!("{path}: {e}")))
    }
}

fn run(cli: &Cli) -> Outcome {
    let b = cli.bound;
    let result = match &cli.command {
        Command::Validate { doc } => commands::validate(doc, b),
        Command::CheckCartesian { doc, gamma } => commands::check_cartesian(doc, gamma.as_deref(), b),
        Command::FreeCartesian { doc, check } => commands::free_cartesian(doc, *check, b),
        Command::Products {
            doc,
            equivalence,
            sample,
        } => commands::products(doc, *equivalence, *sample, b),
        Command::Burnside { doc } => commands::burnside(doc, b),
        Command::BaseChange { doc, along } => commands::base_change(doc, *along, b),
        Command::CheckModel { theory, model } => commands::check_model(theory, model, b),
        Command::Examples { name } => commands::examples(name.as_deref(), b),
    };
    result.unwrap_or_else(Outcome::error)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    out.print(cli.format);
    ExitCode::from(out.code)
}

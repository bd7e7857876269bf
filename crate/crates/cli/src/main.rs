use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use topos_cli::commands::{execute, Command, Format, Options};
use topos_cli::{parse_topos, parse_workspace_with, CliError};

#[derive(Parser)]
#[command(
    name = "topos",
    version,
    about = "Evaluate first-order formulas inside finite topoi"
)]
struct Cli {
    /// Workspace file declaring the topos, a sort, symbols and formulas.
    #[arg(long, global = true, value_name = "FILE")]
    workspace: Option<PathBuf>,
    /// Topos selector, e.g. `finset`, `arrow`, `slice(finset, {x, y})`.
    /// Overrides the workspace's own selector.
    #[arg(long, global = true, value_name = "NAME")]
    topos: Option<String>,
    /// Print every composite built while interpreting.
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Ascii)]
    format: OutputFormat,
    /// Size bound for probe objects in `axioms`.
    #[arg(long, global = true, value_name = "K", default_value_t = 2)]
    bound: usize,
    #[command(subcommand)]
    command: Action,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Ascii,
    Json,
}

#[derive(Subcommand)]
enum Action {
    /// Evaluate a sentence (by name or literally); all named formulas if omitted.
    Eval { formula: Option<String> },
    /// Truth tables of the connectives over the global truth values.
    Tables,
    /// Booleanness, well-pointedness, choice and natural numbers objects.
    Axioms,
    /// Subobjects of an object with their characters.
    Subobjects { object: Option<String> },
}

fn main_inner(cli: Cli) -> Result<u8, CliError> {
    let override_topos = cli
        .topos
        .as_deref()
        .map(parse_topos)
        .transpose()
        .map_err(|e| CliError::Usage(format!("--topos: {e}")))?;
    let (origin, text) = match (&cli.workspace, &override_topos) {
        (Some(path), _) => (path.display().to_string(), std::fs::read_to_string(path)?),
        (None, Some(spec)) => ("--topos".to_string(), format!("topos {spec}")),
        (None, None) => {
            return Err(CliError::Usage(
                "give --workspace FILE or --topos NAME".into(),
            ))
        }
    };
    let workspace = parse_workspace_with(&text, override_topos.as_ref())
        .map_err(|e| CliError::Usage(format!("{origin}:{e}")))?;
    let command = match cli.command {
        Action::Eval { formula } => Command::Eval(formula),
        Action::Tables => Command::Tables,
        Action::Axioms => Command::Axioms,
        Action::Subobjects { object } => Command::Subobjects(object),
    };
    let options = Options {
        trace: cli.trace,
        format: match cli.format {
            OutputFormat::Ascii => Format::Ascii,
            OutputFormat::Json => Format::Json,
        },
        bound: cli.bound,
    };
    let output = execute(&workspace, &command, &options)?;
    print!("{}", output.text);
    Ok(output.exit)
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

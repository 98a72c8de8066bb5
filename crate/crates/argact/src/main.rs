use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use argact::commands::{self, EntailMode, ModelsKind, Semantics};
use argact::core::{DomainDescription, Limits};
use argact::report::{error_exit_code, exit, Report};
use argact::{corpus, parse_domain};
use clap::{Parser, Subcommand, ValueEnum};

/// Argumentation-based reasoning about action.
#[derive(Parser, Debug)]
#[command(name = "argact", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the extensions of a domain.
    Solve {
        /// A `.ad` file, or the name of a bundled domain.
        file: String,
        /// Defaults to the plausibility notion of the domain's mode.
        #[arg(long, value_enum)]
        semantics: Option<Semantics>,
        /// Keep only the extensions with ⊂-minimal leniently rejected AQ.
        #[arg(long)]
        select_min_lr_aq: bool,
    },
    /// Query skeptical or credulous entailment.
    Entail {
        file: String,
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum)]
        semantics: Option<Semantics>,
        #[arg(long, value_enum, default_value_t = EntailMode::Skeptical)]
        mode: EntailMode,
    },
    /// Enumerate canonical or coherent models.
    Models {
        file: String,
        #[arg(long, value_enum, default_value_t = ModelsKind::Cpmm)]
        kind: ModelsKind,
        /// Print at most this many models.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Stable successor states of a state under an action.
    Trans {
        file: String,
        /// Comma-separated literals; defaults to the state Γ fixes at 0.
        #[arg(long)]
        state: Option<String>,
        /// Defaults to the action Γ says occurs over [0,1].
        #[arg(long)]
        action: Option<String>,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Check a correspondence theorem (1 to 7) on a domain.
    Verify {
        file: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        theorem: u8,
        /// Start state for theorem 7.
        #[arg(long)]
        state: Option<String>,
        /// Action for theorem 7.
        #[arg(long)]
        action: Option<String>,
    },
    /// The bundled example domains.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    /// Names of the bundled domains.
    List,
    /// Run every bundled domain against its recorded output.
    Run {
        /// Also write each output to `DIR/NAME.out`.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

fn limits() -> anyhow::Result<Limits> {
    let mut l = Limits::default();
    if let Ok(v) = std::env::var("ARGACT_MAX_ASSUMPTIONS") {
        l.max_assumptions = v.trim().parse().with_context(|| format!("ARGACT_MAX_ASSUMPTIONS={v:?}"))?;
    }
    Ok(l)
}

fn load(file: &str) -> anyhow::Result<DomainDescription> {
    let path = Path::new(file);
    let text = if path.exists() {
        std::fs::read_to_string(path).with_context(|| format!("reading {file}"))?
    } else {
        let name = file.strip_suffix(".ad").unwrap_or(file);
        match corpus::source(name) {
            Ok(s) => s.to_owned(),
            Err(_) => bail!(argact::Error::Usage(format!("{file}: no such file or bundled domain"))),
        }
    };
    Ok(parse_domain(&text)?)
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let limits = limits()?;
    Ok(match &cli.command {
        Command::Solve { file, semantics, select_min_lr_aq } => {
            let d = load(file)?;
            let sem = semantics.unwrap_or_else(|| Semantics::for_mode(d.mode));
            Report::Solve(commands::solve(&d, sem, *select_min_lr_aq, limits)?)
        }
        Command::Entail { file, formula, semantics, mode } => {
            let d = load(file)?;
            let sem = semantics.unwrap_or_else(|| Semantics::for_mode(d.mode));
            Report::Entail(commands::entail(&d, formula, sem, *mode, limits)?)
        }
        Command::Models { file, kind, limit } => Report::Models(commands::models(&load(file)?, *kind, *limit)?),
        Command::Trans { file, state, action, max_steps } => {
            Report::Trans(commands::transition(&load(file)?, state.as_deref(), action.as_deref(), *max_steps)?)
        }
        Command::Verify { file, theorem, state, action } => {
            Report::Verify(commands::verify(&load(file)?, *theorem, state.as_deref(), action.as_deref(), limits)?)
        }
        Command::Corpus { command: CorpusCommand::List } => Report::List { domains: corpus::names() },
        Command::Corpus { command: CorpusCommand::Run { write } } => {
            let r = corpus::run(limits)?;
            if let Some(dir) = write {
                std::fs::create_dir_all(dir)?;
                for e in &r.entries {
                    std::fs::write(dir.join(format!("{}.out", e.name)), &e.output)?;
                }
            }
            Report::Corpus(r)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => {
                    print!("{report}");
                    if let Report::Corpus(r) = &report {
                        for e in r.entries.iter().filter(|e| !e.matches) {
                            print!("--- {} produced:\n{}", e.name, e.output);
                        }
                    }
                }
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("reports serialise"));
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<argact::Error>().map_or(exit::INVALID, error_exit_code);
            ExitCode::from(code as u8)
        }
    }
}

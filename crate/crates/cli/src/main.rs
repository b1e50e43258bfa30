use std::io::{IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cup_cli::app::{self, Format, Options, Outcome, EXIT_FAILURE, EXIT_USAGE};
use cup_cli::store::{self, StoreError};
use cup_core::catalog::{Catalog, ScenarioEntry};

/// Parse, check, explain and draw cloud usage patterns such as `ip.s.e`.
///
/// PATTERN arguments are taken literally; `@FILE` reads the pattern from a
/// file and `-` from standard input. Quote patterns with parentheses so the
/// shell leaves them alone.
#[derive(Parser)]
#[command(name = "cup", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show the syntax tree.
    Parse { pattern: String },
    /// List diagnostics; fails if any is an error.
    Check { pattern: String },
    /// Describe stakeholders, SLAs, organizations and merges.
    Explain {
        pattern: String,
        /// Unit of the sizes, e.g. `hundreds`.
        #[arg(long)]
        unit: Option<String>,
    },
    /// Print the canonical form.
    Canon { pattern: String },
    /// Compare two patterns up to group order.
    Eq { a: String, b: String },
    /// Draw the pattern as Graphviz DOT or SVG.
    Render {
        pattern: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: RenderFormat,
        /// Write to FILE instead of standard output.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Work with scenario catalogs (the built-in corpus by default).
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Dot,
    Svg,
}

#[derive(clap::Args)]
struct Source {
    /// Catalog file to use instead of the built-in corpus.
    #[arg(long, value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List all entries.
    List {
        #[command(flatten)]
        source: Source,
    },
    /// Entries matching every predicate, e.g. `has_hybrid` or
    /// `external_sla_at=IaaS->End-user`.
    Query {
        #[arg(required = true)]
        predicates: Vec<String>,
        #[command(flatten)]
        source: Source,
    },
    /// Entries whose pattern matches, ignoring group order and sizes.
    Find {
        pattern: String,
        #[command(flatten)]
        source: Source,
    },
    /// Write the catalog as JSON.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Add an entry to a catalog file, creating the file if needed.
    Add {
        key: String,
        pattern: String,
        #[arg(long)]
        title: String,
        #[arg(long)]
        app_type: Option<String>,
        #[arg(long)]
        size_unit: Option<String>,
        #[arg(long)]
        note: Option<String>,
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let color = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
    let opts = Options {
        json: cli.json,
        color: false,
    };
    let stdout_color = color && std::io::stdout().is_terminal();
    let stderr_color = color && std::io::stderr().is_terminal();

    let outcome = match run(cli.command, opts, stdout_color, stderr_color) {
        Ok(outcome) => outcome,
        Err(outcome) => outcome,
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}

fn usage(message: String) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
        code: EXIT_USAGE,
    }
}

/// Resolves `@FILE` and `-` arguments.
fn input(arg: &str) -> Result<String, Outcome> {
    let text = if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| usage(format!("reading standard input: {e}")))?;
        text
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?
    } else {
        return Ok(arg.to_string());
    };
    Ok(text.trim_end_matches(['\n', '\r']).to_string())
}

fn catalog(source: &Source) -> Result<Catalog, Outcome> {
    match &source.file {
        None => Ok(Catalog::builtin()),
        Some(path) => store::load(path).map_err(store_failure),
    }
}

fn store_failure(err: StoreError) -> Outcome {
    let mut stderr = format!("error: {err}\n");
    if let StoreError::ValidationFailed { diagnostics, .. } = &err {
        for d in diagnostics {
            stderr.push_str(&format!("  {d}\n"));
        }
    }
    let code = match err {
        StoreError::Io { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    };
    Outcome {
        stdout: String::new(),
        stderr,
        code,
    }
}

fn write_output(path: Option<&Path>, outcome: Outcome) -> Outcome {
    let Some(path) = path else { return outcome };
    if outcome.code != 0 {
        return outcome;
    }
    match std::fs::write(path, outcome.stdout.as_bytes()) {
        Ok(()) => Outcome {
            stdout: String::new(),
            ..outcome
        },
        Err(e) => usage(format!("{}: {e}", path.display())),
    }
}

fn run(command: Command, opts: Options, out_color: bool, err_color: bool) -> Result<Outcome, Outcome> {
    // Diagnostics go to stdout for `check` and to stderr elsewhere.
    let on_stderr = Options { color: err_color, ..opts };
    Ok(match command {
        Command::Parse { pattern } => app::cmd_parse(&input(&pattern)?, on_stderr),
        Command::Check { pattern } => app::cmd_check(&input(&pattern)?, Options { color: out_color, ..opts }),
        Command::Explain { pattern, unit } => app::cmd_explain(&input(&pattern)?, unit.as_deref(), on_stderr),
        Command::Canon { pattern } => app::cmd_canon(&input(&pattern)?, on_stderr),
        Command::Eq { a, b } => {
            if a == "-" && b == "-" {
                return Err(usage("only one pattern can come from standard input".into()));
            }
            app::cmd_eq(&input(&a)?, &input(&b)?, on_stderr)
        }
        Command::Render { pattern, format, output } => {
            let format = match format {
                RenderFormat::Dot => Format::Dot,
                RenderFormat::Svg => Format::Svg,
            };
            write_output(output.as_deref(), app::cmd_render(&input(&pattern)?, format, on_stderr))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { source } => app::cmd_catalog_list(&catalog(&source)?, opts),
            CatalogAction::Query { predicates, source } => {
                app::cmd_catalog_query(&catalog(&source)?, &predicates, opts)
            }
            CatalogAction::Find { pattern, source } => {
                app::cmd_catalog_find(&catalog(&source)?, &input(&pattern)?, on_stderr)
            }
            CatalogAction::Export { source, output } => {
                let text = store::to_json(&catalog(&source)?);
                write_output(output.as_deref(), Outcome { stdout: text, ..Outcome::default() })
            }
            CatalogAction::Add {
                key,
                pattern,
                title,
                app_type,
                size_unit,
                note,
                file,
            } => {
                let mut entries: Vec<ScenarioEntry> = if file.exists() {
                    store::load(&file).map_err(store_failure)?.entries().cloned().collect()
                } else {
                    Vec::new()
                };
                let mut entry = ScenarioEntry::new(&key, &title, &input(&pattern)?);
                entry.app_type = app_type;
                entry.size_unit = size_unit;
                entry.source_note = note;
                entries.push(entry);
                let updated = Catalog::new(entries).map_err(|e| store_failure(e.into()))?;
                store::save(&updated, &file).map_err(store_failure)?;
                Outcome {
                    stdout: format!("added {key} to {}\n", file.display()),
                    ..Outcome::default()
                }
            }
        },
    })
}

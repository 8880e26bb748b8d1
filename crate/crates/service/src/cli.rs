//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 parse or
//! translation failure, 3 network or backend failure.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use ontoforge_core::eval::{evaluate, evaluate_sequential, pattern_backend};
use ontoforge_core::gateway::{export_dataset, import_dataset, BackendConfig};
use ontoforge_core::gold::gold_examples;
use ontoforge_core::ofs::serialize;
use ontoforge_core::store::{load_document, save_document, ItemStatus, Ontology, StagedChange};

use crate::api::{serve, AppState};
use crate::service::{run_backend, BackendChoice, LlmBackend, ServiceError, Session};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_BACKEND: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ontoforge",
    version,
    about = "Supervised ontology enrichment from English sentences"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Translate one sentence and print its axioms.
    Translate {
        sentence: String,
        #[arg(long, value_enum, default_value_t = BackendChoice::Auto)]
        backend: BackendChoice,
        /// JSON backend configuration for the language-model backend.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Print the full translation result as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Translate a file of sentences into an ontology, one reviewed stage per sentence.
    Enrich {
        /// Ontology file; created if it does not exist.
        #[arg(long)]
        ontology: PathBuf,
        /// Sentences, one per line. Blank lines and lines starting with `#` are skipped.
        #[arg(long)]
        input: PathBuf,
        /// Accept every new axiom without asking.
        #[arg(long)]
        yes: bool,
        /// Write the result here instead of overwriting the ontology file.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BackendChoice::Auto)]
        backend: BackendChoice,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Score a backend against a JSON-lines dataset.
    Eval {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, value_enum, default_value_t = BackendChoice::Pattern)]
        backend: BackendChoice,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Score one pair at a time.
        #[arg(long)]
        sequential: bool,
    },
    /// Fine-tuning dataset tools.
    Dataset {
        #[command(subcommand)]
        command: DatasetCommand,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory of static files served next to the API.
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum DatasetCommand {
    /// Write a dataset as fine-tuning JSON lines.
    Export {
        /// Dataset to re-export; defaults to the bundled gold corpus.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output file; defaults to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<ServiceError> for CliError {
    fn from(e: ServiceError) -> Self {
        let code = if e.is_backend_failure() {
            EXIT_BACKEND
        } else {
            EXIT_FAILURE
        };
        CliError::new(code, e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::new(EXIT_USAGE, format!("{}: {e}", path.display()))
}

fn load_llm(config: Option<&Path>, choice: BackendChoice) -> Result<Option<LlmBackend>, CliError> {
    if choice == BackendChoice::Pattern {
        return Ok(None);
    }
    let Some(path) = config else {
        return Ok(None);
    };
    let config =
        BackendConfig::from_file(path).map_err(|e| CliError::new(EXIT_USAGE, e.to_string()))?;
    LlmBackend::from_config(config)
        .map(Some)
        .map_err(|e| CliError::new(EXIT_BACKEND, e.to_string()))
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run_from(
    args: impl IntoIterator<Item = OsString>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, input, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(
    command: Command,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Translate {
            sentence,
            backend,
            config,
            json,
        } => {
            let llm = load_llm(config.as_deref(), backend)?;
            let result = run_backend(&sentence, backend, &Ontology::new(), llm.as_ref())?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&result).unwrap()).unwrap();
            } else {
                writeln!(out, "{}", serialize(&result.axioms, false)).unwrap();
            }
            for r in &result.rejected {
                writeln!(err, "rejected: {} ({})", r.line, r.reason).unwrap();
            }
            Ok(())
        }
        Command::Enrich {
            ontology,
            input: sentences,
            yes,
            output,
            backend,
            config,
        } => {
            let llm = load_llm(config.as_deref(), backend)?;
            enrich(
                &ontology,
                &sentences,
                yes,
                output.as_deref(),
                backend,
                llm.as_ref(),
                input,
                out,
                err,
            )
        }
        Command::Eval {
            dataset,
            backend,
            config,
            json,
            sequential,
        } => {
            let bytes = std::fs::read(&dataset).map_err(|e| io_err(&dataset, e))?;
            let examples =
                import_dataset(&bytes).map_err(|e| CliError::new(EXIT_FAILURE, e.to_string()))?;
            let llm = load_llm(config.as_deref(), backend)?;
            if backend == BackendChoice::Llm && llm.is_none() {
                return Err(ServiceError::LlmUnavailable.into());
            }
            let run = |sentence: &str| -> Result<String, String> {
                if backend == BackendChoice::Pattern {
                    return pattern_backend(sentence);
                }
                let r = run_backend(sentence, backend, &Ontology::new(), llm.as_ref())
                    .map_err(|e| e.to_string())?;
                Ok(r.raw_completion
                    .unwrap_or_else(|| serialize(&r.axioms, false)))
            };
            let report = if sequential {
                evaluate_sequential(&examples, &run)
            } else {
                evaluate(&examples, &run)
            };
            if json {
                writeln!(out, "{}", report.to_json()).unwrap();
            } else {
                write!(out, "{}", report.render_table()).unwrap();
            }
            Ok(())
        }
        Command::Dataset {
            command:
                DatasetCommand::Export {
                    input: source,
                    output,
                },
        } => {
            let examples = match &source {
                Some(path) => {
                    let bytes = std::fs::read(path).map_err(|e| io_err(path, e))?;
                    import_dataset(&bytes)
                        .map_err(|e| CliError::new(EXIT_FAILURE, e.to_string()))?
                }
                None => gold_examples(),
            };
            let bytes = export_dataset(&examples)
                .map_err(|e| CliError::new(EXIT_FAILURE, e.to_string()))?;
            match output {
                Some(path) => std::fs::write(&path, bytes).map_err(|e| io_err(&path, e))?,
                None => out.write_all(&bytes).unwrap(),
            }
            Ok(())
        }
        Command::Serve {
            port,
            host,
            config,
            static_dir,
        } => {
            let llm = load_llm(config.as_deref(), BackendChoice::Auto)?;
            let runtime = tokio::runtime::Runtime::new()
                .map_err(|e| CliError::new(EXIT_BACKEND, e.to_string()))?;
            runtime
                .block_on(serve(
                    SocketAddr::new(host, port),
                    AppState::new(llm),
                    static_dir,
                ))
                .map_err(|e| CliError::new(EXIT_BACKEND, e.to_string()))
        }
    }
}

fn print_stage(staged: &StagedChange, out: &mut dyn Write) {
    writeln!(out, "\n> {}", staged.sentence).unwrap();
    for (i, item) in staged.items.iter().enumerate() {
        let status = format!("{:?}", item.status).to_uppercase();
        if item.detail.is_empty() {
            writeln!(out, "  [{i}] {status:<9} {}", item.axiom).unwrap();
        } else {
            writeln!(out, "  [{i}] {status:<9} {}  ({})", item.axiom, item.detail).unwrap();
        }
    }
}

fn new_items(staged: &StagedChange) -> BTreeSet<usize> {
    staged
        .items
        .iter()
        .enumerate()
        .filter(|(_, i)| i.status == ItemStatus::New)
        .map(|(k, _)| k)
        .collect()
}

/// Asks which items to accept. End of input means none.
fn ask(staged: &StagedChange, input: &mut dyn BufRead, out: &mut dyn Write) -> BTreeSet<usize> {
    loop {
        write!(out, "accept? [a]ll new, [n]one, or item numbers: ").unwrap();
        out.flush().unwrap();
        let mut line = String::new();
        if input.read_line(&mut line).unwrap_or(0) == 0 {
            writeln!(out).unwrap();
            return BTreeSet::new();
        }
        match line.trim() {
            "a" | "all" => return new_items(staged),
            "" | "n" | "none" => return BTreeSet::new(),
            picks => {
                let parsed: Result<BTreeSet<usize>, _> = picks
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(str::parse)
                    .collect();
                match parsed {
                    Ok(set) if set.iter().all(|&i| i < staged.items.len()) => return set,
                    _ => writeln!(
                        out,
                        "expected `a`, `n`, or numbers below {}",
                        staged.items.len()
                    )
                    .unwrap(),
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn enrich(
    ontology_path: &Path,
    sentences_path: &Path,
    yes: bool,
    output: Option<&Path>,
    backend: BackendChoice,
    llm: Option<&LlmBackend>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let ontology = if ontology_path.exists() {
        let text = std::fs::read_to_string(ontology_path).map_err(|e| io_err(ontology_path, e))?;
        load_document(&text)
            .map_err(|e| CliError::new(EXIT_FAILURE, format!("{}: {e}", ontology_path.display())))?
    } else {
        Ontology::new()
    };
    let sentences =
        std::fs::read_to_string(sentences_path).map_err(|e| io_err(sentences_path, e))?;

    let mut session = Session::new(ontology);
    let mut worst = 0;
    let mut last_message = String::new();
    for (n, sentence) in sentences.lines().enumerate() {
        let sentence = sentence.trim();
        if sentence.is_empty() || sentence.starts_with('#') {
            continue;
        }
        let staged = match session.handle_translate(sentence, backend, llm) {
            Ok(r) => {
                for rej in &r.translation.rejected {
                    writeln!(
                        err,
                        "line {}: rejected {} ({})",
                        n + 1,
                        rej.line,
                        rej.reason
                    )
                    .unwrap();
                }
                r.stage
            }
            Err(e) => {
                let e = CliError::from(e);
                writeln!(err, "line {}: {}", n + 1, e.message).unwrap();
                worst = worst.max(e.code);
                last_message = e.message;
                continue;
            }
        };
        print_stage(&staged, out);
        let accept = if yes {
            new_items(&staged)
        } else {
            ask(&staged, input, out)
        };
        let report = session.handle_decision(&staged.id, &accept)?;
        writeln!(
            out,
            "  added {}, skipped {} duplicate(s), revision {}",
            report.added, report.skipped_duplicates, report.new_revision
        )
        .unwrap();
    }

    let target = output.unwrap_or(ontology_path);
    std::fs::write(target, save_document(&session.ontology)).map_err(|e| io_err(target, e))?;
    writeln!(
        out,
        "\nwrote {} axioms to {}",
        session.ontology.len(),
        target.display()
    )
    .unwrap();
    if worst == 0 {
        Ok(())
    } else {
        Err(CliError::new(
            worst,
            format!("some sentences failed; last: {last_message}"),
        ))
    }
}

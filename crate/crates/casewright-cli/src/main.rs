//! Command-line front end: parse, validate, analyze, gate, review and render
//! argument case files.
//!
//! Exit codes: 0 on success with a clean result, 1 when diagnostics or gate
//! failures were reported, 2 for usage and I/O problems. Diagnostics go to
//! standard error; requested output goes to standard output or `--out`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use casewright::analysis::{self, Severity};
use casewright::dsl;
use casewright::model::ArgumentModel;
use casewright::render::{render_graph, render_report, View};
use casewright::workflow::{self, WorkflowError};

#[derive(Parser)]
#[command(
    name = "casewright",
    version,
    about = "Safety-case workbench: argument files, challenges, gates and views"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a case file; silent when clean.
    Check { file: PathBuf },
    /// Print every element status and challenge state.
    Status { file: PathBuf },
    /// Emit a dot graph of the argument.
    View {
        file: PathBuf,
        /// core, dialectic, confidence, operational or full
        #[arg(long, default_value = "full")]
        view: String,
        /// Write to this path instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the full plain-text case report.
    Report { file: PathBuf },
    /// Show what blocks entry to a stage of the method.
    Gate {
        file: PathBuf,
        #[arg(long)]
        stage: u8,
    },
    /// Drive independent review sessions (logged beside the case file).
    Review {
        file: PathBuf,
        #[command(subcommand)]
        action: ReviewAction,
    },
    /// List monitor obligations, declared and derived.
    Monitor { file: PathBuf },
    /// Compute the change-impact closure of the given ids.
    Impact {
        file: PathBuf,
        /// Comma-separated element, challenge, claim point or module ids.
        #[arg(long, value_delimiter = ',', required = true)]
        seed: Vec<String>,
    },
    /// Reformat a case file canonically.
    Fmt {
        file: PathBuf,
        /// Rewrite the file in place instead of printing.
        #[arg(long)]
        write: bool,
    },
}

#[derive(Subcommand)]
enum ReviewAction {
    /// Open a review session (requires a clean stage-5 gate unless overridden).
    Open {
        #[arg(long)]
        reviewer: String,
        /// Open even when the stage-5 gate is blocked.
        #[arg(long = "override")]
        override_gate: bool,
    },
    /// Record a reviewer finding: a full `challenge ...` declaration.
    Finding {
        #[arg(long)]
        session: String,
        #[arg(long)]
        item: String,
    },
    /// Close a session; refuses while any finding is still open.
    Close {
        #[arg(long)]
        session: String,
    },
}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

/// A closed output pipe (`casewright status FILE | head`) must end the
/// process the way it ends any line-oriented tool, not as a panic.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Check { file } => cmd_check(&file),
        Command::Status { file } => cmd_status(&file),
        Command::View { file, view, out } => cmd_view(&file, &view, out.as_deref()),
        Command::Report { file } => cmd_report(&file),
        Command::Gate { file, stage } => cmd_gate(&file, stage),
        Command::Review { file, action } => cmd_review(&file, action),
        Command::Monitor { file } => cmd_monitor(&file),
        Command::Impact { file, seed } => cmd_impact(&file, &seed),
        Command::Fmt { file, write } => cmd_fmt(&file, write),
    }
}

// =====================================================================
// Loading
// =====================================================================

fn read_file(path: &Path) -> Result<String, u8> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        2
    })
}

fn parse_file(path: &Path) -> Result<ArgumentModel, u8> {
    let text = read_file(path)?;
    dsl::parse_named(&path.display().to_string(), &text).map_err(|diags| {
        for d in &diags {
            eprintln!("{d}");
        }
        1
    })
}

fn log_path(path: &Path) -> PathBuf {
    path.with_extension("log")
}

/// Parse the case file and replay its event log, when one exists.
fn load(path: &Path) -> Result<ArgumentModel, u8> {
    let model = parse_file(path)?;
    let log = log_path(path);
    if !log.exists() {
        return Ok(model);
    }
    let lines = read_file(&log)?;
    workflow::replay(&model, lines.lines()).map_err(|e| {
        eprintln!("error: event log {} does not match the case file: {e}", log.display());
        2
    })
}

fn print_diagnostics(diags: &[analysis::Diagnostic]) {
    for d in diags {
        eprintln!("{d}");
    }
}

fn write_atomic(path: &Path, content: &str) -> Result<(), u8> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let dir = dir.unwrap_or_else(|| Path::new("."));
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("casewright-out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let write = fs::write(&tmp, content).and_then(|()| fs::rename(&tmp, path));
    write.map_err(|e| {
        let _ = fs::remove_file(&tmp);
        eprintln!("error: cannot write {}: {e}", path.display());
        2
    })
}

fn now_timestamp() -> String {
    use std::time::{SystemTime, UNIX_EPOCH};
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    secs.to_string()
}

// =====================================================================
// Commands
// =====================================================================

fn cmd_check(file: &Path) -> u8 {
    let model = match parse_file(file) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let diags = analysis::validate(&model);
    if diags.is_empty() {
        0
    } else {
        print_diagnostics(&diags);
        1
    }
}

fn cmd_status(file: &Path) -> u8 {
    let model = match load(file) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let validation = analysis::validate(&model);
    let errors: Vec<_> = validation
        .iter()
        .filter(|d| d.severity == Severity::Error)
        .cloned()
        .collect();
    if !errors.is_empty() {
        print_diagnostics(&errors);
        return 1;
    }
    let map = match analysis::evaluate(&model) {
        Ok(map) => map,
        Err(diags) => {
            print_diagnostics(&diags);
            return 1;
        }
    };
    println!("== modules ==");
    for (id, status) in &map.modules {
        println!("{id}: {status}");
    }
    println!("\n== elements ==");
    for (id, status) in &map.elements {
        println!("{id}: {status}");
    }
    println!("\n== challenges ==");
    for (id, state) in &map.challenges {
        println!("{id}: {state}");
    }
    0
}

fn cmd_view(file: &Path, view: &str, out: Option<&Path>) -> u8 {
    let parsed: View = match view.parse() {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let model = match load(file) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let dot = render_graph(&model, parsed);
    match out {
        Some(path) => match write_atomic(path, &dot) {
            Ok(()) => 0,
            Err(code) => code,
        },
        None => {
            print!("{dot}");
            0
        }
    }
}

fn cmd_report(file: &Path) -> u8 {
    let model = match load(file) {
        Ok(m) => m,
        Err(code) => return code,
    };
    match render_report(&model) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(diags) => {
            print_diagnostics(&diags);
            1
        }
    }
}

fn cmd_gate(file: &Path, stage: u8) -> u8 {
    let model = match load(file) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let diags = workflow::stage_gate(&model, stage);
    if diags.is_empty() {
        println!("stage {stage}: ready");
        0
    } else {
        print_diagnostics(&diags);
        1
    }
}

fn cmd_monitor(file: &Path) -> u8 {
    let model = match load(file) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let obligations = analysis::monitor_obligations(&model);
    if obligations.is_empty() {
        println!("(none)");
        return 0;
    }
    for (id, m) in &obligations {
        println!(
            "{id} watches {} ({}): {}",
            m.watches.id_str(),
            m.status.keyword(),
            m.description
        );
    }
    0
}

fn cmd_impact(file: &Path, seeds: &[String]) -> u8 {
    let model = match load(file) {
        Ok(m) => m,
        Err(code) => return code,
    };
    match analysis::impact(&model, seeds) {
        Ok(set) => {
            for id in set {
                println!("{id}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_fmt(file: &Path, write: bool) -> u8 {
    let text = match read_file(file) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let formatted = match dsl::format(&text) {
        Ok(f) => f,
        Err(diags) => {
            for d in &diags {
                eprintln!("{d}");
            }
            return 1;
        }
    };
    if write {
        if formatted == text {
            return 0;
        }
        match write_atomic(file, &formatted) {
            Ok(()) => 0,
            Err(code) => code,
        }
    } else {
        print!("{formatted}");
        0
    }
}

// =====================================================================
// Reviews
// =====================================================================

fn ensure_writable_log(path: &Path) -> Result<(), u8> {
    use std::fs::OpenOptions;
    OpenOptions::new()
        .append(true)
        .create(true)
        .open(path)
        .map(|_| ())
        .map_err(|e| {
            eprintln!("error: event log {} is not writable: {e}", path.display());
            2
        })
}

fn persist(
    file: &Path,
    model: &ArgumentModel,
    rewrite_case: bool,
) -> Result<(), u8> {
    if rewrite_case {
        write_atomic(file, &dsl::serialize(model))?;
    }
    let mut log = String::new();
    for event in &model.workflow.events {
        log.push_str(&event.log_line());
        log.push('\n');
    }
    write_atomic(&log_path(file), &log)
}

fn report_workflow_error(e: WorkflowError) -> u8 {
    match e {
        WorkflowError::ReviewPreconditionFailed(diags)
        | WorkflowError::GateBlocked { diagnostics: diags, .. }
        | WorkflowError::Evaluation(diags) => {
            print_diagnostics(&diags);
            1
        }
        other => {
            eprintln!("error: {other}");
            1
        }
    }
}

fn cmd_review(file: &Path, action: ReviewAction) -> u8 {
    if let Err(code) = ensure_writable_log(&log_path(file)) {
        return code;
    }
    let model = match load(file) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let ts = now_timestamp();
    match action {
        ReviewAction::Open {
            reviewer,
            override_gate,
        } => match workflow::open_review(&model, &reviewer, override_gate, &ts) {
            Ok((next, id)) => {
                if let Err(code) = persist(file, &next, false) {
                    return code;
                }
                println!("opened review {id} (reviewer {reviewer})");
                0
            }
            Err(e) => report_workflow_error(e),
        },
        ReviewAction::Finding { session, item } => {
            let review = match session.parse() {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: bad session id: {e}");
                    return 2;
                }
            };
            let challenge = match dsl::parse_challenge_item(&item, &model) {
                Ok(c) => c,
                Err(diags) => {
                    for d in &diags {
                        eprintln!("{d}");
                    }
                    return 1;
                }
            };
            let id = challenge.id.clone();
            match workflow::add_finding(&model, &review, challenge, &ts) {
                Ok(next) => {
                    if let Err(code) = persist(file, &next, true) {
                        return code;
                    }
                    println!("recorded finding {id} in review {review}");
                    0
                }
                Err(e) => report_workflow_error(e),
            }
        }
        ReviewAction::Close { session } => {
            let review = match session.parse() {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: bad session id: {e}");
                    return 2;
                }
            };
            match workflow::close_review(&model, &review, &ts) {
                Ok((next, open)) => {
                    if !open.is_empty() {
                        print_diagnostics(&open);
                        return 1;
                    }
                    if let Err(code) = persist(file, &next, false) {
                        return code;
                    }
                    println!("closed review {review}");
                    0
                }
                Err(e) => report_workflow_error(e),
            }
        }
    }
}

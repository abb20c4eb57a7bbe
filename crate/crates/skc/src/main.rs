//! Command-line front end: parse, run, or explore `.skc` programs.
//!
//! Exit codes are a stable contract: 0 success/value, 1 parse error,
//! 2 I/O error, 3 step limit, 4 stuck, 5 truncated under --strict.

use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use skc::explorer::{self, DEFAULT_MAX_DEPTH, DEFAULT_MAX_STATES};
use skc::parser::{parse_program, program_text, Program};
use skc::runtime::{self, Outcome, Strategy, DEFAULT_MAX_STEPS};
use skc::semantics::path_string;
use skc::{pretty, Config};

#[derive(Parser)]
#[command(name = "skc", version, about = "Interpreter and state-space explorer for a serverless kernel calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Det,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a program and print its desugared form.
    Parse {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a program under a scheduling strategy.
    Run {
        path: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Enumerate all reachable configurations.
    Explore {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Write the state graph in DOT format to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Fail (exit 5) if the exploration was truncated by a bound.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct RunOpts {
    #[arg(long, value_enum, default_value = "det")]
    strategy: StrategyArg,
    /// Seed for the random strategy.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: usize,
    /// Print every reduction step with its rule label.
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn color_enabled() -> bool {
    match std::env::var("SKC_COLOR").as_deref() {
        Ok("never") => false,
        _ => std::io::stdout().is_terminal(),
    }
}

fn paint(s: &str, code: &str, on: bool) -> String {
    if on {
        format!("\x1b[{code}m{s}\x1b[0m")
    } else {
        s.to_string()
    }
}

fn load_program(path: &PathBuf) -> Result<Program, ExitCode> {
    let src = match std::fs::read_to_string(path) {
        Ok(src) => src,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(ExitCode::from(2));
        }
    };
    match parse_program(&src) {
        Ok(p) => Ok(p),
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            Err(ExitCode::from(1))
        }
    }
}

fn booted(p: &Program) -> Result<Config, ExitCode> {
    match runtime::boot(p) {
        Ok(cfg) => Ok(cfg),
        Err(e) => {
            eprintln!("error: {e}");
            Err(ExitCode::from(1))
        }
    }
}

fn cmd_parse(path: PathBuf, format: Format) -> ExitCode {
    let p = match load_program(&path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    match format {
        Format::Text => print!("{}", program_text(&p)),
        Format::Json => {
            let doc = json!({
                "defs": p.defs.iter().map(|(f, body)| json!({
                    "name": f.as_str(),
                    "body": pretty::term(body),
                })).collect::<Vec<_>>(),
                "events": p.events.iter().map(|(e, h)| json!({
                    "event": e.as_str(),
                    "handler": h.as_str(),
                })).collect::<Vec<_>>(),
                "main": pretty::term(&p.main),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    ExitCode::SUCCESS
}

fn outcome_json(outcome: &Outcome) -> serde_json::Value {
    match outcome {
        Outcome::Value { result, repo, warnings } => json!({
            "kind": "value",
            "result": pretty::term(result),
            "repo": repo.iter().map(|(f, b)| json!({
                "name": f.as_str(), "body": pretty::term(b),
            })).collect::<Vec<_>>(),
            "warnings": warnings.iter().map(|(c, r)| json!({
                "component": c.to_string(), "reason": r.to_string(),
            })).collect::<Vec<_>>(),
        }),
        Outcome::Stuck { reasons, config } => json!({
            "kind": "stuck",
            "reasons": reasons.iter().map(|(c, r)| json!({
                "component": c.to_string(), "reason": r.to_string(),
            })).collect::<Vec<_>>(),
            "config": pretty::config(config),
        }),
        Outcome::StepLimit(config) => json!({
            "kind": "step_limit",
            "config": pretty::config(config),
        }),
    }
}

fn cmd_run(path: PathBuf, opts: RunOpts) -> ExitCode {
    let p = match load_program(&path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let cfg = match booted(&p) {
        Ok(cfg) => cfg,
        Err(code) => return code,
    };
    let strategy = match (opts.strategy, opts.seed) {
        (StrategyArg::Det, _) => Strategy::Deterministic,
        (StrategyArg::Random, seed) => Strategy::Random(seed.unwrap_or(0)),
    };
    let (outcome, trace) = runtime::run(&cfg, strategy, opts.max_steps);

    match opts.format {
        Format::Json => {
            let doc = json!({
                "outcome": outcome_json(&outcome),
                "steps": trace.iter().map(|s| json!({
                    "index": s.index,
                    "rule": s.rule.to_string(),
                    "component": s.component.to_string(),
                    "path": path_string(&s.path),
                    "config_text": s.config_text,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Text => {
            let color = color_enabled();
            if opts.trace {
                for s in &trace {
                    println!(
                        "{:>4}  {:<7} {:<8} {:<12} {}",
                        s.index,
                        paint(&s.rule.to_string(), "36", color),
                        s.component,
                        path_string(&s.path),
                        s.config_text
                    );
                }
            }
            match &outcome {
                Outcome::Value { result, repo, warnings } => {
                    println!("outcome: {}", paint("value", "32", color));
                    println!("result:  {}", pretty::term(result));
                    println!("repo:    {{{}}}", pretty::repo(repo));
                    for (c, r) in warnings {
                        println!("warning: {c} never finishes: {r}");
                    }
                }
                Outcome::Stuck { reasons, config } => {
                    println!("outcome: {}", paint("stuck", "31", color));
                    for (c, r) in reasons {
                        println!("  {c}: {r}");
                    }
                    println!("config:  {}", pretty::config(config));
                }
                Outcome::StepLimit(config) => {
                    println!("outcome: {}", paint("step limit reached", "33", color));
                    println!("config:  {}", pretty::config(config));
                }
            }
        }
    }

    match outcome {
        Outcome::Value { .. } => ExitCode::SUCCESS,
        Outcome::StepLimit(_) => ExitCode::from(3),
        Outcome::Stuck { .. } => ExitCode::from(4),
    }
}

fn cmd_explore(
    path: PathBuf,
    max_states: usize,
    max_depth: usize,
    dot: Option<PathBuf>,
    strict: bool,
    format: Format,
) -> ExitCode {
    let p = match load_program(&path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let cfg = match booted(&p) {
        Ok(cfg) => cfg,
        Err(code) => return code,
    };
    let graph = explorer::explore(&cfg, max_states, max_depth);
    let summary = explorer::final_outcomes(&graph);

    if let Some(dot_path) = dot {
        if let Err(e) = std::fs::write(&dot_path, explorer::to_dot(&graph)) {
            eprintln!("error: cannot write {}: {e}", dot_path.display());
            return ExitCode::from(2);
        }
    }

    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
        }
        Format::Text => {
            println!("states: {}   edges: {}", summary.states, summary.edges);
            println!(
                "finals: {} value, {} stuck",
                summary.finals.value, summary.finals.stuck
            );
            println!(
                "{} distinct final {}; {}",
                summary.distinct_final_repos,
                if summary.distinct_final_repos == 1 { "repository" } else { "repositories" },
                if summary.deterministic { "deterministic" } else { "nondeterministic" }
            );
            for r in &summary.stuck_reasons {
                println!("stuck: {r}");
            }
            if summary.truncated {
                println!("warning: exploration truncated by bounds");
            }
        }
    }

    if strict && summary.truncated {
        return ExitCode::from(5);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Parse { path, format } => cmd_parse(path, format),
        Command::Run { path, opts } => cmd_run(path, opts),
        Command::Explore { path, max_states, max_depth, dot, strict, format } => {
            cmd_explore(path, max_states, max_depth, dot, strict, format)
        }
    }
}

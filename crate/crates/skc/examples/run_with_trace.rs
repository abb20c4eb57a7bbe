//! Run the event-handling program deterministically and print every
//! reduction with its rule label. The first eight rules read
//! ret, ret, beta, beta, async, beta, beta, ret: the event name expands,
//! callHandler expands, the handler wrapper is applied, the handler is
//! spawned, and the raiser returns () while the handler keeps going.
//!
//! Run with: cargo run --example run_with_trace

use skc::semantics::path_string;
use skc::services::corpus;
use skc::{boot, parse_program, run, Outcome, Strategy, DEFAULT_MAX_STEPS};

fn main() {
    let program = parse_program(corpus::DERIVATION_2_2).expect("corpus parses");
    let cfg = boot(&program).expect("boots");
    let (outcome, trace) = run(&cfg, Strategy::Deterministic, DEFAULT_MAX_STEPS);

    println!("{:>4}  {:<7} {:<7} {:<8} configuration", "step", "rule", "where", "path");
    for step in &trace {
        println!(
            "{:>4}  {:<7} {:<7} {:<8} {}",
            step.index,
            step.rule.to_string(),
            step.component.to_string(),
            path_string(&step.path),
            step.config_text
        );
    }
    match outcome {
        Outcome::Value { result, .. } => println!("\nfinal value: {}", skc::pretty::term(&result)),
        other => println!("\nunexpected outcome: {other:?}"),
    }
}

//! Install an event binding programmatically and raise it. The event name
//! maps to `callHandler \_.h`, so applying it spawns the handler in a new
//! restricted component and hands () back to the raiser immediately.
//!
//! Run with: cargo run --example event_handlers

use skc::names::FutureId;
use skc::semantics::RuleLabel;
use skc::{
    builtin_repo, install_event, parse_term, pretty, run, Config, EventBinding, FnName, Outcome,
    Strategy, System, Term,
};

fn main() {
    let handler_body = parse_term("\\x.(x, True)").expect("parses");
    let repo = builtin_repo()
        .define(FnName::new("audit"), handler_body)
        .expect("defines");
    let repo = install_event(&repo, &EventBinding::new("e_audit", "audit")).expect("installs");

    println!("repository:");
    for (name, body) in repo.iter() {
        println!("  {name} -> {}", pretty::term(body));
    }

    let main = parse_term("e_audit ()").expect("parses");
    let cfg = Config::new(System::Run(FutureId::root(), main), repo);
    let (outcome, trace) = run(&cfg, Strategy::Deterministic, 1_000);

    let spawns = trace.iter().filter(|s| s.rule == RuleLabel::Async).count();
    println!("\nraising e_audit spawned {spawns} handler component(s)");
    match outcome {
        Outcome::Value { result, .. } => {
            println!("the raiser got back: {}", pretty::term(&result));
            println!("(the handler's pair result was discarded, as events always do)");
        }
        other => println!("unexpected outcome: {other:?}"),
    }
}

//! Mutate the definition repository at runtime: `set` deploys a definition
//! and returns its name, `take` withdraws one and hands the caller its
//! recursive let. Storing a future is refused, which keeps restriction
//! semantics intact.
//!
//! Run with: cargo run --example stateful_repository

use skc::names::FutureId;
use skc::semantics::{apply_redex, find_redexes, normalize, RuleLabel};
use skc::{boot, parse_program, pretty, Config, Term};

fn show_repo(cfg: &Config) {
    let entries = pretty::repo(&cfg.repo);
    println!("  D = {{{entries}}}");
}

fn step_until(cfg: &Config, stop_after: RuleLabel) -> Config {
    let mut cur = cfg.clone();
    loop {
        let redexes = find_redexes(&cur);
        let redex = redexes.first().expect("a redex remains").clone();
        let rule = redex.rule;
        cur = apply_redex(&cur, &redex).expect("applies");
        println!("  -> {rule}");
        if rule == stop_after {
            return cur;
        }
    }
}

fn main() {
    let program = parse_program("main = let _ = set counter (\\x.succ x) in take counter")
        .expect("parses");
    let cfg = boot(&program).expect("boots");

    println!("before any step:");
    show_repo(&cfg);

    println!("\nreducing until the set fires:");
    let after_set = step_until(&cfg, RuleLabel::Set);
    show_repo(&after_set);

    println!("\nreducing until the take fires:");
    let after_take = step_until(&after_set, RuleLabel::Take);
    show_repo(&after_take);

    let n = normalize(&after_take.system);
    let (_, body) = n
        .components
        .iter()
        .find(|(c, _)| *c == FutureId::root())
        .expect("root component");
    println!("\nthe caller now holds the recursive let:");
    println!("  {}", pretty::term(body));

    // storing a future is rejected: the component is stuck, not broken
    let bad = Config::new(
        skc::System::run("root", Term::Set(Box::new(Term::fn_name("f")), Box::new(Term::future("c1")))),
        skc::Repo::new(),
    );
    let stuck = skc::semantics::stuck_components(&bad);
    println!("\nstoring a future: {}", stuck[0].1);
}

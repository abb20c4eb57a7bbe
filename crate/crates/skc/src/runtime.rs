//! Driving reduction to completion under a scheduling strategy.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::names::FutureId;
use crate::parser::Program;
use crate::pretty;
use crate::repo::Repo;
use crate::semantics::{
    apply_redex, find_redexes, normalize, stuck_components, Path, Redex, RedexTarget, RuleLabel,
    StuckReason,
};
use crate::services::{program_repo, ServiceError};
use crate::system::{Config, System};
use crate::term::{is_value, Term};

/// Bound on run length unless overridden; programs built on `fix` can
/// diverge.
pub const DEFAULT_MAX_STEPS: usize = 100_000;

/// How the next redex is chosen. The semantics itself is nondeterministic;
/// a strategy selects one path through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Always the first redex in `find_redexes` order.
    Deterministic,
    /// Uniform choice driven by a seeded generator; equal seeds replay
    /// identical runs.
    Random(u64),
}

/// One reduction step of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub index: usize,
    pub rule: RuleLabel,
    /// Producer future of the component that reduced, or the future a
    /// `push` resolved.
    pub component: FutureId,
    pub path: Path,
    /// The configuration after this step.
    pub config_text: String,
}

/// How a run ended.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// The root component reduced to a value and no redex remains. Any
    /// leftover components that can never finish are reported, not hidden.
    Value {
        result: Term,
        repo: Repo,
        warnings: Vec<(FutureId, StuckReason)>,
    },
    /// No redex remains and the root is not a value.
    Stuck {
        reasons: Vec<(FutureId, StuckReason)>,
        config: Config,
    },
    StepLimit(Config),
}

impl Outcome {
    pub fn is_value(&self) -> bool {
        matches!(self, Outcome::Value { .. })
    }
}

/// Build the initial configuration for a program: builtins, program
/// definitions and events in the repository, and `$root <= main`. The root
/// future is unrestricted, so `push` never fires on it; the result is read
/// from the root component.
pub fn boot(p: &Program) -> Result<Config, ServiceError> {
    let repo = program_repo(p)?;
    let system = System::Run(FutureId::root(), p.main.clone());
    Ok(Config::new(system, repo))
}

fn classify(cfg: Config) -> Outcome {
    let n = normalize(&cfg.system);
    let root = FutureId::root();
    let root_value = n
        .components
        .iter()
        .find(|(c, _)| *c == root)
        .filter(|(_, body)| is_value(body))
        .map(|(_, body)| body.clone());
    match root_value {
        Some(result) => Outcome::Value {
            result,
            warnings: stuck_components(&cfg),
            repo: cfg.repo,
        },
        None => Outcome::Stuck { reasons: stuck_components(&cfg), config: cfg },
    }
}

/// Reduce until no redex remains or `max_steps` is hit, recording every
/// step with its rule label.
pub fn run(cfg: &Config, strat: Strategy, max_steps: usize) -> (Outcome, Vec<Step>) {
    let mut rng = match strat {
        Strategy::Deterministic => None,
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut cur = cfg.clone();
    let mut trace: Vec<Step> = Vec::new();
    for _ in 0..max_steps {
        let redexes = find_redexes(&cur);
        if redexes.is_empty() {
            return (classify(cur), trace);
        }
        let pick = match rng.as_mut() {
            Some(rng) => rng.random_range(0..redexes.len()),
            None => 0,
        };
        let redex = &redexes[pick];
        let component = redex_component(&cur, redex);
        let next = apply_redex(&cur, redex).expect("redex reported by find_redexes applies");
        trace.push(Step {
            index: trace.len(),
            rule: redex.rule,
            component,
            path: redex.path.clone(),
            config_text: pretty::config(&next),
        });
        cur = next;
    }
    (Outcome::StepLimit(cur), trace)
}

/// The producer future a redex rewrites under.
pub fn redex_component(cfg: &Config, r: &Redex) -> FutureId {
    match &r.target {
        RedexTarget::Future(c) => c.clone(),
        RedexTarget::Component(i) => {
            let n = normalize(&cfg.system);
            n.components
                .get(*i)
                .map(|(c, _)| c.clone())
                .unwrap_or_else(|| FutureId::new("?"))
        }
    }
}

//! An executable semantics for a serverless kernel calculus: lambda terms
//! extended with asynchronous spawning over futures, a global definition
//! repository that programs can mutate (`set`/`take`), and event-based
//! handler invocation.
//!
//! A configuration pairs a system of running functions `c <= M` with the
//! repository `D`. The engine parses `.skc` programs, reduces them step by
//! step under small-step rules (`beta`, `ret`, `async`, `push`, `set`,
//! `take`, conditionals and projections), and can exhaustively explore all
//! interleavings of parallel components up to structural congruence.
//!
//! Start with the runnable programs in `examples/` — each demonstrates one
//! capability:
//!
//! - `parse_and_desugar`: surface syntax and what the sugar expands to
//! - `run_with_trace`: a deterministic run with rule-labelled steps
//! - `event_handlers`: raising an event spawns its handler
//! - `stateful_repository`: deploying and withdrawing definitions at runtime
//! - `explore_interleavings`: enumerating every schedule of a race
//! - `random_schedules`: seeded random runs and replay
//! - `tailor_pipeline`: an event-driven service pipeline end to end
//! - `church_arithmetic`: pure lambda computation under the same engine
//! - `export_state_graph`: DOT and JSON views of a state space
//!
//! The `skc` binary wraps the same entry points: `skc parse`, `skc run`,
//! `skc explore`.

pub mod explorer;
pub mod names;
pub mod parser;
pub mod pretty;
pub mod repo;
pub mod runtime;
pub mod semantics;
pub mod services;
pub mod system;
pub mod term;

pub use explorer::{canonical_key, explore, final_outcomes, CanonicalKey, StateGraph, Summary};
pub use names::{FnName, FutureId, VarName};
pub use parser::{parse_program, parse_term, Program};
pub use repo::{Repo, RepoError};
pub use runtime::{boot, run, Outcome, Step, Strategy, DEFAULT_MAX_STEPS};
pub use semantics::{
    apply_redex, congruent, find_redexes, normalize, NormalSystem, Redex, RuleLabel, StuckReason,
};
pub use services::{builtin_repo, install_event, tailor_repo, EventBinding};
pub use system::{free_futures, subst_future, Config, System};
pub use term::{alpha_eq, futures_of, is_value, subst_var, Term};

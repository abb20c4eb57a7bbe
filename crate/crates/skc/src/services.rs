//! Event-based invocation and the service-encoding corpus.
//!
//! Events are function names bound to `callHandler \_.h`: raising one
//! asynchronously runs handler `h` and discards its result, which is the
//! only way user functions get invoked on event-driven platforms. Stateful
//! services (key/value stores, notification topics) are encoded with `set`
//! over function names used as keys.

use crate::names::{FnName, VarName};
use crate::parser::{parse_program, parse_term, Program};
use crate::repo::{Repo, RepoError};
use crate::term::Term;

/// Names installed in every repository at boot.
pub const BUILTIN_NAMES: [&str; 2] = ["callHandler", "fix"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ServiceError {
    #[error("`{0}` collides with a builtin definition")]
    BuiltinCollision(FnName),
    #[error("event `{0}` is already defined")]
    EventCollision(FnName),
    #[error(transparent)]
    Repo(#[from] RepoError),
}

/// An event name bound to a handler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventBinding {
    pub event: FnName,
    pub handler: FnName,
}

impl EventBinding {
    pub fn new(event: impl Into<String>, handler: impl Into<String>) -> Self {
        EventBinding { event: FnName::new(event), handler: FnName::new(handler) }
    }
}

/// The repository every program starts from: `callHandler`, which runs a
/// handler asynchronously and discards its result, and the fixed-point
/// combinator backing `let rec`.
pub fn builtin_repo() -> Repo {
    let call_handler =
        parse_term(r"\h.\x.let _ = async (h () x) in ()").expect("builtin parses");
    let fix = parse_term(r"\f.(\x.f (x x)) (\x.f (x x))").expect("builtin parses");
    Repo::new()
        .define(FnName::new("callHandler"), call_handler)
        .and_then(|r| r.define(FnName::new("fix"), fix))
        .expect("builtin bodies are future-free")
}

/// Extend `repo` with `event -> callHandler \_.handler`. The handler name
/// is wrapped in a lambda so it is not expanded before the handler runs;
/// function names are not values.
pub fn install_event(repo: &Repo, binding: &EventBinding) -> Result<Repo, ServiceError> {
    if repo.contains(&binding.event) {
        return Err(ServiceError::EventCollision(binding.event.clone()));
    }
    let body = Term::app(
        Term::fn_name("callHandler"),
        Term::Lam(VarName::new("_"), Box::new(Term::FnName(binding.handler.clone()))),
    );
    Ok(repo.define(binding.event.clone(), body)?)
}

/// Builtins plus a program's definitions and event bindings.
pub fn program_repo(p: &Program) -> Result<Repo, ServiceError> {
    let mut repo = builtin_repo();
    for (f, body) in &p.defs {
        if BUILTIN_NAMES.contains(&f.as_str()) {
            return Err(ServiceError::BuiltinCollision(f.clone()));
        }
        repo = repo.define(f.clone(), body.clone())?;
    }
    for (e, h) in &p.events {
        if BUILTIN_NAMES.contains(&e.as_str()) {
            return Err(ServiceError::BuiltinCollision(e.clone()));
        }
        repo = install_event(&repo, &EventBinding { event: e.clone(), handler: h.clone() })?;
    }
    Ok(repo)
}

/// The full repository of the user-registration pipeline from
/// `corpus/tailor_excerpt.skc`: API/database/notification events, their
/// handlers, and the key/value service encodings.
pub fn tailor_repo() -> Repo {
    let p = parse_program(corpus::TAILOR_EXCERPT).expect("corpus parses");
    program_repo(&p).expect("corpus repo builds")
}

/// Program sources shipped with the crate.
pub mod corpus {
    pub const DERIVATION_2_2: &str = include_str!("../corpus/derivation_2_2.skc");
    pub const RACE_SET: &str = include_str!("../corpus/race_set.skc");
    pub const DIAMOND_ASYNC: &str = include_str!("../corpus/diamond_async.skc");
    pub const TAILOR_EXCERPT: &str = include_str!("../corpus/tailor_excerpt.skc");
    pub const TAILOR_VERBATIM: &str = include_str!("../corpus/tailor_verbatim.skc");
}

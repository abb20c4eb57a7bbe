//! The definition repository: a finite partial map from function names to
//! bodies. Stored bodies never contain futures.

use indexmap::IndexMap;

use crate::names::FnName;
use crate::term::{alpha_eq, futures_of, Term};

/// Errors from repository operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepoError {
    #[error("stored body for `{0}` contains futures")]
    FutureInStoredBody(FnName),
    #[error("`{0}` is not defined")]
    Undefined(FnName),
}

/// Insertion order is retained so printing and trace diffs are
/// deterministic; the semantics never depends on it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Repo {
    defs: IndexMap<FnName, Term>,
}

impl Repo {
    pub fn new() -> Self {
        Repo::default()
    }

    pub fn lookup(&self, f: &FnName) -> Option<&Term> {
        self.defs.get(f)
    }

    pub fn contains(&self, f: &FnName) -> bool {
        self.defs.contains_key(f)
    }

    /// A repository where `f` maps to `m`, overriding any existing entry.
    pub fn define(&self, f: FnName, m: Term) -> Result<Repo, RepoError> {
        if !futures_of(&m).is_empty() {
            return Err(RepoError::FutureInStoredBody(f));
        }
        let mut next = self.clone();
        next.defs.insert(f, m);
        Ok(next)
    }

    /// A repository without an entry for `f`.
    pub fn undefine(&self, f: &FnName) -> Result<Repo, RepoError> {
        if !self.defs.contains_key(f) {
            return Err(RepoError::Undefined(f.clone()));
        }
        let mut next = self.clone();
        next.defs.shift_remove(f);
        Ok(next)
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    /// Entries in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (&FnName, &Term)> {
        self.defs.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &FnName> {
        self.defs.keys()
    }

    /// Same domain and per-name alpha-equal bodies, ignoring insertion order.
    pub fn same_defs(&self, other: &Repo) -> bool {
        self.defs.len() == other.defs.len()
            && self.defs.iter().all(|(f, body)| {
                other
                    .defs
                    .get(f)
                    .is_some_and(|other_body| alpha_eq(body, other_body))
            })
    }
}

//! Identifier namespaces.
//!
//! Variables, function names, and futures are three disjoint namespaces: a
//! token is exactly one of them, decided by binding structure (variables),
//! repository membership (function names), or the `$` sigil (futures, which
//! exist only at runtime).

use std::fmt;

/// A lambda-bound variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarName(pub String);

impl VarName {
    pub fn new(s: impl Into<String>) -> Self {
        VarName(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VarName {
    fn from(s: &str) -> Self {
        VarName(s.to_string())
    }
}

/// A name in the definition repository.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FnName(pub String);

impl FnName {
    pub fn new(s: impl Into<String>) -> Self {
        FnName(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for FnName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for FnName {
    fn from(s: &str) -> Self {
        FnName(s.to_string())
    }
}

/// A future name. Engine-generated futures are `$c1`, `$c2`, ... and the
/// distinguished root is `$root`; they are never writable in source programs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FutureId(pub String);

impl FutureId {
    pub fn new(s: impl Into<String>) -> Self {
        FutureId(s.into())
    }

    /// The future every booted system computes into.
    pub fn root() -> Self {
        FutureId("root".to_string())
    }

    /// The nth engine-generated future.
    pub fn generated(n: u64) -> Self {
        FutureId(format!("c{n}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Trailing decimal digits of the identifier, used to keep freshness
    /// counters ahead of every id already in a system.
    pub fn numeric_suffix(&self) -> Option<u64> {
        let digits: String = self
            .0
            .chars()
            .rev()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return None;
        }
        digits.chars().rev().collect::<String>().parse().ok()
    }
}

impl fmt::Display for FutureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "${}", self.0)
    }
}

impl From<&str> for FutureId {
    fn from(s: &str) -> Self {
        FutureId(s.to_string())
    }
}

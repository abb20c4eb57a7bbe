//! Printing. The surface printer emits text that re-parses to an
//! alpha-equivalent term; the canonical printer renames binders to de Bruijn
//! levels and masks restricted futures, giving a string that is stable under
//! alpha-renaming and usable as a sort key and state fingerprint.

use std::collections::BTreeSet;

use crate::names::{FutureId, VarName};
use crate::repo::Repo;
use crate::system::{Config, System};
use crate::term::Term;

/// How tightly the surrounding context binds.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Prec {
    /// Lambda bodies, if branches, pair components: anything goes.
    Term,
    /// Function position of an application.
    App,
    /// Argument position: must be a grammar atom.
    Atom,
}

struct Printer<'a> {
    /// When set, restricted futures print as a fixed mask and binders print
    /// as `%level`; free names print as themselves.
    masked: Option<&'a BTreeSet<FutureId>>,
    bound: Vec<VarName>,
}

const FUTURE_MASK: &str = "$!";

impl<'a> Printer<'a> {
    fn surface() -> Self {
        Printer { masked: None, bound: Vec::new() }
    }

    fn canonical(restricted: &'a BTreeSet<FutureId>) -> Self {
        Printer { masked: Some(restricted), bound: Vec::new() }
    }

    fn var(&self, x: &VarName) -> String {
        if self.masked.is_some() {
            match self.bound.iter().rposition(|b| b == x) {
                Some(level) => format!("%{level}"),
                None => x.0.clone(),
            }
        } else {
            x.0.clone()
        }
    }

    fn binder(&self, x: &VarName) -> String {
        if self.masked.is_some() {
            format!("%{}", self.bound.len())
        } else {
            x.0.clone()
        }
    }

    fn future(&self, c: &FutureId) -> String {
        match self.masked {
            Some(restricted) if restricted.contains(c) => FUTURE_MASK.to_string(),
            _ => format!("${}", c.0),
        }
    }

    fn term(&mut self, t: &Term, prec: Prec, out: &mut String) {
        match t {
            Term::Var(x) => out.push_str(&self.var(x)),
            Term::FnName(f) => out.push_str(&f.0),
            Term::Future(c) => out.push_str(&self.future(c)),
            Term::Unit => out.push_str("()"),
            Term::True => out.push_str("True"),
            Term::False => out.push_str("False"),
            Term::Pair(a, b) => {
                out.push('(');
                self.term(a, Prec::Term, out);
                out.push_str(", ");
                self.term(b, Prec::Term, out);
                out.push(')');
            }
            Term::Lam(x, b) => {
                let wrap = prec != Prec::Term;
                if wrap {
                    out.push('(');
                }
                out.push('\\');
                out.push_str(&self.binder(x));
                out.push('.');
                self.bound.push(x.clone());
                self.term(b, Prec::Term, out);
                self.bound.pop();
                if wrap {
                    out.push(')');
                }
            }
            Term::If(c, t1, t2) => {
                let wrap = prec != Prec::Term;
                if wrap {
                    out.push('(');
                }
                out.push_str("if ");
                self.term(c, Prec::Term, out);
                out.push_str(" then ");
                self.term(t1, Prec::Term, out);
                out.push_str(" else ");
                self.term(t2, Prec::Term, out);
                if wrap {
                    out.push(')');
                }
            }
            Term::App(f, a) => {
                let wrap = prec == Prec::Atom;
                if wrap {
                    out.push('(');
                }
                self.term(f, Prec::App, out);
                out.push(' ');
                self.term(a, Prec::Atom, out);
                if wrap {
                    out.push(')');
                }
            }
            Term::Async(b) => {
                out.push_str("async ");
                self.term(b, Prec::Atom, out);
            }
            Term::Fst(b) => {
                out.push_str("fst ");
                self.term(b, Prec::Atom, out);
            }
            Term::Snd(b) => {
                out.push_str("snd ");
                self.term(b, Prec::Atom, out);
            }
            Term::Take(f) => {
                out.push_str("take ");
                out.push_str(&f.0);
            }
            Term::Set(target, body) => {
                out.push_str("set ");
                self.term(target, Prec::Atom, out);
                out.push(' ');
                self.term(body, Prec::Atom, out);
            }
        }
    }
}

/// Surface print of a term; re-parses to an alpha-equivalent term.
pub fn term(t: &Term) -> String {
    let mut out = String::new();
    Printer::surface().term(t, Prec::Term, &mut out);
    out
}

/// Surface print of a system: `|` for parallel, `nu c.(...)` for
/// restriction, `$c <= M` for running functions, `0` for the empty system.
pub fn system(s: &System) -> String {
    fn go(s: &System, out: &mut String) {
        match s {
            System::Nil => out.push('0'),
            System::Run(c, t) => {
                out.push('$');
                out.push_str(&c.0);
                out.push_str(" <= ");
                out.push_str(&term(t));
            }
            System::Par(l, r) => {
                go(l, out);
                out.push_str(" | ");
                go(r, out);
            }
            System::Res(c, body) => {
                out.push_str("nu ");
                out.push_str(&c.0);
                out.push_str(".(");
                go(body, out);
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    go(s, &mut out);
    out
}

/// One-line rendering of a repository in insertion order.
pub fn repo(d: &Repo) -> String {
    let entries: Vec<String> = d.iter().map(|(f, body)| format!("{f} -> {}", term(body))).collect();
    entries.join(", ")
}

/// One-line rendering of a whole configuration.
pub fn config(cfg: &Config) -> String {
    format!("<{} ; D={{{}}}>", system(&cfg.system), repo(&cfg.repo))
}

/// Canonical print of a term: binders as `%level`, futures in `restricted`
/// masked. Alpha-equal terms print identically.
pub(crate) fn canon_term(t: &Term, restricted: &BTreeSet<FutureId>) -> String {
    let mut out = String::new();
    Printer::canonical(restricted).term(t, Prec::Term, &mut out);
    out
}

/// Canonical print of a producer position.
pub(crate) fn canon_producer(c: &FutureId, restricted: &BTreeSet<FutureId>) -> String {
    if restricted.contains(c) {
        FUTURE_MASK.to_string()
    } else {
        format!("${}", c.0)
    }
}

/// Canonical repository text: entries sorted by name, bodies alpha-normalized.
pub(crate) fn canon_repo(d: &Repo) -> String {
    let none = BTreeSet::new();
    let mut entries: Vec<String> =
        d.iter().map(|(f, body)| format!("{f}={}", canon_term(body, &none))).collect();
    entries.sort();
    entries.join(";")
}

//! Systems of running functions and whole configurations.

use std::collections::BTreeSet;

use crate::names::FutureId;
use crate::repo::Repo;
use crate::term::{self, is_value, Term, TermError};

/// A system: running functions in parallel, with future restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum System {
    /// `c <= M`: a running function whose result fills future `c`.
    Run(FutureId, Term),
    Par(Box<System>, Box<System>),
    /// `nu c. S`: future `c` scoped to `S`.
    Res(FutureId, Box<System>),
    Nil,
}

impl System {
    pub fn run(c: impl Into<String>, body: Term) -> System {
        System::Run(FutureId::new(c), body)
    }

    pub fn par(left: System, right: System) -> System {
        System::Par(Box::new(left), Box::new(right))
    }

    pub fn res(c: impl Into<String>, body: System) -> System {
        System::Res(FutureId::new(c), Box::new(body))
    }
}

/// Futures occurring in `s` (producer positions included) not bound by an
/// enclosing restriction.
pub fn free_futures(s: &System) -> BTreeSet<FutureId> {
    fn walk(s: &System, bound: &mut Vec<FutureId>, acc: &mut BTreeSet<FutureId>) {
        match s {
            System::Run(c, t) => {
                if !bound.contains(c) {
                    acc.insert(c.clone());
                }
                for c2 in term::futures_of(t) {
                    if !bound.contains(&c2) {
                        acc.insert(c2);
                    }
                }
            }
            System::Par(l, r) => {
                walk(l, bound, acc);
                walk(r, bound, acc);
            }
            System::Res(c, body) => {
                bound.push(c.clone());
                walk(body, bound, acc);
                bound.pop();
            }
            System::Nil => {}
        }
    }
    let mut acc = BTreeSet::new();
    walk(s, &mut Vec::new(), &mut acc);
    acc
}

/// All futures occurring in `s`, bound or free.
pub fn all_futures(s: &System) -> BTreeSet<FutureId> {
    fn walk(s: &System, acc: &mut BTreeSet<FutureId>) {
        match s {
            System::Run(c, t) => {
                acc.insert(c.clone());
                acc.extend(term::futures_of(t));
            }
            System::Par(l, r) => {
                walk(l, acc);
                walk(r, acc);
            }
            System::Res(c, body) => {
                acc.insert(c.clone());
                walk(body, acc);
            }
            System::Nil => {}
        }
    }
    let mut acc = BTreeSet::new();
    walk(s, &mut acc);
    acc
}

/// A future id not occurring in `avoid`, counting from `hint`.
pub fn fresh_future(avoid: &BTreeSet<FutureId>, hint: u64) -> (FutureId, u64) {
    let mut n = hint;
    loop {
        let candidate = FutureId::generated(n);
        if !avoid.contains(&candidate) {
            return (candidate, n + 1);
        }
        n += 1;
    }
}

/// Replace free occurrences of future `c` inside terms of `s` by value `v`.
/// Producer positions are names, not terms, and are left untouched;
/// restriction binders shadow and are renamed if `v` would be captured.
pub fn subst_future(s: &System, c: &FutureId, v: &Term) -> Result<System, TermError> {
    if !is_value(v) {
        return Err(TermError::NonValue(crate::pretty::term(v)));
    }
    let v_futures = term::futures_of(v);
    Ok(subst_future_unchecked(s, c, v, &v_futures, &mut 1))
}

fn subst_future_unchecked(
    s: &System,
    c: &FutureId,
    v: &Term,
    v_futures: &BTreeSet<FutureId>,
    rename_hint: &mut u64,
) -> System {
    match s {
        System::Run(producer, t) => {
            System::Run(producer.clone(), term::subst_future_in_term(t, c, v))
        }
        System::Par(l, r) => System::par(
            subst_future_unchecked(l, c, v, v_futures, rename_hint),
            subst_future_unchecked(r, c, v, v_futures, rename_hint),
        ),
        System::Res(b, body) => {
            if b == c {
                // bound occurrences are a different future
                s.clone()
            } else if v_futures.contains(b) {
                // the binder would capture a future free in v; rename it
                let mut avoid = all_futures(body);
                avoid.extend(v_futures.iter().cloned());
                avoid.insert(c.clone());
                let (b2, next) = fresh_future(&avoid, *rename_hint);
                *rename_hint = next;
                let renamed = rename_future(body, b, &b2);
                System::Res(
                    b2,
                    Box::new(subst_future_unchecked(&renamed, c, v, v_futures, rename_hint)),
                )
            } else {
                System::Res(
                    b.clone(),
                    Box::new(subst_future_unchecked(body, c, v, v_futures, rename_hint)),
                )
            }
        }
        System::Nil => System::Nil,
    }
}

/// Rename free occurrences of future `old` (terms and producer positions)
/// to `new`. Used for restriction alpha-renaming; `new` must be fresh.
pub fn rename_future(s: &System, old: &FutureId, new: &FutureId) -> System {
    match s {
        System::Run(producer, t) => {
            let producer = if producer == old { new.clone() } else { producer.clone() };
            System::Run(producer, term::subst_future_in_term(t, old, &Term::Future(new.clone())))
        }
        System::Par(l, r) => System::par(rename_future(l, old, new), rename_future(r, old, new)),
        System::Res(b, body) => {
            if b == old {
                s.clone()
            } else {
                System::Res(b.clone(), Box::new(rename_future(body, old, new)))
            }
        }
        System::Nil => System::Nil,
    }
}

/// Producer futures of every running function, in syntactic order.
pub fn producers(s: &System) -> Vec<FutureId> {
    fn walk(s: &System, acc: &mut Vec<FutureId>) {
        match s {
            System::Run(c, _) => acc.push(c.clone()),
            System::Par(l, r) => {
                walk(l, acc);
                walk(r, acc);
            }
            System::Res(_, body) => walk(body, acc),
            System::Nil => {}
        }
    }
    let mut acc = Vec::new();
    walk(s, &mut acc);
    acc
}

/// A whole configuration: the system paired with the definition repository.
/// `fresh_counter` strictly exceeds every numeric suffix of every future id
/// occurring in the system, so generated futures are globally fresh.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub system: System,
    pub repo: Repo,
    pub fresh_counter: u64,
}

impl Config {
    pub fn new(system: System, repo: Repo) -> Config {
        let counter = all_futures(&system)
            .iter()
            .filter_map(|c| c.numeric_suffix())
            .max()
            .map_or(1, |n| n + 1);
        Config { system, repo, fresh_counter: counter }
    }
}

//! Terms of the calculus: abstract syntax, value predicate, substitution,
//! and alpha-equivalence.

use std::collections::BTreeSet;

use crate::names::{FnName, FutureId, VarName};

/// A function body. Sugar (`let`, `let rec`, pattern lambdas, general pair
/// expressions) is eliminated by the parser, so none of it appears here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(VarName),
    Lam(VarName, Box<Term>),
    App(Box<Term>, Box<Term>),
    Async(Box<Term>),
    FnName(FnName),
    Future(FutureId),
    Unit,
    True,
    False,
    /// Runtime pairs range over values only; the parser desugars general
    /// pair expressions into an application that builds the pair.
    Pair(Box<Term>, Box<Term>),
    If(Box<Term>, Box<Term>, Box<Term>),
    Fst(Box<Term>),
    Snd(Box<Term>),
    /// Deploy a definition. The target is a general term in surface syntax;
    /// the rule fires once it has reduced to a literal function name.
    Set(Box<Term>, Box<Term>),
    Take(FnName),
}

/// Errors from core term operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("substitution requires a value, got `{0}`")]
    NonValue(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(VarName::new(name))
    }

    pub fn lam(binder: impl Into<String>, body: Term) -> Term {
        Term::Lam(VarName::new(binder), Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    pub fn fn_name(name: impl Into<String>) -> Term {
        Term::FnName(FnName::new(name))
    }

    pub fn future(id: impl Into<String>) -> Term {
        Term::Future(FutureId::new(id))
    }

    pub fn pair(left: Term, right: Term) -> Term {
        Term::Pair(Box::new(left), Box::new(right))
    }

    pub fn ite(cond: Term, then: Term, els: Term) -> Term {
        Term::If(Box::new(cond), Box::new(then), Box::new(els))
    }
}

/// True iff `t` is a value: a variable, lambda, future, unit, boolean, or a
/// pair of values. Function names are not values.
pub fn is_value(t: &Term) -> bool {
    match t {
        Term::Var(_) | Term::Lam(..) | Term::Future(_) | Term::Unit | Term::True | Term::False => {
            true
        }
        Term::Pair(l, r) => is_value(l) && is_value(r),
        _ => false,
    }
}

/// The set of futures occurring anywhere in `t`. Terms never bind futures.
pub fn futures_of(t: &Term) -> BTreeSet<FutureId> {
    fn walk(t: &Term, acc: &mut BTreeSet<FutureId>) {
        match t {
            Term::Future(c) => {
                acc.insert(c.clone());
            }
            Term::Var(_) | Term::FnName(_) | Term::Unit | Term::True | Term::False
            | Term::Take(_) => {}
            Term::Lam(_, b) | Term::Async(b) | Term::Fst(b) | Term::Snd(b) => walk(b, acc),
            Term::App(a, b) | Term::Pair(a, b) | Term::Set(a, b) => {
                walk(a, acc);
                walk(b, acc);
            }
            Term::If(c, t1, t2) => {
                walk(c, acc);
                walk(t1, acc);
                walk(t2, acc);
            }
        }
    }
    let mut acc = BTreeSet::new();
    walk(t, &mut acc);
    acc
}

/// Free variables of `t`.
pub fn free_vars(t: &Term) -> BTreeSet<VarName> {
    fn walk(t: &Term, bound: &mut Vec<VarName>, acc: &mut BTreeSet<VarName>) {
        match t {
            Term::Var(x) => {
                if !bound.contains(x) {
                    acc.insert(x.clone());
                }
            }
            Term::Lam(x, b) => {
                bound.push(x.clone());
                walk(b, bound, acc);
                bound.pop();
            }
            Term::FnName(_) | Term::Future(_) | Term::Unit | Term::True | Term::False
            | Term::Take(_) => {}
            Term::Async(b) | Term::Fst(b) | Term::Snd(b) => walk(b, bound, acc),
            Term::App(a, b) | Term::Pair(a, b) | Term::Set(a, b) => {
                walk(a, bound, acc);
                walk(b, bound, acc);
            }
            Term::If(c, t1, t2) => {
                walk(c, bound, acc);
                walk(t1, bound, acc);
                walk(t2, bound, acc);
            }
        }
    }
    let mut acc = BTreeSet::new();
    walk(t, &mut Vec::new(), &mut acc);
    acc
}

/// A binder name not occurring in `avoid`, derived from `base`.
fn fresh_var(base: &VarName, avoid: &BTreeSet<VarName>) -> VarName {
    let stem: String = base
        .0
        .trim_end_matches(|c: char| c.is_ascii_digit())
        .to_string();
    let stem = if stem.is_empty() { "x".to_string() } else { stem };
    let mut n = 1;
    loop {
        let candidate = VarName(format!("{stem}{n}"));
        if !avoid.contains(&candidate) {
            return candidate;
        }
        n += 1;
    }
}

/// Capture-avoiding substitution of value `v` for free occurrences of `x`.
pub fn subst_var(t: &Term, x: &VarName, v: &Term) -> Result<Term, TermError> {
    if !is_value(v) {
        return Err(TermError::NonValue(crate::pretty::term(v)));
    }
    Ok(subst_var_unchecked(t, x, v))
}

pub(crate) fn subst_var_unchecked(t: &Term, x: &VarName, v: &Term) -> Term {
    match t {
        Term::Var(y) => {
            if y == x {
                v.clone()
            } else {
                t.clone()
            }
        }
        Term::Lam(y, b) => {
            if y == x {
                t.clone()
            } else {
                let fv_v = free_vars(v);
                if fv_v.contains(y) && free_vars(b).contains(x) {
                    // renaming the binder keeps v's free y from being captured
                    let mut avoid = fv_v;
                    avoid.extend(free_vars(b));
                    avoid.insert(x.clone());
                    let y2 = fresh_var(y, &avoid);
                    let renamed = subst_var_unchecked(b, y, &Term::Var(y2.clone()));
                    Term::Lam(y2, Box::new(subst_var_unchecked(&renamed, x, v)))
                } else {
                    Term::Lam(y.clone(), Box::new(subst_var_unchecked(b, x, v)))
                }
            }
        }
        Term::App(a, b) => Term::app(subst_var_unchecked(a, x, v), subst_var_unchecked(b, x, v)),
        Term::Async(b) => Term::Async(Box::new(subst_var_unchecked(b, x, v))),
        Term::FnName(_) | Term::Future(_) | Term::Unit | Term::True | Term::False
        | Term::Take(_) => t.clone(),
        Term::Pair(a, b) => Term::pair(subst_var_unchecked(a, x, v), subst_var_unchecked(b, x, v)),
        Term::If(c, t1, t2) => Term::ite(
            subst_var_unchecked(c, x, v),
            subst_var_unchecked(t1, x, v),
            subst_var_unchecked(t2, x, v),
        ),
        Term::Fst(b) => Term::Fst(Box::new(subst_var_unchecked(b, x, v))),
        Term::Snd(b) => Term::Snd(Box::new(subst_var_unchecked(b, x, v))),
        Term::Set(a, b) => Term::Set(
            Box::new(subst_var_unchecked(a, x, v)),
            Box::new(subst_var_unchecked(b, x, v)),
        ),
    }
}

/// Replace every occurrence of future `c` in `t` by `v`.
pub fn subst_future_in_term(t: &Term, c: &FutureId, v: &Term) -> Term {
    match t {
        Term::Future(c2) if c2 == c => v.clone(),
        Term::Var(_) | Term::FnName(_) | Term::Future(_) | Term::Unit | Term::True
        | Term::False | Term::Take(_) => t.clone(),
        Term::Lam(x, b) => {
            // futures and variables never collide, so no capture is possible
            Term::Lam(x.clone(), Box::new(subst_future_in_term(b, c, v)))
        }
        Term::App(a, b) => Term::app(subst_future_in_term(a, c, v), subst_future_in_term(b, c, v)),
        Term::Async(b) => Term::Async(Box::new(subst_future_in_term(b, c, v))),
        Term::Pair(a, b) => {
            Term::pair(subst_future_in_term(a, c, v), subst_future_in_term(b, c, v))
        }
        Term::If(cond, t1, t2) => Term::ite(
            subst_future_in_term(cond, c, v),
            subst_future_in_term(t1, c, v),
            subst_future_in_term(t2, c, v),
        ),
        Term::Fst(b) => Term::Fst(Box::new(subst_future_in_term(b, c, v))),
        Term::Snd(b) => Term::Snd(Box::new(subst_future_in_term(b, c, v))),
        Term::Set(a, b) => Term::Set(
            Box::new(subst_future_in_term(a, c, v)),
            Box::new(subst_future_in_term(b, c, v)),
        ),
    }
}

/// Convert occurrences of function name `f` into the variable of the same
/// spelling, renaming any lambda binder that would capture it. Used when a
/// definition is withdrawn from the repository and rebound recursively.
pub fn fn_name_to_var(t: &Term, f: &FnName) -> Term {
    let target = VarName(f.0.clone());
    match t {
        Term::FnName(g) if g == f => Term::Var(target),
        Term::Var(_) | Term::FnName(_) | Term::Future(_) | Term::Unit | Term::True
        | Term::False | Term::Take(_) => t.clone(),
        Term::Lam(x, b) => {
            if crate::term::mentions_fn(b, f) && *x == target {
                let mut avoid = free_vars(b);
                avoid.insert(target.clone());
                let x2 = fresh_var(x, &avoid);
                let renamed = subst_var_unchecked(b, x, &Term::Var(x2.clone()));
                Term::Lam(x2, Box::new(fn_name_to_var(&renamed, f)))
            } else {
                Term::Lam(x.clone(), Box::new(fn_name_to_var(b, f)))
            }
        }
        Term::App(a, b) => Term::app(fn_name_to_var(a, f), fn_name_to_var(b, f)),
        Term::Async(b) => Term::Async(Box::new(fn_name_to_var(b, f))),
        Term::Pair(a, b) => Term::pair(fn_name_to_var(a, f), fn_name_to_var(b, f)),
        Term::If(c, t1, t2) => Term::ite(
            fn_name_to_var(c, f),
            fn_name_to_var(t1, f),
            fn_name_to_var(t2, f),
        ),
        Term::Fst(b) => Term::Fst(Box::new(fn_name_to_var(b, f))),
        Term::Snd(b) => Term::Snd(Box::new(fn_name_to_var(b, f))),
        Term::Set(a, b) => Term::Set(Box::new(fn_name_to_var(a, f)), Box::new(fn_name_to_var(b, f))),
    }
}

/// Whether `t` mentions function name `f`.
pub fn mentions_fn(t: &Term, f: &FnName) -> bool {
    match t {
        Term::FnName(g) => g == f,
        Term::Take(g) => g == f,
        Term::Var(_) | Term::Future(_) | Term::Unit | Term::True | Term::False => false,
        Term::Lam(_, b) | Term::Async(b) | Term::Fst(b) | Term::Snd(b) => mentions_fn(b, f),
        Term::App(a, b) | Term::Pair(a, b) | Term::Set(a, b) => {
            mentions_fn(a, f) || mentions_fn(b, f)
        }
        Term::If(c, t1, t2) => mentions_fn(c, f) || mentions_fn(t1, f) || mentions_fn(t2, f),
    }
}

/// Equality up to consistent renaming of lambda-bound variables. Function
/// names and futures compare literally.
pub fn alpha_eq(t1: &Term, t2: &Term) -> bool {
    fn go(t1: &Term, t2: &Term, env: &mut Vec<(VarName, VarName)>) -> bool {
        match (t1, t2) {
            (Term::Var(x), Term::Var(y)) => {
                for (a, b) in env.iter().rev() {
                    match (a == x, b == y) {
                        (true, true) => return true,
                        (false, false) => continue,
                        _ => return false,
                    }
                }
                x == y
            }
            (Term::Lam(x, b1), Term::Lam(y, b2)) => {
                env.push((x.clone(), y.clone()));
                let r = go(b1, b2, env);
                env.pop();
                r
            }
            (Term::App(a1, b1), Term::App(a2, b2))
            | (Term::Pair(a1, b1), Term::Pair(a2, b2))
            | (Term::Set(a1, b1), Term::Set(a2, b2)) => go(a1, a2, env) && go(b1, b2, env),
            (Term::Async(b1), Term::Async(b2))
            | (Term::Fst(b1), Term::Fst(b2))
            | (Term::Snd(b1), Term::Snd(b2)) => go(b1, b2, env),
            (Term::If(c1, x1, y1), Term::If(c2, x2, y2)) => {
                go(c1, c2, env) && go(x1, x2, env) && go(y1, y2, env)
            }
            (Term::FnName(f), Term::FnName(g)) => f == g,
            (Term::Take(f), Term::Take(g)) => f == g,
            (Term::Future(c1), Term::Future(c2)) => c1 == c2,
            (Term::Unit, Term::Unit) | (Term::True, Term::True) | (Term::False, Term::False) => {
                true
            }
            _ => false,
        }
    }
    go(t1, t2, &mut Vec::new())
}

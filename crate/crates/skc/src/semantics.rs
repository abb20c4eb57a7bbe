//! The reduction semantics: normalization to a prenex form modulo
//! structural congruence, redex enumeration through evaluation contexts,
//! and rule application.
//!
//! Closure under congruence, restriction, and parallel composition is not
//! implemented as rewrite rules; normalizing to prenex form and searching
//! each running function for its unique internal redex reaches the same
//! configurations with a finite redex list.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::names::{FnName, FutureId, VarName};
use crate::pretty;
use crate::repo::Repo;
use crate::system::{all_futures, free_futures, fresh_future, rename_future, Config, System};
use crate::term::{
    fn_name_to_var, futures_of, is_value, subst_future_in_term, subst_var_unchecked, Term,
};

/// Labels of the reduction rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleLabel {
    Beta,
    Ret,
    Async,
    Push,
    Set,
    Take,
    CondTrue,
    CondFalse,
    Fst,
    Snd,
}

impl fmt::Display for RuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleLabel::Beta => "beta",
            RuleLabel::Ret => "ret",
            RuleLabel::Async => "async",
            RuleLabel::Push => "push",
            RuleLabel::Set => "set",
            RuleLabel::Take => "take",
            RuleLabel::CondTrue => "cond_t",
            RuleLabel::CondFalse => "cond_f",
            RuleLabel::Fst => "fst",
            RuleLabel::Snd => "snd",
        };
        f.write_str(s)
    }
}

/// One step into a term along the evaluation-context grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathStep {
    /// Into the function of an application (`E M`).
    AppFun,
    /// Into the argument under a lambda (`(\x.M) E`).
    AppArg,
    /// Into the condition of a conditional.
    IfCond,
    /// Into the operand of `fst`.
    FstArg,
    /// Into the operand of `snd`.
    SndArg,
    /// Into the target of `set`.
    SetTarget,
}

impl fmt::Display for PathStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PathStep::AppFun => "fun",
            PathStep::AppArg => "arg",
            PathStep::IfCond => "cond",
            PathStep::FstArg => "fst",
            PathStep::SndArg => "snd",
            PathStep::SetTarget => "target",
        };
        f.write_str(s)
    }
}

pub type Path = Vec<PathStep>;

/// Render a hole path; the empty path (redex at the top) prints as `-`.
pub fn path_string(p: &Path) -> String {
    if p.is_empty() {
        "-".to_string()
    } else {
        p.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// A system in prenex form: every restriction hoisted to the front,
/// parallel composition flattened, empty systems dropped, components in a
/// fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSystem {
    pub restricted: Vec<FutureId>,
    pub components: Vec<(FutureId, Term)>,
}

impl NormalSystem {
    pub fn embed(&self) -> System {
        let mut core = match self.components.split_first() {
            None => System::Nil,
            Some(((c, t), rest)) => {
                let mut acc = System::Run(c.clone(), t.clone());
                for (c, t) in rest {
                    acc = System::par(acc, System::Run(c.clone(), t.clone()));
                }
                acc
            }
        };
        for c in self.restricted.iter().rev() {
            core = System::Res(c.clone(), Box::new(core));
        }
        core
    }

    pub fn restricted_set(&self) -> BTreeSet<FutureId> {
        self.restricted.iter().cloned().collect()
    }
}

/// Congruent prenex form. Restrictions are extruded to the front, renaming
/// a restricted future whenever extrusion would capture a name already in
/// use; components are sorted by their canonical print with restricted
/// futures masked, so congruent systems normalize to matching shapes.
pub fn normalize(s: &System) -> NormalSystem {
    let mut avoid = all_futures(s);
    let mut used: BTreeSet<FutureId> = free_futures(s);
    let mut hint = avoid.iter().filter_map(|c| c.numeric_suffix()).max().map_or(1, |n| n + 1);
    let mut restricted: Vec<FutureId> = Vec::new();
    let mut components: Vec<(FutureId, Term)> = Vec::new();

    fn walk(
        s: &System,
        avoid: &mut BTreeSet<FutureId>,
        used: &mut BTreeSet<FutureId>,
        hint: &mut u64,
        restricted: &mut Vec<FutureId>,
        components: &mut Vec<(FutureId, Term)>,
    ) {
        match s {
            System::Nil => {}
            System::Run(c, t) => components.push((c.clone(), t.clone())),
            System::Par(l, r) => {
                walk(l, avoid, used, hint, restricted, components);
                walk(r, avoid, used, hint, restricted, components);
            }
            System::Res(c, body) => {
                if used.contains(c) {
                    let (c2, next) = fresh_future(avoid, *hint);
                    *hint = next;
                    avoid.insert(c2.clone());
                    used.insert(c2.clone());
                    restricted.push(c2.clone());
                    let renamed = rename_future(body, c, &c2);
                    walk(&renamed, avoid, used, hint, restricted, components);
                } else {
                    used.insert(c.clone());
                    restricted.push(c.clone());
                    walk(body, avoid, used, hint, restricted, components);
                }
            }
        }
    }

    walk(s, &mut avoid, &mut used, &mut hint, &mut restricted, &mut components);

    let mask: BTreeSet<FutureId> = restricted.iter().cloned().collect();
    components.sort_by_cached_key(|(c, t)| {
        (pretty::canon_term(t, &mask), pretty::canon_producer(c, &mask))
    });
    NormalSystem { restricted, components }
}

type Bijection = BTreeMap<FutureId, FutureId>;

fn extend_bijection(bij: &Bijection, a: &FutureId, b: &FutureId) -> Option<Bijection> {
    match bij.get(a) {
        Some(mapped) => (mapped == b).then(|| bij.clone()),
        None => {
            if bij.values().any(|v| v == b) {
                None
            } else {
                let mut next = bij.clone();
                next.insert(a.clone(), b.clone());
                Some(next)
            }
        }
    }
}

fn match_futures(
    c1: &FutureId,
    c2: &FutureId,
    r1: &BTreeSet<FutureId>,
    r2: &BTreeSet<FutureId>,
    bij: &Bijection,
) -> Option<Bijection> {
    match (r1.contains(c1), r2.contains(c2)) {
        (true, true) => extend_bijection(bij, c1, c2),
        (false, false) => (c1 == c2).then(|| bij.clone()),
        _ => None,
    }
}

fn match_terms(
    t1: &Term,
    t2: &Term,
    r1: &BTreeSet<FutureId>,
    r2: &BTreeSet<FutureId>,
    bij: Bijection,
    env: &mut Vec<(VarName, VarName)>,
) -> Option<Bijection> {
    match (t1, t2) {
        (Term::Var(x), Term::Var(y)) => {
            for (a, b) in env.iter().rev() {
                match (a == x, b == y) {
                    (true, true) => return Some(bij),
                    (false, false) => continue,
                    _ => return None,
                }
            }
            (x == y).then_some(bij)
        }
        (Term::Lam(x, b1), Term::Lam(y, b2)) => {
            env.push((x.clone(), y.clone()));
            let r = match_terms(b1, b2, r1, r2, bij, env);
            env.pop();
            r
        }
        (Term::App(a1, b1), Term::App(a2, b2))
        | (Term::Pair(a1, b1), Term::Pair(a2, b2))
        | (Term::Set(a1, b1), Term::Set(a2, b2)) => {
            let bij = match_terms(a1, a2, r1, r2, bij, env)?;
            match_terms(b1, b2, r1, r2, bij, env)
        }
        (Term::Async(b1), Term::Async(b2))
        | (Term::Fst(b1), Term::Fst(b2))
        | (Term::Snd(b1), Term::Snd(b2)) => match_terms(b1, b2, r1, r2, bij, env),
        (Term::If(c1, x1, y1), Term::If(c2, x2, y2)) => {
            let bij = match_terms(c1, c2, r1, r2, bij, env)?;
            let bij = match_terms(x1, x2, r1, r2, bij, env)?;
            match_terms(y1, y2, r1, r2, bij, env)
        }
        (Term::FnName(f), Term::FnName(g)) => (f == g).then_some(bij),
        (Term::Take(f), Term::Take(g)) => (f == g).then_some(bij),
        (Term::Future(c1), Term::Future(c2)) => match_futures(c1, c2, r1, r2, &bij),
        (Term::Unit, Term::Unit) | (Term::True, Term::True) | (Term::False, Term::False) => {
            Some(bij)
        }
        _ => None,
    }
}

fn match_components(
    cs1: &[(FutureId, Term)],
    cs2: &[(FutureId, Term)],
    taken: &mut Vec<bool>,
    idx: usize,
    r1: &BTreeSet<FutureId>,
    r2: &BTreeSet<FutureId>,
    bij: Bijection,
) -> bool {
    if idx == cs1.len() {
        return true;
    }
    let (c1, t1) = &cs1[idx];
    for (j, (c2, t2)) in cs2.iter().enumerate() {
        if taken[j] {
            continue;
        }
        let Some(b) = match_futures(c1, c2, r1, r2, &bij) else { continue };
        let Some(b) = match_terms(t1, t2, r1, r2, b, &mut Vec::new()) else { continue };
        taken[j] = true;
        if match_components(cs1, cs2, taken, idx + 1, r1, r2, b) {
            return true;
        }
        taken[j] = false;
    }
    false
}

/// Structural congruence, with component terms compared up to
/// alpha-renaming of lambda binders and restricted futures matched by an
/// exact backtracking bijection search.
pub fn congruent(s1: &System, s2: &System) -> bool {
    let n1 = normalize(s1);
    let n2 = normalize(s2);
    if n1.restricted.len() != n2.restricted.len()
        || n1.components.len() != n2.components.len()
    {
        return false;
    }
    let r1 = n1.restricted_set();
    let r2 = n2.restricted_set();
    let mut taken = vec![false; n2.components.len()];
    match_components(
        &n1.components,
        &n2.components,
        &mut taken,
        0,
        &r1,
        &r2,
        Bijection::new(),
    )
}

/// Why a running function cannot reduce on its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StuckReason {
    UndefinedFunction(FnName),
    NonFunctionApplication(String),
    AwaitingFuture(FutureId),
    FutureInStoredBody,
    SetTargetNotFunctionName(String),
    ConditionNotBoolean(String),
    ProjectionNotPair(String),
    NonValuePair,
}

impl fmt::Display for StuckReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StuckReason::UndefinedFunction(n) => write!(f, "UndefinedFunction({n})"),
            StuckReason::NonFunctionApplication(t) => {
                write!(f, "NonFunctionApplication({t})")
            }
            StuckReason::AwaitingFuture(c) => write!(f, "AwaitingFuture({c})"),
            StuckReason::FutureInStoredBody => write!(f, "FutureInStoredBody"),
            StuckReason::SetTargetNotFunctionName(t) => {
                write!(f, "SetTargetNotFunctionName({t})")
            }
            StuckReason::ConditionNotBoolean(t) => write!(f, "ConditionNotBoolean({t})"),
            StuckReason::ProjectionNotPair(t) => write!(f, "ProjectionNotPair({t})"),
            StuckReason::NonValuePair => write!(f, "NonValuePair"),
        }
    }
}

/// Where a redex rewrites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RedexTarget {
    /// Index of the component in the normalized system.
    Component(usize),
    /// The restricted future a `push` resolves.
    Future(FutureId),
}

/// A located, rule-labelled reduction opportunity in a normalized
/// configuration. Applying it is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Redex {
    pub rule: RuleLabel,
    pub target: RedexTarget,
    pub path: Path,
}

enum Scan {
    Redex(Path, RuleLabel),
    Value,
    Blocked(StuckReason),
}

/// Unique decomposition of a term along the evaluation contexts:
/// `E ::= [-] | (\x.M) E | E M | if E then M else M' | fst E | snd E
/// | set E M`. A function name in the target position of `set` is inert;
/// `ret` applies to names in every other hole.
fn scan_term(t: &Term, repo: &Repo, path: &mut Path) -> Scan {
    match t {
        Term::Var(_) | Term::Lam(..) | Term::Future(_) | Term::Unit | Term::True
        | Term::False => Scan::Value,
        Term::Pair(l, r) => {
            if is_value(l) && is_value(r) {
                Scan::Value
            } else {
                Scan::Blocked(StuckReason::NonValuePair)
            }
        }
        Term::FnName(f) => {
            if repo.contains(f) {
                Scan::Redex(path.clone(), RuleLabel::Ret)
            } else {
                Scan::Blocked(StuckReason::UndefinedFunction(f.clone()))
            }
        }
        Term::Async(_) => Scan::Redex(path.clone(), RuleLabel::Async),
        Term::Take(f) => {
            if repo.contains(f) {
                Scan::Redex(path.clone(), RuleLabel::Take)
            } else {
                Scan::Blocked(StuckReason::UndefinedFunction(f.clone()))
            }
        }
        Term::App(f, a) => {
            if matches!(f.as_ref(), Term::Lam(..)) {
                if is_value(a) {
                    Scan::Redex(path.clone(), RuleLabel::Beta)
                } else {
                    path.push(PathStep::AppArg);
                    let r = scan_term(a, repo, path);
                    path.pop();
                    r
                }
            } else {
                path.push(PathStep::AppFun);
                let r = scan_term(f, repo, path);
                path.pop();
                match r {
                    Scan::Value => {
                        let reason = match f.as_ref() {
                            Term::Future(c) => StuckReason::AwaitingFuture(c.clone()),
                            other => StuckReason::NonFunctionApplication(pretty::term(other)),
                        };
                        Scan::Blocked(reason)
                    }
                    other => other,
                }
            }
        }
        Term::Set(target, body) => match target.as_ref() {
            Term::FnName(_) => {
                if futures_of(body).is_empty() {
                    Scan::Redex(path.clone(), RuleLabel::Set)
                } else {
                    Scan::Blocked(StuckReason::FutureInStoredBody)
                }
            }
            other if is_value(other) => {
                let reason = match other {
                    Term::Future(c) => StuckReason::AwaitingFuture(c.clone()),
                    _ => StuckReason::SetTargetNotFunctionName(pretty::term(other)),
                };
                Scan::Blocked(reason)
            }
            _ => {
                path.push(PathStep::SetTarget);
                let r = scan_term(target, repo, path);
                path.pop();
                r
            }
        },
        Term::If(c, _, _) => match c.as_ref() {
            Term::True => Scan::Redex(path.clone(), RuleLabel::CondTrue),
            Term::False => Scan::Redex(path.clone(), RuleLabel::CondFalse),
            other if is_value(other) => {
                let reason = match other {
                    Term::Future(fut) => StuckReason::AwaitingFuture(fut.clone()),
                    _ => StuckReason::ConditionNotBoolean(pretty::term(other)),
                };
                Scan::Blocked(reason)
            }
            _ => {
                path.push(PathStep::IfCond);
                let r = scan_term(c, repo, path);
                path.pop();
                r
            }
        },
        Term::Fst(p) => scan_projection(p, repo, path, PathStep::FstArg, RuleLabel::Fst),
        Term::Snd(p) => scan_projection(p, repo, path, PathStep::SndArg, RuleLabel::Snd),
    }
}

fn scan_projection(
    p: &Term,
    repo: &Repo,
    path: &mut Path,
    step: PathStep,
    rule: RuleLabel,
) -> Scan {
    match p {
        Term::Pair(l, r) if is_value(l) && is_value(r) => Scan::Redex(path.clone(), rule),
        other if is_value(other) => {
            let reason = match other {
                Term::Future(c) => StuckReason::AwaitingFuture(c.clone()),
                _ => StuckReason::ProjectionNotPair(pretty::term(other)),
            };
            Scan::Blocked(reason)
        }
        _ => {
            path.push(step);
            let r = scan_term(p, repo, path);
            path.pop();
            r
        }
    }
}

/// All redexes of a configuration: per component, the unique internal redex
/// if any (in component order), then one `push` per restricted future whose
/// component has reduced to a value (in restriction order).
pub fn find_redexes(cfg: &Config) -> Vec<Redex> {
    let n = normalize(&cfg.system);
    let mut out = Vec::new();
    for (i, (_, t)) in n.components.iter().enumerate() {
        if let Scan::Redex(path, rule) = scan_term(t, &cfg.repo, &mut Vec::new()) {
            out.push(Redex { rule, target: RedexTarget::Component(i), path });
        }
    }
    for c in &n.restricted {
        let produced = n.components.iter().find(|(p, _)| p == c);
        if let Some((_, body)) = produced {
            if is_value(body) {
                out.push(Redex {
                    rule: RuleLabel::Push,
                    target: RedexTarget::Future(c.clone()),
                    path: Vec::new(),
                });
            }
        }
    }
    out
}

/// Components that can neither reduce nor finish, with the reason. Only
/// meaningful for reporting once `find_redexes` is empty; a blocked
/// component may still be unblocked by a later `push` from elsewhere.
pub fn stuck_components(cfg: &Config) -> Vec<(FutureId, StuckReason)> {
    let n = normalize(&cfg.system);
    let mut out = Vec::new();
    for (c, t) in &n.components {
        if let Scan::Blocked(reason) = scan_term(t, &cfg.repo, &mut Vec::new()) {
            out.push((c.clone(), reason));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApplyError {
    #[error("redex no longer applies to this configuration")]
    StaleRedex,
}

enum Effect {
    None,
    Spawn { future: FutureId, body: Term, next_counter: u64 },
    DefineFn(FnName, Term),
    TakeFn(FnName),
}

struct RewriteCtx<'a> {
    repo: &'a Repo,
    avoid: BTreeSet<FutureId>,
    counter: u64,
}

fn rule_at_hole(t: &Term, rule: RuleLabel, ctx: &RewriteCtx, effect: &mut Effect) -> Result<Term, ApplyError> {
    match (rule, t) {
        (RuleLabel::Beta, Term::App(f, a)) => match f.as_ref() {
            Term::Lam(x, b) if is_value(a) => Ok(subst_var_unchecked(b, x, a)),
            _ => Err(ApplyError::StaleRedex),
        },
        (RuleLabel::Ret, Term::FnName(f)) => {
            ctx.repo.lookup(f).cloned().ok_or(ApplyError::StaleRedex)
        }
        (RuleLabel::Async, Term::Async(m)) => {
            let (c, next) = fresh_future(&ctx.avoid, ctx.counter);
            *effect = Effect::Spawn { future: c.clone(), body: (**m).clone(), next_counter: next };
            Ok(Term::Future(c))
        }
        (RuleLabel::Set, Term::Set(target, body)) => match target.as_ref() {
            Term::FnName(f) if futures_of(body).is_empty() => {
                *effect = Effect::DefineFn(f.clone(), (**body).clone());
                Ok(Term::FnName(f.clone()))
            }
            _ => Err(ApplyError::StaleRedex),
        },
        (RuleLabel::Take, Term::Take(f)) => {
            let m = ctx.repo.lookup(f).ok_or(ApplyError::StaleRedex)?;
            // the withdrawn body comes back as `let rec f = M in M`
            let rebound = fn_name_to_var(m, f);
            let binder = VarName(f.0.clone());
            *effect = Effect::TakeFn(f.clone());
            Ok(Term::app(
                Term::Lam(binder.clone(), Box::new(rebound.clone())),
                Term::app(Term::fn_name("fix"), Term::Lam(binder, Box::new(rebound))),
            ))
        }
        (RuleLabel::CondTrue, Term::If(c, t1, _)) if **c == Term::True => Ok((**t1).clone()),
        (RuleLabel::CondFalse, Term::If(c, _, t2)) if **c == Term::False => Ok((**t2).clone()),
        (RuleLabel::Fst, Term::Fst(p)) => match p.as_ref() {
            Term::Pair(l, r) if is_value(l) && is_value(r) => Ok((**l).clone()),
            _ => Err(ApplyError::StaleRedex),
        },
        (RuleLabel::Snd, Term::Snd(p)) => match p.as_ref() {
            Term::Pair(l, r) if is_value(l) && is_value(r) => Ok((**r).clone()),
            _ => Err(ApplyError::StaleRedex),
        },
        _ => Err(ApplyError::StaleRedex),
    }
}

fn rewrite(
    t: &Term,
    path: &[PathStep],
    rule: RuleLabel,
    ctx: &RewriteCtx,
    effect: &mut Effect,
) -> Result<Term, ApplyError> {
    let Some((step, rest)) = path.split_first() else {
        return rule_at_hole(t, rule, ctx, effect);
    };
    match (step, t) {
        (PathStep::AppFun, Term::App(f, a)) => Ok(Term::App(
            Box::new(rewrite(f, rest, rule, ctx, effect)?),
            a.clone(),
        )),
        (PathStep::AppArg, Term::App(f, a)) => Ok(Term::App(
            f.clone(),
            Box::new(rewrite(a, rest, rule, ctx, effect)?),
        )),
        (PathStep::IfCond, Term::If(c, t1, t2)) => Ok(Term::If(
            Box::new(rewrite(c, rest, rule, ctx, effect)?),
            t1.clone(),
            t2.clone(),
        )),
        (PathStep::FstArg, Term::Fst(p)) => {
            Ok(Term::Fst(Box::new(rewrite(p, rest, rule, ctx, effect)?)))
        }
        (PathStep::SndArg, Term::Snd(p)) => {
            Ok(Term::Snd(Box::new(rewrite(p, rest, rule, ctx, effect)?)))
        }
        (PathStep::SetTarget, Term::Set(target, body)) => Ok(Term::Set(
            Box::new(rewrite(target, rest, rule, ctx, effect)?),
            body.clone(),
        )),
        _ => Err(ApplyError::StaleRedex),
    }
}

/// Apply one redex. The result system is re-normalized.
pub fn apply_redex(cfg: &Config, r: &Redex) -> Result<Config, ApplyError> {
    let n = normalize(&cfg.system);
    match &r.target {
        RedexTarget::Component(i) => {
            let (producer, body) =
                n.components.get(*i).cloned().ok_or(ApplyError::StaleRedex)?;
            let mut avoid = all_futures(&cfg.system);
            avoid.extend(n.restricted.iter().cloned());
            let ctx = RewriteCtx { repo: &cfg.repo, avoid, counter: cfg.fresh_counter };
            let mut effect = Effect::None;
            let new_body = rewrite(&body, &r.path, r.rule, &ctx, &mut effect)?;

            let mut components = n.components.clone();
            components[*i] = (producer, new_body);
            let mut restricted = n.restricted.clone();
            let mut repo = cfg.repo.clone();
            let mut counter = cfg.fresh_counter;
            match effect {
                Effect::None => {}
                Effect::Spawn { future, body, next_counter } => {
                    components.push((future.clone(), body));
                    restricted.push(future);
                    counter = next_counter;
                }
                Effect::DefineFn(f, m) => {
                    repo = repo.define(f, m).map_err(|_| ApplyError::StaleRedex)?;
                }
                Effect::TakeFn(f) => {
                    repo = repo.undefine(&f).map_err(|_| ApplyError::StaleRedex)?;
                }
            }
            let system = normalize(&NormalSystem { restricted, components }.embed()).embed();
            Ok(Config { system, repo, fresh_counter: counter })
        }
        RedexTarget::Future(c) => {
            if r.rule != RuleLabel::Push {
                return Err(ApplyError::StaleRedex);
            }
            let rpos =
                n.restricted.iter().position(|x| x == c).ok_or(ApplyError::StaleRedex)?;
            let cpos = n
                .components
                .iter()
                .position(|(p, _)| p == c)
                .ok_or(ApplyError::StaleRedex)?;
            let value = n.components[cpos].1.clone();
            if !is_value(&value) {
                return Err(ApplyError::StaleRedex);
            }
            let mut components = n.components.clone();
            components.remove(cpos);
            let mut restricted = n.restricted.clone();
            restricted.remove(rpos);
            for (_, t) in components.iter_mut() {
                *t = subst_future_in_term(t, c, &value);
            }
            let system = normalize(&NormalSystem { restricted, components }.embed()).embed();
            Ok(Config { system, repo: cfg.repo.clone(), fresh_counter: cfg.fresh_counter })
        }
    }
}

//! Shared test support: seeded generators, congruence-preserving
//! scramblers, and independent oracles (naive congruence decision,
//! brute-force context enumeration, normal-order normalization, and
//! no-deduplication path exploration).

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skc::names::{FnName, FutureId, VarName};
use skc::repo::Repo;
use skc::semantics::{apply_redex, find_redexes};
use skc::system::{all_futures, free_futures, rename_future, Config, System};
use skc::term::{alpha_eq, futures_of, is_value, Term};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------
// term and system generators
// ---------------------------------------------------------------------

/// A closed value over the given variable scope.
pub fn gen_value(r: &mut impl Rng, depth: usize, scope: &mut Vec<String>) -> Term {
    let leaf = depth == 0;
    let max = if leaf { 4 } else { 6 };
    match r.random_range(0..max) {
        0 => Term::Unit,
        1 => Term::True,
        2 => Term::False,
        3 => {
            if scope.is_empty() {
                Term::Unit
            } else {
                let i = r.random_range(0..scope.len());
                Term::var(scope[i].clone())
            }
        }
        4 => {
            let x = format!("v{}", r.random_range(0..50));
            scope.push(x.clone());
            let body = gen_term(r, depth - 1, scope, &GenCfg::pure());
            scope.pop();
            Term::lam(x, body)
        }
        _ => Term::pair(
            gen_value(r, depth - 1, scope),
            gen_value(r, depth - 1, scope),
        ),
    }
}

/// What a generated term may contain.
pub struct GenCfg {
    pub fn_names: Vec<String>,
    pub allow_async: bool,
    pub allow_state: bool,
    pub futures: Vec<String>,
}

impl GenCfg {
    pub fn pure() -> GenCfg {
        GenCfg { fn_names: vec![], allow_async: false, allow_state: false, futures: vec![] }
    }

    pub fn with_fns(names: &[&str]) -> GenCfg {
        GenCfg {
            fn_names: names.iter().map(|s| s.to_string()).collect(),
            allow_async: false,
            allow_state: false,
            futures: vec![],
        }
    }

    pub fn full(names: &[&str]) -> GenCfg {
        GenCfg {
            fn_names: names.iter().map(|s| s.to_string()).collect(),
            allow_async: true,
            allow_state: true,
            futures: vec![],
        }
    }
}

/// A closed term over `scope`; pairs are generated over values only.
pub fn gen_term(r: &mut impl Rng, depth: usize, scope: &mut Vec<String>, cfg: &GenCfg) -> Term {
    if depth == 0 {
        return match r.random_range(0..5) {
            0 => Term::Unit,
            1 => Term::True,
            2 => Term::False,
            3 if !cfg.futures.is_empty() => {
                let i = r.random_range(0..cfg.futures.len());
                Term::future(cfg.futures[i].clone())
            }
            3 if !cfg.fn_names.is_empty() => {
                let i = r.random_range(0..cfg.fn_names.len());
                Term::fn_name(cfg.fn_names[i].clone())
            }
            _ => {
                if scope.is_empty() {
                    Term::Unit
                } else {
                    let i = r.random_range(0..scope.len());
                    Term::var(scope[i].clone())
                }
            }
        };
    }
    let d = depth - 1;
    match r.random_range(0..14) {
        0 | 1 => {
            let x = format!("x{}", r.random_range(0..50));
            scope.push(x.clone());
            let body = gen_term(r, d, scope, cfg);
            scope.pop();
            Term::lam(x, body)
        }
        2 | 3 | 4 => Term::app(gen_term(r, d, scope, cfg), gen_term(r, d, scope, cfg)),
        5 => Term::ite(
            gen_term(r, d, scope, cfg),
            gen_term(r, d, scope, cfg),
            gen_term(r, d, scope, cfg),
        ),
        6 => Term::pair(gen_value(r, d.min(2), scope), gen_value(r, d.min(2), scope)),
        7 => Term::Fst(Box::new(gen_term(r, d, scope, cfg))),
        8 => Term::Snd(Box::new(gen_term(r, d, scope, cfg))),
        9 if cfg.allow_async => Term::Async(Box::new(gen_term(r, d, scope, cfg))),
        10 if cfg.allow_state && !cfg.fn_names.is_empty() => {
            let i = r.random_range(0..cfg.fn_names.len());
            let target = if r.random_bool(0.6) {
                Term::fn_name(cfg.fn_names[i].clone())
            } else {
                gen_term(r, d, scope, cfg)
            };
            Term::Set(Box::new(target), Box::new(gen_term(r, d.min(2), scope, cfg)))
        }
        11 if cfg.allow_state && !cfg.fn_names.is_empty() => {
            let i = r.random_range(0..cfg.fn_names.len());
            Term::Take(FnName::new(cfg.fn_names[i].clone()))
        }
        12 if !cfg.fn_names.is_empty() => {
            let i = r.random_range(0..cfg.fn_names.len());
            Term::fn_name(cfg.fn_names[i].clone())
        }
        _ => gen_value(r, d, scope),
    }
}

/// A random system: distinct producers, terms over a future pool, random
/// parallel structure and restrictions.
pub fn gen_system(r: &mut impl Rng, max_comps: usize) -> System {
    let n = r.random_range(1..=max_comps);
    let pool: Vec<String> = (0..6).map(|i| format!("c{i}")).collect();
    let cfg = GenCfg {
        fn_names: vec!["f".into(), "g".into()],
        allow_async: false,
        allow_state: false,
        futures: pool.clone(),
    };
    let mut comps: Vec<System> = (0..n)
        .map(|i| {
            let depth = r.random_range(0..=3);
            let t = gen_term(r, depth, &mut Vec::new(), &cfg);
            System::Run(FutureId::new(format!("c{i}")), t)
        })
        .collect();
    // fold into a random tree with occasional padding and restrictions
    while comps.len() > 1 {
        let i = r.random_range(0..comps.len());
        let a = comps.remove(i);
        let j = r.random_range(0..comps.len());
        let b = comps.remove(j);
        comps.push(System::par(a, b));
    }
    let mut s = comps.pop().unwrap();
    if r.random_bool(0.3) {
        s = System::par(s, System::Nil);
    }
    for name in pool.iter().take(r.random_range(0..=3)) {
        s = System::Res(FutureId::new(name.clone()), Box::new(s));
    }
    s
}

// ---------------------------------------------------------------------
// congruence-preserving scrambler
// ---------------------------------------------------------------------

#[derive(Clone, Copy)]
enum Op {
    Comm,
    AssocL,
    AssocR,
    Pad,
    Unpad,
    ResSwap,
    Rename,
    Extrude,
    Intrude,
}

const OPS: [Op; 9] = [
    Op::Comm,
    Op::AssocL,
    Op::AssocR,
    Op::Pad,
    Op::Unpad,
    Op::ResSwap,
    Op::Rename,
    Op::Extrude,
    Op::Intrude,
];

fn node_count(s: &System) -> usize {
    match s {
        System::Nil | System::Run(..) => 1,
        System::Par(l, r) => 1 + node_count(l) + node_count(r),
        System::Res(_, b) => 1 + node_count(b),
    }
}

fn apply_op(s: &System, op: Op, fresh: &mut u64, avoid: &[FutureId]) -> System {
    match (op, s) {
        (Op::Comm, System::Par(l, r)) => System::par((**r).clone(), (**l).clone()),
        (Op::AssocL, System::Par(l, r)) => {
            if let System::Par(rl, rr) = r.as_ref() {
                System::par(System::par((**l).clone(), (**rl).clone()), (**rr).clone())
            } else {
                s.clone()
            }
        }
        (Op::AssocR, System::Par(l, r)) => {
            if let System::Par(ll, lr) = l.as_ref() {
                System::par((**ll).clone(), System::par((**lr).clone(), (**r).clone()))
            } else {
                s.clone()
            }
        }
        (Op::Pad, _) => System::par(s.clone(), System::Nil),
        (Op::Unpad, System::Par(l, r)) => match (l.as_ref(), r.as_ref()) {
            (System::Nil, other) | (other, System::Nil) => other.clone(),
            _ => s.clone(),
        },
        (Op::ResSwap, System::Res(a, body)) => {
            if let System::Res(b, inner) = body.as_ref() {
                System::Res(b.clone(), Box::new(System::Res(a.clone(), inner.clone())))
            } else {
                s.clone()
            }
        }
        (Op::Rename, System::Res(c, body)) => {
            loop {
                *fresh += 1;
                let c2 = FutureId::new(format!("r{fresh}"));
                if !avoid.contains(&c2) {
                    return System::Res(c2.clone(), Box::new(rename_future(body, c, &c2)));
                }
            }
        }
        (Op::Extrude, System::Res(c, body)) => {
            if let System::Par(l, r) = body.as_ref() {
                if !free_futures(r).contains(c) {
                    return System::par(
                        System::Res(c.clone(), l.clone()),
                        (**r).clone(),
                    );
                }
            }
            s.clone()
        }
        (Op::Intrude, System::Par(l, r)) => {
            if let System::Res(c, inner) = l.as_ref() {
                if !free_futures(r).contains(c) {
                    return System::Res(
                        c.clone(),
                        Box::new(System::par((**inner).clone(), (**r).clone())),
                    );
                }
            }
            s.clone()
        }
        _ => s.clone(),
    }
}

fn rewrite_nth(s: &System, target: usize, counter: &mut usize, op: Op, fresh: &mut u64, avoid: &[FutureId]) -> System {
    let here = *counter;
    *counter += 1;
    if here == target {
        return apply_op(s, op, fresh, avoid);
    }
    match s {
        System::Nil | System::Run(..) => s.clone(),
        System::Par(l, r) => {
            let l2 = rewrite_nth(l, target, counter, op, fresh, avoid);
            let r2 = rewrite_nth(r, target, counter, op, fresh, avoid);
            System::par(l2, r2)
        }
        System::Res(c, b) => {
            System::Res(c.clone(), Box::new(rewrite_nth(b, target, counter, op, fresh, avoid)))
        }
    }
}

/// Apply `rounds` random congruence axioms (reorderings, padding with the
/// empty system, restriction swaps, bound-future renamings, scope
/// extrusion) at random positions.
pub fn scramble(s: &System, r: &mut impl Rng, rounds: usize) -> System {
    let mut cur = s.clone();
    let mut fresh = 0u64;
    for _ in 0..rounds {
        let avoid: Vec<FutureId> = all_futures(&cur).into_iter().collect();
        let op = OPS[r.random_range(0..OPS.len())];
        let target = r.random_range(0..node_count(&cur));
        let mut counter = 0;
        cur = rewrite_nth(&cur, target, &mut counter, op, &mut fresh, &avoid);
    }
    cur
}

// ---------------------------------------------------------------------
// naive congruence oracle: flatten with sequential binder renaming, then
// try every binder bijection and every component permutation
// ---------------------------------------------------------------------

struct Flat {
    binders: usize,
    runs: Vec<(FutureId, Term)>,
}

/// Simultaneous renaming of futures; terms never bind futures, so a plain
/// map over `Future` leaves is exact.
fn map_term_futures(t: &Term, map: &BTreeMap<FutureId, FutureId>) -> Term {
    match t {
        Term::Future(c) => match map.get(c) {
            Some(to) => Term::Future(to.clone()),
            None => t.clone(),
        },
        Term::Var(_) | Term::FnName(_) | Term::Unit | Term::True | Term::False
        | Term::Take(_) => t.clone(),
        Term::Lam(x, b) => Term::Lam(x.clone(), Box::new(map_term_futures(b, map))),
        Term::App(a, b) => Term::app(map_term_futures(a, map), map_term_futures(b, map)),
        Term::Async(b) => Term::Async(Box::new(map_term_futures(b, map))),
        Term::Pair(a, b) => Term::pair(map_term_futures(a, map), map_term_futures(b, map)),
        Term::If(c, a, b) => Term::ite(
            map_term_futures(c, map),
            map_term_futures(a, map),
            map_term_futures(b, map),
        ),
        Term::Fst(p) => Term::Fst(Box::new(map_term_futures(p, map))),
        Term::Snd(p) => Term::Snd(Box::new(map_term_futures(p, map))),
        Term::Set(a, b) => {
            Term::Set(Box::new(map_term_futures(a, map)), Box::new(map_term_futures(b, map)))
        }
    }
}

fn flatten(s: &System) -> Flat {
    fn walk(
        s: &System,
        map: &mut BTreeMap<FutureId, FutureId>,
        next: &mut usize,
        runs: &mut Vec<(FutureId, Term)>,
    ) {
        match s {
            System::Nil => {}
            System::Run(c, t) => {
                let producer = map.get(c).cloned().unwrap_or_else(|| c.clone());
                runs.push((producer, map_term_futures(t, map)));
            }
            System::Par(l, r) => {
                walk(l, map, next, runs);
                walk(r, map, next, runs);
            }
            System::Res(c, body) => {
                let synthetic = FutureId::new(format!("#b{}", *next));
                *next += 1;
                let shadowed = map.insert(c.clone(), synthetic);
                walk(body, map, next, runs);
                match shadowed {
                    Some(old) => {
                        map.insert(c.clone(), old);
                    }
                    None => {
                        map.remove(c);
                    }
                }
            }
        }
    }
    let mut runs = Vec::new();
    let mut next = 0usize;
    walk(s, &mut BTreeMap::new(), &mut next, &mut runs);
    Flat { binders: next, runs }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for i in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(i, n - 1);
            out.push(p);
        }
    }
    out
}

fn runs_match(a: &[(FutureId, Term)], b: &[(FutureId, Term)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    fn go(a: &[(FutureId, Term)], b: &[(FutureId, Term)], used: &mut Vec<bool>, i: usize) -> bool {
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || a[i].0 != b[j].0 || !alpha_eq(&a[i].1, &b[j].1) {
                continue;
            }
            used[j] = true;
            if go(a, b, used, i + 1) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    go(a, b, &mut used, 0)
}

/// Decide congruence by brute force over binder bijections and component
/// permutations of naively flattened systems.
pub fn congruent_oracle(s1: &System, s2: &System) -> bool {
    let f1 = flatten(s1);
    let f2 = flatten(s2);
    if f1.binders != f2.binders || f1.runs.len() != f2.runs.len() {
        return false;
    }
    for perm in permutations(f1.binders) {
        let map: BTreeMap<FutureId, FutureId> = (0..f1.binders)
            .map(|i| {
                (FutureId::new(format!("#b{i}")), FutureId::new(format!("#b{}", perm[i])))
            })
            .collect();
        let renamed: Vec<(FutureId, Term)> = f1
            .runs
            .iter()
            .map(|(c, t)| {
                let producer = map.get(c).cloned().unwrap_or_else(|| c.clone());
                (producer, map_term_futures(t, &map))
            })
            .collect();
        if runs_match(&renamed, &f2.runs) {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------
// brute-force enumeration of evaluation-context splits
// ---------------------------------------------------------------------

/// Every applicable non-push rule instance over all context splits of `t`,
/// per the context grammar. Returns rule names.
pub fn applicable_rules(t: &Term, repo: &Repo) -> Vec<&'static str> {
    fn holes<'a>(t: &'a Term, set_target: bool, out: &mut Vec<(&'a Term, bool)>) {
        out.push((t, set_target));
        match t {
            Term::App(f, a) => {
                holes(f, false, out);
                if matches!(f.as_ref(), Term::Lam(..)) {
                    holes(a, false, out);
                }
            }
            Term::If(c, _, _) => holes(c, false, out),
            Term::Fst(p) | Term::Snd(p) => holes(p, false, out),
            Term::Set(target, _) => holes(target, true, out),
            _ => {}
        }
    }
    let mut positions = Vec::new();
    holes(t, false, &mut positions);
    let mut rules = Vec::new();
    for (sub, at_set_target) in positions {
        match sub {
            Term::App(f, a) => {
                if matches!(f.as_ref(), Term::Lam(..)) && is_value(a) {
                    rules.push("beta");
                }
            }
            Term::FnName(f) => {
                if repo.contains(f) && !at_set_target {
                    rules.push("ret");
                }
            }
            Term::Async(_) => rules.push("async"),
            Term::Set(target, body) => {
                if matches!(target.as_ref(), Term::FnName(_)) && futures_of(body).is_empty() {
                    rules.push("set");
                }
            }
            Term::Take(f) => {
                if repo.contains(f) {
                    rules.push("take");
                }
            }
            Term::If(c, _, _) => match c.as_ref() {
                Term::True => rules.push("cond_t"),
                Term::False => rules.push("cond_f"),
                _ => {}
            },
            Term::Fst(p) => {
                if matches!(p.as_ref(), Term::Pair(l, r) if is_value(l) && is_value(r)) {
                    rules.push("fst");
                }
            }
            Term::Snd(p) => {
                if matches!(p.as_ref(), Term::Pair(l, r) if is_value(l) && is_value(r)) {
                    rules.push("snd");
                }
            }
            _ => {}
        }
    }
    rules
}

// ---------------------------------------------------------------------
// normal-order lambda oracle with its own substitution
// ---------------------------------------------------------------------

fn oracle_free_vars(t: &Term, bound: &mut Vec<VarName>, out: &mut Vec<VarName>) {
    match t {
        Term::Var(x) => {
            if !bound.contains(x) && !out.contains(x) {
                out.push(x.clone());
            }
        }
        Term::Lam(x, b) => {
            bound.push(x.clone());
            oracle_free_vars(b, bound, out);
            bound.pop();
        }
        Term::App(a, b) | Term::Pair(a, b) => {
            oracle_free_vars(a, bound, out);
            oracle_free_vars(b, bound, out);
        }
        Term::If(c, a, b) => {
            oracle_free_vars(c, bound, out);
            oracle_free_vars(a, bound, out);
            oracle_free_vars(b, bound, out);
        }
        Term::Fst(p) | Term::Snd(p) | Term::Async(p) => oracle_free_vars(p, bound, out),
        _ => {}
    }
}

fn oracle_subst(t: &Term, x: &VarName, v: &Term, fresh: &mut u64) -> Term {
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
                return t.clone();
            }
            let mut fv = Vec::new();
            oracle_free_vars(v, &mut Vec::new(), &mut fv);
            if fv.contains(y) {
                *fresh += 1;
                let y2 = VarName::new(format!("_o{fresh}"));
                let renamed = oracle_subst(b, y, &Term::Var(y2.clone()), fresh);
                Term::Lam(y2, Box::new(oracle_subst(&renamed, x, v, fresh)))
            } else {
                Term::Lam(y.clone(), Box::new(oracle_subst(b, x, v, fresh)))
            }
        }
        Term::App(a, b) => {
            Term::app(oracle_subst(a, x, v, fresh), oracle_subst(b, x, v, fresh))
        }
        Term::Pair(a, b) => {
            Term::pair(oracle_subst(a, x, v, fresh), oracle_subst(b, x, v, fresh))
        }
        Term::If(c, a, b) => Term::ite(
            oracle_subst(c, x, v, fresh),
            oracle_subst(a, x, v, fresh),
            oracle_subst(b, x, v, fresh),
        ),
        Term::Fst(p) => Term::Fst(Box::new(oracle_subst(p, x, v, fresh))),
        Term::Snd(p) => Term::Snd(Box::new(oracle_subst(p, x, v, fresh))),
        _ => t.clone(),
    }
}

fn oracle_step(t: &Term, fresh: &mut u64) -> Option<Term> {
    match t {
        Term::App(f, a) => {
            if let Term::Lam(x, b) = f.as_ref() {
                return Some(oracle_subst(b, x, a, fresh));
            }
            if let Some(f2) = oracle_step(f, fresh) {
                return Some(Term::app(f2, (**a).clone()));
            }
            oracle_step(a, fresh).map(|a2| Term::app((**f).clone(), a2))
        }
        Term::If(c, a, b) => match c.as_ref() {
            Term::True => Some((**a).clone()),
            Term::False => Some((**b).clone()),
            _ => {
                if let Some(c2) = oracle_step(c, fresh) {
                    return Some(Term::ite(c2, (**a).clone(), (**b).clone()));
                }
                if let Some(a2) = oracle_step(a, fresh) {
                    return Some(Term::ite((**c).clone(), a2, (**b).clone()));
                }
                oracle_step(b, fresh).map(|b2| Term::ite((**c).clone(), (**a).clone(), b2))
            }
        },
        Term::Fst(p) => match p.as_ref() {
            Term::Pair(l, _) => Some((**l).clone()),
            _ => oracle_step(p, fresh).map(|p2| Term::Fst(Box::new(p2))),
        },
        Term::Snd(p) => match p.as_ref() {
            Term::Pair(_, r) => Some((**r).clone()),
            _ => oracle_step(p, fresh).map(|p2| Term::Snd(Box::new(p2))),
        },
        Term::Lam(x, b) => oracle_step(b, fresh).map(|b2| Term::Lam(x.clone(), Box::new(b2))),
        Term::Pair(a, b) => {
            if let Some(a2) = oracle_step(a, fresh) {
                return Some(Term::pair(a2, (**b).clone()));
            }
            oracle_step(b, fresh).map(|b2| Term::pair((**a).clone(), b2))
        }
        _ => None,
    }
}

/// Leftmost-outermost normalization of the pure fragment (lambdas,
/// conditionals, pairs, projections). `None` when fuel runs out.
pub fn normal_order_nf(t: &Term, mut fuel: u64) -> Option<Term> {
    let mut cur = t.clone();
    let mut fresh = 0u64;
    while let Some(next) = oracle_step(&cur, &mut fresh) {
        if fuel == 0 {
            return None;
        }
        fuel -= 1;
        cur = next;
    }
    Some(cur)
}

// ---------------------------------------------------------------------
// naive path exploration (no deduplication)
// ---------------------------------------------------------------------

/// Every final configuration along every schedule, with repetitions.
pub fn all_final_configs(cfg: &Config, cap: usize) -> Vec<Config> {
    let mut out = Vec::new();
    let mut visited = 0usize;
    fn dfs(cfg: &Config, out: &mut Vec<Config>, visited: &mut usize, cap: usize) {
        *visited += 1;
        assert!(*visited <= cap, "path oracle exceeded {cap} configurations");
        let redexes = find_redexes(cfg);
        if redexes.is_empty() {
            out.push(cfg.clone());
            return;
        }
        for r in &redexes {
            let next = apply_redex(cfg, r).expect("redex applies");
            dfs(&next, out, visited, cap);
        }
    }
    dfs(cfg, &mut out, &mut visited, cap);
    out
}

/// Every configuration visited along every schedule, with repetitions.
pub fn all_reachable_configs(cfg: &Config, cap: usize) -> Vec<Config> {
    let mut out = Vec::new();
    let mut visited = 0usize;
    fn dfs(cfg: &Config, out: &mut Vec<Config>, visited: &mut usize, cap: usize) {
        *visited += 1;
        assert!(*visited <= cap, "path oracle exceeded {cap} configurations");
        out.push(cfg.clone());
        for r in &find_redexes(cfg) {
            let next = apply_redex(cfg, r).expect("redex applies");
            dfs(&next, out, visited, cap);
        }
    }
    dfs(cfg, &mut out, &mut visited, cap);
    out
}

// ---------------------------------------------------------------------
// random surface-source generators (sugar included)
// ---------------------------------------------------------------------

/// Random surface term text, exercising sugar: let, let rec, pattern
/// lambdas, wildcards, pair expressions, conditionals, projections.
pub fn gen_source_term(r: &mut impl Rng, depth: usize, scope: &mut Vec<String>, effects: bool) -> String {
    if depth == 0 {
        return match r.random_range(0..5) {
            0 => "()".into(),
            1 => "True".into(),
            2 => "False".into(),
            3 if !scope.is_empty() => scope[r.random_range(0..scope.len())].clone(),
            _ => format!("k{}", r.random_range(0..4)),
        };
    }
    let d = depth - 1;
    let atom = |r: &mut dyn FnMut() -> String| {
        let s = r();
        if s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
            || s == "()"
            || s == "True"
            || s == "False"
            || (s.starts_with('(') && s.ends_with(')'))
        {
            s
        } else {
            format!("({s})")
        }
    };
    match r.random_range(0..12) {
        0 => {
            let x = format!("x{}", r.random_range(0..30));
            scope.push(x.clone());
            let body = gen_source_term(r, d, scope, effects);
            scope.pop();
            format!("\\{x}.{body}")
        }
        1 => {
            // wildcard binder
            let body = gen_source_term(r, d, scope, effects);
            format!("\\_.{body}")
        }
        2 => {
            let x = format!("x{}", r.random_range(0..30));
            let y = format!("y{}", r.random_range(0..30));
            scope.push(x.clone());
            let fused = if x == y { 1 } else { 2 };
            if fused == 2 {
                scope.push(y.clone());
            }
            let body = gen_source_term(r, d, scope, effects);
            for _ in 0..fused {
                scope.pop();
            }
            format!("\\({x},{y}).{body}")
        }
        3 => {
            let rec = if r.random_bool(0.3) { "rec " } else { "" };
            let x = format!("x{}", r.random_range(0..30));
            let bound = if rec.is_empty() {
                gen_source_term(r, d, scope, effects)
            } else {
                scope.push(x.clone());
                let b = gen_source_term(r, d, scope, effects);
                scope.pop();
                b
            };
            scope.push(x.clone());
            let body = gen_source_term(r, d, scope, effects);
            scope.pop();
            format!("let {rec}{x} = ({bound}) in {body}")
        }
        4 => {
            let c = gen_source_term(r, d, scope, effects);
            let a = gen_source_term(r, d, scope, effects);
            let b = gen_source_term(r, d, scope, effects);
            format!("if {c} then ({a}) else ({b})")
        }
        5 => {
            let a = gen_source_term(r, d, scope, effects);
            let b = gen_source_term(r, d, scope, effects);
            format!("({a}, {b})")
        }
        6 => {
            let mut leaf = || gen_source_term(r, d, scope, effects);
            let p = atom(&mut leaf);
            format!("fst {p}")
        }
        7 => {
            let mut leaf = || gen_source_term(r, d, scope, effects);
            let p = atom(&mut leaf);
            format!("snd {p}")
        }
        8 if effects => {
            let mut leaf = || gen_source_term(r, d, scope, effects);
            let body = atom(&mut leaf);
            format!("async {body}")
        }
        9 if effects => {
            let key = format!("k{}", r.random_range(0..4));
            let mut leaf = || gen_source_term(r, d.min(2), scope, effects);
            let v = atom(&mut leaf);
            format!("set {key} {v}")
        }
        10 if effects => format!("take k{}", r.random_range(0..4)),
        _ => {
            let f = gen_source_term(r, d, scope, effects);
            let mut leaf = || gen_source_term(r, d, scope, effects);
            let a = atom(&mut leaf);
            format!("({f}) {a}")
        }
    }
}

/// Random program text: a few definitions, possibly an event, and a main.
pub fn gen_source_program(r: &mut impl Rng, effects: bool) -> String {
    let mut out = String::new();
    let n_defs = r.random_range(0..=3);
    let mut names = Vec::new();
    for i in 0..n_defs {
        let name = format!("d{i}");
        let depth = r.random_range(1..=3);
        let body = gen_source_term(r, depth, &mut Vec::new(), effects);
        out.push_str(&format!("def {name} = {body}\n"));
        names.push(name);
    }
    if effects && !names.is_empty() && r.random_bool(0.4) {
        out.push_str(&format!("event ev = {}\n", names[r.random_range(0..names.len())]));
    }
    let main_depth = r.random_range(1..=4);
    let main = gen_source_term(r, main_depth, &mut Vec::new(), effects);
    out.push_str(&format!("main = {main}\n"));
    out
}

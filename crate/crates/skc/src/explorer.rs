//! Exhaustive exploration of every reachable configuration up to
//! congruence and renaming of restricted futures.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::names::FutureId;
use crate::pretty;
use crate::semantics::{apply_redex, congruent, find_redexes, normalize, RuleLabel};
use crate::system::Config;
use crate::term::{alpha_eq, is_value, Term};

pub const DEFAULT_MAX_STATES: usize = 50_000;
pub const DEFAULT_MAX_DEPTH: usize = 500;

/// A congruence-invariant fingerprint of a configuration: the normalized
/// system with restricted futures masked, plus the canonical repository
/// text. Congruent configurations always share a key; distinct
/// configurations may collide and are told apart by an exact congruence
/// check.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Short digest for labels.
    pub fn short(&self) -> String {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        format!("{:012x}", h.finish() & 0xffff_ffff_ffff)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Stable under component reordering, padding with empty systems,
/// restriction reordering, and renaming of restricted futures.
pub fn canonical_key(cfg: &Config) -> CanonicalKey {
    let n = normalize(&cfg.system);
    let mask = n.restricted_set();
    let comps: Vec<String> = n
        .components
        .iter()
        .map(|(c, t)| {
            format!("{} <= {}", pretty::canon_producer(c, &mask), pretty::canon_term(t, &mask))
        })
        .collect();
    CanonicalKey(format!(
        "nu:{};{};D[{}]",
        n.restricted.len(),
        comps.join(" | "),
        pretty::canon_repo(&cfg.repo)
    ))
}

/// Whether two configurations are the same state: congruent systems and
/// repositories equal name-for-name up to alpha.
pub fn same_state(a: &Config, b: &Config) -> bool {
    a.repo.same_defs(&b.repo) && congruent(&a.system, &b.system)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinalKind {
    /// No redex remains and the root component holds a value.
    Value,
    /// No redex remains otherwise.
    Stuck,
}

#[derive(Debug, Clone)]
pub struct StateNode {
    pub key: CanonicalKey,
    pub config: Config,
    pub final_kind: Option<FinalKind>,
    pub depth: usize,
}

/// Reachable configurations, deduplicated, with rule-labelled transitions.
#[derive(Debug, Clone)]
pub struct StateGraph {
    pub states: Vec<StateNode>,
    pub edges: Vec<(usize, RuleLabel, usize)>,
    pub initial: usize,
    pub truncated: bool,
    index: HashMap<CanonicalKey, Vec<usize>>,
}

impl StateGraph {
    fn lookup(&self, key: &CanonicalKey, cfg: &Config) -> Option<usize> {
        self.index
            .get(key)?
            .iter()
            .copied()
            .find(|&id| same_state(&self.states[id].config, cfg))
    }

    fn insert(&mut self, key: CanonicalKey, cfg: Config, depth: usize) -> usize {
        let id = self.states.len();
        self.index.entry(key.clone()).or_default().push(id);
        self.states.push(StateNode { key, config: cfg, final_kind: None, depth });
        id
    }

    pub fn final_states(&self) -> impl Iterator<Item = (usize, &StateNode)> {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.final_kind.is_some())
    }
}

fn final_kind(cfg: &Config) -> FinalKind {
    let n = normalize(&cfg.system);
    let root = FutureId::root();
    let root_is_value = n
        .components
        .iter()
        .any(|(c, body)| *c == root && is_value(body));
    if root_is_value {
        FinalKind::Value
    } else {
        FinalKind::Stuck
    }
}

/// Breadth-first closure of `cfg` under all redexes, deduplicating by
/// canonical key with an exact congruence check on collisions. Hitting a
/// bound flags the graph as truncated rather than failing.
pub fn explore(cfg: &Config, max_states: usize, max_depth: usize) -> StateGraph {
    let mut graph = StateGraph {
        states: Vec::new(),
        edges: Vec::new(),
        initial: 0,
        truncated: false,
        index: HashMap::new(),
    };
    let key0 = canonical_key(cfg);
    graph.insert(key0, cfg.clone(), 0);
    let mut edge_seen: HashSet<(usize, RuleLabel, usize)> = HashSet::new();
    let mut queue: VecDeque<usize> = VecDeque::from([0usize]);

    while let Some(id) = queue.pop_front() {
        let cur = graph.states[id].config.clone();
        let depth = graph.states[id].depth;
        let redexes = find_redexes(&cur);
        if redexes.is_empty() {
            graph.states[id].final_kind = Some(final_kind(&cur));
            continue;
        }
        if depth >= max_depth {
            graph.truncated = true;
            continue;
        }
        for r in &redexes {
            let next = apply_redex(&cur, r).expect("redex reported by find_redexes applies");
            let key = canonical_key(&next);
            let nid = match graph.lookup(&key, &next) {
                Some(nid) => nid,
                None => {
                    if graph.states.len() >= max_states {
                        graph.truncated = true;
                        continue;
                    }
                    let nid = graph.insert(key, next, depth + 1);
                    queue.push_back(nid);
                    nid
                }
            };
            if edge_seen.insert((id, r.rule, nid)) {
                graph.edges.push((id, r.rule, nid));
            }
        }
    }
    graph
}

#[derive(Debug, Clone, Serialize)]
pub struct FinalCounts {
    pub value: usize,
    pub stuck: usize,
}

/// What exploration found, in summary form.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub states: usize,
    pub edges: usize,
    pub finals: FinalCounts,
    pub distinct_final_repos: usize,
    pub distinct_root_values: usize,
    /// Exactly one value-final class.
    pub deterministic: bool,
    pub truncated: bool,
    pub stuck_reasons: Vec<String>,
}

/// Distinct final repositories and root values across value-final states,
/// stuck finals with reasons, and the determinism verdict.
pub fn final_outcomes(g: &StateGraph) -> Summary {
    let mut value_finals = 0usize;
    let mut stuck_finals = 0usize;
    let mut repos: Vec<&crate::repo::Repo> = Vec::new();
    let mut root_values: Vec<Term> = Vec::new();
    let mut stuck_reasons: Vec<String> = Vec::new();
    let root = FutureId::root();

    for (_, node) in g.final_states() {
        match node.final_kind {
            Some(FinalKind::Value) => {
                value_finals += 1;
                if !repos.iter().any(|r| r.same_defs(&node.config.repo)) {
                    repos.push(&node.config.repo);
                }
                let n = normalize(&node.config.system);
                if let Some((_, body)) = n.components.iter().find(|(c, _)| *c == root) {
                    if !root_values.iter().any(|v| alpha_eq(v, body)) {
                        root_values.push(body.clone());
                    }
                }
            }
            Some(FinalKind::Stuck) => {
                stuck_finals += 1;
                for (c, reason) in crate::semantics::stuck_components(&node.config) {
                    let line = format!("{c}: {reason}");
                    if !stuck_reasons.contains(&line) {
                        stuck_reasons.push(line);
                    }
                }
            }
            None => {}
        }
    }

    Summary {
        states: g.states.len(),
        edges: g.edges.len(),
        finals: FinalCounts { value: value_finals, stuck: stuck_finals },
        distinct_final_repos: repos.len(),
        distinct_root_values: root_values.len(),
        deterministic: value_finals == 1,
        truncated: g.truncated,
        stuck_reasons,
    }
}

/// DOT rendering of the graph: states labelled by key digest with
/// final/stuck markers, edges by rule.
pub fn to_dot(g: &StateGraph) -> String {
    let mut out = String::from("digraph skc {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, node) in g.states.iter().enumerate() {
        let marker = match node.final_kind {
            Some(FinalKind::Value) => " [value]",
            Some(FinalKind::Stuck) => " [stuck]",
            None => "",
        };
        let peripheries = if i == g.initial { 2 } else { 1 };
        out.push_str(&format!(
            "  s{i} [label=\"{}{}\", peripheries={}];\n",
            node.key.short(),
            marker,
            peripheries
        ));
    }
    for (a, rule, b) in &g.edges {
        out.push_str(&format!("  s{a} -> s{b} [label=\"{rule}\"];\n"));
    }
    out.push_str("}\n");
    out
}

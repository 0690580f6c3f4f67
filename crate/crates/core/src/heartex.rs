//! Exchange graphs of hearts under simple tilts.
//!
//! A heart is identified by the unordered multiset of its simples. The
//! explorer runs a level-synchronous breadth-first search from a starting
//! collection; each level may be expanded in parallel, and results are merged
//! in a fixed order so the graph does not depend on the number of threads.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::derived::{DerivedCategory, Direction};
use crate::error::{Error, Result};
use crate::rep::IndecKey;
use crate::tilt::{tilt, SymbolicCollection};

/// Sorted `(indecomposable, shift)` pairs naming the simples of a heart.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeartKey(pub Vec<(IndecKey, i64)>);

impl HeartKey {
    pub fn shifts(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().map(|(_, s)| *s)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.0
                .iter()
                .map(|(k, s)| json!([k.to_string(), s]))
                .collect(),
        )
    }
}

impl fmt::Display for HeartKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, s)| {
                if *s == 0 {
                    format!("({k})")
                } else {
                    format!("({k})[{s}]")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn heart_key(cat: &DerivedCategory, c: &SymbolicCollection) -> HeartKey {
    let mut pairs: Vec<(IndecKey, i64)> = c
        .items
        .iter()
        .flat_map(|it| it.object.summands().iter().map(|&(id, s)| (cat.key(id), s)))
        .collect();
    pairs.sort();
    HeartKey(pairs)
}

/// Inclusive range of admissible shifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftWindow {
    pub lo: i64,
    pub hi: i64,
}

impl ShiftWindow {
    pub fn contains(&self, key: &HeartKey) -> bool {
        key.shifts().all(|s| self.lo <= s && s <= self.hi)
    }

    /// Parses `lo:hi`.
    pub fn parse(text: &str) -> Result<ShiftWindow> {
        let (lo, hi) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("window {text:?} must look like lo:hi")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("window bound {s:?} is not an integer")))
        };
        let w = ShiftWindow {
            lo: parse(lo)?,
            hi: parse(hi)?,
        };
        if w.lo > w.hi {
            return Err(Error::Parse(format!("empty window {text:?}")));
        }
        Ok(w)
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub key: HeartKey,
    /// Collection of the first arrival.
    pub witness: SymbolicCollection,
    pub depth: usize,
}

/// Tilt at the 1-based slot `index` of the source node's witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub index: usize,
    pub direction: Direction,
}

impl Edge {
    pub fn label(&self) -> String {
        format!("{}{}", self.index, self.direction.token())
    }
}

/// A tilt that failed during exploration.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeError {
    pub from: usize,
    pub index: usize,
    pub direction: Direction,
    pub error: Error,
}

/// Explored part of the exchange graph. `nodes` lie inside the window;
/// `frontier` holds hearts reached from them that fall outside it, with
/// `frontier_edges` pointing into that list.
#[derive(Clone, Debug, Default)]
pub struct ExchangeGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub frontier: Vec<HeartKey>,
    pub frontier_edges: Vec<Edge>,
    pub errors: Vec<EdgeError>,
}

impl ExchangeGraph {
    pub fn find(&self, key: &HeartKey) -> Option<usize> {
        self.nodes.iter().position(|n| &n.key == key)
    }

    /// Edges `(u, v, i, d)` with no reverse edge `(v, u, ·, inverse d)`.
    pub fn unmatched_edges(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .filter(|e| {
                !self
                    .edges
                    .iter()
                    .any(|r| r.from == e.to && r.to == e.from && r.direction == e.direction.inverse())
            })
            .copied()
            .collect()
    }
}

type Expansion = Vec<(usize, Direction, Result<SymbolicCollection>)>;

fn expand(cat: &DerivedCategory, c: &SymbolicCollection) -> Expansion {
    let mut out = Vec::with_capacity(2 * c.len());
    for i in 1..=c.len() {
        for d in [Direction::Sharp, Direction::Flat] {
            out.push((i, d, tilt(cat, c, i, d).map(|(next, _)| next)));
        }
    }
    out
}

/// Breadth-first exploration from `start` up to `max_depth` tilts, never
/// expanding hearts outside `window`. `jobs > 1` expands each level on a
/// dedicated thread pool; the result is identical for every `jobs`.
pub fn explore(
    cat: &DerivedCategory,
    start: &SymbolicCollection,
    max_depth: usize,
    window: ShiftWindow,
    jobs: usize,
) -> Result<ExchangeGraph> {
    let start_key = heart_key(cat, start);
    if !window.contains(&start_key) {
        return Err(Error::Parse(format!(
            "window {}:{} does not contain the start heart {start_key}",
            window.lo, window.hi
        )));
    }
    let pool = if jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };
    let mut g = ExchangeGraph::default();
    let mut index: HashMap<HeartKey, usize> = HashMap::new();
    let mut frontier_index: HashMap<HeartKey, usize> = HashMap::new();
    index.insert(start_key.clone(), 0);
    g.nodes.push(Node {
        key: start_key,
        witness: start.clone(),
        depth: 0,
    });
    let mut level: Vec<usize> = vec![0];
    for depth in 0..max_depth {
        if level.is_empty() {
            break;
        }
        let witnesses: Vec<&SymbolicCollection> = level.iter().map(|&n| &g.nodes[n].witness).collect();
        let results: Vec<Expansion> = match &pool {
            Some(p) => p.install(|| witnesses.par_iter().map(|c| expand(cat, c)).collect()),
            None => witnesses.iter().map(|c| expand(cat, c)).collect(),
        };
        let mut next_level = Vec::new();
        for (&from, expansion) in level.iter().zip(results) {
            for (i, direction, result) in expansion {
                let next = match result {
                    Ok(next) => next,
                    Err(error) => {
                        g.errors.push(EdgeError {
                            from,
                            index: i,
                            direction,
                            error,
                        });
                        continue;
                    }
                };
                let key = heart_key(cat, &next);
                if !window.contains(&key) {
                    let fid = *frontier_index.entry(key.clone()).or_insert_with(|| {
                        g.frontier.push(key);
                        g.frontier.len() - 1
                    });
                    g.frontier_edges.push(Edge {
                        from,
                        to: fid,
                        index: i,
                        direction,
                    });
                    continue;
                }
                let to = match index.get(&key) {
                    Some(&to) => {
                        let mut a = g.nodes[to].witness.objects();
                        let mut b = next.objects();
                        a.sort();
                        b.sort();
                        if a != b {
                            return Err(Error::Invariant(format!(
                                "key {key} names two different sets of simples"
                            )));
                        }
                        to
                    }
                    None => {
                        let to = g.nodes.len();
                        index.insert(key.clone(), to);
                        g.nodes.push(Node {
                            key,
                            witness: next,
                            depth: depth + 1,
                        });
                        next_level.push(to);
                        to
                    }
                };
                g.edges.push(Edge {
                    from,
                    to,
                    index: i,
                    direction,
                });
            }
        }
        level = next_level;
    }
    Ok(g)
}

/// Nodes whose simples all sit in shifts `{b, b+1}`, `b` the lowest shift
/// of the base heart.
pub fn intermediate_hearts(g: &ExchangeGraph, base: &HeartKey) -> Result<Vec<usize>> {
    g.find(base)
        .ok_or_else(|| Error::UnknownHeart(base.to_string()))?;
    let b = base.shifts().min().unwrap_or(0);
    Ok((0..g.nodes.len())
        .filter(|&n| g.nodes[n].key.shifts().all(|s| s == b || s == b + 1))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
    Text,
}

pub fn export_graph(g: &ExchangeGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => {
            let mut out = String::from("digraph exchange {\n");
            for (k, n) in g.nodes.iter().enumerate() {
                out.push_str(&format!("  n{k} [label=\"{}\"];\n", n.key));
            }
            for e in &g.edges {
                out.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", e.from, e.to, e.label()));
            }
            out.push_str("}\n");
            out
        }
        GraphFormat::Json => {
            let v = json!({
                "nodes": g.nodes.iter().enumerate().map(|(k, n)| json!({
                    "id": k,
                    "key": n.key.to_json(),
                    "depth": n.depth,
                })).collect::<Vec<_>>(),
                "edges": g.edges.iter().map(|e| json!({
                    "from": e.from, "to": e.to, "label": e.label(),
                })).collect::<Vec<_>>(),
                "frontier": g.frontier.iter().map(HeartKey::to_json).collect::<Vec<_>>(),
                "frontier_edges": g.frontier_edges.iter().map(|e| json!({
                    "from": e.from, "to": e.to, "label": e.label(),
                })).collect::<Vec<_>>(),
                "errors": g.errors.iter().map(|e| json!({
                    "from": e.from,
                    "label": format!("{}{}", e.index, e.direction.token()),
                    "error": e.error.to_string(),
                })).collect::<Vec<_>>(),
            });
            let mut s = serde_json::to_string_pretty(&v).expect("json");
            s.push('\n');
            s
        }
        GraphFormat::Text => {
            let mut out = format!(
                "nodes {} edges {} frontier {} errors {}\n",
                g.nodes.len(),
                g.edges.len(),
                g.frontier.len(),
                g.errors.len()
            );
            for (k, n) in g.nodes.iter().enumerate() {
                out.push_str(&format!("n{k} depth {} {}\n", n.depth, n.key));
            }
            for e in &g.edges {
                out.push_str(&format!("n{} -> n{} {}\n", e.from, e.to, e.label()));
            }
            for e in &g.errors {
                out.push_str(&format!("error n{} {}{}: {}\n", e.from, e.index, e.direction.token(), e.error));
            }
            out
        }
    }
}

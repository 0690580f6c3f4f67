//! Simple tilts of hearts generated by monochromatic Ext-exceptional
//! collections satisfying (E1) and (E2), computed symbolically on the degree
//! table and K₀ classes, with object handles carried along for the oracle.
//!
//! A tilt at item `i` first reorders the collection so that predecessors of
//! `E_i` with degree ≥ 2 precede those with degree 1 (mirrored for ♭), then
//! replaces `E_i` by `E_i[±1]` and twists the items between it and the pivot.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use serde_json::{json, Value};

use crate::derived::{DegreeEntry, DegreeTable, DerivedCategory, DerivedObject, Direction};
use crate::error::{Error, Result};
use crate::quiver::check_gates;

/// One item of a symbolic collection.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Item {
    pub class: Vec<i64>,
    pub object: DerivedObject,
}

/// Ordered items with their degree table `p_{i,j}` (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicCollection {
    pub items: Vec<Item>,
    pub degrees: DegreeTable,
}

impl SymbolicCollection {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn objects(&self) -> Vec<DerivedObject> {
        self.items.iter().map(|it| it.object.clone()).collect()
    }

    /// Items taken in the order `perm` (new position `k` holds old `perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> SymbolicCollection {
        SymbolicCollection {
            items: perm.iter().map(|&k| self.items[k].clone()).collect(),
            degrees: self.degrees.permuted(perm),
        }
    }

    /// The same collection shifted by `n` (degrees are unchanged).
    pub fn shift(&self, n: i64) -> SymbolicCollection {
        let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        SymbolicCollection {
            items: self
                .items
                .iter()
                .map(|it| Item {
                    class: it.class.iter().map(|c| sign * c).collect(),
                    object: it.object.shift(n),
                })
                .collect(),
            degrees: self.degrees.clone(),
        }
    }

    /// Collection dump with symbolic classes and degrees.
    pub fn dump(&self, cat: &DerivedCategory) -> Value {
        json!({
            "items": self
                .items
                .iter()
                .map(|it| json!({"summands": cat.summands_json(&it.object), "class": it.class}))
                .collect::<Vec<_>>(),
            "degrees": self.degrees.to_json(),
        })
    }

    /// One line per item and per degree entry.
    pub fn to_text(&self, cat: &DerivedCategory) -> String {
        let mut out = String::new();
        for (k, it) in self.items.iter().enumerate() {
            let class: Vec<String> = it.class.iter().map(ToString::to_string).collect();
            out.push_str(&format!(
                "E{} = {}  class ({})\n",
                k + 1,
                cat.label(&it.object),
                class.join(",")
            ));
        }
        for ((i, j), e) in self.degrees.entries() {
            out.push_str(&format!("p({},{}) = {} (dim {})\n", i + 1, j + 1, e.degree, e.dim));
        }
        out
    }
}

/// Record of one tilt: the requested 1-based index and direction, the
/// reordering applied first, the pivot `i♯`/`i♭` in the reordered
/// collection and where `E_i[±1]` ended up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltStep {
    pub index: usize,
    pub direction: Direction,
    pub permutation: Vec<usize>,
    pub pivot: usize,
    pub landing: usize,
}

/// Violations of the collection conditions, 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionReport {
    /// `(i, j, dim)` with total dimension above 1.
    pub e1: Vec<(usize, usize, usize)>,
    /// `(k, i, l)` with `p_{k,l} ≠ p_{k,i} + p_{i,l}`.
    pub e2: Vec<(usize, usize, usize)>,
    /// `(i, j)` with `i > j` carrying an entry.
    pub backward: Vec<(usize, usize)>,
    /// `(i, j, p)` with `p ≤ 0`.
    pub nonpositive: Vec<(usize, usize, i64)>,
}

impl ConditionReport {
    pub fn is_empty(&self) -> bool {
        self.e1.is_empty() && self.e2.is_empty() && self.backward.is_empty() && self.nonpositive.is_empty()
    }
}

/// The collection of simple modules `(S_1, ..., S_μ)`, `p_{i,j} = 1` along
/// arrows. Requires (A1) and (A2).
pub fn std_collection(cat: &DerivedCategory) -> Result<SymbolicCollection> {
    let q = cat.quiver().clone();
    check_gates(&q)?;
    let mu = q.mu();
    let items = (1..=mu)
        .map(|i| {
            let mut class = vec![0; mu];
            class[i - 1] = 1;
            Ok(Item {
                class,
                object: cat.simple(i)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut degrees = DegreeTable::new(mu);
    for &(s, t) in q.arrows() {
        degrees.set(
            s - 1,
            t - 1,
            Some(DegreeEntry {
                degree: 1,
                dim: q.arrow_count(s, t),
            }),
        );
    }
    Ok(SymbolicCollection { items, degrees })
}

/// Checks (E1), (E2) and the Ext shape of the degree table.
pub fn check_e1_e2(c: &SymbolicCollection) -> ConditionReport {
    let mut r = ConditionReport::default();
    let t = &c.degrees;
    for ((i, j), e) in t.entries() {
        if e.dim > 1 {
            r.e1.push((i + 1, j + 1, e.dim));
        }
        if i > j {
            r.backward.push((i + 1, j + 1));
        } else if e.degree <= 0 {
            r.nonpositive.push((i + 1, j + 1, e.degree));
        }
    }
    let n = c.len();
    for k in 0..n {
        for i in k + 1..n {
            let Some(ki) = t.degree(k, i) else { continue };
            for l in i + 1..n {
                if let (Some(il), Some(kl)) = (t.degree(i, l), t.degree(k, l)) {
                    if kl != ki + il {
                        r.e2.push((k + 1, i + 1, l + 1));
                    }
                }
            }
        }
    }
    r
}

fn check_index(c: &SymbolicCollection, i: usize) -> Result<usize> {
    if i == 0 || i > c.len() {
        return Err(Error::IndexOutOfRange { index: i, len: c.len() });
    }
    Ok(i - 1)
}

/// Reorders so that, for ♯, predecessors of item `i` with degree ≥ 2
/// precede those with degree 1 (for ♭, successors with degree 1 precede
/// those with degree ≥ 2), keeping every nonzero Hom pointing forward.
/// Among admissible orders the one closest to the input (smallest index
/// first) is chosen, so an already ordered collection is left alone.
pub fn reorder_for_tilt(
    c: &SymbolicCollection,
    i: usize,
    direction: Direction,
) -> Result<(SymbolicCollection, Vec<usize>)> {
    let t = check_index(c, i)?;
    let n = c.len();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for ((a, b), _) in c.degrees.entries() {
        succ[a].insert(b);
    }
    let (first, second): (Vec<usize>, Vec<usize>) = match direction {
        Direction::Sharp => {
            let preds: Vec<(usize, i64)> = (0..n)
                .filter_map(|j| c.degrees.degree(j, t).map(|p| (j, p)))
                .collect();
            (
                preds.iter().filter(|x| x.1 >= 2).map(|x| x.0).collect(),
                preds.iter().filter(|x| x.1 <= 1).map(|x| x.0).collect(),
            )
        }
        Direction::Flat => {
            let succs: Vec<(usize, i64)> = (0..n)
                .filter_map(|j| c.degrees.degree(t, j).map(|p| (j, p)))
                .collect();
            (
                succs.iter().filter(|x| x.1 <= 1).map(|x| x.0).collect(),
                succs.iter().filter(|x| x.1 >= 2).map(|x| x.0).collect(),
            )
        }
    };
    for &u in &first {
        for &v in &second {
            succ[u].insert(v);
        }
    }
    let mut indegree = vec![0usize; n];
    for s in &succ {
        for &b in s {
            indegree[b] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&k| indegree[k] == 0).map(Reverse).collect();
    let mut perm = Vec::with_capacity(n);
    while let Some(Reverse(k)) = ready.pop() {
        perm.push(k);
        for &b in &succ[k] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.push(Reverse(b));
            }
        }
    }
    if perm.len() < n {
        return Err(Error::Invariant(format!(
            "no reordering for a tilt at {i} keeps the collection exceptional"
        )));
    }
    let out = c.permuted(&perm);
    // every moved pair must have vanishing Hom in both directions
    for x in 0..n {
        for y in x + 1..n {
            if perm[x] > perm[y]
                && (c.degrees.get(perm[x], perm[y]).is_some() || c.degrees.get(perm[y], perm[x]).is_some())
            {
                return Err(Error::Invariant(format!(
                    "reordering transposes items {} and {} with nonzero Hom",
                    perm[y] + 1,
                    perm[x] + 1
                )));
            }
        }
    }
    Ok((out, perm))
}

/// `i♯ = min { j ≤ i : Hom•(E_j, E_i) ≠ 0, p_{j,i} ≤ 1 }` or
/// `i♭ = max { j ≥ i : Hom•(E_i, E_j) ≠ 0, p_{i,j} ≤ 1 }`, 1-based;
/// `j = i` always qualifies.
pub fn tilt_index(c: &SymbolicCollection, i: usize, direction: Direction) -> Result<usize> {
    let t = check_index(c, i)?;
    let pivot = match direction {
        Direction::Sharp => (0..t)
            .find(|&j| c.degrees.degree(j, t).is_some_and(|p| p <= 1))
            .unwrap_or(t),
        Direction::Flat => (t + 1..c.len())
            .rev()
            .find(|&j| c.degrees.degree(t, j).is_some_and(|p| p <= 1))
            .unwrap_or(t),
    };
    Ok(pivot + 1)
}

/// Dimension of the `Hom¹` driving the twist of item `j` (0 or 1).
fn twist_degree(c: &SymbolicCollection, from: usize, to: usize) -> Result<i64> {
    match c.degrees.get(from, to) {
        None => Ok(0),
        Some(DegreeEntry { degree: 1, dim: 1 }) => Ok(1),
        Some(DegreeEntry { degree: 1, dim }) => Err(Error::HomTooLarge { dim }),
        Some(_) => Ok(0),
    }
}

/// Entry of a twisted item against a fixed one by the three-way rule: kept
/// when the twist is trivial or the pivot has no entry, replaced by the
/// pivot's entry when the item had none, deleted otherwise.
fn trichotomy(
    twisted: bool,
    through_pivot: Option<DegreeEntry>,
    direct: Option<DegreeEntry>,
) -> Option<DegreeEntry> {
    match (twisted, through_pivot, direct) {
        (false, _, d) | (true, None, d) => d,
        (true, Some(p), None) => Some(p),
        (true, Some(_), Some(_)) => None,
    }
}

fn shift_entry(e: Option<DegreeEntry>, by: i64) -> Option<DegreeEntry> {
    e.map(|e| DegreeEntry {
        degree: e.degree + by,
        dim: e.dim,
    })
}

fn add_class(a: &[i64], b: &[i64], k: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

/// The simple tilt at 1-based item `i`. Returns the new collection and a
/// record of the step. Objects are twisted through the oracle; degrees and
/// classes are updated symbolically.
pub fn tilt(
    cat: &DerivedCategory,
    c: &SymbolicCollection,
    i: usize,
    direction: Direction,
) -> Result<(SymbolicCollection, TiltStep)> {
    let (r, perm) = reorder_for_tilt(c, i, direction)?;
    let t = perm.iter().position(|&k| k == i - 1).expect("permutation");
    let pivot = tilt_index(&r, t + 1, direction)? - 1;
    let n = r.len();
    let old = |a: usize, b: usize| r.degrees.get(a, b);
    let pivot_item = &r.items[t];
    let mut items = Vec::with_capacity(n);
    let mut degrees = DegreeTable::new(n);
    let landing = pivot + 1;
    match direction {
        Direction::Sharp => {
            let twisted: Vec<bool> = (0..n)
                .map(|j| Ok((pivot..t).contains(&j) && twist_degree(&r, j, t)? == 1))
                .collect::<Result<_>>()?;
            // new position of old index
            let pos = |k: usize| if k < pivot || k > t { k } else if k == t { pivot } else { k + 1 };
            items.extend(r.items[..pivot].iter().cloned());
            items.push(Item {
                class: pivot_item.class.iter().map(|x| -x).collect(),
                object: pivot_item.object.shift(1),
            });
            for j in pivot..t {
                let d = twisted[j] as i64;
                items.push(Item {
                    class: add_class(&r.items[j].class, &pivot_item.class, d),
                    object: cat.psi_twist(&pivot_item.object, &r.items[j].object, Direction::Sharp)?,
                });
            }
            items.extend(r.items[t + 1..].iter().cloned());
            let in_twist = |k: usize| (pivot..t).contains(&k);
            for a in 0..n {
                for b in a + 1..n {
                    let e = if a == t || b == t {
                        if b == t && a < pivot {
                            shift_entry(old(a, t), -1)
                        } else if a == t {
                            shift_entry(old(t, b), 1)
                        } else {
                            // a in twisted range, b == t: handled as (E_i[1], ψ(E_a))
                            continue;
                        }
                    } else if a < pivot && in_twist(b) {
                        trichotomy(twisted[b], old(a, t), old(a, b))
                    } else if in_twist(a) && b > t {
                        trichotomy(twisted[a], old(t, b), old(a, b))
                    } else {
                        old(a, b)
                    };
                    degrees.set(pos(a), pos(b), e);
                }
            }
            for j in pivot..t {
                let e = twisted[j].then_some(DegreeEntry { degree: 1, dim: 1 });
                degrees.set(pivot, j + 1, e);
            }
        }
        Direction::Flat => {
            let twisted: Vec<bool> = (0..n)
                .map(|j| Ok((t + 1..=pivot).contains(&j) && twist_degree(&r, t, j)? == 1))
                .collect::<Result<_>>()?;
            let pos = |k: usize| if k < t || k > pivot { k } else if k == t { pivot } else { k - 1 };
            items.extend(r.items[..t].iter().cloned());
            for j in t + 1..=pivot {
                let d = twisted[j] as i64;
                items.push(Item {
                    class: add_class(&r.items[j].class, &pivot_item.class, d),
                    object: cat.psi_twist(&pivot_item.object, &r.items[j].object, Direction::Flat)?,
                });
            }
            items.push(Item {
                class: pivot_item.class.iter().map(|x| -x).collect(),
                object: pivot_item.object.shift(-1),
            });
            items.extend(r.items[pivot + 1..].iter().cloned());
            let in_twist = |k: usize| (t + 1..=pivot).contains(&k);
            for a in 0..n {
                for b in a + 1..n {
                    let e = if a == t || b == t {
                        if b == t {
                            shift_entry(old(a, t), 1)
                        } else if b > pivot {
                            shift_entry(old(t, b), -1)
                        } else {
                            // b in twisted range: handled as (ψ(E_b), E_i[-1])
                            continue;
                        }
                    } else if a < t && in_twist(b) {
                        trichotomy(twisted[b], old(a, t), old(a, b))
                    } else if in_twist(a) && b > pivot {
                        trichotomy(twisted[a], old(t, b), old(a, b))
                    } else {
                        old(a, b)
                    };
                    degrees.set(pos(a), pos(b), e);
                }
            }
            for j in t + 1..=pivot {
                let e = twisted[j].then_some(DegreeEntry { degree: 1, dim: 1 });
                degrees.set(j - 1, pivot, e);
            }
        }
    }
    let out = SymbolicCollection { items, degrees };
    let report = check_e1_e2(&out);
    if !report.is_empty() {
        return Err(Error::Invariant(format!(
            "tilt {i}{} produced an invalid collection: {report:?}",
            direction.token()
        )));
    }
    Ok((
        out,
        TiltStep {
            index: i,
            direction,
            permutation: perm,
            pivot: pivot + 1,
            landing,
        },
    ))
}

/// The ψ-twist of `t` through `s` computed from the twist triangle.
pub fn psi_twist_oracle(
    cat: &DerivedCategory,
    s: &DerivedObject,
    t: &DerivedObject,
    direction: Direction,
) -> Result<DerivedObject> {
    cat.psi_twist(s, t, direction)
}

/// Parses a word such as `"2+ 1- 3+"`.
pub fn parse_tilt_word(text: &str) -> Result<Vec<(usize, Direction)>> {
    text.split_whitespace()
        .map(|tok| {
            let (num, dir) = tok.split_at(tok.len() - tok.chars().last().map_or(0, char::len_utf8));
            let direction = match dir {
                "+" => Direction::Sharp,
                "-" => Direction::Flat,
                _ => return Err(Error::Parse(format!("tilt token {tok:?} must end in + or -"))),
            };
            let index: usize = num
                .parse()
                .map_err(|_| Error::Parse(format!("tilt token {tok:?} has no index")))?;
            if index == 0 {
                return Err(Error::Parse(format!("tilt token {tok:?}: indices start at 1")));
            }
            Ok((index, direction))
        })
        .collect()
}

pub fn format_tilt_word(word: &[(usize, Direction)]) -> String {
    word.iter()
        .map(|(i, d)| format!("{i}{}", d.token()))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Applies a word from `start`, returning every intermediate step.
pub fn apply_word(
    cat: &DerivedCategory,
    start: &SymbolicCollection,
    word: &[(usize, Direction)],
) -> Result<Vec<(TiltStep, SymbolicCollection)>> {
    let mut cur = start.clone();
    let mut out = Vec::with_capacity(word.len());
    for &(i, d) in word {
        let (next, step) = tilt(cat, &cur, i, d)?;
        out.push((step, next.clone()));
        cur = next;
    }
    Ok(out)
}

/// A disagreement between symbolic data and the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    /// 1-based pair; `None` means no single-degree entry.
    Degree {
        i: usize,
        j: usize,
        symbolic: Option<DegreeEntry>,
        oracle: Option<DegreeEntry>,
    },
    Class {
        i: usize,
        symbolic: Vec<i64>,
        oracle: Vec<i64>,
    },
    /// Oracle flag (exceptional, ext, monochromatic, full) that failed.
    Flag(&'static str),
    /// The new items differ from `{E_i[±1]} ∪ {ψ(E_j)}` as a multiset.
    Simples,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Recomputes `after` with the oracle: every pairwise graded Hom against
/// the symbolic table, every K₀ class against the object's dimension
/// vectors, the collection flags, and the multiset of simples against the
/// twist of every item of `before` through the tilted one.
pub fn cross_check(
    cat: &DerivedCategory,
    before: &SymbolicCollection,
    step: &TiltStep,
    after: &SymbolicCollection,
) -> Result<CrossCheckReport> {
    let mut report = CrossCheckReport::default();
    let objects = after.objects();
    let flags = cat.collection_flags(&objects)?;
    for (ok, name) in [
        (flags.exceptional, "exceptional"),
        (flags.ext, "ext"),
        (flags.monochromatic, "monochromatic"),
        (cat.is_full(&objects), "full"),
    ] {
        if !ok {
            report.mismatches.push(Mismatch::Flag(name));
        }
    }
    let n = after.len();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (s, o) = (after.degrees.get(i, j), flags.degrees.get(i, j));
            if s != o {
                report.mismatches.push(Mismatch::Degree {
                    i: i + 1,
                    j: j + 1,
                    symbolic: s,
                    oracle: o,
                });
            }
        }
    }
    for (k, it) in after.items.iter().enumerate() {
        let oracle = cat.class(&it.object);
        if oracle != it.class {
            report.mismatches.push(Mismatch::Class {
                i: k + 1,
                symbolic: it.class.clone(),
                oracle,
            });
        }
    }
    let pivot_obj = &before.items[step.index - 1].object;
    let shift = match step.direction {
        Direction::Sharp => 1,
        Direction::Flat => -1,
    };
    let mut expected = vec![pivot_obj.shift(shift)];
    for (k, it) in before.items.iter().enumerate() {
        if k != step.index - 1 {
            expected.push(cat.psi_twist(pivot_obj, &it.object, step.direction)?);
        }
    }
    expected.sort();
    let mut got = objects;
    got.sort();
    if got != expected {
        report.mismatches.push(Mismatch::Simples);
    }
    Ok(report)
}

/// Ordered pairs `(i, j)` (1-based) violating strong monochromaticity: the
/// graded Hom must be zero or concentrated in one positive degree, and zero
/// in at least one direction.
pub fn strong_monochromatic_violations(
    cat: &DerivedCategory,
    objects: &[DerivedObject],
) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (i, x) in objects.iter().enumerate() {
        for (j, y) in objects.iter().enumerate() {
            if i == j {
                continue;
            }
            let g = cat.graded_hom(x, y)?;
            if g.is_zero() {
                continue;
            }
            let single_positive = g.single_degree().is_some_and(|(p, _)| p >= 1);
            if !single_positive || !cat.graded_hom(y, x)?.is_zero() {
                out.push((i + 1, j + 1));
            }
        }
    }
    Ok(out)
}

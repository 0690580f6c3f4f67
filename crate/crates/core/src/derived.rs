//! The bounded derived category of a hereditary path algebra.
//!
//! Every object is a finite direct sum of shifted indecomposable modules, so
//! objects are stored in that decomposed form. Graded Hom between shifted
//! modules reduces to module Hom and Ext¹:
//! `Hom^p(M[a], N[b]) = Hom_mod^{b+p-a}(M, N)`, nonzero only for
//! `p = a - b` (Hom) and `p = a - b + 1` (Ext¹).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactla::{int, RatMatrix};
use crate::quiver::Quiver;
use crate::rep::{
    cokernel, decompose, ext_space, extension_block, hom_space, kernel, simple_rep, ExtClass,
    ExtSpace, HomSpace, IndecId, IndecKey, IndecRegistry, Morphism, Representation,
};

/// A formal direct sum of shifted indecomposables, kept sorted by
/// `(shift, id)`. The empty sum is the zero object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivedObject {
    summands: Vec<(IndecId, i64)>,
}

impl DerivedObject {
    pub fn zero() -> Self {
        DerivedObject::default()
    }

    pub fn single(id: IndecId, shift: i64) -> Self {
        DerivedObject {
            summands: vec![(id, shift)],
        }
    }

    pub fn from_summands(mut summands: Vec<(IndecId, i64)>) -> Self {
        summands.sort_by_key(|&(id, s)| (s, id));
        DerivedObject { summands }
    }

    pub fn summands(&self) -> &[(IndecId, i64)] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// The unique summand, if there is exactly one.
    pub fn as_single(&self) -> Option<(IndecId, i64)> {
        match self.summands.as_slice() {
            [one] => Some(*one),
            _ => None,
        }
    }

    pub fn shift(&self, n: i64) -> Self {
        DerivedObject {
            summands: self.summands.iter().map(|&(id, s)| (id, s + n)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &DerivedObject) -> Self {
        let mut all = self.summands.clone();
        all.extend_from_slice(&other.summands);
        DerivedObject::from_summands(all)
    }

    /// `d` copies of `self`.
    pub fn power(&self, d: usize) -> Self {
        let mut all = Vec::with_capacity(self.summands.len() * d);
        for _ in 0..d {
            all.extend_from_slice(&self.summands);
        }
        DerivedObject::from_summands(all)
    }
}

/// `p ↦ dim Hom^p`, zero degrees omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedHom(pub BTreeMap<i64, usize>);

impl GradedHom {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut g = GradedHom::default();
        for (p, d) in pairs {
            g.add(p, d);
        }
        g
    }

    fn add(&mut self, degree: i64, dim: usize) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn at(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `(degree, dim)` when the space is nonzero in exactly one degree.
    pub fn single_degree(&self) -> Option<(i64, usize)> {
        match self.0.len() {
            1 => self.0.iter().next().map(|(&p, &d)| (p, d)),
            _ => None,
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    /// The dual graded space: `(V^*)^p = (V^{-p})^*`.
    pub fn dual(&self) -> GradedHom {
        GradedHom(self.0.iter().map(|(&p, &d)| (-p, d)).collect())
    }
}

/// Degree and dimension of a single-degree cross Hom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeEntry {
    pub degree: i64,
    pub dim: usize,
}

/// Off-diagonal entries `(i, j) ↦ (p_{i,j}, dim)` for pairs whose graded
/// Hom is nonzero and concentrated in a single degree. Indices are 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DegreeTable {
    size: usize,
    entries: BTreeMap<(usize, usize), DegreeEntry>,
}

impl DegreeTable {
    pub fn new(size: usize) -> Self {
        DegreeTable {
            size,
            entries: BTreeMap::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> Option<DegreeEntry> {
        self.entries.get(&(i, j)).copied()
    }

    pub fn degree(&self, i: usize, j: usize) -> Option<i64> {
        self.get(i, j).map(|e| e.degree)
    }

    pub fn set(&mut self, i: usize, j: usize, entry: Option<DegreeEntry>) {
        match entry {
            Some(e) => {
                self.entries.insert((i, j), e);
            }
            None => {
                self.entries.remove(&(i, j));
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), DegreeEntry)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// The table after reordering items: new position `k` holds old item
    /// `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> DegreeTable {
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        DegreeTable {
            size: self.size,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), &e)| ((inverse[i], inverse[j]), e))
                .collect(),
        }
    }

    /// `{"i,j": [degree, dim]}` with 1-based indices.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (&(i, j), e) in &self.entries {
            map.insert(format!("{},{}", i + 1, j + 1), json!([e.degree, e.dim]));
        }
        Value::Object(map)
    }
}

/// Verdicts of [`DerivedCategory::collection_flags`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionFlags {
    pub exceptional: bool,
    pub ext: bool,
    pub monochromatic: bool,
    pub degrees: DegreeTable,
}

impl CollectionFlags {
    pub fn all(&self) -> bool {
        self.exceptional && self.ext && self.monochromatic
    }
}

/// An ordered exceptional collection with its cached degree table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalCollection {
    items: Vec<DerivedObject>,
    degrees: DegreeTable,
}

impl ExceptionalCollection {
    pub fn items(&self) -> &[DerivedObject] {
        &self.items
    }

    pub fn degrees(&self) -> &DegreeTable {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// A map concentrated in one degree between two shifted modules, the only
/// shape whose cone is needed: a module map `M[a] -> N[a]` or an Ext¹ class
/// read as `M[a] -> N[a+1]`.
#[derive(Clone, Debug)]
pub enum SingleDegreeMap {
    Module {
        source: Representation,
        target: Representation,
        map: Morphism,
        shift: i64,
    },
    Ext {
        class: ExtClass,
        shift: i64,
    },
}

/// Right or left mutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MutationSide {
    Right,
    Left,
}

/// Generators of the braid action: `Mutate(i, Right)` is `b_i`,
/// `Mutate(i, Left)` is `b_i^{-1}`, `Shift(i, ±1)` is `e_i^{±1}`.
/// Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidGenerator {
    Mutate(usize, MutationSide),
    Shift(usize, i64),
}

/// Forward (♯) or backward (♭): selects the twist triangle and the
/// direction of a simple tilt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// `ψ♯_S(T) -> T -> Hom¹(T,S)^* ⊗ S[1]`
    Sharp,
    /// `Hom¹(S,T) ⊗ S[-1] -> T -> ψ♭_S(T)`
    Flat,
}

impl Direction {
    /// `+` for ♯, `-` for ♭.
    pub fn token(self) -> char {
        match self {
            Direction::Sharp => '+',
            Direction::Flat => '-',
        }
    }

    pub fn inverse(self) -> Direction {
        match self {
            Direction::Sharp => Direction::Flat,
            Direction::Flat => Direction::Sharp,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct TwistKey {
    side: Direction,
    s: IndecId,
    t: IndecId,
    relative_shift: i64,
}

struct ModuleSpaces {
    hom: HomSpace,
    ext: ExtSpace,
}

/// Shared context: the indecomposable registry plus memo tables for module
/// Hom/Ext spaces and twist results. Safe to share across threads.
pub struct DerivedCategory {
    registry: Arc<IndecRegistry>,
    spaces: RwLock<HashMap<(IndecId, IndecId), Arc<ModuleSpaces>>>,
    twists: RwLock<HashMap<TwistKey, DerivedObject>>,
}

impl fmt::Debug for DerivedCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DerivedCategory")
            .field("registry", &self.registry)
            .finish()
    }
}

impl DerivedCategory {
    pub fn new(quiver: Arc<Quiver>) -> Self {
        DerivedCategory {
            registry: Arc::new(IndecRegistry::new(quiver)),
            spaces: RwLock::new(HashMap::new()),
            twists: RwLock::new(HashMap::new()),
        }
    }

    pub fn registry(&self) -> &Arc<IndecRegistry> {
        &self.registry
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.registry.quiver()
    }

    pub fn mu(&self) -> usize {
        self.quiver().mu()
    }

    /// The simple module at vertex `i` (1-based) in degree 0.
    pub fn simple(&self, i: usize) -> Result<DerivedObject> {
        let s = simple_rep(self.quiver(), i)?;
        Ok(DerivedObject::single(self.registry.register(&s)?, 0))
    }

    /// A module placed in degree `shift`, decomposed into indecomposables.
    pub fn object_of(&self, m: &Representation, shift: i64) -> Result<DerivedObject> {
        let d = decompose(m, &self.registry)?;
        let mut summands = Vec::new();
        for (id, mult) in d.summands {
            summands.extend(std::iter::repeat_n((id, shift), mult));
        }
        Ok(DerivedObject::from_summands(summands))
    }

    pub fn module(&self, id: IndecId) -> Arc<Representation> {
        self.registry.rep(id)
    }

    pub fn key(&self, id: IndecId) -> IndecKey {
        self.registry.key(id)
    }

    /// `[M[n]] = (-1)^n dim M`, summed.
    pub fn class(&self, x: &DerivedObject) -> Vec<i64> {
        let mut out = vec![0i64; self.mu()];
        for &(id, s) in x.summands() {
            let sign = if s.rem_euclid(2) == 0 { 1 } else { -1 };
            for (o, d) in out.iter_mut().zip(self.module(id).dims()) {
                *o += sign * *d as i64;
            }
        }
        out
    }

    /// Human-readable label such as `(1,1)[1] + (0,1)`.
    pub fn label(&self, x: &DerivedObject) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        x.summands()
            .iter()
            .map(|&(id, s)| {
                if s == 0 {
                    format!("({})", self.key(id))
                } else {
                    format!("({})[{}]", self.key(id), s)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `[[key, shift], ...]` for dumps.
    pub fn summands_json(&self, x: &DerivedObject) -> Value {
        Value::Array(
            x.summands()
                .iter()
                .map(|&(id, s)| json!([self.key(id).to_string(), s]))
                .collect(),
        )
    }

    fn spaces(&self, m: IndecId, n: IndecId) -> Result<Arc<ModuleSpaces>> {
        if let Some(s) = self.spaces.read().unwrap().get(&(m, n)) {
            return Ok(s.clone());
        }
        let (mr, nr) = (self.module(m), self.module(n));
        let computed = Arc::new(ModuleSpaces {
            hom: hom_space(&mr, &nr)?,
            ext: ext_space(&mr, &nr)?,
        });
        Ok(self
            .spaces
            .write()
            .unwrap()
            .entry((m, n))
            .or_insert(computed)
            .clone())
    }

    /// `(dim Hom(M, N), dim Ext¹(M, N))` for registered indecomposables.
    pub fn module_dims(&self, m: IndecId, n: IndecId) -> Result<(usize, usize)> {
        let s = self.spaces(m, n)?;
        Ok((s.hom.dim(), s.ext.dim))
    }

    pub fn graded_hom(&self, x: &DerivedObject, y: &DerivedObject) -> Result<GradedHom> {
        let mut g = GradedHom::default();
        for &(m, a) in x.summands() {
            for &(n, b) in y.summands() {
                let (hom, ext) = self.module_dims(m, n)?;
                g.add(a - b, hom);
                g.add(a - b + 1, ext);
            }
        }
        Ok(g)
    }

    pub fn is_exceptional(&self, x: &DerivedObject) -> Result<bool> {
        Ok(self.graded_hom(x, x)? == GradedHom::from_pairs([(0, 1)]))
    }

    /// The cone of a single-degree map, decomposed. A module map `g`
    /// contributes `coker g[a] ⊕ ker g[a+1]`; an Ext class `M -> N[1]` with
    /// middle term `X` contributes `X[a+1]`.
    pub fn cone_single_degree(&self, f: &SingleDegreeMap) -> Result<DerivedObject> {
        match f {
            SingleDegreeMap::Module {
                source,
                target,
                map,
                shift,
            } => {
                if !map.is_homomorphism(source, target) {
                    return Err(Error::UnsupportedMap(
                        "components do not commute with the arrows".into(),
                    ));
                }
                let coker = cokernel(target, map)?;
                let (ker, _) = kernel(source, map)?;
                Ok(self
                    .object_of(&coker, *shift)?
                    .direct_sum(&self.object_of(&ker, shift + 1)?))
            }
            SingleDegreeMap::Ext { class, shift } => {
                self.object_of(&extension_block(class), shift + 1)
            }
        }
    }

    /// `V ⊗ E = ⊕_p V^p ⊗ E[-p]`.
    pub fn tensor_graded(&self, v: &GradedHom, e: &DerivedObject) -> DerivedObject {
        v.0.iter()
            .fold(DerivedObject::zero(), |acc, (&p, &d)| {
                acc.direct_sum(&e.shift(-p).power(d))
            })
    }

    /// The map `M[a] -> N^d[a+δ]` whose components are a basis of
    /// `Hom_mod^δ(M, N)`.
    fn evaluation_to_power(&self, m: IndecId, n: IndecId, delta: i64, a: i64) -> Result<SingleDegreeMap> {
        let sp = self.spaces(m, n)?;
        match delta {
            0 => {
                let d = sp.hom.dim();
                Ok(SingleDegreeMap::Module {
                    source: (*self.module(m)).clone(),
                    target: self.module(n).power(d),
                    map: Morphism::stack(&sp.hom.basis),
                    shift: a,
                })
            }
            1 => Ok(SingleDegreeMap::Ext {
                class: ExtClass::stack_targets(&sp.ext.basis),
                shift: a,
            }),
            _ => Err(Error::UnsupportedMap(format!("degree offset {delta}"))),
        }
    }

    /// The map `N^d[b] -> M[b+δ]` whose components are a basis of
    /// `Hom_mod^δ(N, M)`.
    fn coevaluation_from_power(&self, n: IndecId, m: IndecId, delta: i64, b: i64) -> Result<SingleDegreeMap> {
        let sp = self.spaces(n, m)?;
        match delta {
            0 => {
                let d = sp.hom.dim();
                Ok(SingleDegreeMap::Module {
                    source: self.module(n).power(d),
                    target: (*self.module(m)).clone(),
                    map: Morphism::concat(&sp.hom.basis),
                    shift: b,
                })
            }
            1 => Ok(SingleDegreeMap::Ext {
                class: ExtClass::concat_sources(&sp.ext.basis),
                shift: b,
            }),
            _ => Err(Error::UnsupportedMap(format!("degree offset {delta}"))),
        }
    }

    /// The ψ-twist of a shifted indecomposable `t` through `s`. Returns `t`
    /// when the relevant `Hom¹` vanishes; fails if it exceeds dimension 1.
    pub fn psi_twist(&self, s: &DerivedObject, t: &DerivedObject, side: Direction) -> Result<DerivedObject> {
        let (n, b) = s
            .as_single()
            .ok_or_else(|| Error::UnsupportedMap("twist through a decomposable object".into()))?;
        let (m, a) = t
            .as_single()
            .ok_or_else(|| Error::UnsupportedMap("twist of a decomposable object".into()))?;
        let key = TwistKey {
            side,
            s: n,
            t: m,
            relative_shift: b - a,
        };
        if let Some(r) = self.twists.read().unwrap().get(&key) {
            return Ok(r.shift(a));
        }
        let relative = self.psi_twist_uncached(n, b - a, m, side)?;
        self.twists.write().unwrap().insert(key, relative.clone());
        Ok(relative.shift(a))
    }

    /// Twist of `M[0]` through `N[rel]`.
    fn psi_twist_uncached(&self, n: IndecId, rel: i64, m: IndecId, side: Direction) -> Result<DerivedObject> {
        let t = DerivedObject::single(m, 0);
        match side {
            Direction::Sharp => {
                // Hom¹(M, N[rel]) = Hom_mod^{rel+1}(M, N)
                let delta = rel + 1;
                let d = self.module_degree_dim(m, n, delta)?;
                match d {
                    0 => Ok(t),
                    1 => {
                        let f = self.evaluation_to_power(m, n, delta, 0)?;
                        Ok(self.cone_single_degree(&f)?.shift(-1))
                    }
                    dim => Err(Error::HomTooLarge { dim }),
                }
            }
            Direction::Flat => {
                // Hom¹(N[rel], M) = Hom_mod^{1-rel}(N, M)
                let delta = 1 - rel;
                let d = self.module_degree_dim(n, m, delta)?;
                match d {
                    0 => Ok(t),
                    1 => {
                        let f = self.coevaluation_from_power(n, m, delta, rel - 1)?;
                        self.cone_single_degree(&f)
                    }
                    dim => Err(Error::HomTooLarge { dim }),
                }
            }
        }
    }

    fn module_degree_dim(&self, m: IndecId, n: IndecId, delta: i64) -> Result<usize> {
        let (hom, ext) = self.module_dims(m, n)?;
        Ok(match delta {
            0 => hom,
            1 => ext,
            _ => 0,
        })
    }

    /// Right mutation `R_F E`, the fiber of `E -> Hom•(E,F)^* ⊗ F`.
    pub fn right_mutation(&self, e: &DerivedObject, f: &DerivedObject) -> Result<DerivedObject> {
        let (m, a) = single(e)?;
        let (n, b) = single(f)?;
        let g = self.graded_hom(e, f)?;
        if g.is_zero() {
            return Ok(e.clone());
        }
        let (p, _) = g
            .single_degree()
            .ok_or_else(|| Error::UnsupportedMap("graded Hom in several degrees".into()))?;
        // target F^d[p] = N^d[b+p]
        let delta = b + p - a;
        let map = self.evaluation_to_power(m, n, delta, a)?;
        Ok(self.cone_single_degree(&map)?.shift(-1))
    }

    /// Left mutation `L_E F`, the cone of `Hom•(E,F) ⊗ E -> F`.
    pub fn left_mutation(&self, e: &DerivedObject, f: &DerivedObject) -> Result<DerivedObject> {
        let (m, a) = single(e)?;
        let (n, b) = single(f)?;
        let g = self.graded_hom(e, f)?;
        if g.is_zero() {
            return Ok(f.clone());
        }
        let (p, _) = g
            .single_degree()
            .ok_or_else(|| Error::UnsupportedMap("graded Hom in several degrees".into()))?;
        // source E^d[-p] = M^d[a-p]
        let delta = b - (a - p);
        let map = self.coevaluation_from_power(m, n, delta, a - p)?;
        self.cone_single_degree(&map)
    }

    /// Exceptionality, Ext, monochromaticity and the degree table.
    pub fn collection_flags(&self, items: &[DerivedObject]) -> Result<CollectionFlags> {
        let n = items.len();
        let mut flags = CollectionFlags {
            exceptional: true,
            ext: true,
            monochromatic: true,
            degrees: DegreeTable::new(n),
        };
        for (i, x) in items.iter().enumerate() {
            if !self.is_exceptional(x)? {
                flags.exceptional = false;
            }
            for (j, y) in items.iter().enumerate() {
                if i == j {
                    continue;
                }
                let g = self.graded_hom(x, y)?;
                if g.is_zero() {
                    continue;
                }
                if i > j {
                    flags.exceptional = false;
                }
                if g.min_degree().is_some_and(|p| p <= 0) {
                    flags.ext = false;
                }
                match g.single_degree() {
                    Some((degree, dim)) => {
                        if degree < 0 {
                            flags.monochromatic = false;
                        }
                        flags.degrees.set(i, j, Some(DegreeEntry { degree, dim }));
                    }
                    None => flags.monochromatic = false,
                }
            }
        }
        Ok(flags)
    }

    /// Validates and wraps an exceptional collection.
    pub fn exceptional_collection(&self, items: Vec<DerivedObject>) -> Result<ExceptionalCollection> {
        let flags = self.collection_flags(&items)?;
        if !flags.exceptional {
            return Err(Error::Invariant("not an exceptional collection".into()));
        }
        Ok(ExceptionalCollection {
            items,
            degrees: flags.degrees,
        })
    }

    /// Shifts items so that every cross Hom lives in degrees ≥ 1, choosing
    /// from left to right the largest admissible shift, and no shift for
    /// items with no nonzero Hom from an earlier item.
    pub fn ext_normalize(&self, c: &ExceptionalCollection) -> Result<ExceptionalCollection> {
        let items = c.items();
        let mut shifts: Vec<i64> = Vec::with_capacity(items.len());
        for j in 0..items.len() {
            let mut bound: Option<i64> = None;
            for i in 0..j {
                if let Some(m) = self.graded_hom(&items[i], &items[j])?.min_degree() {
                    // Hom^p(E_i[q_i], E_j[q_j]) = Hom^{p + q_j - q_i}(E_i, E_j)
                    let cap = m + shifts[i] - 1;
                    bound = Some(bound.map_or(cap, |b: i64| b.min(cap)));
                }
            }
            shifts.push(bound.unwrap_or(0));
        }
        let shifted = items
            .iter()
            .zip(&shifts)
            .map(|(x, &q)| x.shift(q))
            .collect();
        self.exceptional_collection(shifted)
    }

    /// Mutation of the adjacent pair at 1-based position `i`.
    pub fn mutate(&self, c: &ExceptionalCollection, i: usize, side: MutationSide) -> Result<ExceptionalCollection> {
        let len = c.len();
        if i == 0 || i >= len {
            return Err(Error::IndexOutOfRange { index: i, len: len.saturating_sub(1) });
        }
        let (e, f) = (&c.items[i - 1], &c.items[i]);
        let (first, second) = match side {
            MutationSide::Right => (f.clone(), self.right_mutation(e, f)?),
            MutationSide::Left => (self.left_mutation(e, f)?, e.clone()),
        };
        let mut items = c.items.clone();
        items[i - 1] = first;
        items[i] = second;
        self.exceptional_collection(items)
    }

    pub fn braid_act(&self, word: &[BraidGenerator], c: &ExceptionalCollection) -> Result<ExceptionalCollection> {
        let mut cur = c.clone();
        for g in word {
            cur = match *g {
                BraidGenerator::Mutate(i, side) => self.mutate(&cur, i, side)?,
                BraidGenerator::Shift(i, n) => {
                    if i == 0 || i > cur.len() {
                        return Err(Error::IndexOutOfRange { index: i, len: cur.len() });
                    }
                    let mut items = cur.items.clone();
                    items[i - 1] = items[i - 1].shift(n);
                    self.exceptional_collection(items)?
                }
            };
        }
        Ok(cur)
    }

    /// The integer matrix of K₀ classes, one row per item.
    pub fn class_matrix(&self, items: &[DerivedObject]) -> Vec<Vec<i64>> {
        items.iter().map(|x| self.class(x)).collect()
    }

    /// Length equals the rank of K₀ and the classes form a unimodular basis.
    pub fn is_full(&self, items: &[DerivedObject]) -> bool {
        if items.len() != self.mu() {
            return false;
        }
        let rows = self.class_matrix(items);
        let det = RatMatrix::from_int_rows(&rows).determinant();
        det.is_some_and(|d| d == int(1) || d == int(-1))
    }

    /// `{"items":[{"summands":[[key, shift],...],"class":[...]}], "degrees":{...}}`.
    pub fn collection_dump(&self, items: &[DerivedObject], degrees: &DegreeTable) -> Value {
        json!({
            "items": items
                .iter()
                .map(|x| json!({"summands": self.summands_json(x), "class": self.class(x)}))
                .collect::<Vec<_>>(),
            "degrees": degrees.to_json(),
        })
    }
}

fn single(x: &DerivedObject) -> Result<(IndecId, i64)> {
    x.as_single()
        .ok_or_else(|| Error::UnsupportedMap("mutation of a decomposable object".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;
    use crate::rep::{projective_rep, Morphism};

    fn a2() -> DerivedCategory {
        DerivedCategory::new(Arc::new(catalog::linear_a(2)))
    }

    fn m11(cat: &DerivedCategory) -> DerivedObject {
        cat.object_of(&projective_rep(cat.quiver(), 1).unwrap(), 0)
            .unwrap()
    }

    #[test]
    fn graded_hom_examples() {
        let cat = a2();
        let (s1, s2, m) = (cat.simple(1).unwrap(), cat.simple(2).unwrap(), m11(&cat));
        assert_eq!(cat.graded_hom(&s1, &s2).unwrap(), GradedHom::from_pairs([(1, 1)]));
        assert_eq!(cat.graded_hom(&s2.shift(1), &m).unwrap(), GradedHom::from_pairs([(1, 1)]));
        for x in [&s1, &s2, &m] {
            assert_eq!(cat.graded_hom(x, x).unwrap(), GradedHom::from_pairs([(0, 1)]));
        }
        let x = s1.direct_sum(&m);
        for n in [-3, 0, 2] {
            assert_eq!(
                cat.graded_hom(&x, &s2).unwrap(),
                cat.graded_hom(&x.shift(n), &s2.shift(n)).unwrap()
            );
        }
    }

    #[test]
    fn shift_examples() {
        let cat = a2();
        let s1 = cat.simple(1).unwrap();
        let id = s1.as_single().unwrap().0;
        assert_eq!(s1.shift(1), DerivedObject::single(id, 1));
        assert_eq!(s1.shift(0), s1);
        assert_eq!(s1.shift(2).shift(-2), s1);
        assert_eq!(cat.class(&s1.shift(1)), vec![-1, 0]);
    }

    #[test]
    fn cone_examples() {
        let cat = a2();
        let q = cat.quiver().clone();
        let s2r = simple_rep(&q, 2).unwrap();
        let s1r = simple_rep(&q, 1).unwrap();
        let mr = projective_rep(&q, 1).unwrap();
        let inc = hom_space(&s2r, &mr).unwrap().basis[0].clone();
        let cone = cat
            .cone_single_degree(&SingleDegreeMap::Module {
                source: s2r.clone(),
                target: mr,
                map: inc,
                shift: 0,
            })
            .unwrap();
        assert_eq!(cone, cat.simple(1).unwrap());

        let id = cat
            .cone_single_degree(&SingleDegreeMap::Module {
                source: s1r.clone(),
                target: s1r.clone(),
                map: Morphism::identity(&s1r),
                shift: 0,
            })
            .unwrap();
        assert!(id.is_zero());

        let zero = cat
            .cone_single_degree(&SingleDegreeMap::Module {
                source: s1r.clone(),
                target: s2r.clone(),
                map: Morphism::zero(&s1r, &s2r),
                shift: 0,
            })
            .unwrap();
        assert_eq!(
            zero,
            cat.simple(2).unwrap().direct_sum(&cat.simple(1).unwrap().shift(1))
        );
        // [cone] = [y] - [x]
        assert_eq!(cat.class(&zero), vec![-1, 1]);
    }

    #[test]
    fn tensor_examples() {
        let cat = a2();
        let (s1, s2) = (cat.simple(1).unwrap(), cat.simple(2).unwrap());
        assert_eq!(cat.tensor_graded(&GradedHom::from_pairs([(1, 1)]), &s2), s2.shift(-1));
        assert_eq!(cat.tensor_graded(&GradedHom::from_pairs([(0, 2)]), &s1), s1.power(2));
        assert!(cat.tensor_graded(&GradedHom::default(), &s1).is_zero());
    }

    #[test]
    fn exceptional_examples() {
        let cat = a2();
        let (s1, s2, m) = (cat.simple(1).unwrap(), cat.simple(2).unwrap(), m11(&cat));
        assert!(cat.is_exceptional(&s1).unwrap());
        assert!(!cat.is_exceptional(&s1.direct_sum(&s2)).unwrap());
        assert!(cat.is_exceptional(&m.shift(-3)).unwrap());
    }

    #[test]
    fn flags_examples() {
        let cat = a2();
        let (s1, s2) = (cat.simple(1).unwrap(), cat.simple(2).unwrap());
        let f = cat.collection_flags(&[s1.clone(), s2.clone()]).unwrap();
        assert!(f.all());
        assert_eq!(f.degrees.get(0, 1), Some(DegreeEntry { degree: 1, dim: 1 }));
        assert!(!cat.collection_flags(&[s2.clone(), s1.clone()]).unwrap().exceptional);
        let f = cat.collection_flags(&[s1.shift(1), s2.clone()]).unwrap();
        assert!(f.all());
        assert_eq!(f.degrees.degree(0, 1), Some(2));
    }

    #[test]
    fn ext_normalize_examples() {
        let cat = a2();
        let (s1, s2) = (cat.simple(1).unwrap(), cat.simple(2).unwrap());
        let std = cat.exceptional_collection(vec![s1.clone(), s2.clone()]).unwrap();
        assert_eq!(cat.ext_normalize(&std).unwrap(), std);
        // Hom in degree 6: already Ext, tightened to degree 1
        let low = cat.exceptional_collection(vec![s1.clone(), s2.shift(-5)]).unwrap();
        assert_eq!(cat.ext_normalize(&low).unwrap().items()[1], s2);
        // Hom in degree -4: not Ext
        let high = cat.exceptional_collection(vec![s1.clone(), s2.shift(5)]).unwrap();
        assert!(!cat.collection_flags(high.items()).unwrap().ext);
        let fixed = cat.ext_normalize(&high).unwrap();
        assert!(cat.collection_flags(fixed.items()).unwrap().ext);
        assert_eq!(fixed.items()[1], s2);
        assert_eq!(cat.ext_normalize(&fixed).unwrap(), fixed);

        let q = Arc::new(Quiver::new(2, []).unwrap());
        let cat = DerivedCategory::new(q);
        let c = cat
            .exceptional_collection(vec![cat.simple(1).unwrap().shift(3), cat.simple(2).unwrap()])
            .unwrap();
        assert_eq!(cat.ext_normalize(&c).unwrap(), c);
    }

    #[test]
    fn mutation_examples() {
        let cat = a2();
        let (s1, s2, m) = (cat.simple(1).unwrap(), cat.simple(2).unwrap(), m11(&cat));
        let std = cat.exceptional_collection(vec![s1.clone(), s2.clone()]).unwrap();
        let r = cat.mutate(&std, 1, MutationSide::Right).unwrap();
        assert_eq!(r.items(), &[s2.clone(), m.clone()]);
        let back = cat.mutate(&r, 1, MutationSide::Left).unwrap();
        assert_eq!(back, std);

        let q = Arc::new(Quiver::new(2, []).unwrap());
        let cat2 = DerivedCategory::new(q);
        let (t1, t2) = (cat2.simple(1).unwrap(), cat2.simple(2).unwrap());
        let c = cat2.exceptional_collection(vec![t1.clone(), t2.clone()]).unwrap();
        assert_eq!(cat2.mutate(&c, 1, MutationSide::Right).unwrap().items(), &[t2, t1]);
        assert!(matches!(
            cat.mutate(&std, 2, MutationSide::Right),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn braid_examples() {
        use BraidGenerator::*;
        let cat = a2();
        let (s1, s2) = (cat.simple(1).unwrap(), cat.simple(2).unwrap());
        let std = cat.exceptional_collection(vec![s1.clone(), s2.clone()]).unwrap();
        let id = cat
            .braid_act(&[Mutate(1, MutationSide::Right), Mutate(1, MutationSide::Left)], &std)
            .unwrap();
        assert_eq!(id, std);
        let e = cat.braid_act(&[Shift(1, 1)], &std).unwrap();
        assert_eq!(e.items(), &[s1.shift(1), s2]);

        let cat3 = DerivedCategory::new(Arc::new(catalog::linear_a(3)));
        let std3 = cat3
            .exceptional_collection((1..=3).map(|i| cat3.simple(i).unwrap()).collect())
            .unwrap();
        let b = |i| Mutate(i, MutationSide::Right);
        let lhs = cat3.braid_act(&[b(1), b(2), b(1)], &std3).unwrap();
        let rhs = cat3.braid_act(&[b(2), b(1), b(2)], &std3).unwrap();
        assert_eq!(lhs, rhs);
        assert!(cat3.is_full(lhs.items()));
    }

    #[test]
    fn twist_examples() {
        let cat = a2();
        let (s1, s2, m) = (cat.simple(1).unwrap(), cat.simple(2).unwrap(), m11(&cat));
        assert_eq!(cat.psi_twist(&s2, &s1, Direction::Sharp).unwrap(), m);
        assert_eq!(cat.psi_twist(&s1, &s2, Direction::Sharp).unwrap(), s2);
        assert_eq!(cat.psi_twist(&m, &s2.shift(1), Direction::Sharp).unwrap(), s1);
        // cached path agrees after a shift
        assert_eq!(
            cat.psi_twist(&s2.shift(4), &s1.shift(4), Direction::Sharp).unwrap(),
            m.shift(4)
        );
        assert_eq!(cat.psi_twist(&s1, &s2, Direction::Flat).unwrap(), m);
    }

    #[test]
    fn dump_shape() {
        let cat = a2();
        let items = vec![cat.simple(1).unwrap(), cat.simple(2).unwrap()];
        let flags = cat.collection_flags(&items).unwrap();
        let v = cat.collection_dump(&items, &flags.degrees);
        assert_eq!(
            v,
            json!({"items":[{"summands":[["1,0",0]],"class":[1,0]},{"summands":[["0,1",0]],"class":[0,1]}],"degrees":{"1,2":[1,1]}})
        );
    }
}

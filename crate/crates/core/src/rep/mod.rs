//! Representations of a quiver over `Q`: the concrete model of the module
//! category. Hom and Ext¹ spaces, extensions, kernels and cokernels and
//! Krull–Schmidt decomposition all live here; the derived and tilt layers
//! use this as their exact oracle.

mod closure;
mod decompose;
mod hom;
mod registry;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, RatMatrix, Rational};
use crate::quiver::Quiver;

pub use closure::indecomposable_closure;
pub use decompose::{decompose, is_isomorphic, Decomposition};
pub use hom::{
    cokernel, ext_space, extension_middle_term, hom_space, image, kernel, ExtClass, ExtSpace, HomSpace, Morphism,
};
pub use registry::{IndecId, IndecKey, IndecRegistry};
pub(crate) use hom::extension_block;

/// A representation: a vector space per vertex (given by its dimension) and
/// a matrix per arrow `a: s -> t` of shape `dims[t] x dims[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        if dims.len() != quiver.mu() {
            return Err(Error::Dimension(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.mu()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::Dimension(format!(
                "{} maps for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (&(s, t), m) in quiver.arrows().iter().zip(&maps) {
            if m.shape() != (dims[t - 1], dims[s - 1]) {
                return Err(Error::Dimension(format!(
                    "map for arrow {s}->{t} has shape {:?}, expected {:?}",
                    m.shape(),
                    (dims[t - 1], dims[s - 1])
                )));
            }
        }
        Ok(Representation { quiver, dims, maps })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        let dims = vec![0; quiver.mu()];
        let maps = quiver.arrows().iter().map(|_| RatMatrix::zeros(0, 0)).collect();
        Representation { quiver, dims, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Map attached to the arrow at position `arrow` of `quiver().arrows()`.
    pub fn map(&self, arrow: usize) -> &RatMatrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }

    pub(crate) fn same_quiver(&self, other: &Representation) -> Result<()> {
        if Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.same_quiver(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Representation {
            quiver: self.quiver.clone(),
            dims,
            maps,
        })
    }

    /// `self^{⊕ copies}`.
    pub fn power(&self, copies: usize) -> Representation {
        let mut out = Representation::zero(self.quiver.clone());
        for _ in 0..copies {
            out = out.direct_sum(self).expect("same quiver");
        }
        out
    }

    /// Subrepresentation spanned by the columns of `bases[v]` at each vertex.
    /// The bases must have full column rank and be closed under the arrow maps.
    pub fn subrepresentation(&self, bases: &[RatMatrix]) -> Result<Representation> {
        let left_inverses: Vec<RatMatrix> = bases
            .iter()
            .map(left_inverse)
            .collect::<Result<_>>()?;
        let dims: Vec<usize> = bases.iter().map(RatMatrix::cols).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (k, &(s, t)) in self.quiver.arrows().iter().enumerate() {
            let image = &self.maps[k] * &bases[s - 1];
            let coords = &left_inverses[t - 1] * &image;
            if &bases[t - 1] * &coords != image {
                return Err(Error::Invariant(format!(
                    "subspace not closed under arrow {s}->{t}"
                )));
            }
            maps.push(coords);
        }
        Representation::new(self.quiver.clone(), dims, maps)
    }

    /// Quotient by the subrepresentation spanned by `bases` (closed under
    /// arrows). Returns the quotient together with the per-vertex projection
    /// matrices onto it.
    pub fn quotient(&self, bases: &[RatMatrix]) -> Result<(Representation, Vec<RatMatrix>)> {
        let mut projections = Vec::with_capacity(bases.len());
        let mut sections = Vec::with_capacity(bases.len());
        for (v, b) in bases.iter().enumerate() {
            let n = self.dims[v];
            let comp = crate::exactla::complement_standard(b);
            let c = RatMatrix::identity(n).select_columns(&comp);
            let full = b.hstack(&c);
            let inv = full.inverse().ok_or_else(|| {
                Error::Invariant("subspace basis is not linearly independent".into())
            })?;
            let rows: Vec<usize> = (b.cols()..n).collect();
            projections.push(inv.select_rows(&rows));
            sections.push(c);
        }
        let dims: Vec<usize> = sections.iter().map(RatMatrix::cols).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| &(&projections[t - 1] * &self.maps[k]) * &sections[s - 1])
            .collect();
        Ok((
            Representation::new(self.quiver.clone(), dims, maps)?,
            projections,
        ))
    }

    /// Text dump `{"dims":[...],"maps":{"s->t#k":[["p/q",...],...]}}`.
    pub fn to_dump(&self) -> Value {
        let mut maps = BTreeMap::new();
        for (k, &(s, t)) in self.quiver.arrows().iter().enumerate() {
            let m = &self.maps[k];
            let rows: Vec<Vec<String>> = (0..m.rows())
                .map(|r| m.row(r).iter().map(format_rational).collect())
                .collect();
            maps.insert(
                format!("{s}->{t}#{}", self.quiver.parallel_index(k)),
                json!(rows),
            );
        }
        json!({ "dims": self.dims, "maps": maps })
    }

    pub fn from_dump(quiver: Arc<Quiver>, value: &Value) -> Result<Representation> {
        let bad = |msg: &str| Error::Parse(format!("representation dump: {msg}"));
        let dims: Vec<usize> = value
            .get("dims")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing dims"))?
            .iter()
            .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| bad("bad dim")))
            .collect::<Result<_>>()?;
        if dims.len() != quiver.mu() {
            return Err(bad("wrong number of dims"));
        }
        let maps_obj = value
            .get("maps")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing maps"))?;
        let mut maps = Vec::new();
        for (k, &(s, t)) in quiver.arrows().iter().enumerate() {
            let key = format!("{s}->{t}#{}", quiver.parallel_index(k));
            let (rows, cols) = (dims[t - 1], dims[s - 1]);
            let entries = match maps_obj.get(&key) {
                Some(Value::Array(rs)) => {
                    if rs.len() != rows {
                        return Err(bad(&format!("{key}: expected {rows} rows")));
                    }
                    let mut entries: Vec<Rational> = Vec::with_capacity(rows * cols);
                    for r in rs {
                        let r = r.as_array().ok_or_else(|| bad("row is not a list"))?;
                        if r.len() != cols {
                            return Err(bad(&format!("{key}: expected {cols} columns")));
                        }
                        for x in r {
                            let s = x.as_str().ok_or_else(|| bad("entry is not a string"))?;
                            entries.push(parse_rational(s)?);
                        }
                    }
                    entries
                }
                None if rows * cols == 0 => Vec::new(),
                _ => return Err(bad(&format!("missing map {key}"))),
            };
            maps.push(RatMatrix::from_vec(rows, cols, entries)?);
        }
        Representation::new(quiver, dims, maps)
    }
}

/// `(B^T B)^{-1} B^T` for a full column rank `B`.
fn left_inverse(b: &RatMatrix) -> Result<RatMatrix> {
    let bt = b.transpose();
    let gram = &bt * b;
    let inv = gram
        .inverse()
        .ok_or_else(|| Error::Invariant("basis is not linearly independent".into()))?;
    Ok(&inv * &bt)
}

/// The simple representation at vertex `i` (1-based).
pub fn simple_rep(q: &Arc<Quiver>, i: usize) -> Result<Representation> {
    check_vertex(q, i)?;
    let mut dims = vec![0; q.mu()];
    dims[i - 1] = 1;
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| RatMatrix::zeros(dims[t - 1], dims[s - 1]))
        .collect();
    Representation::new(q.clone(), dims, maps)
}

/// The indecomposable projective at vertex `i`: basis of paths starting at
/// `i`, arrows acting by concatenation.
pub fn projective_rep(q: &Arc<Quiver>, i: usize) -> Result<Representation> {
    check_vertex(q, i)?;
    let paths = paths_from(q, i);
    let mut index: Vec<BTreeMap<Vec<usize>, usize>> = vec![BTreeMap::new(); q.mu()];
    for (end, p) in &paths {
        let n = index[end - 1].len();
        index[end - 1].insert(p.clone(), n);
    }
    let dims: Vec<usize> = index.iter().map(BTreeMap::len).collect();
    let mut maps: Vec<RatMatrix> = q
        .arrows()
        .iter()
        .map(|&(s, t)| RatMatrix::zeros(dims[t - 1], dims[s - 1]))
        .collect();
    for (k, &(s, t)) in q.arrows().iter().enumerate() {
        for (p, &col) in &index[s - 1] {
            let mut ext = p.clone();
            ext.push(k);
            let row = index[t - 1][&ext];
            maps[k][(row, col)] = Rational::from_integer(1.into());
        }
    }
    Representation::new(q.clone(), dims, maps)
}

/// All paths from `i`, as `(end vertex, arrow index sequence)`, including the
/// trivial path.
pub fn paths_from(q: &Quiver, i: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = vec![(i, Vec::new())];
    let mut k = 0;
    while k < out.len() {
        let (end, path) = out[k].clone();
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            if s == end {
                let mut p = path.clone();
                p.push(a);
                out.push((t, p));
            }
        }
        k += 1;
    }
    out
}

fn check_vertex(q: &Quiver, i: usize) -> Result<()> {
    if i == 0 || i > q.mu() {
        Err(Error::VertexOutOfRange {
            vertex: i,
            mu: q.mu(),
        })
    } else {
        Ok(())
    }
}

/// True when every arrow map vanishes.
pub fn is_semisimple(m: &Representation) -> bool {
    m.maps.iter().all(|a| a.entries().iter().all(Zero::is_zero))
}

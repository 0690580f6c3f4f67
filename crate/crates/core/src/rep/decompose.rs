//! Krull–Schmidt decomposition by Fitting's lemma.
//!
//! For an endomorphism `φ` of `M` and `N ≥ dim M`, `M = ker φ^N ⊕ im φ^N`.
//! Candidates are enumerated deterministically from the basis of `End(M)`;
//! a candidate splits `M` when `φ^N` is neither zero nor invertible.

use std::collections::BTreeMap;

use super::hom::{hom_space, Morphism};
use super::registry::{IndecId, IndecRegistry};
use super::{is_semisimple, Representation};
use crate::error::{Error, Result};
use crate::exactla::{column_basis, int, kernel_basis, RatMatrix};

/// A direct-sum decomposition. `parts[k]` is an indecomposable summand and
/// the per-vertex matrices embedding it into the decomposed representation;
/// placing all embeddings side by side gives an invertible change of basis.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// `(id, multiplicity)` sorted by id.
    pub summands: Vec<(IndecId, usize)>,
    pub parts: Vec<(IndecId, Representation, Vec<RatMatrix>)>,
}

impl Decomposition {
    /// Per-vertex change-of-basis matrices `[ι_1 | ι_2 | ...]`.
    pub fn change_of_basis(&self, m: &Representation) -> Vec<RatMatrix> {
        (0..m.dims().len())
            .map(|v| {
                self.parts
                    .iter()
                    .fold(RatMatrix::zeros(m.dims()[v], 0), |acc, (_, _, inc)| {
                        acc.hstack(&inc[v])
                    })
            })
            .collect()
    }
}

pub fn decompose(m: &Representation, registry: &IndecRegistry) -> Result<Decomposition> {
    m.same_quiver(&Representation::zero(registry.quiver().clone()))?;
    let identity: Vec<RatMatrix> = m.dims().iter().map(|&d| RatMatrix::identity(d)).collect();
    let pieces = split(m, identity)?;
    let mut counts: BTreeMap<IndecId, usize> = BTreeMap::new();
    let mut parts = Vec::with_capacity(pieces.len());
    for (piece, inc) in pieces {
        let id = registry.register(&piece)?;
        *counts.entry(id).or_insert(0) += 1;
        parts.push((id, piece, inc));
    }
    Ok(Decomposition {
        summands: counts.into_iter().collect(),
        parts,
    })
}

pub fn is_isomorphic(
    m: &Representation,
    n: &Representation,
    registry: &IndecRegistry,
) -> Result<bool> {
    m.same_quiver(n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    Ok(decompose(m, registry)?.summands == decompose(n, registry)?.summands)
}

/// Splits `m` into indecomposable summands, carrying each summand's
/// inclusion composed with `inc` (the inclusion of `m` into the original).
fn split(
    m: &Representation,
    inc: Vec<RatMatrix>,
) -> Result<Vec<(Representation, Vec<RatMatrix>)>> {
    let total = m.total_dim();
    if total == 0 {
        return Ok(Vec::new());
    }
    if total == 1 {
        return Ok(vec![(m.clone(), inc)]);
    }
    if is_semisimple(m) {
        return Ok(split_semisimple(m, &inc));
    }
    let end = hom_space(m, m)?;
    if end.dim() == 1 {
        return Ok(vec![(m.clone(), inc)]);
    }
    let power = *m.dims().iter().max().unwrap() as u32;
    for phi in candidates(m, &end.basis) {
        let stable: Vec<RatMatrix> = phi.0.iter().map(|f| f.pow(power)).collect();
        let rank: usize = stable.iter().map(RatMatrix::rank).sum();
        if rank == 0 || rank == total {
            continue;
        }
        let ker_bases: Vec<RatMatrix> = stable
            .iter()
            .zip(m.dims())
            .map(|(f, &d)| RatMatrix::from_columns(d, &kernel_basis(f)))
            .collect();
        let im_bases: Vec<RatMatrix> = stable
            .iter()
            .map(|f| f.select_columns(&column_basis(f)))
            .collect();
        let ker = m.subrepresentation(&ker_bases)?;
        let im = m.subrepresentation(&im_bases)?;
        let ker_inc = inc.iter().zip(&ker_bases).map(|(a, b)| a * b).collect();
        let im_inc = inc.iter().zip(&im_bases).map(|(a, b)| a * b).collect();
        let mut out = split(&ker, ker_inc)?;
        out.extend(split(&im, im_inc)?);
        return Ok(out);
    }
    Err(Error::NonBrick {
        dims: m.dims().to_vec(),
        end_dim: end.dim(),
    })
}

fn split_semisimple(m: &Representation, inc: &[RatMatrix]) -> Vec<(Representation, Vec<RatMatrix>)> {
    let q = m.quiver();
    let mut out = Vec::new();
    for (v, &d) in m.dims().iter().enumerate() {
        for k in 0..d {
            let s = super::simple_rep(q, v + 1).expect("vertex in range");
            let piece_inc = inc
                .iter()
                .enumerate()
                .map(|(w, a)| {
                    if w == v {
                        a.select_columns(&[k])
                    } else {
                        RatMatrix::zeros(a.rows(), 0)
                    }
                })
                .collect();
            out.push((s, piece_inc));
        }
    }
    out
}

/// Basis elements, then `b - c·id`, then pairwise combinations with
/// coefficients in `{-2, ..., 2}`.
fn candidates<'a>(
    m: &'a Representation,
    basis: &'a [Morphism],
) -> impl Iterator<Item = Morphism> + 'a {
    let id = Morphism::identity(m);
    let singles = basis.iter().cloned();
    let id2 = id.clone();
    let shifted = basis.iter().flat_map(move |b| {
        let id = id2.clone();
        [1i64, -1, 2, -2]
            .into_iter()
            .map(move |c| Morphism::linear_combination(&[(int(1), b), (int(-c), &id)]))
    });
    let pairs = (0..basis.len()).flat_map(move |j| {
        (j + 1..basis.len()).flat_map(move |k| {
            (-2i64..=2).flat_map(move |x| {
                (-2i64..=2).filter_map(move |y| {
                    (x != 0 && y != 0).then(|| {
                        Morphism::linear_combination(&[(int(x), &basis[j]), (int(y), &basis[k])])
                    })
                })
            })
        })
    });
    singles.chain(shifted).chain(pairs)
}

use num_traits::Zero;

use super::Representation;
use crate::error::{Error, Result};
use crate::exactla::{complement_standard, kernel_basis, solve_linear, RatMatrix, Rational, Vector};

/// A morphism of representations: one matrix per vertex, `f[v]` of shape
/// `target.dims[v] x source.dims[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism(pub Vec<RatMatrix>);

impl Morphism {
    pub fn zero(source: &Representation, target: &Representation) -> Self {
        Morphism(
            source
                .dims()
                .iter()
                .zip(target.dims())
                .map(|(&m, &n)| RatMatrix::zeros(n, m))
                .collect(),
        )
    }

    pub fn identity(m: &Representation) -> Self {
        Morphism(m.dims().iter().map(|&d| RatMatrix::identity(d)).collect())
    }

    pub fn components(&self) -> &[RatMatrix] {
        &self.0
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Morphism) -> Morphism {
        Morphism(self.0.iter().zip(&rhs.0).map(|(a, b)| a * b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(RatMatrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(RatMatrix::rank).sum()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.0.iter().all(RatMatrix::is_invertible)
    }

    pub fn linear_combination(terms: &[(Rational, &Morphism)]) -> Morphism {
        let (first_k, first) = &terms[0];
        let mut acc = Morphism(first.0.iter().map(|m| m.scale(first_k)).collect());
        for (k, f) in &terms[1..] {
            for (a, b) in acc.0.iter_mut().zip(&f.0) {
                *a = &*a + &b.scale(k);
            }
        }
        acc
    }

    /// Checks the intertwining equations `f_t M_a = N_a f_s`.
    pub fn is_homomorphism(&self, source: &Representation, target: &Representation) -> bool {
        source
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(k, &(s, t))| &self.0[t - 1] * source.map(k) == target.map(k) * &self.0[s - 1])
    }

    /// The map `M -> N^{⊕d}` with components `fs` stacked vertically.
    pub fn stack(fs: &[Morphism]) -> Morphism {
        let n = fs[0].0.len();
        Morphism(
            (0..n)
                .map(|v| {
                    fs[1..]
                        .iter()
                        .fold(fs[0].0[v].clone(), |acc, f| acc.vstack(&f.0[v]))
                })
                .collect(),
        )
    }

    /// The map `M^{⊕d} -> N` with components `fs` side by side.
    pub fn concat(fs: &[Morphism]) -> Morphism {
        let n = fs[0].0.len();
        Morphism(
            (0..n)
                .map(|v| {
                    fs[1..]
                        .iter()
                        .fold(fs[0].0[v].clone(), |acc, f| acc.hstack(&f.0[v]))
                })
                .collect(),
        )
    }
}

/// `Hom(M, N)` with an explicit basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Offsets of the per-vertex blocks inside `⊕_v Hom(M_v, N_v)`.
fn c0_offsets(m: &Representation, n: &Representation) -> Vec<usize> {
    let mut off = Vec::with_capacity(m.dims().len() + 1);
    let mut acc = 0;
    off.push(0);
    for (a, b) in m.dims().iter().zip(n.dims()) {
        acc += a * b;
        off.push(acc);
    }
    off
}

/// Offsets of the per-arrow blocks inside `⊕_{a: s->t} Hom(M_s, N_t)`.
fn c1_offsets(m: &Representation, n: &Representation) -> Vec<usize> {
    let mut off = vec![0];
    let mut acc = 0;
    for &(s, t) in m.quiver().arrows() {
        acc += m.dims()[s - 1] * n.dims()[t - 1];
        off.push(acc);
    }
    off
}

/// The differential `Hom(P_0, N) -> Hom(P_1, N)` of the standard resolution
/// `0 -> ⊕_{a: s->t} P_t ⊗ M_s -> ⊕_v P_v ⊗ M_v -> M -> 0`, written in the
/// coordinates `Hom(P_v ⊗ M_v, N) = Hom(M_v, N_v)`:
/// `(f_v) ↦ (N_a f_s - f_t M_a)_a`. Its kernel is `Hom(M, N)` and its
/// cokernel is `Ext¹(M, N)`.
fn coboundary(m: &Representation, n: &Representation) -> RatMatrix {
    let md = m.dims();
    let nd = n.dims();
    let c0 = c0_offsets(m, n);
    let c1 = c1_offsets(m, n);
    let mut d = RatMatrix::zeros(*c1.last().unwrap(), *c0.last().unwrap());
    for (k, &(s, t)) in m.quiver().arrows().iter().enumerate() {
        let (s, t) = (s - 1, t - 1);
        let ma = m.map(k);
        let na = n.map(k);
        for r in 0..nd[t] {
            for c in 0..md[s] {
                let row = c1[k] + r * md[s] + c;
                // + N_a[r, j] f_s[j, c]
                for j in 0..nd[s] {
                    let x = &na[(r, j)];
                    if !x.is_zero() {
                        d[(row, c0[s] + j * md[s] + c)] += x;
                    }
                }
                // - f_t[r, j] M_a[j, c]
                for j in 0..md[t] {
                    let x = &ma[(j, c)];
                    if !x.is_zero() {
                        d[(row, c0[t] + r * md[t] + j)] -= x;
                    }
                }
            }
        }
    }
    d
}

fn unflatten_c0(m: &Representation, n: &Representation, v: &[Rational]) -> Morphism {
    let off = c0_offsets(m, n);
    Morphism(
        m.dims()
            .iter()
            .zip(n.dims())
            .enumerate()
            .map(|(i, (&mi, &ni))| {
                RatMatrix::from_vec(ni, mi, v[off[i]..off[i + 1]].to_vec()).expect("block size")
            })
            .collect(),
    )
}

pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    m.same_quiver(n)?;
    let d = coboundary(m, n);
    let basis = kernel_basis(&d)
        .iter()
        .map(|v| unflatten_c0(m, n, v))
        .collect();
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
    })
}

/// An element of `Ext¹(M, N)`, represented by a cocycle in
/// `Hom(P_1, N) = ⊕_{a: s->t} Hom(M_s, N_t)`, one matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    pub source: Representation,
    pub target: Representation,
    pub cocycle: Vec<RatMatrix>,
}

impl ExtClass {
    fn flatten(&self) -> Vector {
        self.cocycle
            .iter()
            .flat_map(|g| g.entries().iter().cloned())
            .collect()
    }

    /// Whether the class vanishes, i.e. the cocycle is a coboundary.
    pub fn is_zero(&self) -> bool {
        let d = coboundary(&self.source, &self.target);
        solve_linear(&d, &self.flatten())
            .expect("cocycle length")
            .is_some()
    }

    /// The class of `M -> N^{⊕d}[1]` with the given components.
    pub fn stack_targets(classes: &[ExtClass]) -> ExtClass {
        let target = classes
            .iter()
            .skip(1)
            .fold(classes[0].target.clone(), |acc, c| {
                acc.direct_sum(&c.target).expect("same quiver")
            });
        let cocycle = (0..classes[0].cocycle.len())
            .map(|k| {
                classes[1..]
                    .iter()
                    .fold(classes[0].cocycle[k].clone(), |acc, c| acc.vstack(&c.cocycle[k]))
            })
            .collect();
        ExtClass {
            source: classes[0].source.clone(),
            target,
            cocycle,
        }
    }

    /// The class of `M^{⊕d} -> N[1]` with the given components.
    pub fn concat_sources(classes: &[ExtClass]) -> ExtClass {
        let source = classes
            .iter()
            .skip(1)
            .fold(classes[0].source.clone(), |acc, c| {
                acc.direct_sum(&c.source).expect("same quiver")
            });
        let cocycle = (0..classes[0].cocycle.len())
            .map(|k| {
                classes[1..]
                    .iter()
                    .fold(classes[0].cocycle[k].clone(), |acc, c| acc.hstack(&c.cocycle[k]))
            })
            .collect();
        ExtClass {
            source,
            target: classes[0].target.clone(),
            cocycle,
        }
    }
}

/// `Ext¹(M, N)`: its dimension and a basis of cocycles modulo coboundaries.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub dim: usize,
    pub basis: Vec<ExtClass>,
}

pub fn ext_space(m: &Representation, n: &Representation) -> Result<ExtSpace> {
    m.same_quiver(n)?;
    let d = coboundary(m, n);
    let off = c1_offsets(m, n);
    let md = m.dims();
    let nd = n.dims();
    let basis: Vec<ExtClass> = complement_standard(&d)
        .into_iter()
        .map(|pos| {
            let cocycle = m
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .map(|(k, &(s, t))| {
                    let mut g = RatMatrix::zeros(nd[t - 1], md[s - 1]);
                    if (off[k]..off[k + 1]).contains(&pos) {
                        let local = pos - off[k];
                        g[(local / md[s - 1], local % md[s - 1])] = Rational::from_integer(1.into());
                    }
                    g
                })
                .collect();
            ExtClass {
                source: m.clone(),
                target: n.clone(),
                cocycle,
            }
        })
        .collect();
    Ok(ExtSpace {
        dim: basis.len(),
        basis,
    })
}

/// Middle term `X` of `0 -> N -> X -> M -> 0` with class `e`: the pushout of
/// the resolution along the cocycle, which in block form is
/// `X_v = N_v ⊕ M_v`, `X_a = [[N_a, g_a], [0, M_a]]`.
pub fn extension_middle_term(e: &ExtClass) -> Result<Representation> {
    if e.is_zero() {
        return Err(Error::ZeroExtClass);
    }
    Ok(extension_block(e))
}

/// The block-form middle term without the non-split check (the split
/// extension for a zero class).
pub(crate) fn extension_block(e: &ExtClass) -> Representation {
    let (m, n) = (&e.source, &e.target);
    let dims: Vec<usize> = m.dims().iter().zip(n.dims()).map(|(a, b)| a + b).collect();
    let maps = m
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| {
            let (ms, mt) = (m.dims()[s - 1], m.dims()[t - 1]);
            let (ns, nt) = (n.dims()[s - 1], n.dims()[t - 1]);
            let mut x = RatMatrix::zeros(nt + mt, ns + ms);
            x.set_block(0, 0, n.map(k));
            x.set_block(0, ns, &e.cocycle[k]);
            x.set_block(nt, ns, m.map(k));
            x
        })
        .collect();
    Representation::new(m.quiver().clone(), dims, maps).expect("block extension shapes")
}

/// Kernel of `f: M -> N` with its inclusion into `M`.
pub fn kernel(m: &Representation, f: &Morphism) -> Result<(Representation, Vec<RatMatrix>)> {
    let bases: Vec<RatMatrix> = f
        .0
        .iter()
        .zip(m.dims())
        .map(|(fv, &d)| RatMatrix::from_columns(d, &kernel_basis(fv)))
        .collect();
    Ok((m.subrepresentation(&bases)?, bases))
}

/// Cokernel of `f: M -> N`.
pub fn cokernel(n: &Representation, f: &Morphism) -> Result<Representation> {
    let bases: Vec<RatMatrix> = f
        .0
        .iter()
        .map(|fv| fv.select_columns(&crate::exactla::column_basis(fv)))
        .collect();
    Ok(n.quotient(&bases)?.0)
}

/// Image of `f: M -> N` as a subrepresentation of `N`.
pub fn image(n: &Representation, f: &Morphism) -> Result<(Representation, Vec<RatMatrix>)> {
    let bases: Vec<RatMatrix> = f
        .0
        .iter()
        .map(|fv| fv.select_columns(&crate::exactla::column_basis(fv)))
        .collect();
    Ok((n.subrepresentation(&bases)?, bases))
}

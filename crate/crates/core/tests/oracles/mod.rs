//! Brute-force reference computations used by integration and acceptance
//! tests. Nothing here calls into the tilting or exploration code.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use sigmatilt::exactla::{RatMatrix, Rational};
use sigmatilt::quiver::Quiver;
use sigmatilt::rep::{
    decompose, ext_space, extension_middle_term, hom_space, indecomposable_closure, IndecRegistry,
};
use sigmatilt::Representation;

/// `Σ_v a_v b_v - Σ_{s->t} a_s b_t`, straight from the arrow list.
pub fn euler_pair(q: &Quiver, a: &[usize], b: &[usize]) -> i64 {
    let diag: i64 = a.iter().zip(b).map(|(&x, &y)| (x * y) as i64).sum();
    let arrows: i64 = q.arrows().iter().map(|&(s, t)| (a[s - 1] * b[t - 1]) as i64).sum();
    diag - arrows
}

/// Representation with dimensions in `0..=max_dim` and integer entries in
/// `-2..=2`.
pub fn random_rep(q: &Arc<Quiver>, rng: &mut impl Rng, max_dim: usize) -> Representation {
    let dims: Vec<usize> = (0..q.mu()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            let (r, c) = (dims[t - 1], dims[s - 1]);
            let data = (0..r * c)
                .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-2i64..=2))))
                .collect();
            RatMatrix::from_vec(r, c, data).unwrap()
        })
        .collect();
    Representation::new(q.clone(), dims, maps).unwrap()
}

/// `(dim Hom, dim Ext¹)` from the two-term projective resolution
/// `0 -> ⊕_a P_t ⊗ M_s -> ⊕_v P_v ⊗ M_v -> M -> 0`: after `Hom(-, N)` the
/// differential sends `(f_v)` to `(N_a f_s - f_t M_a)_a`.
pub fn hom_ext_by_resolution(m: &Representation, n: &Representation) -> (usize, usize) {
    let q = m.quiver();
    let (md, nd) = (m.dims(), n.dims());
    let c0: usize = (0..q.mu()).map(|v| md[v] * nd[v]).sum();
    let c1: usize = q.arrows().iter().map(|&(s, t)| md[s - 1] * nd[t - 1]).sum();
    let mut d = RatMatrix::zeros(c1, c0);
    let mut col = 0;
    for v in 1..=q.mu() {
        for i in 0..nd[v - 1] {
            for j in 0..md[v - 1] {
                // Elementary f_v = E_{ij}.
                let mut row = 0;
                for (k, &(s, t)) in q.arrows().iter().enumerate() {
                    let (rows, cols) = (nd[t - 1], md[s - 1]);
                    if s == v {
                        let na = n.map(k);
                        for r in 0..rows {
                            let e = &d[(row + r * cols + j, col)] + &na[(r, i)];
                            d[(row + r * cols + j, col)] = e;
                        }
                    }
                    if t == v {
                        let ma = m.map(k);
                        for c in 0..cols {
                            let e = &d[(row + i * cols + c, col)] - &ma[(j, c)];
                            d[(row + i * cols + c, col)] = e;
                        }
                    }
                    row += rows * cols;
                }
                col += 1;
            }
        }
    }
    let rank = d.rank();
    (c0 - rank, c1 - rank)
}

/// Positive roots of the Tits form with entries at most `bound`.
pub fn positive_roots(q: &Quiver, bound: usize) -> Vec<Vec<usize>> {
    let n = q.mu();
    let mut out = Vec::new();
    let mut x = vec![0usize; n];
    loop {
        let mut k = 0;
        while k < n && x[k] == bound {
            x[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        x[k] += 1;
        if euler_pair(q, &x, &x) == 1 {
            out.push(x.clone());
        }
    }
    out.sort();
    out
}

/// Number of torsion classes of a representation-finite quiver: subsets
/// of the indecomposables closed under quotients of finite sums and under
/// extensions of pairs.
pub fn torsion_class_count(q: &Arc<Quiver>) -> usize {
    let reg = IndecRegistry::new(q.clone());
    let ids = indecomposable_closure(&reg, usize::MAX).unwrap();
    let reps: Vec<Arc<Representation>> = ids.iter().map(|&id| reg.rep(id)).collect();
    let n = reps.len();
    assert!(n <= 20, "too many indecomposables for subset enumeration");
    // `image_span[x][y]`: per-vertex column spans of all maps x -> y.
    let images: Vec<Vec<Vec<RatMatrix>>> = reps
        .iter()
        .map(|x| {
            reps.iter()
                .map(|y| {
                    let hom = hom_space(x, y).unwrap();
                    (0..q.mu())
                        .map(|v| {
                            let mut acc = RatMatrix::zeros(y.dims()[v], 0);
                            for f in &hom.basis {
                                acc = acc.hstack(&f.components()[v]);
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    // `ext_summands[x][y]`: indecomposables in middle terms of 0 -> y -> E -> x -> 0.
    let ext_summands: Vec<Vec<Vec<usize>>> = reps
        .iter()
        .map(|x| {
            reps.iter()
                .map(|y| {
                    let ext = ext_space(x, y).unwrap();
                    let mut out = Vec::new();
                    for class in &ext.basis {
                        let e = extension_middle_term(class).unwrap();
                        for (id, _) in decompose(&e, &reg).unwrap().summands {
                            let k = ids.iter().position(|&x| x == id).unwrap();
                            if !out.contains(&k) {
                                out.push(k);
                            }
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();
    let mut count = 0;
    for mask in 0u32..(1 << n) {
        let inside = |k: usize| mask >> k & 1 == 1;
        let quotient_closed = (0..n).filter(|&y| !inside(y)).all(|y| {
            // y lies in Fac(T) iff the images of all maps from T cover it.
            (0..q.mu()).any(|v| {
                let mut acc = RatMatrix::zeros(reps[y].dims()[v], 0);
                for x in (0..n).filter(|&x| inside(x)) {
                    acc = acc.hstack(&images[x][y][v]);
                }
                acc.rank() < reps[y].dims()[v]
            })
        });
        let ext_closed = (0..n)
            .filter(|&x| inside(x))
            .all(|x| (0..n).filter(|&y| inside(y)).all(|y| ext_summands[x][y].iter().all(|&k| inside(k))));
        if quotient_closed && ext_closed {
            count += 1;
        }
    }
    count
}

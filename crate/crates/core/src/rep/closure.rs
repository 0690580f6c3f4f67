use std::collections::BTreeSet;

use super::hom::{ext_space, extension_block, ExtClass};
use super::registry::{IndecId, IndecRegistry};
use super::{decompose, simple_rep};
use crate::error::{Error, Result};

/// Indecomposables reachable from the simples by taking middle terms of
/// extensions between already found ones and splitting them. For each pair
/// the basis classes of Ext¹ and their sum are used. Modules of total
/// dimension above `max_total_dim` are not pursued, which keeps the search
/// finite for quivers of infinite type.
pub fn indecomposable_closure(registry: &IndecRegistry, max_total_dim: usize) -> Result<Vec<IndecId>> {
    let q = registry.quiver().clone();
    let mut found: Vec<IndecId> = Vec::new();
    let mut seen: BTreeSet<IndecId> = BTreeSet::new();
    for i in 1..=q.mu() {
        let id = registry.register(&simple_rep(&q, i)?)?;
        if seen.insert(id) {
            found.push(id);
        }
    }
    let mut done = 0;
    while done < found.len() {
        let new = found[done];
        done += 1;
        let partners: Vec<IndecId> = found[..done].to_vec();
        for other in partners {
            for (m, n) in [(new, other), (other, new)] {
                let (mr, nr) = (registry.rep(m), registry.rep(n));
                if mr.total_dim() + nr.total_dim() > max_total_dim {
                    continue;
                }
                let ext = ext_space(&mr, &nr)?;
                let mut classes: Vec<ExtClass> = ext.basis.clone();
                if ext.dim > 1 {
                    let mut sum = ext.basis[0].clone();
                    for c in &ext.basis[1..] {
                        for (a, b) in sum.cocycle.iter_mut().zip(&c.cocycle) {
                            *a = &*a + b;
                        }
                    }
                    classes.push(sum);
                }
                for class in classes {
                    let middle = extension_block(&class);
                    let parts = match decompose(&middle, registry) {
                        Ok(d) => d.summands,
                        // Non-brick summands (regular tubes) are out of scope for the registry.
                        Err(Error::NonBrick { .. }) => continue,
                        Err(e) => return Err(e),
                    };
                    for (id, _) in parts {
                        if seen.insert(id) {
                            found.push(id);
                        }
                    }
                }
            }
        }
    }
    Ok(found)
}

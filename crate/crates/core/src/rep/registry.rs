use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::hom::{hom_space, Morphism};
use super::Representation;
use crate::error::{Error, Result};
use crate::exactla::int;
use crate::quiver::{classify_type, Quiver};

/// Identifier of a registered indecomposable; only meaningful for the
/// registry that issued it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndecId(pub u32);

/// Canonical, registry-order independent name of an indecomposable: its
/// dimension vector, plus a variant number when several non-isomorphic
/// indecomposables share that dimension vector (never for Dynkin quivers).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndecKey {
    pub dims: Vec<usize>,
    pub variant: u32,
}

impl fmt::Display for IndecKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))?;
        if self.variant > 0 {
            write!(f, "#{}", self.variant)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for IndecKey {
    type Err = Error;

    /// Parses `1,1,0` or `1,1,0#2`.
    fn from_str(text: &str) -> Result<IndecKey> {
        let bad = || Error::Parse(format!("indecomposable key {text:?}"));
        let (dims, variant) = match text.split_once('#') {
            Some((d, v)) => (d, v.parse().map_err(|_| bad())?),
            None => (text, 0),
        };
        let dims = dims
            .split(',')
            .map(|d| d.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Ok(IndecKey { dims, variant })
    }
}

#[derive(Default)]
struct Inner {
    entries: Vec<(Arc<Representation>, IndecKey)>,
    by_dims: HashMap<Vec<usize>, Vec<IndecId>>,
}

/// Table of pairwise non-isomorphic indecomposable bricks.
///
/// For Dynkin quivers the dimension vector identifies the isomorphism class;
/// otherwise new entries are compared against existing ones with the same
/// dimension vector. Readers run concurrently, insertion is serialized and
/// re-checks for a racing duplicate.
pub struct IndecRegistry {
    quiver: Arc<Quiver>,
    dims_are_keys: bool,
    inner: RwLock<Inner>,
}

impl fmt::Debug for IndecRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndecRegistry")
            .field("quiver", &self.quiver)
            .field("len", &self.len())
            .finish()
    }
}

impl IndecRegistry {
    pub fn new(quiver: Arc<Quiver>) -> Self {
        let dims_are_keys = classify_type(&quiver).is_dynkin();
        IndecRegistry {
            quiver,
            dims_are_keys,
            inner: RwLock::new(Inner::default()),
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rep(&self, id: IndecId) -> Arc<Representation> {
        self.inner.read().unwrap().entries[id.0 as usize].0.clone()
    }

    pub fn key(&self, id: IndecId) -> IndecKey {
        self.inner.read().unwrap().entries[id.0 as usize].1.clone()
    }

    pub fn ids(&self) -> Vec<IndecId> {
        (0..self.len() as u32).map(IndecId).collect()
    }

    /// Finds a registered id by canonical key.
    pub fn find_key(&self, key: &IndecKey) -> Option<IndecId> {
        let inner = self.inner.read().unwrap();
        inner
            .by_dims
            .get(&key.dims)?
            .iter()
            .copied()
            .find(|id| inner.entries[id.0 as usize].1 == *key)
    }

    fn lookup(&self, inner: &Inner, m: &Representation) -> Result<Option<IndecId>> {
        let Some(cands) = inner.by_dims.get(m.dims()) else {
            return Ok(None);
        };
        if self.dims_are_keys {
            return Ok(cands.first().copied());
        }
        for &id in cands {
            if bricks_isomorphic(&inner.entries[id.0 as usize].0, m)? {
                return Ok(Some(id));
            }
        }
        Ok(None)
    }

    /// Id of an indecomposable, registering it if new. Fails if `m` is not
    /// a brick (endomorphism space of dimension other than 1).
    pub fn register(&self, m: &Representation) -> Result<IndecId> {
        m.same_quiver(&Representation::zero(self.quiver.clone()))?;
        {
            let inner = self.inner.read().unwrap();
            if let Some(id) = self.lookup(&inner, m)? {
                return Ok(id);
            }
        }
        let end_dim = hom_space(m, m)?.dim();
        if end_dim != 1 {
            return Err(Error::NonBrick {
                dims: m.dims().to_vec(),
                end_dim,
            });
        }
        let mut inner = self.inner.write().unwrap();
        if let Some(id) = self.lookup(&inner, m)? {
            return Ok(id);
        }
        let id = IndecId(inner.entries.len() as u32);
        let variant = inner.by_dims.get(m.dims()).map_or(0, Vec::len) as u32;
        inner.by_dims.entry(m.dims().to_vec()).or_default().push(id);
        inner.entries.push((
            Arc::new(m.clone()),
            IndecKey {
                dims: m.dims().to_vec(),
                variant,
            },
        ));
        Ok(id)
    }
}

/// Isomorphism test for two bricks with equal dimension vectors: look for
/// an invertible element among deterministic combinations of a Hom basis.
fn bricks_isomorphic(a: &Representation, b: &Representation) -> Result<bool> {
    let hom = hom_space(a, b)?;
    if hom.dim() == 0 {
        return Ok(false);
    }
    if hom.basis.iter().any(Morphism::is_isomorphism) {
        return Ok(true);
    }
    for base in 2..6i64 {
        let mut coeff = 1i64;
        let terms: Vec<_> = hom
            .basis
            .iter()
            .map(|f| {
                let c = int(coeff);
                coeff *= base;
                (c, f)
            })
            .collect();
        if Morphism::linear_combination(&terms).is_isomorphism() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::RatMatrix;
    use crate::quiver::catalog;
    use crate::rep::{projective_rep, simple_rep};

    #[test]
    fn key_round_trip() {
        for text in ["1,1,0", "2,3#1"] {
            assert_eq!(text.parse::<IndecKey>().unwrap().to_string(), text);
        }
        assert!("1,x".parse::<IndecKey>().is_err());
    }

    #[test]
    fn dynkin_keys_are_dimension_vectors() {
        let q = Arc::new(catalog::linear_a(2));
        let reg = IndecRegistry::new(q.clone());
        let s1 = simple_rep(&q, 1).unwrap();
        let id = reg.register(&s1).unwrap();
        assert_eq!(reg.register(&s1).unwrap(), id);
        assert_eq!(reg.key(id).to_string(), "1,0");
        assert_eq!(reg.find_key(&reg.key(id)), Some(id));
        assert_eq!(
            reg.register(&s1.power(2)),
            Err(Error::NonBrick {
                dims: vec![2, 0],
                end_dim: 4
            })
        );
    }

    #[test]
    fn kronecker_regulars_get_variants() {
        let q = Arc::new(Quiver::new(2, [(1, 2), (1, 2)]).unwrap());
        let reg = IndecRegistry::new(q.clone());
        let reg_at = |x: i64, y: i64| {
            Representation::new(
                q.clone(),
                vec![1, 1],
                vec![
                    RatMatrix::from_int_rows(&[vec![x]]),
                    RatMatrix::from_int_rows(&[vec![y]]),
                ],
            )
            .unwrap()
        };
        let a = reg.register(&reg_at(1, 0)).unwrap();
        let b = reg.register(&reg_at(0, 1)).unwrap();
        let c = reg.register(&reg_at(2, 0)).unwrap();
        assert_ne!(a, b);
        assert_eq!(a, c);
        assert_eq!(reg.key(b).to_string(), "1,1#1");
        let p1 = projective_rep(&q, 1).unwrap();
        assert_eq!(p1.dims(), &[1, 2]);
        reg.register(&p1).unwrap();
        assert_eq!(reg.len(), 3);
    }
}

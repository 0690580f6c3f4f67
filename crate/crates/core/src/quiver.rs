//! Quivers with ordered vertices, conditions (A1)/(A2), the Euler form and
//! Dynkin classification.
//!
//! Vertices are labelled `1..=mu` and every arrow goes from a smaller to a
//! larger label, so acyclicity is structural. The label order is part of the
//! input: the collection order and the tilt pivots depend on it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite acyclic quiver with arrows stored as a sorted multiset of
/// `(source, target)` pairs, `1 <= source < target <= mu`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    mu: usize,
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverFile {
    mu: usize,
    arrows: Vec<[usize; 2]>,
}

impl Quiver {
    pub fn new(mu: usize, arrows: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if mu == 0 {
            return Err(Error::Parse("mu must be at least 1".into()));
        }
        let mut arrows: Vec<_> = arrows.into_iter().collect();
        for &(s, t) in &arrows {
            for v in [s, t] {
                if v == 0 || v > mu {
                    return Err(Error::VertexOutOfRange { vertex: v, mu });
                }
            }
            if s >= t {
                return Err(Error::OrderingViolation {
                    tail: s,
                    head: t,
                });
            }
        }
        arrows.sort_unstable();
        Ok(Quiver { mu, arrows })
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    /// Arrows in sorted order; representation maps are indexed by position here.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_count(&self, source: usize, target: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&a| a == (source, target))
            .count()
    }

    /// Position of arrow `k` among the parallel arrows with the same ends.
    pub fn parallel_index(&self, arrow: usize) -> usize {
        let a = self.arrows[arrow];
        self.arrows[..arrow].iter().filter(|&&b| b == a).count()
    }

    pub fn to_json(&self) -> String {
        let file = QuiverFile {
            mu: self.mu,
            arrows: self.arrows.iter().map(|&(s, t)| [s, t]).collect(),
        };
        serde_json::to_string(&file).expect("quiver serialization")
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// Parses the quiver file format `{"mu": n, "arrows": [[s,t], ...]}`.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let file: QuiverFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("quiver file: {e}")))?;
    Quiver::new(file.mu, file.arrows.into_iter().map(|[s, t]| (s, t)))
}

/// (A1): at most one arrow between any ordered pair of vertices.
pub fn check_a1(q: &Quiver) -> bool {
    a1_witness(q).is_none()
}

/// First pair with more than one arrow, with its multiplicity.
pub fn a1_witness(q: &Quiver) -> Option<(usize, usize, usize)> {
    let mut counts = BTreeMap::new();
    for &a in q.arrows() {
        *counts.entry(a).or_insert(0usize) += 1;
    }
    counts
        .into_iter()
        .find(|&(_, c)| c > 1)
        .map(|((s, t), c)| (s, t, c))
}

/// (A2): no arrow `k -> l` whenever `k -> i -> l` with `k < i < l`.
pub fn check_a2(q: &Quiver) -> bool {
    a2_witness(q).is_none()
}

/// First triple `(k, i, l)` violating (A2), lexicographically.
pub fn a2_witness(q: &Quiver) -> Option<(usize, usize, usize)> {
    let n = q.mu();
    for k in 1..=n {
        for i in k + 1..=n {
            for l in i + 1..=n {
                if q.arrow_count(k, i) > 0 && q.arrow_count(i, l) > 0 && q.arrow_count(k, l) > 0 {
                    return Some((k, i, l));
                }
            }
        }
    }
    None
}

/// Both conditions, as an error carrying the witness.
pub fn check_gates(q: &Quiver) -> Result<()> {
    if let Some((tail, head, count)) = a1_witness(q) {
        return Err(Error::A1Violated {
            tail,
            head,
            count,
        });
    }
    if let Some((k, i, l)) = a2_witness(q) {
        return Err(Error::A2Violated { k, i, l });
    }
    Ok(())
}

/// Euler form on dimension vectors: `<e_i, e_j> = delta_ij - #arrows(i -> j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerForm {
    matrix: Vec<Vec<i64>>,
}

impl EulerForm {
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                s += ai * self.matrix[i][j] * bj;
            }
        }
        s
    }
}

pub fn euler_form(q: &Quiver) -> EulerForm {
    let n = q.mu();
    let mut matrix = vec![vec![0i64; n]; n];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(s, t) in q.arrows() {
        matrix[s - 1][t - 1] -= 1;
    }
    EulerForm { matrix }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynkinDiagram {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinDiagram::A(n) => write!(f, "A{n}"),
            DynkinDiagram::D(n) => write!(f, "D{n}"),
            DynkinDiagram::E6 => write!(f, "E6"),
            DynkinDiagram::E7 => write!(f, "E7"),
            DynkinDiagram::E8 => write!(f, "E8"),
        }
    }
}

/// Type of the underlying undirected multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverType {
    /// Every connected component is a Dynkin diagram (sorted list of components).
    Dynkin(Vec<DynkinDiagram>),
    /// Connected extended Dynkin diagram, e.g. `"A~2"`, `"D~4"`, `"E~6"`.
    ExtendedDynkin(String),
    Other,
}

impl QuiverType {
    pub fn is_dynkin(&self) -> bool {
        matches!(self, QuiverType::Dynkin(_))
    }
}

impl fmt::Display for QuiverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverType::Dynkin(parts) => {
                let names: Vec<_> = parts.iter().map(ToString::to_string).collect();
                write!(f, "{}", names.join("+"))
            }
            QuiverType::ExtendedDynkin(name) => write!(f, "{name}"),
            QuiverType::Other => write!(f, "other"),
        }
    }
}

enum ComponentType {
    Dynkin(DynkinDiagram),
    Extended(String),
    Other,
}

pub fn classify_type(q: &Quiver) -> QuiverType {
    let n = q.mu();
    // undirected edge multiplicities
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(s, t) in q.arrows() {
        *mult.entry((s, t)).or_insert(0) += 1;
    }
    let mut adj = vec![Vec::new(); n + 1];
    for &(s, t) in mult.keys() {
        adj[s].push(t);
        adj[t].push(s);
    }
    let mut seen = vec![false; n + 1];
    let mut parts = Vec::new();
    let mut components = 0;
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            for &w in &adj[comp[k]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        let edges: Vec<_> = mult
            .iter()
            .filter(|((s, _), _)| comp.binary_search(s).is_ok())
            .map(|(&e, &m)| (e, m))
            .collect();
        parts.push(classify_component(&comp, &edges, &adj));
    }
    if parts.iter().all(|p| matches!(p, ComponentType::Dynkin(_))) {
        let mut ds: Vec<_> = parts
            .into_iter()
            .map(|p| match p {
                ComponentType::Dynkin(d) => d,
                _ => unreachable!(),
            })
            .collect();
        ds.sort();
        return QuiverType::Dynkin(ds);
    }
    if components == 1 {
        if let Some(ComponentType::Extended(name)) = parts.pop() {
            return QuiverType::ExtendedDynkin(name);
        }
    }
    QuiverType::Other
}

fn classify_component(
    comp: &[usize],
    edges: &[((usize, usize), usize)],
    adj: &[Vec<usize>],
) -> ComponentType {
    let n = comp.len();
    if edges.iter().any(|&(_, m)| m > 1) {
        if n == 2 && edges.len() == 1 && edges[0].1 == 2 {
            return ComponentType::Extended("A~1".into());
        }
        return ComponentType::Other;
    }
    let degree = |v: usize| adj[v].len();
    if edges.len() == n {
        // a single cycle
        if comp.iter().all(|&v| degree(v) == 2) {
            return ComponentType::Extended(format!("A~{}", n - 1));
        }
        return ComponentType::Other;
    }
    if edges.len() != n - 1 {
        return ComponentType::Other;
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) >= 3).collect();
    match branch.len() {
        0 => ComponentType::Dynkin(DynkinDiagram::A(n)),
        1 => {
            let c = branch[0];
            if degree(c) == 4 {
                if n == 5 {
                    return ComponentType::Extended("D~4".into());
                }
                return ComponentType::Other;
            }
            if degree(c) > 4 {
                return ComponentType::Other;
            }
            let mut arms: Vec<usize> = adj[c].iter().map(|&w| arm_length(adj, c, w)).collect();
            arms.sort_unstable();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, c) => ComponentType::Dynkin(DynkinDiagram::D(c + 3)),
                (1, 2, 2) => ComponentType::Dynkin(DynkinDiagram::E6),
                (1, 2, 3) => ComponentType::Dynkin(DynkinDiagram::E7),
                (1, 2, 4) => ComponentType::Dynkin(DynkinDiagram::E8),
                (2, 2, 2) => ComponentType::Extended("E~6".into()),
                (1, 3, 3) => ComponentType::Extended("E~7".into()),
                (1, 2, 5) => ComponentType::Extended("E~8".into()),
                _ => ComponentType::Other,
            }
        }
        2 => {
            let ok = branch.iter().all(|&b| {
                degree(b) == 3 && adj[b].iter().filter(|&&w| degree(w) == 1).count() == 2
            });
            if ok {
                ComponentType::Extended(format!("D~{}", n - 1))
            } else {
                ComponentType::Other
            }
        }
        _ => ComponentType::Other,
    }
}

/// Number of vertices on the arm leaving `center` through `first`.
fn arm_length(adj: &[Vec<usize>], center: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, first, 1);
    loop {
        if adj[cur].len() != 2 {
            return len;
        }
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
        len += 1;
    }
}

/// Named diagrams and their orientations.
pub mod catalog {
    use super::*;

    /// Undirected edges of a Dynkin diagram on vertices `1..=n`.
    pub fn dynkin_edges(d: DynkinDiagram) -> (usize, Vec<(usize, usize)>) {
        match d {
            DynkinDiagram::A(n) => (n, (1..n).map(|i| (i, i + 1)).collect()),
            DynkinDiagram::D(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                (n, e)
            }
            DynkinDiagram::E6 | DynkinDiagram::E7 | DynkinDiagram::E8 => {
                let n = match d {
                    DynkinDiagram::E6 => 6,
                    DynkinDiagram::E7 => 7,
                    _ => 8,
                };
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((3, n));
                (n, e)
            }
        }
    }

    /// Linearly oriented `A_n`: `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Quiver {
        Quiver::new(n, (1..n).map(|i| (i, i + 1))).expect("linear A_n")
    }

    /// `D_4` with central vertex 2: `1 -> 2 -> 3`, `2 -> 4`.
    pub fn d4() -> Quiver {
        Quiver::new(4, [(1, 2), (2, 3), (2, 4)]).expect("D4")
    }

    /// Every acyclic orientation of the undirected graph, relabelled by the
    /// smallest-label-first topological order so that arrows go up. Duplicates
    /// (equal relabelled quivers) are removed; the result is sorted.
    pub fn orientations(n: usize, edges: &[(usize, usize)]) -> Vec<Quiver> {
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << edges.len()) {
            let directed: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| if mask >> k & 1 == 0 { (a, b) } else { (b, a) })
                .collect();
            if let Some(order) = topological_order(n, &directed) {
                let mut label = vec![0; n + 1];
                for (pos, &v) in order.iter().enumerate() {
                    label[v] = pos + 1;
                }
                let arrows = directed.iter().map(|&(s, t)| (label[s], label[t]));
                out.push(Quiver::new(n, arrows).expect("relabelled orientation"));
            }
        }
        out.sort_by(|a, b| a.arrows().cmp(b.arrows()));
        out.dedup();
        out
    }

    pub fn dynkin_orientations(d: DynkinDiagram) -> Vec<Quiver> {
        let (n, e) = dynkin_edges(d);
        orientations(n, &e)
    }

    fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; n + 1];
        for &(_, t) in arrows {
            indeg[t] += 1;
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (1..=n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &(s, t) in arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.insert(t);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let a2 = parse_quiver(r#"{"mu":2,"arrows":[[1,2]]}"#).unwrap();
        assert_eq!(a2.arrows(), &[(1, 2)]);
        let d4 = parse_quiver(r#"{"mu":4,"arrows":[[1,2],[2,3],[2,4]]}"#).unwrap();
        assert_eq!(d4, catalog::d4());
        assert_eq!(
            parse_quiver(r#"{"mu":2,"arrows":[[2,1]]}"#),
            Err(Error::OrderingViolation {
                tail: 2,
                head: 1
            })
        );
        assert!(parse_quiver(r#"{"mu":2,"arrows":[[1,3]]}"#).is_err());
        assert!(parse_quiver("{").is_err());
    }

    #[test]
    fn a1_a2_examples() {
        assert!(check_a1(&linear_a(2)));
        let kronecker = Quiver::new(2, [(1, 2), (1, 2)]).unwrap();
        assert!(!check_a1(&kronecker));
        assert!(check_a1(&Quiver::new(3, []).unwrap()));
        assert!(check_a2(&linear_a(3)));
        let triangle = Quiver::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(!check_a2(&triangle));
        assert_eq!(
            check_gates(&triangle),
            Err(Error::A2Violated { k: 1, i: 2, l: 3 })
        );
        assert!(check_a2(&d4()));
    }

    #[test]
    fn euler_examples() {
        let e = euler_form(&linear_a(2));
        assert_eq!(e.matrix(), &[vec![1, -1], vec![0, 1]]);
        let e3 = euler_form(&Quiver::new(3, []).unwrap());
        assert_eq!(e3.matrix(), &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(e.pair(&[1, 1], &[1, 0]), 1);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_type(&linear_a(3)),
            QuiverType::Dynkin(vec![DynkinDiagram::A(3)])
        );
        assert_eq!(
            classify_type(&d4()),
            QuiverType::Dynkin(vec![DynkinDiagram::D(4)])
        );
        let triangle = Quiver::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(
            classify_type(&triangle),
            QuiverType::ExtendedDynkin("A~2".into())
        );
        let kronecker = Quiver::new(2, [(1, 2), (1, 2)]).unwrap();
        assert_eq!(
            classify_type(&kronecker),
            QuiverType::ExtendedDynkin("A~1".into())
        );
        for (d, name) in [
            (DynkinDiagram::E6, "E6"),
            (DynkinDiagram::E7, "E7"),
            (DynkinDiagram::E8, "E8"),
            (DynkinDiagram::D(6), "D6"),
        ] {
            for q in dynkin_orientations(d) {
                assert_eq!(classify_type(&q).to_string(), name);
            }
        }
        let d4_tilde = Quiver::new(5, [(1, 5), (2, 5), (3, 5), (4, 5)]).unwrap();
        assert_eq!(classify_type(&d4_tilde), QuiverType::ExtendedDynkin("D~4".into()));
        let three_points = Quiver::new(3, []).unwrap();
        assert_eq!(three_points.to_string(), r#"{"mu":3,"arrows":[]}"#);
        assert!(classify_type(&three_points).is_dynkin());
        let wild = Quiver::new(2, [(1, 2), (1, 2), (1, 2)]).unwrap();
        assert_eq!(classify_type(&wild), QuiverType::Other);
    }

    #[test]
    fn dynkin_orientations_satisfy_gates() {
        let mut diagrams: Vec<_> = (1..=8).map(DynkinDiagram::A).collect();
        diagrams.extend((4..=8).map(DynkinDiagram::D));
        diagrams.extend([DynkinDiagram::E6, DynkinDiagram::E7, DynkinDiagram::E8]);
        for d in diagrams {
            let qs = dynkin_orientations(d);
            assert!(!qs.is_empty());
            for q in qs {
                assert!(check_a1(&q) && check_a2(&q), "{d} {q}");
                assert_eq!(classify_type(&q), QuiverType::Dynkin(vec![d]));
            }
        }
    }

    proptest! {
        #[test]
        fn euler_is_bilinear(
            a in proptest::collection::vec(-5i64..5, 4),
            a2 in proptest::collection::vec(-5i64..5, 4),
            b in proptest::collection::vec(-5i64..5, 4),
        ) {
            let e = euler_form(&d4());
            let sum: Vec<i64> = a.iter().zip(&a2).map(|(x, y)| x + y).collect();
            prop_assert_eq!(e.pair(&sum, &b), e.pair(&a, &b) + e.pair(&a2, &b));
            let sum_b: Vec<i64> = b.iter().zip(&a2).map(|(x, y)| x + y).collect();
            prop_assert_eq!(e.pair(&a, &sum_b), e.pair(&a, &b) + e.pair(&a, &a2));
        }
    }
}

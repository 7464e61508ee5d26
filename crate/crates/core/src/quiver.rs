//! Quivers as skew-symmetric exchange matrices and the matrix mutation rule.
//!
//! Vertices are numbered `1..=n` in the public API. `b[i][j]` is the number of
//! arrows `i -> j` minus the number of arrows `j -> i`, so loops and 2-cycles
//! cannot be represented.

use std::collections::{BTreeSet, BinaryHeap};
use std::cmp::Reverse;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::bigjson;
use crate::error::{Error, Result};
use crate::matrix::{mutation_increment, IntMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    b: IntMatrix,
}

/// `multiplicity` arrows from `source` to `target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: BigInt,
}

impl Arrow {
    pub fn new(source: usize, target: usize, multiplicity: impl Into<BigInt>) -> Self {
        Arrow {
            source,
            target,
            multiplicity: multiplicity.into(),
        }
    }
}

/// A full subquiver together with the original label of each new vertex:
/// new vertex `v` is original vertex `vertices[v - 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subquiver {
    pub quiver: Quiver,
    pub vertices: Vec<usize>,
}

impl Quiver {
    /// Builds a quiver from its exchange matrix, rejecting anything that is
    /// not square and skew-symmetric (valued quivers are not supported).
    pub fn from_matrix(b: IntMatrix) -> Result<Self> {
        if b.rows() == 0 {
            return Err(Error::NoVertices);
        }
        if b.rows() != b.cols() {
            return Err(Error::NotSquare);
        }
        if let Some((i, j)) = b.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric { i: i + 1, j: j + 1 });
        }
        Ok(Quiver { b })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::NotSquare);
        }
        Self::from_matrix(IntMatrix::from_rows(rows))
    }

    /// Quiver on `n` vertices from a list of arrows. Arrows between the same
    /// pair in opposite directions cancel.
    pub fn from_arrows(n: usize, arrows: &[Arrow]) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut b = IntMatrix::zeros(n, n);
        for a in arrows {
            let bad = |reason| Error::InvalidArrow {
                tail: a.source,
                head: a.target,
                multiplicity: a.multiplicity.to_string(),
                reason,
            };
            if a.source == 0 || a.source > n || a.target == 0 || a.target > n {
                return Err(bad("vertex out of range"));
            }
            if a.source == a.target {
                return Err(bad("loops are not allowed"));
            }
            if !a.multiplicity.is_positive() {
                return Err(bad("multiplicity must be positive"));
            }
            let (i, j) = (a.source - 1, a.target - 1);
            let v = b.get(i, j) + &a.multiplicity;
            b.set(j, i, -&v);
            b.set(i, j, v);
        }
        Ok(Quiver { b })
    }

    /// `n` isolated vertices.
    pub fn discrete(n: usize) -> Result<Self> {
        Self::from_arrows(n, &[])
    }

    /// Linearly oriented type A: `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Result<Self> {
        let arrows: Vec<Arrow> = (1..n).map(|i| Arrow::new(i, i + 1, 1)).collect();
        Self::from_arrows(n, &arrows)
    }

    /// The three-vertex quiver with `a` arrows `1 -> 2`, `b` arrows `2 -> 3`
    /// and `c` arrows `3 -> 1`.
    pub fn cyclic_triangle(a: u32, b: u32, c: u32) -> Self {
        let arrows: Vec<Arrow> = [(1, 2, a), (2, 3, b), (3, 1, c)]
            .into_iter()
            .filter(|&(_, _, m)| m > 0)
            .map(|(s, t, m)| Arrow::new(s, t, m))
            .collect();
        Self::from_arrows(3, &arrows).expect("valid arrows")
    }

    /// Named quivers understood by the CLI and the explorer: `A<n>` (linear),
    /// `Q<a>,<b>,<c>` / `Q_{a,b,c}` (cyclic triangle), `kronecker`, `3-cycle`.
    pub fn preset(name: &str) -> Option<Self> {
        let name = name.trim();
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "kronecker" => return Quiver::from_arrows(2, &[Arrow::new(1, 2, 2)]).ok(),
            "3-cycle" | "cycle3" => return Some(Quiver::cyclic_triangle(1, 1, 1)),
            _ => {}
        }
        if let Some(rest) = lower.strip_prefix('a') {
            let n: usize = rest.parse().ok()?;
            return Quiver::linear_a(n).ok();
        }
        if let Some(rest) = lower.strip_prefix('q') {
            let rest = rest.trim_start_matches('_').trim_start_matches('{');
            let rest = rest.trim_end_matches('}');
            let parts: Vec<u32> = rest
                .split(',')
                .map(|p| p.trim().parse().ok())
                .collect::<Option<_>>()?;
            if let [a, b, c] = parts[..] {
                return Some(Quiver::cyclic_triangle(a, b, c));
            }
        }
        None
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    /// `b[i][j]` for 1-based vertices.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.b.get(i - 1, j - 1)
    }

    pub fn check_vertex(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n() {
            Err(Error::VertexOutOfRange {
                vertex: k,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Arrows with positive multiplicity, one entry per connected pair,
    /// sorted lexicographically by `(source, target)`.
    pub fn arrows(&self) -> Vec<Arrow> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self.b.get(i, j);
                if v.is_positive() {
                    out.push(Arrow::new(i + 1, j + 1, v.clone()));
                } else if v.is_negative() {
                    out.push(Arrow::new(j + 1, i + 1, -v));
                }
            }
        }
        out.sort();
        out
    }

    /// Mutation at the 1-based vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        self.check_vertex(k)?;
        Ok(Quiver {
            b: mutate_exchange_matrix(&self.b, k - 1),
        })
    }

    /// Applies the mutations of `seq` from left to right.
    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Quiver> {
        seq.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    /// Full subquiver on `keep`; the retained vertices are relabeled
    /// `1..=|keep|` in increasing original order.
    pub fn full_subquiver(&self, keep: &[usize]) -> Result<Subquiver> {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for &v in &set {
            self.check_vertex(v)?;
        }
        let vertices: Vec<usize> = set.into_iter().collect();
        let m = vertices.len();
        let mut b = IntMatrix::zeros(m, m);
        for (a, &i) in vertices.iter().enumerate() {
            for (c, &j) in vertices.iter().enumerate() {
                b.set(a, c, self.entry(i, j).clone());
            }
        }
        Ok(Subquiver {
            quiver: Quiver { b },
            vertices,
        })
    }

    /// Glues `first` and `second` along `cross`. Vertices of `second` are
    /// shifted by `first.n()`; every cross arrow must go from a vertex of
    /// `first` to a vertex of `second` in this combined numbering.
    pub fn triangular_extension(first: &Quiver, second: &Quiver, cross: &[Arrow]) -> Result<Quiver> {
        let (n1, n2) = (first.n(), second.n());
        let n = n1 + n2;
        let mut b = IntMatrix::zeros(n, n);
        for i in 0..n1 {
            for j in 0..n1 {
                b.set(i, j, first.b.get(i, j).clone());
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                b.set(n1 + i, n1 + j, second.b.get(i, j).clone());
            }
        }
        for a in cross {
            let in_first = (1..=n1).contains(&a.source);
            let in_second = (n1 + 1..=n).contains(&a.target);
            if !in_first || !in_second {
                return Err(Error::CrossArrowDirection {
                    tail: a.source,
                    head: a.target,
                });
            }
            if !a.multiplicity.is_positive() {
                return Err(Error::InvalidArrow {
                    tail: a.source,
                    head: a.target,
                    multiplicity: a.multiplicity.to_string(),
                    reason: "multiplicity must be positive",
                });
            }
            let (i, j) = (a.source - 1, a.target - 1);
            let v = b.get(i, j) + &a.multiplicity;
            b.set(j, i, -&v);
            b.set(i, j, v);
        }
        Ok(Quiver { b })
    }

    /// A topological order (sources first), choosing the smallest available
    /// vertex at each step. Fails on quivers with an oriented cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.n();
        let mut indegree = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                if self.b.get(i, j).is_positive() {
                    indegree[j] += 1;
                }
            }
        }
        let mut ready: BinaryHeap<Reverse<usize>> = (0..n)
            .filter(|&v| indegree[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v + 1);
            for j in 0..n {
                if self.b.get(v, j).is_positive() {
                    indegree[j] -= 1;
                    if indegree[j] == 0 {
                        ready.push(Reverse(j));
                    }
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(Error::CyclicQuiver)
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    /// Quiver with vertex `i` renamed `perm[i - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Quiver> {
        let n = self.n();
        let mut seen = vec![false; n];
        for &p in perm {
            self.check_vertex(p)?;
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Parse("relabeling is not a bijection".into()));
            }
        }
        if perm.len() != n {
            return Err(Error::Parse("relabeling has the wrong length".into()));
        }
        let mut b = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                b.set(perm[i] - 1, perm[j] - 1, self.b.get(i, j).clone());
            }
        }
        Ok(Quiver { b })
    }

    /// Parses either `{"vertices": n, "arrows": [[i, j, m], ...]}` or
    /// `{"b_matrix": [[...], ...]}`. A wrapper object with a `"quiver"` key
    /// (as written by the explorer's export) is unwrapped first.
    pub fn from_json(value: &Value) -> Result<Quiver> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("quiver must be a JSON object".into()))?;
        if let Some(inner) = obj.get("quiver") {
            return Self::from_json(inner);
        }
        if let Some(rows) = obj.get("b_matrix") {
            let rows = rows
                .as_array()
                .ok_or_else(|| Error::Parse("b_matrix must be an array of rows".into()))?;
            let mut parsed = Vec::with_capacity(rows.len());
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::Parse("b_matrix rows must be arrays".into()))?;
                parsed.push(row.iter().map(bigjson::from_value).collect::<Result<Vec<_>>>()?);
            }
            return Self::from_rows(&parsed);
        }
        let n = obj
            .get("vertices")
            .ok_or_else(|| Error::Parse("expected \"vertices\" and \"arrows\" or \"b_matrix\"".into()))
            .and_then(|v| bigjson::usize_from_value(v, "vertices"))?;
        let mut arrows = Vec::new();
        if let Some(list) = obj.get("arrows") {
            let list = list
                .as_array()
                .ok_or_else(|| Error::Parse("arrows must be an array".into()))?;
            for a in list {
                let parts = a
                    .as_array()
                    .filter(|p| p.len() == 2 || p.len() == 3)
                    .ok_or_else(|| Error::Parse(format!("arrow must be [i, j, m], got {a}")))?;
                let source = bigjson::usize_from_value(&parts[0], "arrow source")?;
                let target = bigjson::usize_from_value(&parts[1], "arrow target")?;
                let multiplicity = match parts.get(2) {
                    Some(m) => bigjson::from_value(m)?,
                    None => BigInt::from(1),
                };
                arrows.push(Arrow {
                    source,
                    target,
                    multiplicity,
                });
            }
        }
        Self::from_arrows(n, &arrows)
    }

    pub fn from_json_str(s: &str) -> Result<Quiver> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    /// Canonical arrows form.
    pub fn to_json(&self) -> Value {
        let arrows: Vec<Value> = self
            .arrows()
            .iter()
            .map(|a| json!([a.source, a.target, bigjson::to_value(&a.multiplicity)]))
            .collect();
        json!({ "vertices": self.n(), "arrows": arrows })
    }
}

/// Matrix mutation at the 0-based index `k` of a square exchange matrix.
pub(crate) fn mutate_exchange_matrix(b: &IntMatrix, k: usize) -> IntMatrix {
    let n = b.rows();
    let mut out = b.clone();
    for i in 0..n {
        for j in 0..n {
            if i == k || j == k {
                out.set(i, j, -b.get(i, j));
            } else if let Some(inc) = mutation_increment(b.get(i, k), b.get(k, j)) {
                out.set(i, j, b.get(i, j) + inc);
            }
        }
    }
    out
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver({:?})", self.b)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows = self.arrows();
        write!(f, "{} vertices", self.n())?;
        if arrows.is_empty() {
            return write!(f, ", no arrows");
        }
        write!(f, ":")?;
        for a in arrows {
            if a.multiplicity == BigInt::from(1) {
                write!(f, " {}->{}", a.source, a.target)?;
            } else {
                write!(f, " {}-{}->{}", a.source, a.multiplicity, a.target)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrows(n: usize, list: &[(usize, usize, i64)]) -> Quiver {
        let a: Vec<Arrow> = list.iter().map(|&(s, t, m)| Arrow::new(s, t, m)).collect();
        Quiver::from_arrows(n, &a).unwrap()
    }

    #[test]
    fn three_cycle_mutates_to_linear() {
        let cycle = arrows(3, &[(2, 1, 1), (1, 3, 1), (3, 2, 1)]);
        let expected = arrows(3, &[(1, 2, 1), (3, 1, 1)]);
        assert_eq!(cycle.mutate(1).unwrap(), expected);
    }

    #[test]
    fn mutation_at_sink_reverses() {
        let q = Quiver::linear_a(2).unwrap();
        assert_eq!(q.mutate(2).unwrap(), arrows(2, &[(2, 1, 1)]));
    }

    #[test]
    fn mutation_out_of_range() {
        let q = Quiver::linear_a(2).unwrap();
        assert_eq!(
            q.mutate(3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 2 })
        );
        assert!(q.mutate(0).is_err());
    }

    #[test]
    fn subquiver_examples() {
        let a3 = Quiver::linear_a(3).unwrap();
        let sub = a3.full_subquiver(&[1, 3]).unwrap();
        assert_eq!(sub.quiver, Quiver::discrete(2).unwrap());
        assert_eq!(sub.vertices, vec![1, 3]);
        assert_eq!(a3.full_subquiver(&[1, 2, 3]).unwrap().quiver, a3);
        assert_eq!(a3.full_subquiver(&[]), Err(Error::EmptyVertexSet));

        let q222 = Quiver::cyclic_triangle(2, 2, 2);
        let k = q222.full_subquiver(&[2, 1]).unwrap().quiver;
        assert_eq!(k, arrows(2, &[(1, 2, 2)]));
    }

    #[test]
    fn triangular_extension_examples() {
        let a1 = Quiver::linear_a(1).unwrap();
        let a2 = Quiver::linear_a(2).unwrap();
        let glued = Quiver::triangular_extension(&a1, &a1, &[Arrow::new(1, 2, 1)]).unwrap();
        assert_eq!(glued, a2);
        let disjoint = Quiver::triangular_extension(&a1, &a1, &[]).unwrap();
        assert_eq!(disjoint, Quiver::discrete(2).unwrap());
        let a3 = Quiver::triangular_extension(&a2, &a1, &[Arrow::new(2, 3, 1)]).unwrap();
        assert_eq!(a3, Quiver::linear_a(3).unwrap());
        assert_eq!(
            Quiver::triangular_extension(&a2, &a1, &[Arrow::new(3, 2, 1)]),
            Err(Error::CrossArrowDirection { tail: 3, head: 2 })
        );
    }

    #[test]
    fn json_forms() {
        let q = Quiver::from_json_str(r#"{"vertices": 3, "arrows": [[2, 1, 1], [3, 2, 2]]}"#).unwrap();
        let m = Quiver::from_json_str(r#"{"b_matrix": [[0, -1, 0], [1, 0, -2], [0, 2, 0]]}"#).unwrap();
        assert_eq!(q, m);
        assert_eq!(
            q.to_json(),
            serde_json::json!({"vertices": 3, "arrows": [[2, 1, 1], [3, 2, 2]]})
        );
        assert!(matches!(
            Quiver::from_json_str(r#"{"b_matrix": [[0, 2], [-1, 0]]}"#),
            Err(Error::NotSkewSymmetric { .. })
        ));
        assert!(Quiver::from_json_str(r#"{"vertices": 2, "arrows": [[1, 1, 1]]}"#).is_err());
        assert!(Quiver::from_json_str(r#"{"vertices": 2, "arrows": [[1, 2, 0]]}"#).is_err());
        assert!(Quiver::from_json_str(r#"{"vertices": 0}"#).is_err());
        assert!(Quiver::from_json_str("[1,2]").is_err());
    }

    #[test]
    fn opposite_arrows_cancel() {
        let q = arrows(2, &[(1, 2, 3), (2, 1, 1)]);
        assert_eq!(q.entry(1, 2), &BigInt::from(2));
        assert_eq!(q.entry(2, 1), &BigInt::from(-2));
    }

    #[test]
    fn topological_order_and_cycles() {
        let q = arrows(4, &[(3, 1, 1), (1, 2, 1), (4, 2, 1)]);
        assert_eq!(q.topological_order().unwrap(), vec![3, 1, 4, 2]);
        assert_eq!(
            Quiver::cyclic_triangle(1, 1, 1).topological_order(),
            Err(Error::CyclicQuiver)
        );
    }

    #[test]
    fn presets() {
        assert_eq!(Quiver::preset("A3"), Quiver::linear_a(3).ok());
        assert_eq!(Quiver::preset("Q_{2,2,2}"), Some(Quiver::cyclic_triangle(2, 2, 2)));
        assert_eq!(Quiver::preset("q2,2,2"), Some(Quiver::cyclic_triangle(2, 2, 2)));
        assert!(Quiver::preset("nope").is_none());
    }
}

//! Framed quivers, c-vectors and the green/red classification.
//!
//! A framed state keeps the principal part of the mutated framed quiver and
//! an `n x n` c-matrix whose row `i` records the arrows between mutable
//! vertex `i` and the frozen vertices: `cmat[i][j]` is the number of arrows
//! `i -> j'` minus the number of arrows `j' -> i`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{mutation_increment, IntMatrix};
use crate::quiver::{mutate_exchange_matrix, Quiver};

/// Sign of a c-vector. Positive vertices are green, negative ones red.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn is_green(self) -> bool {
        self == Sign::Positive
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CVector {
    entries: Vec<BigInt>,
    sign: Sign,
}

impl CVector {
    /// Checks sign coherence; `None` for the zero vector or mixed signs.
    pub fn new(entries: Vec<BigInt>) -> Option<CVector> {
        let sign = coherent_sign(&entries)?;
        Some(CVector { entries, sign })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_green(&self) -> bool {
        self.sign.is_green()
    }

    /// Componentwise absolute value.
    pub fn magnitude(&self) -> Vec<BigInt> {
        self.entries.iter().map(Signed::abs).collect()
    }

    /// 1-based indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.entries.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn coherent_sign(entries: &[BigInt]) -> Option<Sign> {
    let mut sign = None;
    for x in entries {
        let s = if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            continue;
        };
        match sign {
            None => sign = Some(s),
            Some(prev) if prev != s => return None,
            _ => {}
        }
    }
    sign
}

/// One replayed step: the mutated vertex and its c-vector just before the
/// mutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub vertex: usize,
    pub c_vector: CVector,
}

impl Step {
    pub fn is_green(&self) -> bool {
        self.c_vector.is_green()
    }
}

/// A sequence of 1-based mutable vertices. Serializes as `"2,1,2"`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationSequence(pub Vec<usize>);

impl MutationSequence {
    pub fn new(vertices: Vec<usize>) -> Self {
        MutationSequence(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&k| k == 0 || k > n) {
            Some(&vertex) => Err(Error::VertexOutOfRange { vertex, n }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for MutationSequence {
    fn from(v: Vec<usize>) -> Self {
        MutationSequence(v)
    }
}

impl From<&[usize]> for MutationSequence {
    fn from(v: &[usize]) -> Self {
        MutationSequence(v.to_vec())
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for MutationSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        if s.trim().is_empty() {
            return Ok(MutationSequence::default());
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex {p:?} in sequence")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MutationSequence)
    }
}

impl Serialize for MutationSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MutationSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A permutation of `1..=n`, stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::Parse(format!("{image:?} is not a permutation")));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Cycle notation without fixed points, e.g. `(1 2)`; `id` for the identity.
    pub fn cycle_notation(&self) -> String {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 1..=n {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next - 1] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            let parts: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            out.push('(');
            out.push_str(&parts.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            "id".into()
        } else {
            out
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// Principal part and c-matrix without the history. This is the unit the
/// search memoizes on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixPair {
    pub principal: IntMatrix,
    pub cmat: IntMatrix,
}

impl MatrixPair {
    pub fn framed(q: &Quiver) -> Self {
        MatrixPair {
            principal: q.matrix().clone(),
            cmat: IntMatrix::identity(q.n()),
        }
    }

    pub fn n(&self) -> usize {
        self.principal.rows()
    }

    /// Mutation at the 0-based index `k`. Frozen rows are updated by the same
    /// rule as the principal part; no arrows between frozen vertices can
    /// appear as long as the c-vectors are sign-coherent.
    pub fn mutate(&self, k: usize) -> MatrixPair {
        let n = self.n();
        let principal = mutate_exchange_matrix(&self.principal, k);
        let mut cmat = self.cmat.clone();
        for j in 0..n {
            cmat.set(k, j, -self.cmat.get(k, j));
        }
        for i in (0..n).filter(|&i| i != k) {
            let bik = self.principal.get(i, k);
            if bik.is_zero() {
                continue;
            }
            for j in 0..n {
                if let Some(inc) = mutation_increment(bik, self.cmat.get(k, j)) {
                    cmat.set(i, j, self.cmat.get(i, j) + inc);
                }
            }
        }
        MatrixPair { principal, cmat }
    }

    /// Sign of the c-vector of the 0-based vertex `i`.
    pub fn sign(&self, i: usize) -> Result<Sign> {
        coherent_sign(self.cmat.row(i)).ok_or(Error::SignIncoherent { vertex: i + 1 })
    }

    pub fn check_sign_coherence(&self) -> Result<()> {
        (0..self.n()).try_for_each(|i| self.sign(i).map(|_| ()))
    }

    /// 1-based green vertices in increasing order.
    pub fn green_vertices(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            if self.sign(i)?.is_green() {
                out.push(i + 1);
            }
        }
        Ok(out)
    }

    pub fn is_all_red(&self) -> Result<bool> {
        for i in 0..self.n() {
            if self.sign(i)?.is_green() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The permutation `sigma` with `cmat = -P_sigma` and
    /// `principal[i][j] = origin[sigma(i)][sigma(j)]`, if it exists.
    pub fn coframed_permutation(&self, origin: &Quiver) -> Result<Permutation> {
        let n = self.n();
        if origin.n() != n {
            return Err(Error::NotCoframed);
        }
        let minus_one = -BigInt::one();
        let mut image = Vec::with_capacity(n);
        for i in 0..n {
            let mut target = None;
            for (j, x) in self.cmat.row(i).iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if *x != minus_one || target.is_some() {
                    return Err(Error::NotCoframed);
                }
                target = Some(j + 1);
            }
            image.push(target.ok_or(Error::NotCoframed)?);
        }
        let sigma = Permutation::new(image).map_err(|_| Error::NotCoframed)?;
        for i in 0..n {
            for j in 0..n {
                if self.principal.get(i, j) != origin.entry(sigma.apply(i + 1), sigma.apply(j + 1)) {
                    return Err(Error::NotCoframed);
                }
            }
        }
        Ok(sigma)
    }
}

impl fmt::Debug for MatrixPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixPair")
            .field("principal", &self.principal)
            .field("cmat", &self.cmat)
            .finish()
    }
}

/// A framed quiver after a sequence of mutations at mutable vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedState {
    matrices: MatrixPair,
    origin: Arc<Quiver>,
    history: Vec<Step>,
}

impl FramedState {
    /// The framed quiver: one frozen vertex `i'` and one arrow `i -> i'` per
    /// vertex.
    pub fn new(q: &Quiver) -> Self {
        FramedState {
            matrices: MatrixPair::framed(q),
            origin: Arc::new(q.clone()),
            history: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.matrices.n()
    }

    pub fn origin(&self) -> &Quiver {
        &self.origin
    }

    pub fn principal(&self) -> &IntMatrix {
        &self.matrices.principal
    }

    pub fn cmat(&self) -> &IntMatrix {
        &self.matrices.cmat
    }

    pub fn matrices(&self) -> &MatrixPair {
        &self.matrices
    }

    /// The current mutable part as a quiver.
    pub fn quiver(&self) -> Quiver {
        Quiver::from_matrix(self.matrices.principal.clone()).expect("principal part stays skew-symmetric")
    }

    pub fn history(&self) -> &[Step] {
        &self.history
    }

    pub fn sequence(&self) -> MutationSequence {
        MutationSequence(self.history.iter().map(|s| s.vertex).collect())
    }

    fn check_vertex(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            Err(Error::VertexOutOfRange {
                vertex: i,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Mutation at the mutable vertex `k`. The step is recorded with the
    /// c-vector `k` had before the mutation. Returns
    /// [`Error::SignIncoherent`] if any row of the new c-matrix is not
    /// sign-coherent, which would mean the mutation rule is broken.
    pub fn mutate(&self, k: usize) -> Result<FramedState> {
        self.check_vertex(k)?;
        let c_vector = self.c_vector(k)?;
        let matrices = self.matrices.mutate(k - 1);
        matrices.check_sign_coherence()?;
        let mut history = self.history.clone();
        history.push(Step { vertex: k, c_vector });
        Ok(FramedState {
            matrices,
            origin: Arc::clone(&self.origin),
            history,
        })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<FramedState> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    pub fn c_vector(&self, i: usize) -> Result<CVector> {
        self.check_vertex(i)?;
        let row = self.matrices.cmat.row(i - 1).to_vec();
        CVector::new(row).ok_or(Error::SignIncoherent { vertex: i })
    }

    pub fn c_vectors(&self) -> Result<Vec<CVector>> {
        (1..=self.n()).map(|i| self.c_vector(i)).collect()
    }

    pub fn is_green(&self, i: usize) -> Result<bool> {
        self.check_vertex(i)?;
        Ok(self.matrices.sign(i - 1)?.is_green())
    }

    pub fn is_red(&self, i: usize) -> Result<bool> {
        self.is_green(i).map(|g| !g)
    }

    pub fn is_all_red(&self) -> Result<bool> {
        self.matrices.is_all_red()
    }

    pub fn green_vertices(&self) -> Result<Vec<usize>> {
        self.matrices.green_vertices()
    }

    /// The permutation of the frozen isomorphism onto the coframed quiver,
    /// or [`Error::NotCoframed`].
    pub fn extract_permutation(&self) -> Result<Permutation> {
        self.matrices.coframed_permutation(&self.origin)
    }
}

//! Bricks of the path algebra of the linearly oriented quiver
//! `1 -> 2 -> ... -> n` (right modules, i.e. interval representations of
//! the opposite quiver), maximal forward Hom-orthogonal sequences of them,
//! and their comparison with maximal green sequences of `A_n`.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::search::enumerate_mgs;
use crate::transforms::c_vector_sequence;

pub const MAX_CHAIN_RANK: usize = 6;
pub const MAX_CROSS_VALIDATE_RANK: usize = 5;

/// The interval module supported on vertices `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    a: usize,
    b: usize,
}

impl Interval {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if a == 0 || a > b || b > n {
            return Err(Error::InvalidInterval { a, b, n });
        }
        Ok(Interval { a, b })
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    /// `e_a + ... + e_b` in rank `n`.
    pub fn dimension_vector(self, n: usize) -> Vec<i64> {
        (1..=n).map(|i| i64::from(self.a <= i && i <= self.b)).collect()
    }

    /// All `n(n+1)/2` intervals, ordered by `(a, b)`.
    pub fn all(n: usize) -> Vec<Interval> {
        (1..=n).flat_map(|a| (a..=n).map(move |b| Interval { a, b })).collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.a, self.b).serialize(s)
    }
}

/// `Hom([a,b], [c,d]) != 0` iff `a <= c <= b <= d`: a nonzero map factors
/// through a quotient of the source that is a submodule of the target.
pub fn hom_nonzero(src: Interval, tgt: Interval) -> bool {
    src.a <= tgt.a && tgt.a <= src.b && src.b <= tgt.b
}

pub type BrickSequence = Vec<Interval>;

/// No nonzero map from an earlier brick to a later one.
pub fn is_forward_orthogonal(seq: &[Interval]) -> bool {
    seq.iter()
        .enumerate()
        .all(|(i, &x)| seq[i + 1..].iter().all(|&y| !hom_nonzero(x, y)))
}

fn insertion_allowed(seq: &[Interval], x: Interval, p: usize) -> bool {
    seq[..p].iter().all(|&y| !hom_nonzero(y, x)) && seq[p..].iter().all(|&y| !hom_nonzero(x, y))
}

/// Forward orthogonal, and no brick of rank `n` can be inserted anywhere
/// without breaking orthogonality or repeating a brick.
pub fn is_maximal_forward_orthogonal(seq: &[Interval], n: usize) -> bool {
    if seq.iter().any(|x| x.b > n) || !is_forward_orthogonal(seq) {
        return false;
    }
    Interval::all(n)
        .into_iter()
        .filter(|x| !seq.contains(x))
        .all(|x| (0..=seq.len()).all(|p| !insertion_allowed(seq, x, p)))
}

fn check_rank(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::RankOutOfRange { n, min: 1, max });
    }
    Ok(())
}

/// All maximal forward Hom-orthogonal brick sequences of rank `n`, in
/// lexicographic order.
pub fn enumerate_maximal_chains(n: usize) -> Result<Vec<BrickSequence>> {
    check_rank(n, MAX_CHAIN_RANK)?;
    let all = Interval::all(n);

    // Every forward-orthogonal sequence is reached by appending, and a
    // maximal one admits no append, so maximal sequences are leaves.
    fn extend(all: &[Interval], n: usize, seq: &mut BrickSequence, out: &mut Vec<BrickSequence>) {
        let mut leaf = true;
        for &x in all {
            if !seq.contains(&x) && seq.iter().all(|&y| !hom_nonzero(y, x)) {
                leaf = false;
                seq.push(x);
                extend(all, n, seq, out);
                seq.pop();
            }
        }
        if leaf && is_maximal_forward_orthogonal(seq, n) {
            out.push(seq.clone());
        }
    }

    let mut chains: Vec<BrickSequence> = all
        .par_iter()
        .flat_map_iter(|&first| {
            let mut out = Vec::new();
            extend(&all, n, &mut vec![first], &mut out);
            out
        })
        .collect();
    chains.sort();
    Ok(chains)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub n: usize,
    pub mgs_count: usize,
    pub chain_count: usize,
    pub agree: bool,
}

/// Compares the c-vector sequences of all maximal green sequences of
/// linear `A_n` with the dimension-vector sequences of all maximal brick
/// chains of rank `n`, as multisets of sequences.
pub fn cross_validate(n: usize) -> Result<CrossValidation> {
    check_rank(n, MAX_CROSS_VALIDATE_RANK)?;
    let q = Quiver::linear_a(n)?;
    let max_len = n * (n + 1) / 2;
    let report = enumerate_mgs(&q, max_len)?;
    if report.truncated {
        return Err(Error::TruncatedSearch { max_len });
    }
    let mut from_mgs = report
        .sequences
        .iter()
        .map(|s| {
            c_vector_sequence(&q, s)?
                .iter()
                .map(|c| c.to_i64s().ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let chains = enumerate_maximal_chains(n)?;
    let mut from_chains: Vec<Vec<Vec<i64>>> = chains
        .iter()
        .map(|c| c.iter().map(|x| x.dimension_vector(n)).collect())
        .collect();
    from_mgs.sort();
    from_chains.sort();
    Ok(CrossValidation {
        n,
        mgs_count: from_mgs.len(),
        chain_count: from_chains.len(),
        agree: from_mgs == from_chains,
    })
}

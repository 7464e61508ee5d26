//! Constructions producing new maximal green (or reddening) sequences from
//! known ones: rotation, restriction to a full subquiver, and the check on
//! triangular extensions.

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::framed::{CVector, FramedState, MutationSequence};
use crate::quiver::{Arrow, Quiver, Subquiver};
use crate::search::{shortest_mgs, verify_sequence, Mode};

/// Whether `seq` is a maximal green sequence or, failing that, a reddening
/// sequence for `q`.
fn classify(q: &Quiver, seq: &MutationSequence) -> Result<Option<(Mode, FramedState)>> {
    for mode in [Mode::MaximalGreen, Mode::Reddening] {
        let v = verify_sequence(q, seq, mode)?;
        if v.is_valid() {
            return Ok(Some((mode, v.final_state)));
        }
    }
    Ok(None)
}

/// Rotation: for a maximal green (resp. reddening) sequence
/// `(i_1, ..., i_N)` of `q`, returns `mu_{i_1}(q)` with the sequence
/// `(i_2, ..., i_N, k)`, where `k` is the vertex receiving the arrow out of
/// the frozen vertex `i_1'` at the endpoint. The result is checked in the
/// same mode as the input.
pub fn rotate(q: &Quiver, seq: &MutationSequence) -> Result<(Quiver, MutationSequence)> {
    if seq.is_empty() {
        return Err(Error::NotVerified { mode: "maximal green or reddening" });
    }
    let (mode, end) = classify(q, seq)?.ok_or(Error::NotVerified { mode: "maximal green or reddening" })?;
    let first = seq.vertices()[0];
    let targets: Vec<usize> = (1..=q.n())
        .filter(|&k| end.cmat().get(k - 1, first - 1).is_negative())
        .collect();
    let [k] = targets[..] else {
        return Err(Error::Postcondition("frozen vertex of the first step has no unique outgoing arrow"));
    };

    let rotated_quiver = q.mutate(first)?;
    let mut rotated: Vec<usize> = seq.vertices()[1..].to_vec();
    rotated.push(k);
    let rotated = MutationSequence(rotated);
    if !verify_sequence(&rotated_quiver, &rotated, mode)?.is_valid() {
        return Err(Error::Postcondition("rotated sequence does not verify"));
    }
    Ok((rotated_quiver, rotated))
}

/// Restriction of a maximal green sequence to the full subquiver on `keep`.
///
/// The c-vectors of `seq` supported on `keep`, in their original order and
/// restricted to those coordinates, are realized greedily on the framed
/// subquiver: each step mutates the unique green vertex carrying the next
/// vector. Returns the subquiver (with its original labels) and the
/// sequence in the subquiver's numbering.
pub fn restrict_mgs(q: &Quiver, seq: &MutationSequence, keep: &[usize]) -> Result<(Subquiver, MutationSequence)> {
    let v = verify_sequence(q, seq, Mode::MaximalGreen)?;
    if !v.is_valid() {
        return Err(Error::NotVerified { mode: Mode::MaximalGreen.name() });
    }
    let sub = q.full_subquiver(keep)?;
    let targets: Vec<Vec<_>> = v
        .steps
        .iter()
        .map(|s| &s.c_vector)
        .filter(|c| c.support().iter().all(|i| sub.vertices.contains(i)))
        .map(|c| sub.vertices.iter().map(|&i| c.entries()[i - 1].clone()).collect())
        .collect();

    let mut state = FramedState::new(&sub.quiver);
    let mut out = Vec::with_capacity(targets.len());
    for (step, target) in targets.iter().enumerate() {
        let mut matches = Vec::new();
        for k in state.green_vertices()? {
            if state.c_vector(k)?.entries() == &target[..] {
                matches.push(k);
            }
        }
        let [k] = matches[..] else {
            return Err(Error::RealizationFailure {
                step: step + 1,
                found: matches.len(),
            });
        };
        state = state.mutate(k)?;
        out.push(k);
    }

    let out = MutationSequence(out);
    if !verify_sequence(&sub.quiver, &out, Mode::MaximalGreen)?.is_valid() {
        return Err(Error::Postcondition("restricted sequence is not maximal green"));
    }
    Ok((sub, out))
}

/// The c-vectors met along `seq`, one per step, before each mutation.
pub fn c_vector_sequence(q: &Quiver, seq: &MutationSequence) -> Result<Vec<CVector>> {
    seq.check(q.n())?;
    let end = FramedState::new(q).mutate_sequence(seq.vertices())?;
    Ok(end.history().iter().map(|s| s.c_vector.clone()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub first_mgs: Option<MutationSequence>,
    pub second_mgs: Option<MutationSequence>,
    /// A shortest maximal green sequence of the extension within the bound.
    pub extension_mgs: Option<MutationSequence>,
    /// The restrictions of `extension_mgs` to the two vertex blocks.
    pub restricted_first: Option<MutationSequence>,
    pub restricted_second: Option<MutationSequence>,
}

impl ExtensionReport {
    pub fn consistent(&self) -> bool {
        let parts = self.first_mgs.is_some() && self.second_mgs.is_some();
        parts == self.extension_mgs.is_some()
    }
}

/// Searches the triangular extension of `first` by `second` along `cross`
/// for a maximal green sequence (length at most `max_len`), alongside the
/// two blocks. When one is found it is restricted back to both blocks.
pub fn check_triangular_extension(
    first: &Quiver,
    second: &Quiver,
    cross: &[Arrow],
    max_len: usize,
) -> Result<ExtensionReport> {
    let ext = Quiver::triangular_extension(first, second, cross)?;
    let extension_mgs = shortest_mgs(&ext, max_len)?;
    let (mut restricted_first, mut restricted_second) = (None, None);
    if let Some(seq) = &extension_mgs {
        let n1 = first.n();
        let block1: Vec<usize> = (1..=n1).collect();
        let block2: Vec<usize> = (n1 + 1..=ext.n()).collect();
        restricted_first = Some(restrict_mgs(&ext, seq, &block1)?.1);
        restricted_second = Some(restrict_mgs(&ext, seq, &block2)?.1);
    }
    Ok(ExtensionReport {
        first_mgs: shortest_mgs(first, max_len)?,
        second_mgs: shortest_mgs(second, max_len)?,
        extension_mgs,
        restricted_first,
        restricted_second,
    })
}

//! Exact truncated arithmetic in the complete quantum affine space of a
//! quiver and the ordered products of quantum dilogarithms attached to
//! mutation sequences.

pub mod laurent;
mod poly;
pub mod rational;
pub mod series;

use std::sync::Arc;

use num_traits::ToPrimitive;

pub use laurent::LaurentPoly;
pub use rational::RationalFunction;
pub use series::{dilog_coefficient, q_exp, Exponent, QuantumSeries, SeriesSpace, SkewForm};

use crate::error::{Error, Result};
use crate::framed::{FramedState, MutationSequence};
use crate::quiver::Quiver;

/// Ordered product `E(y^{|beta_1|})^{eps_1} ... E(y^{|beta_N|})^{eps_N}`
/// over the c-vectors `beta_t` (with signs `eps_t`) met while replaying
/// `seq`, truncated at total degree `order`.
pub fn dt_product(q: &Quiver, seq: &MutationSequence, order: u32) -> Result<QuantumSeries> {
    let space = SeriesSpace::for_quiver(q, order)?;
    dt_product_in(&space, q, seq)
}

/// Same as [`dt_product`] but inside an existing space, so that results of
/// several sequences can be compared directly.
pub fn dt_product_in(space: &Arc<SeriesSpace>, q: &Quiver, seq: &MutationSequence) -> Result<QuantumSeries> {
    seq.check(q.n())?;
    let mut state = FramedState::new(q);
    let mut acc = QuantumSeries::one(space);
    for &k in seq.vertices() {
        let c = state.c_vector(k)?;
        let magnitude: Vec<u32> = c
            .magnitude()
            .iter()
            .map(|x| x.to_u32().ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        let factor = q_exp(space, &magnitude)?;
        let factor = if c.is_green() { factor } else { factor.inv()? };
        acc = acc.mul(&factor)?;
        state = state.mutate(k)?;
    }
    Ok(acc)
}

/// Exact coefficientwise comparison of the products of two sequences.
pub fn sequences_agree(q: &Quiver, a: &MutationSequence, b: &MutationSequence, order: u32) -> Result<bool> {
    let space = SeriesSpace::for_quiver(q, order)?;
    dt_product_in(&space, q, a)?.identity_check(&dt_product_in(&space, q, b)?)
}

//! Quiver mutation, maximal green and reddening sequences, refined
//! Donaldson-Thomas products in a truncated quantum affine space, and
//! brick chains for linearly oriented type A.

pub mod bigjson;
pub mod bricks;
pub mod error;
pub mod framed;
pub mod matrix;
pub mod qdilog;
pub mod quiver;
pub mod search;
pub mod transforms;

pub use bricks::{
    cross_validate, enumerate_maximal_chains, hom_nonzero, is_maximal_forward_orthogonal, BrickSequence,
    CrossValidation, Interval,
};
pub use error::{Error, Result};
pub use framed::{CVector, FramedState, MatrixPair, MutationSequence, Permutation, Sign, Step};
pub use matrix::IntMatrix;
pub use qdilog::{dt_product, q_exp, sequences_agree, LaurentPoly, QuantumSeries, RationalFunction, SeriesSpace, SkewForm};
pub use quiver::{Arrow, Quiver, Subquiver};
pub use search::{
    count_mgs, enumerate_mgs, search, shortest_mgs, source_sequence, verify_sequence, Mode, SearchConfig,
    SearchMode, SearchReport, Strategy, Verification, VerifyFailure,
};
pub use transforms::{c_vector_sequence, check_triangular_extension, restrict_mgs, rotate, ExtensionReport};

//! Recognition of bipartite graphs of Ferrers dimension at most three.
//!
//! A bipartite graph has Ferrers dimension at most three exactly when some
//! ordering of its biadjacency matrix avoids the two 3×3 patterns
//! [`catalog::gamma`] and [`catalog::delta`]. This crate checks that
//! condition, turns a pattern-free ordering into three chain graphs whose
//! intersection is the input ([`decompose::decompose`]), goes the other way
//! from three chain graphs to a pattern-free ordering
//! ([`decompose::order_from_chain_triple`]), and realizes the result as
//! points and lower orthants in three dimensions ([`geometry`]).
//!
//! Every construction is certified before it is returned. The [`oracle`]
//! module holds independent brute-force ground truth (exact Ferrers dimension
//! by covering zeros, exhaustive ordering search, canonical enumeration of
//! small matrices) used to cross-check the characterization.

#![forbid(unsafe_code)]

pub(crate) mod bits;

pub mod catalog;
pub mod chain;
pub mod decompose;
pub mod geometry;
pub mod matrix;
pub mod oracle;
pub mod pattern;
pub mod random;

pub use chain::{chain_ordering, is_chain, threshold_representation, ChainOrdering, ThresholdRepresentation};
pub use decompose::{decompose, order_from_chain_triple, AnnotatedMatrix, Mark, TripleDecomposition};
pub use geometry::{orthant_model, verify_model, OrthantModel};
pub use matrix::{BinaryMatrix, MatrixError, ParseError, Permutation};
pub use pattern::{find_pattern, is_free, matches_at, Cell, Occurrence, Pattern};

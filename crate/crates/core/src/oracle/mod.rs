//! Brute-force ground truth at desk scale.
//!
//! Nothing here relies on the pattern characterization: the Ferrers
//! dimension is computed straight from its definition by covering zeros
//! with chain-graph complements, and freeability by trying orderings.

use thiserror::Error;

mod dimension;
mod enumerate;
mod search;
mod validate;

pub use dimension::{
    ferrers_dimension, ferrers_dimension_with_budget, is_feasible_zero_set, Dimension,
    DimensionCertificate, ZeroSet, DEFAULT_MAX_DIMENSION, DEFAULT_ZERO_BUDGET,
};
pub use enumerate::{canonical_form, enumerate_bipartite, MAX_ENUMERATION_SIDE};
pub use search::{search_free_ordering, search_free_ordering_with_budget, DEFAULT_SEARCH_BUDGET};
pub use validate::{cross_validate, cross_validate_with, CrossValidationReport, Discrepancy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} is {found}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        found: usize,
        budget: usize,
    },
    #[error("cell ({}, {}) is not a zero of the matrix", .row + 1, .col + 1)]
    CellNotZero { row: usize, col: usize },
}

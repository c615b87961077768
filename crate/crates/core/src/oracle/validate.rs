//! Exhaustive cross-check of the pattern characterization against the
//! dimension oracle.

use rayon::prelude::*;
use serde::Serialize;

use super::dimension::{ferrers_dimension_with_budget, Dimension, DEFAULT_ZERO_BUDGET};
use super::enumerate::enumerate_bipartite;
use super::search::{search_free_ordering_with_budget, DEFAULT_SEARCH_BUDGET};
use super::OracleError;
use crate::catalog;
use crate::decompose::decompose;
use crate::matrix::BinaryMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub matrix: Vec<String>,
    pub freeable: bool,
    pub dimension: Dimension,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidationReport {
    pub m: usize,
    pub n: usize,
    pub classes: usize,
    pub freeable: usize,
    pub dim_le_3: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl CrossValidationReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub fn cross_validate(m: usize, n: usize) -> Result<CrossValidationReport, OracleError> {
    cross_validate_with(m, n, DEFAULT_SEARCH_BUDGET, DEFAULT_ZERO_BUDGET)
}

/// For every canonical `m × n` matrix: Γ,Δ-freeable (by search) must agree
/// with Ferrers dimension ≤ 3 (by covering), the dimension certificate must
/// re-verify, and the found ordering must decompose with certification.
pub fn cross_validate_with(
    m: usize,
    n: usize,
    search_budget: usize,
    zero_budget: usize,
) -> Result<CrossValidationReport, OracleError> {
    let classes: Vec<BinaryMatrix> = enumerate_bipartite(m, n)?.collect();
    let outcomes = classes
        .par_iter()
        .map(|a| check_class(a, search_budget, zero_budget))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = CrossValidationReport {
        m,
        n,
        classes: classes.len(),
        freeable: 0,
        dim_le_3: 0,
        discrepancies: Vec::new(),
    };
    for (freeable, dim_le_3, problems) in outcomes {
        report.freeable += freeable as usize;
        report.dim_le_3 += dim_le_3 as usize;
        report.discrepancies.extend(problems);
    }
    Ok(report)
}

fn check_class(
    a: &BinaryMatrix,
    search_budget: usize,
    zero_budget: usize,
) -> Result<(bool, bool, Vec<Discrepancy>), OracleError> {
    let ordering = search_free_ordering_with_budget(a, &catalog::chain3(), search_budget)?;
    let cert = ferrers_dimension_with_budget(a, 4, zero_budget)?;
    let freeable = ordering.is_some();
    let dim_le_3 = cert.dimension.at_most(3);
    let mut problems = Vec::new();
    let mut flag = |reason: String| {
        problems.push(Discrepancy {
            matrix: a.to_row_strings(),
            freeable,
            dimension: cert.dimension,
            reason,
        })
    };
    if !cert.verify(a) {
        flag("dimension certificate does not re-verify".into());
    }
    if freeable != dim_le_3 {
        flag("freeability disagrees with dimension <= 3".into());
    }
    if let Some((rp, cp)) = ordering {
        let ordered = a.permute(&rp, &cp).expect("search returns matching sizes");
        match decompose(&ordered) {
            Ok(dec) => {
                if let Err(e) = dec.certify(&ordered) {
                    flag(format!("decomposition does not certify: {e}"));
                }
            }
            Err(e) => flag(format!("decomposition failed: {e}")),
        }
    }
    Ok((freeable, dim_le_3, problems))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_all_agree() {
        let r = cross_validate(2, 2).unwrap();
        assert_eq!(r.classes, 7);
        assert_eq!(r.freeable, 7);
        assert_eq!(r.dim_le_3, 7);
        assert!(r.is_clean());
    }

    #[test]
    fn report_json_fields() {
        let v = serde_json::to_value(cross_validate(1, 2).unwrap()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["m", "n", "classes", "freeable", "dim_le_3", "discrepancies"]);
    }
}

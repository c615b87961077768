//! Exhaustive search for a pattern-free ordering.

use rayon::prelude::*;

use super::OracleError;
use crate::matrix::{BinaryMatrix, Permutation};
use crate::pattern::{is_free, Pattern};

pub const DEFAULT_SEARCH_BUDGET: usize = 7;

pub fn search_free_ordering(
    a: &BinaryMatrix,
    ps: &[Pattern],
) -> Result<Option<(Permutation, Permutation)>, OracleError> {
    search_free_ordering_with_budget(a, ps, DEFAULT_SEARCH_BUDGET)
}

/// First row/column permutation pair (row order first, both lexicographic)
/// under which `a` is free of every pattern in `ps`.
///
/// Each row order is extended column by column; a column prefix that
/// already contains a pattern is abandoned, since appending columns never
/// removes an occurrence. Row orders are examined in parallel and the
/// lexicographically first success is returned.
pub fn search_free_ordering_with_budget(
    a: &BinaryMatrix,
    ps: &[Pattern],
    budget: usize,
) -> Result<Option<(Permutation, Permutation)>, OracleError> {
    let side = a.rows().max(a.cols());
    if side > budget {
        return Err(OracleError::BudgetExceeded {
            what: "matrix side",
            found: side,
            budget,
        });
    }
    let all_cols: Vec<usize> = (0..a.cols()).collect();
    let found = lex_permutations(a.rows()).par_iter().find_map_first(|rows| {
        let b = a.select(rows, &all_cols);
        let mut prefix = Vec::with_capacity(a.cols());
        let mut used = vec![false; a.cols()];
        extend_columns(&b, ps, &mut prefix, &mut used).then(|| (rows.clone(), prefix))
    });
    Ok(found.map(|(r, c)| {
        (
            Permutation::from_order(r).expect("generated permutation"),
            Permutation::from_order(c).expect("generated permutation"),
        )
    }))
}

fn extend_columns(b: &BinaryMatrix, ps: &[Pattern], prefix: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if prefix.len() == b.cols() {
        return true;
    }
    let all_rows: Vec<usize> = (0..b.rows()).collect();
    for c in 0..b.cols() {
        if used[c] {
            continue;
        }
        prefix.push(c);
        if is_free(&b.select(&all_rows, prefix), ps) {
            used[c] = true;
            if extend_columns(b, ps, prefix, used) {
                return true;
            }
            used[c] = false;
        }
        prefix.pop();
    }
    false
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

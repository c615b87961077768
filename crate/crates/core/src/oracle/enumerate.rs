//! Canonical enumeration of small bipartite graphs.
//!
//! Two matrices are equivalent when they differ by a row and a column
//! permutation. The canonical form is the lexicographically least matrix in
//! the class, comparing rows top to bottom as binary strings.

use super::search::lex_permutations;
use super::OracleError;
use crate::matrix::BinaryMatrix;

pub const MAX_ENUMERATION_SIDE: usize = 4;
/// Largest column count accepted by [`canonical_form`].
const MAX_CANONICAL_COLS: usize = 8;

/// Row `i` as an integer whose most significant bit is column 0.
fn row_codes(a: &BinaryMatrix) -> Vec<u16> {
    (0..a.rows())
        .map(|i| (0..a.cols()).fold(0u16, |acc, j| acc << 1 | a.get(i, j) as u16))
        .collect()
}

fn from_codes(codes: &[u16], cols: usize) -> BinaryMatrix {
    BinaryMatrix::from_fn(codes.len(), cols, |i, j| codes[i] >> (cols - 1 - j) & 1 == 1)
}

/// Least over all column permutations of the rows sorted ascending; sorting
/// rows is the best any row permutation can do for a fixed column order.
fn canonical_codes(codes: &[u16], cols: usize, col_perms: &[Vec<usize>]) -> Vec<u16> {
    col_perms
        .iter()
        .map(|perm| {
            let mut rows: Vec<u16> = codes
                .iter()
                .map(|&r| {
                    perm.iter()
                        .fold(0u16, |acc, &src| acc << 1 | (r >> (cols - 1 - src) & 1))
                })
                .collect();
            rows.sort_unstable();
            rows
        })
        .min()
        .unwrap_or_default()
}

/// Lexicographically least matrix equivalent to `a`, with default labels.
pub fn canonical_form(a: &BinaryMatrix) -> Result<BinaryMatrix, OracleError> {
    if a.cols() > MAX_CANONICAL_COLS {
        return Err(OracleError::BudgetExceeded {
            what: "column count",
            found: a.cols(),
            budget: MAX_CANONICAL_COLS,
        });
    }
    let perms = lex_permutations(a.cols());
    Ok(from_codes(&canonical_codes(&row_codes(a), a.cols(), &perms), a.cols()))
}

/// One canonical representative per equivalence class of `m × n` 0/1
/// matrices, in increasing order.
pub fn enumerate_bipartite(m: usize, n: usize) -> Result<impl Iterator<Item = BinaryMatrix>, OracleError> {
    let side = m.max(n);
    if side > MAX_ENUMERATION_SIDE {
        return Err(OracleError::BudgetExceeded {
            what: "matrix side",
            found: side,
            budget: MAX_ENUMERATION_SIDE,
        });
    }
    let perms = lex_permutations(n);
    let mut out = Vec::new();
    let row_mask = (1u32 << n) - 1;
    for code in 0u32..(1 << (m * n)) {
        let rows: Vec<u16> = (0..m)
            .map(|i| (code >> ((m - 1 - i) * n) & row_mask) as u16)
            .collect();
        if rows.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        if canonical_codes(&rows, n, &perms) == rows {
            out.push(from_codes(&rows, n));
        }
    }
    Ok(out.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_counts() {
        let one: Vec<_> = enumerate_bipartite(1, 1).unwrap().collect();
        assert_eq!(one.len(), 2);
        assert_eq!(one[0].to_row_strings(), ["0"]);
        assert_eq!(one[1].to_row_strings(), ["1"]);

        let row: Vec<Vec<String>> = enumerate_bipartite(1, 2)
            .unwrap()
            .map(|a| a.to_row_strings())
            .collect();
        assert_eq!(row, [["00"], ["01"], ["11"]]);

        assert_eq!(enumerate_bipartite(2, 2).unwrap().count(), 7);
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(
            enumerate_bipartite(5, 1),
            Err(OracleError::BudgetExceeded { found: 5, .. })
        ));
    }

    #[test]
    fn canonical_form_is_class_invariant() {
        let a = BinaryMatrix::parse("100\n011\n010").unwrap();
        let b = BinaryMatrix::parse("110\n001\n100").unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let c = canonical_form(&a).unwrap();
        assert_eq!(canonical_form(&c).unwrap(), c);
    }
}

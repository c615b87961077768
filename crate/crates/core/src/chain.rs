//! Chain graphs: recognition, nested orderings and point/ray representations.

use std::cmp::Reverse;

use serde::Serialize;
use thiserror::Error;

use crate::bits;
use crate::matrix::{BinaryMatrix, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("matrix is not the biadjacency matrix of a chain graph")]
    NotChain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    NeighborhoodsIncreasing,
    NeighborhoodsDecreasing,
}

/// Row and column orders under which neighborhoods are nested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainOrdering {
    pub row_order: Permutation,
    pub col_order: Permutation,
    pub row_direction: Direction,
    pub col_direction: Direction,
}

/// Rows sorted by degree in `direction` (ties by index) if their
/// neighborhoods then form an inclusion chain.
fn nested_row_order(m: &BinaryMatrix, direction: Direction) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..m.rows()).collect();
    match direction {
        Direction::NeighborhoodsIncreasing => order.sort_by_key(|&i| (m.row_degree(i), i)),
        Direction::NeighborhoodsDecreasing => order.sort_by_key(|&i| (Reverse(m.row_degree(i)), i)),
    }
    order
        .windows(2)
        .all(|w| match direction {
            Direction::NeighborhoodsIncreasing => bits::is_subset(m.row(w[0]), m.row(w[1])),
            Direction::NeighborhoodsDecreasing => bits::is_subset(m.row(w[1]), m.row(w[0])),
        })
        .then_some(order)
}

/// Orders with row and column neighborhoods both increasing, or `None` when
/// `m` is not a chain graph.
pub fn chain_ordering(m: &BinaryMatrix) -> Option<ChainOrdering> {
    chain_ordering_directed(
        m,
        Direction::NeighborhoodsIncreasing,
        Direction::NeighborhoodsIncreasing,
    )
}

/// Chain orders with the requested nesting direction on each side.
pub fn chain_ordering_directed(
    m: &BinaryMatrix,
    row_direction: Direction,
    col_direction: Direction,
) -> Option<ChainOrdering> {
    let rows = nested_row_order(m, row_direction)?;
    let cols = nested_row_order(&m.transpose(), col_direction)?;
    Some(ChainOrdering {
        row_order: Permutation::from_order(rows).ok()?,
        col_order: Permutation::from_order(cols).ok()?,
        row_direction,
        col_direction,
    })
}

pub fn is_chain(m: &BinaryMatrix) -> bool {
    nested_row_order(m, Direction::NeighborhoodsIncreasing).is_some()
}

/// Points (rows) and leftward rays (columns) on a line: row `u` is adjacent
/// to column `v` iff `row_values[u] < col_thresholds[v]`.
///
/// Row values are even and thresholds odd, so no value ever ties a threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdRepresentation {
    pub row_values: Vec<i64>,
    pub col_thresholds: Vec<i64>,
}

impl ThresholdRepresentation {
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.row_values[u] < self.col_thresholds[v]
    }

    /// The matrix realized by strict comparison.
    pub fn to_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_fn(self.row_values.len(), self.col_thresholds.len(), |u, v| {
            self.adjacent(u, v)
        })
    }
}

/// Rows ranked by decreasing degree get values `0, 2, 4, ...`; a column of
/// degree `d` is adjacent to exactly the `d` top-ranked rows and gets
/// threshold `2d - 1`.
pub fn threshold_representation(m: &BinaryMatrix) -> Result<ThresholdRepresentation, ChainError> {
    let decreasing = nested_row_order(m, Direction::NeighborhoodsDecreasing).ok_or(ChainError::NotChain)?;
    let mut row_values = vec![0i64; m.rows()];
    // Equal-degree rows of a chain graph have equal neighborhoods, so ties
    // only need to be broken consistently.
    for (rank, &i) in decreasing.iter().enumerate() {
        row_values[i] = 2 * rank as i64;
    }
    let t = m.transpose();
    let col_thresholds = (0..m.cols())
        .map(|v| 2 * t.row_degree(v) as i64 - 1)
        .collect();
    Ok(ThresholdRepresentation {
        row_values,
        col_thresholds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::parse(&rows.join("\n")).unwrap()
    }

    /// Any two rows and two columns forming the 2×2 permutation pattern.
    fn has_switch(a: &BinaryMatrix) -> bool {
        for r1 in 0..a.rows() {
            for r2 in 0..a.rows() {
                for c1 in 0..a.cols() {
                    for c2 in 0..a.cols() {
                        if r1 != r2
                            && c1 != c2
                            && a.get(r1, c1)
                            && a.get(r2, c2)
                            && !a.get(r1, c2)
                            && !a.get(r2, c1)
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn ordering_examples() {
        let a = m(&["11", "01"]);
        let ord = chain_ordering(&a).unwrap();
        assert_eq!(ord.row_order.as_slice(), [1, 0]);
        assert_eq!(ord.col_order.as_slice(), [0, 1]);

        assert!(chain_ordering(&m(&["10", "01"])).is_none());

        let ord = chain_ordering(&BinaryMatrix::ones(3, 2)).unwrap();
        assert!(ord.row_order.is_identity() && ord.col_order.is_identity());
    }

    #[test]
    fn is_chain_examples() {
        assert!(!is_chain(&m(&["10", "01"])));
        assert!(is_chain(&m(&["111", "101", "001"])));
        assert!(!is_chain(&m(&["011", "101", "110"])));
        assert!(is_chain(&BinaryMatrix::zeros(2, 3)));
    }

    #[test]
    fn threshold_examples() {
        let full = threshold_representation(&BinaryMatrix::ones(2, 2)).unwrap();
        assert_eq!(full.row_values, vec![0, 2]);
        assert_eq!(full.col_thresholds, vec![3, 3]);

        let a = m(&["11", "01"]);
        let t = threshold_representation(&a).unwrap();
        assert_eq!(t.row_values, vec![0, 2]);
        assert_eq!(t.col_thresholds, vec![1, 3]);
        assert!(t.to_matrix().same_entries(&a));

        let z = threshold_representation(&BinaryMatrix::zeros(1, 1)).unwrap();
        assert_eq!(z.row_values, vec![0]);
        assert_eq!(z.col_thresholds, vec![-1]);
        assert!(!z.adjacent(0, 0));

        assert_eq!(threshold_representation(&m(&["10", "01"])), Err(ChainError::NotChain));
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"row_values":[0,2],"col_thresholds":[1,3]}"#
        );
    }

    #[test]
    fn empty_rows_sort_first() {
        let a = m(&["011", "000", "111"]);
        let ord = chain_ordering(&a).unwrap();
        assert_eq!(ord.row_order.as_slice(), [1, 0, 2]);
        let p = a.permute(&ord.row_order, &ord.col_order).unwrap();
        assert_eq!(p.to_row_strings(), ["000", "011", "111"]);
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = BinaryMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c)
                .prop_map(move |v| BinaryMatrix::from_fn(r, c, |i, j| v[i * c + j]))
        })
    }

    fn arb_chain(max: usize) -> impl Strategy<Value = BinaryMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            (
                proptest::collection::vec(0i64..20, r),
                proptest::collection::vec(0i64..20, c),
            )
                .prop_map(move |(x, y)| BinaryMatrix::from_fn(r, c, |i, j| x[i] < y[j]))
        })
    }

    proptest! {
        #[test]
        fn chain_iff_no_switch(a in arb_matrix(6)) {
            prop_assert_eq!(is_chain(&a), !has_switch(&a));
        }

        #[test]
        fn ordering_nests_both_sides(a in arb_chain(12)) {
            let ord = chain_ordering(&a).unwrap();
            let p = a.permute(&ord.row_order, &ord.col_order).unwrap();
            for i in 1..p.rows() {
                prop_assert!(bits::is_subset(p.row(i - 1), p.row(i)));
            }
            let t = p.transpose();
            for j in 1..t.rows() {
                prop_assert!(bits::is_subset(t.row(j - 1), t.row(j)));
            }
        }

        #[test]
        fn threshold_round_trip(a in arb_chain(20)) {
            let t = threshold_representation(&a).unwrap();
            prop_assert!(t.to_matrix().same_entries(&a));
            for &x in &t.row_values {
                prop_assert!(t.col_thresholds.iter().all(|&y| y != x));
            }
        }
    }
}

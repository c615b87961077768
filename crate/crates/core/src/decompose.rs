//! Certified conversion between Γ,Δ-free orderings and chain triples.
//!
//! [`decompose`] takes a matrix that is Γ,Δ-free as ordered and writes it
//! as the Hadamard product of three chain-graph matrices:
//!
//! 1. `A1` closes each row leftward from its last one, `A2` closes each
//!    column downward from its first one. Their product `A12` dominates the
//!    input and is free of `D = (1 * / 0 1)`.
//! 2. Zeros of the input are annotated as `0'` (also zero in `A12`) or `0*`
//!    (one in `A12`), giving an [`AnnotatedMatrix`].
//! 3. [`third_chain_order`] reorders columns so no row has a one left of a
//!    `0*`; in that order every row of `A3` is the suffix starting at its
//!    first one, which zeroes out exactly the `0*` cells.
//!
//! Each step's invariants are re-checked before the result is returned.
//! [`order_from_chain_triple`] runs the converse: it orders the product of
//! three chain matrices so that it avoids Γ and Δ.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::bits;
use crate::catalog;
use crate::chain::{chain_ordering_directed, is_chain, Direction};
use crate::matrix::{BinaryMatrix, MatrixError, Permutation};
use crate::pattern::{find_embedding, first_occurrence, is_free, Occurrence, SymbolPlanes};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("matrix contains {pattern} at rows {:?} cols {:?}", one_based(&.occurrence.rows), one_based(&.occurrence.cols))]
    NotFree {
        pattern: &'static str,
        occurrence: Occurrence,
    },
    #[error("input has a one at ({}, {}) where the dominating matrix has a zero", .row + 1, .col + 1)]
    NotDominated { row: usize, col: usize },
    #[error("check `{check}` failed: {detail}")]
    InvariantViolation { check: &'static str, detail: String },
    #[error("input {input} is not a chain graph")]
    NotChain { input: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn violation(check: &'static str, detail: impl Into<String>) -> DecomposeError {
    DecomposeError::InvariantViolation {
        check,
        detail: detail.into(),
    }
}

/// Zero-or-one entry of the annotated matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mark {
    One,
    /// A zero that `A12` also has.
    ZeroPrime,
    /// A zero that `A12` fills with a one; `A3` must supply it.
    ZeroStar,
}

impl Mark {
    fn plane(self) -> usize {
        match self {
            Mark::One => 0,
            Mark::ZeroPrime => 1,
            Mark::ZeroStar => 2,
        }
    }

    fn symbol(self) -> char {
        match self {
            Mark::One => '1',
            Mark::ZeroPrime => '\'',
            Mark::ZeroStar => '*',
        }
    }
}

/// The input matrix with each zero marked `0'` or `0*`.
#[derive(Clone, PartialEq, Eq)]
pub struct AnnotatedMatrix {
    rows: usize,
    cols: usize,
    marks: Vec<Mark>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl AnnotatedMatrix {
    /// Parses rows over `1` (one), `'` (`0'`) and `*` (`0*`). No invariant
    /// is checked.
    pub fn parse(text: &str) -> Result<AnnotatedMatrix, crate::matrix::ParseError> {
        let grid = crate::matrix::parse_grid(text, &['1', '\'', '*'], false)?;
        let marks = grid
            .rows
            .iter()
            .flatten()
            .map(|&c| match c {
                '1' => Mark::One,
                '\'' => Mark::ZeroPrime,
                _ => Mark::ZeroStar,
            })
            .collect();
        let rows = grid.rows.len();
        Ok(AnnotatedMatrix {
            rows,
            cols: grid.cols,
            marks,
            row_labels: crate::matrix::default_labels('u', rows),
            col_labels: crate::matrix::default_labels('v', grid.cols),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Mark {
        self.marks[i * self.cols + j]
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).symbol()).collect())
            .collect()
    }

    /// The underlying 0/1 matrix.
    pub fn ones(&self) -> BinaryMatrix {
        BinaryMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) == Mark::One)
            .with_labels(self.row_labels.clone(), self.col_labels.clone())
            .expect("labels were validated on construction")
    }

    fn planes(&self) -> SymbolPlanes {
        let mut planes = SymbolPlanes::new(self.rows, self.cols, 3);
        for i in 0..self.rows {
            for j in 0..self.cols {
                bits::set(planes.row_mut(self.get(i, j).plane(), i), j, true);
            }
        }
        planes
    }

    /// Column `j`'s rows holding `mark`, as a bit set over rows.
    fn column_set(&self, j: usize, mark: Mark) -> Vec<u64> {
        let mut out = vec![0; bits::words_for(self.rows)];
        for i in 0..self.rows {
            if self.get(i, j) == mark {
                bits::set(&mut out, i, true);
            }
        }
        out
    }

    /// Every `0*` has a one strictly above it in its column and strictly to
    /// its right in its row.
    pub fn check_star_zeros_witnessed(&self) -> Result<(), DecomposeError> {
        let mut first_one_row = vec![usize::MAX; self.cols];
        let mut last_one_col = vec![None; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) == Mark::One {
                    first_one_row[j] = first_one_row[j].min(i);
                    last_one_col[i] = Some(j);
                }
            }
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != Mark::ZeroStar {
                    continue;
                }
                let above = first_one_row[j] < i;
                let right = last_one_col[i].is_some_and(|c| c > j);
                if !(above && right) {
                    return Err(violation(
                        "star_zeros_witnessed",
                        format!("0* at ({}, {}) lacks a one above and to its right", i + 1, j + 1),
                    ));
                }
            }
        }
        Ok(())
    }

    /// None of the four 2×2 configurations `(0* 1 / 1 0*)`, `(1 0* / 0* 1)`,
    /// `(1 * / 0' 1)`, `(0* * / 0' 0*)` occurs.
    pub fn check_forbidden_configurations(&self) -> Result<(), DecomposeError> {
        const ONE: Option<usize> = Some(0);
        const PRIME: Option<usize> = Some(1);
        const STAR: Option<usize> = Some(2);
        let templates: [(&str, [[Option<usize>; 2]; 2]); 4] = [
            ("(0* 1 / 1 0*)", [[STAR, ONE], [ONE, STAR]]),
            ("(1 0* / 0* 1)", [[ONE, STAR], [STAR, ONE]]),
            ("(1 * / 0' 1)", [[ONE, None], [PRIME, ONE]]),
            ("(0* * / 0' 0*)", [[STAR, None], [PRIME, STAR]]),
        ];
        let planes = self.planes();
        for (name, t) in templates {
            let template: Vec<Vec<Option<usize>>> = t.iter().map(|r| r.to_vec()).collect();
            if let Some(occ) = find_embedding(&planes, &template) {
                return Err(violation(
                    "forbidden_configurations_absent",
                    format!(
                        "{name} at rows {:?} cols {:?}",
                        one_based(&occ.rows),
                        one_based(&occ.cols)
                    ),
                ));
            }
        }
        Ok(())
    }

    /// In column order `order`, no row has a one left of a `0*`.
    pub fn check_no_one_before_star(&self, order: &Permutation) -> Result<(), DecomposeError> {
        for i in 0..self.rows {
            let mut seen_one = None;
            for (pos, &j) in order.as_slice().iter().enumerate() {
                match self.get(i, j) {
                    Mark::One if seen_one.is_none() => seen_one = Some(j),
                    Mark::ZeroStar => {
                        if let Some(k) = seen_one {
                            return Err(violation(
                                "reordered_no_one_before_star",
                                format!(
                                    "row {}: one at column {} precedes 0* at column {} (position {})",
                                    i + 1,
                                    k + 1,
                                    j + 1,
                                    pos + 1
                                ),
                            ));
                        }
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AnnotatedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnnotatedMatrix({})", self.to_row_strings().join("/"))
    }
}

/// Row-wise leftward closure: `A1[i][j] = 1` iff row `i` has a one at or
/// after column `j`.
pub fn row_closure(a: &BinaryMatrix) -> BinaryMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        let last = bits::last_set(a.row(i));
        bits::fill_prefix(out.row_mut(i), last.map_or(0, |j| j + 1));
    }
    out
}

/// Column-wise downward closure: `A2[i][j] = 1` iff column `j` has a one at
/// or above row `i`.
pub fn column_closure(a: &BinaryMatrix) -> BinaryMatrix {
    let mut out = a.clone();
    let mut acc = vec![0u64; a.words()];
    for i in 0..a.rows() {
        for (x, w) in acc.iter_mut().zip(a.row(i)) {
            *x |= w;
        }
        out.row_mut(i).copy_from_slice(&acc);
    }
    out
}

/// Marks each zero of `a` as `0'` where `a12` is zero and `0*` where it is
/// one, then checks the annotated invariants.
pub fn annotate(a: &BinaryMatrix, a12: &BinaryMatrix) -> Result<AnnotatedMatrix, DecomposeError> {
    a.check_compatible(a12)?;
    let mut marks = Vec::with_capacity(a.rows() * a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            marks.push(match (a.get(i, j), a12.get(i, j)) {
                (true, true) => Mark::One,
                (true, false) => return Err(DecomposeError::NotDominated { row: i, col: j }),
                (false, false) => Mark::ZeroPrime,
                (false, true) => Mark::ZeroStar,
            });
        }
    }
    let at = AnnotatedMatrix {
        rows: a.rows(),
        cols: a.cols(),
        marks,
        row_labels: a.row_labels().to_vec(),
        col_labels: a.col_labels().to_vec(),
    };
    at.check_star_zeros_witnessed()?;
    at.check_forbidden_configurations()?;
    Ok(at)
}

/// Column order for the third chain graph.
///
/// Columns are appended one at a time in their original order. A column
/// holding `0*` in rows `S` is then moved immediately before the leftmost
/// already-placed column with a one in some row of `S`; if there is none it
/// stays at the end.
pub fn third_chain_order(at: &AnnotatedMatrix) -> Permutation {
    let ones: Vec<Vec<u64>> = (0..at.cols).map(|j| at.column_set(j, Mark::One)).collect();
    let mut order: Vec<usize> = Vec::with_capacity(at.cols);
    for j in 0..at.cols {
        let stars = at.column_set(j, Mark::ZeroStar);
        if stars.iter().any(|&w| w != 0) {
            if let Some(pos) = order.iter().position(|&k| bits::intersects(&ones[k], &stars)) {
                order.insert(pos, j);
                continue;
            }
        }
        order.push(j);
    }
    Permutation::from_order(order).expect("each column is placed once")
}

/// In column order `order`, each row of `A3` is the suffix starting at the
/// row's first one; rows without ones stay empty. Returned in the original
/// column order.
pub fn third_chain(at: &AnnotatedMatrix, order: &Permutation) -> BinaryMatrix {
    let mut out = BinaryMatrix::zeros(at.rows, at.cols)
        .with_labels(at.row_labels.clone(), at.col_labels.clone())
        .expect("labels were validated on construction");
    for i in 0..at.rows {
        let cols = order.as_slice();
        if let Some(start) = cols.iter().position(|&j| at.get(i, j) == Mark::One) {
            for &j in &cols[start..] {
                out.set(i, j, true);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

/// Three chain-graph matrices whose Hadamard product is the source matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleDecomposition {
    pub a1: BinaryMatrix,
    pub a2: BinaryMatrix,
    pub a3: BinaryMatrix,
    /// Column order used to build `a3`.
    pub l3: Permutation,
    pub checks: Vec<Check>,
}

impl TripleDecomposition {
    pub fn product(&self) -> Result<BinaryMatrix, MatrixError> {
        self.a1.hadamard(&self.a2)?.hadamard(&self.a3)
    }

    pub fn is_certified(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// Re-checks the decomposition against `a`: every factor is a chain
    /// graph, dominates `a`, and the product equals `a`.
    pub fn certify(&self, a: &BinaryMatrix) -> Result<(), DecomposeError> {
        for (k, f) in [&self.a1, &self.a2, &self.a3].into_iter().enumerate() {
            a.check_compatible(f)?;
            if !is_chain(f) {
                return Err(violation("factors_are_chain", format!("factor {} is not a chain graph", k + 1)));
            }
            if !a.leq(f)? {
                return Err(violation("factors_dominate_input", format!("factor {} misses an edge", k + 1)));
            }
        }
        if &self.product()? != a {
            return Err(violation("product_equals_input", "A1*A2*A3 differs from the input"));
        }
        Ok(())
    }
}

impl Serialize for TripleDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TripleDecomposition", 8)?;
        st.serialize_field("A1", &self.a1.to_row_strings())?;
        st.serialize_field("A2", &self.a2.to_row_strings())?;
        st.serialize_field("A3", &self.a3.to_row_strings())?;
        st.serialize_field("L3", &self.l3)?;
        st.serialize_field("certified", &self.is_certified())?;
        st.serialize_field("checks", &self.checks)?;
        st.serialize_field("row_labels", self.a1.row_labels())?;
        st.serialize_field("col_labels", self.a1.col_labels())?;
        st.end()
    }
}

/// Decomposes a matrix that is Γ,Δ-free in its given order into three
/// chain graphs.
pub fn decompose(a: &BinaryMatrix) -> Result<TripleDecomposition, DecomposeError> {
    if let Some((k, occurrence)) = first_occurrence(a, &catalog::chain3()) {
        return Err(DecomposeError::NotFree {
            pattern: ["gamma", "delta"][k],
            occurrence,
        });
    }
    let mut checks = vec![Check { name: "input_free_of_gamma_delta", passed: true }];
    let mut pass = |name| checks.push(Check { name, passed: true });

    let a1 = row_closure(a);
    let a2 = column_closure(a);
    let a12 = a1.hadamard(&a2)?;
    if !is_free(&a12, &[catalog::d_pattern()]) {
        return Err(violation("closure_product_d_free", "A1*A2 contains (1 * / 0 1)"));
    }
    pass("closure_product_d_free");
    if !a.leq(&a12)? {
        return Err(violation("closure_product_dominates_input", "A is not below A1*A2"));
    }
    pass("closure_product_dominates_input");

    let at = annotate(a, &a12)?;
    pass("star_zeros_witnessed");
    pass("forbidden_configurations_absent");

    let l3 = third_chain_order(&at);
    at.check_no_one_before_star(&l3)?;
    pass("reordered_no_one_before_star");

    let a3 = third_chain(&at, &l3);
    let dec = TripleDecomposition {
        a1,
        a2,
        a3,
        l3,
        checks: Vec::new(),
    };
    dec.certify(a)?;
    pass("factors_are_chain");
    pass("factors_dominate_input");
    pass("product_equals_input");
    Ok(TripleDecomposition { checks, ..dec })
}

/// Row and column orders under which `c1 ⊙ c2 ⊙ c3` avoids Γ and Δ.
///
/// Rows follow `c1`'s chain order with neighborhoods growing downward (each
/// column of `c1` is a run of ones at the bottom); columns follow `c2`'s
/// chain order with neighborhoods shrinking rightward (each row of `c2` is a
/// run of ones at the left). Then `c1 ⊙ c2` avoids `(1 * / 0 1)`, which is
/// verified; the other three direction combinations are tried if it fails.
pub fn order_from_chain_triple(
    c1: &BinaryMatrix,
    c2: &BinaryMatrix,
    c3: &BinaryMatrix,
) -> Result<(Permutation, Permutation), DecomposeError> {
    c1.check_compatible(c2)?;
    c1.check_compatible(c3)?;
    use Direction::{NeighborhoodsDecreasing as Dec, NeighborhoodsIncreasing as Inc};
    for (k, c) in [c1, c2, c3].into_iter().enumerate() {
        if !is_chain(c) {
            return Err(DecomposeError::NotChain { input: k + 1 });
        }
    }
    let c12 = c1.hadamard(c2)?;
    let d = [catalog::d_pattern()];
    for row_dir in [Inc, Dec] {
        for col_dir in [Dec, Inc] {
            let rp = chain_ordering_directed(c1, row_dir, col_dir)
                .expect("c1 is a chain graph")
                .row_order;
            let cp = chain_ordering_directed(c2, row_dir, col_dir)
                .expect("c2 is a chain graph")
                .col_order;
            if is_free(&c12.permute(&rp, &cp)?, &d) {
                return Ok((rp, cp));
            }
        }
    }
    Err(violation(
        "chain_pair_order_d_free",
        "no direction combination makes C1*C2 free of (1 * / 0 1)",
    ))
}

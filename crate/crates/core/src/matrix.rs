//! Ordered 0/1 biadjacency matrices with vertex labels.
//!
//! Rows are the vertices of side U and columns the vertices of side V. Every
//! operation carries the labels along so that certificates can name the
//! original vertices after any reordering.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("input contains no rows")]
    EmptyInput,
    #[error("line {line}: expected {expected} entries, found {found}")]
    RaggedRows { line: usize, expected: usize, found: usize },
    #[error("line {line}, position {position}: illegal character {found:?}")]
    IllegalCharacter { line: usize, position: usize, found: char },
    #[error("line {line}: bad label header: {reason}")]
    BadLabels { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("operands carry different vertex labels")]
    LabelMismatch,
    #[error("permutation of size {found} applied to {expected} indices")]
    SizeMismatch { expected: usize, found: usize },
    #[error("index ({row}, {col}) out of bounds for {rows}x{cols} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("not a permutation: {0:?}")]
    NotBijection(Vec<usize>),
    #[error("{side} labels: {reason}")]
    BadLabels { side: &'static str, reason: String },
}

/// A reordering of `0..n`: position `k` of the result holds source index
/// `order[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_order(order: Vec<usize>) -> Result<Self, MatrixError> {
        let mut seen = vec![false; order.len()];
        for &i in &order {
            if i >= order.len() || std::mem::replace(&mut seen[i], true) {
                return Err(MatrixError::NotBijection(order));
            }
        }
        Ok(Permutation(order))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Source index placed at position `pos`.
    pub fn source(&self, pos: usize) -> usize {
        self.0[pos]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &i)| k == i)
    }

    /// The permutation equivalent to applying `self` and then `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation(next.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (pos, &src) in self.0.iter().enumerate() {
            inv[src] = pos;
        }
        Permutation(inv)
    }

    pub fn reversed(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl Serialize for Permutation {
    /// Serialized 1-based, matching the vertex numbering of the text format.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// Dense 0/1 matrix stored as packed bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

pub(crate) fn default_labels(prefix: char, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn check_labels(side: &'static str, labels: &[String], n: usize) -> Result<(), MatrixError> {
    if labels.len() != n {
        return Err(MatrixError::BadLabels {
            side,
            reason: format!("expected {n} labels, found {}", labels.len()),
        });
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(MatrixError::BadLabels {
                side,
                reason: format!("duplicate label {l:?}"),
            });
        }
    }
    Ok(())
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = bits::words_for(cols);
        BinaryMatrix {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
            row_labels: default_labels('u', rows),
            col_labels: default_labels('v', cols),
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            bits::fill_prefix(m.row_mut(i), cols);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(
            rows.iter().all(|r| r.as_ref().len() == cols),
            "ragged rows"
        );
        Self::from_fn(rows.len(), cols, |i, j| rows[i].as_ref()[j] != 0)
    }

    pub fn with_labels(
        mut self,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self, MatrixError> {
        check_labels("row", &row_labels, self.rows)?;
        check_labels("column", &col_labels, self.cols)?;
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        bits::get(self.row(i), j)
    }

    pub fn try_get(&self, i: usize, j: usize) -> Result<bool, MatrixError> {
        if i < self.rows && j < self.cols {
            Ok(self.get(i, j))
        } else {
            Err(MatrixError::IndexOutOfBounds {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        bits::set(self.row_mut(i), j, value);
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Number of ones in row `i`.
    pub fn row_degree(&self, i: usize) -> usize {
        bits::count(self.row(i))
    }

    pub fn count_ones(&self) -> usize {
        bits::count(&self.bits)
    }

    /// Column indices holding a one in row `i`.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(i);
        std::iter::successors(bits::next_set(row, 0), move |&j| bits::next_set(row, j + 1))
    }

    /// Positions of all zero entries in row-major order.
    pub fn zero_cells(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.get(i, j))
            .collect()
    }

    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.rows * self.cols
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i));
        t.row_labels.clone_from(&self.col_labels);
        t.col_labels.clone_from(&self.row_labels);
        t
    }

    /// Complement of row `i`, restricted to the valid columns.
    pub(crate) fn row_complement(&self, i: usize) -> Vec<u64> {
        let mut out = vec![0; self.words];
        bits::fill_prefix(&mut out, self.cols);
        for (o, w) in out.iter_mut().zip(self.row(i)) {
            *o &= !w;
        }
        out
    }

    fn check_same_shape(&self, other: &BinaryMatrix) -> Result<(), MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    /// Checks shape and labels agree, as required to combine two biadjacency
    /// matrices of the same vertex set.
    pub fn check_compatible(&self, other: &BinaryMatrix) -> Result<(), MatrixError> {
        self.check_same_shape(other)?;
        if self.row_labels != other.row_labels || self.col_labels != other.col_labels {
            return Err(MatrixError::LabelMismatch);
        }
        Ok(())
    }

    /// Entrywise product: the biadjacency matrix of the edge intersection.
    pub fn hadamard(&self, other: &BinaryMatrix) -> Result<BinaryMatrix, MatrixError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (o, w) in out.bits.iter_mut().zip(&other.bits) {
            *o &= w;
        }
        Ok(out)
    }

    /// Entrywise `self <= other`.
    pub fn leq(&self, other: &BinaryMatrix) -> Result<bool, MatrixError> {
        self.check_same_shape(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    /// Equal entries, ignoring labels.
    pub fn same_entries(&self, other: &BinaryMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.bits == other.bits
    }

    /// Reorders rows and columns (with their labels).
    pub fn permute(&self, rp: &Permutation, cp: &Permutation) -> Result<BinaryMatrix, MatrixError> {
        if rp.len() != self.rows {
            return Err(MatrixError::SizeMismatch {
                expected: self.rows,
                found: rp.len(),
            });
        }
        if cp.len() != self.cols {
            return Err(MatrixError::SizeMismatch {
                expected: self.cols,
                found: cp.len(),
            });
        }
        Ok(self.select(rp.as_slice(), cp.as_slice()))
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub(crate) fn select(&self, rows: &[usize], cols: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(rows.len(), cols.len());
        for (ni, &i) in rows.iter().enumerate() {
            let src = self.row(i);
            let dst = out.row_mut(ni);
            for (nj, &j) in cols.iter().enumerate() {
                if bits::get(src, j) {
                    bits::set(dst, nj, true);
                }
            }
        }
        out.row_labels = rows.iter().map(|&i| self.row_labels[i].clone()).collect();
        out.col_labels = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        out
    }

    /// Rows as strings over `{0,1}`.
    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect()
    }

    /// Text form accepted by [`BinaryMatrix::parse`], with a label header
    /// unless the labels are the generated defaults.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.row_labels != default_labels('u', self.rows)
            || self.col_labels != default_labels('v', self.cols)
        {
            out.push_str(&format!(
                "labels: {} ; {}\n",
                self.row_labels.join(","),
                self.col_labels.join(",")
            ));
        }
        for r in self.to_row_strings() {
            out.push_str(&r);
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<BinaryMatrix, ParseError> {
        let grid = parse_grid(text, &['0', '1'], true)?;
        let mut m = BinaryMatrix::from_fn(grid.rows.len(), grid.cols, |i, j| grid.rows[i][j] == '1');
        if let Some((line, rl, cl)) = grid.labels {
            m = m
                .with_labels(rl, cl)
                .map_err(|e| ParseError::BadLabels {
                    line,
                    reason: e.to_string(),
                })?;
        }
        Ok(m)
    }
}

impl FromStr for BinaryMatrix {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BinaryMatrix::parse(s)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix({}x{}", self.rows, self.cols)?;
        for r in self.to_row_strings() {
            write!(f, " {r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_row_strings() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

pub(crate) struct Grid {
    pub rows: Vec<Vec<char>>,
    pub cols: usize,
    /// (line number, row labels, column labels)
    pub labels: Option<(usize, Vec<String>, Vec<String>)>,
}

/// Shared line parser for matrices and patterns.
pub(crate) fn parse_grid(text: &str, alphabet: &[char], allow_labels: bool) -> Result<Grid, ParseError> {
    let mut rows: Vec<Vec<char>> = Vec::new();
    let mut labels = None;
    let mut width = None;
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if allow_labels && !seen_content {
            if let Some(rest) = line.strip_prefix("labels:") {
                labels = Some(parse_label_header(line_no, rest)?);
                seen_content = true;
                continue;
            }
        }
        seen_content = true;
        let mut row = Vec::new();
        for (pos, ch) in line.chars().enumerate() {
            if ch == ' ' || ch == '\t' {
                continue;
            }
            if !alphabet.contains(&ch) {
                return Err(ParseError::IllegalCharacter {
                    line: line_no,
                    position: pos + 1,
                    found: ch,
                });
            }
            row.push(ch);
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(ParseError::RaggedRows {
                    line: line_no,
                    expected: w,
                    found: row.len(),
                })
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    let cols = match width {
        Some(w) if w > 0 => w,
        _ => return Err(ParseError::EmptyInput),
    };
    if let Some((line, ref rl, ref cl)) = labels {
        if rl.len() != rows.len() || cl.len() != cols {
            return Err(ParseError::BadLabels {
                line,
                reason: format!(
                    "header names {}x{} vertices but matrix is {}x{}",
                    rl.len(),
                    cl.len(),
                    rows.len(),
                    cols
                ),
            });
        }
    }
    Ok(Grid { rows, cols, labels })
}

fn parse_label_header(line: usize, rest: &str) -> Result<(usize, Vec<String>, Vec<String>), ParseError> {
    let (u, v) = rest.split_once(';').ok_or_else(|| ParseError::BadLabels {
        line,
        reason: "expected `labels: u1,u2,... ; v1,v2,...`".into(),
    })?;
    let split = |s: &str| -> Vec<String> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect()
    };
    Ok((line, split(u), split(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::parse(&rows.join("\n")).unwrap()
    }

    #[test]
    fn parse_examples() {
        let a = BinaryMatrix::parse("01\n10").unwrap();
        assert_eq!(a, BinaryMatrix::from_rows(&[[0, 1], [1, 0]]));
        assert_eq!(a.row_labels(), ["u1", "u2"]);
        assert_eq!(a.col_labels(), ["v1", "v2"]);

        let one = BinaryMatrix::parse("1").unwrap();
        assert_eq!((one.rows(), one.cols()), (1, 1));
        assert!(one.get(0, 0));

        assert_eq!(
            BinaryMatrix::parse("01\n1"),
            Err(ParseError::RaggedRows { line: 2, expected: 2, found: 1 })
        );
    }

    #[test]
    fn parse_errors_and_comments() {
        assert_eq!(BinaryMatrix::parse(""), Err(ParseError::EmptyInput));
        assert_eq!(BinaryMatrix::parse("# only a comment\n\n"), Err(ParseError::EmptyInput));
        assert!(matches!(
            BinaryMatrix::parse("0x1"),
            Err(ParseError::IllegalCharacter { line: 1, position: 2, found: 'x' })
        ));
        assert!(matches!(
            BinaryMatrix::parse("*1"),
            Err(ParseError::IllegalCharacter { found: '*', .. })
        ));
        let a = BinaryMatrix::parse("# c6\n011\n\n101\r\n110\n").unwrap();
        assert_eq!(a.to_row_strings(), ["011", "101", "110"]);
    }

    #[test]
    fn label_header() {
        let a = BinaryMatrix::parse("labels: a, b ; x,y,z\n011\n101").unwrap();
        assert_eq!(a.row_labels(), ["a", "b"]);
        assert_eq!(a.col_labels(), ["x", "y", "z"]);
        assert_eq!(BinaryMatrix::parse(&a.to_text()).unwrap(), a);

        assert!(matches!(
            BinaryMatrix::parse("labels: a ; x\n01"),
            Err(ParseError::BadLabels { line: 1, .. })
        ));
        assert!(matches!(
            BinaryMatrix::parse("labels: a,a ; x\n0\n1"),
            Err(ParseError::BadLabels { .. })
        ));
    }

    #[test]
    fn hadamard_examples() {
        let a = m(&["01", "10"]);
        assert_eq!(a.hadamard(&BinaryMatrix::ones(2, 2)).unwrap(), a);
        assert_eq!(
            m(&["11", "10"]).hadamard(&m(&["01", "11"])).unwrap(),
            m(&["01", "10"])
        );
        assert_eq!(a.hadamard(&BinaryMatrix::zeros(2, 2)).unwrap(), BinaryMatrix::zeros(2, 2));
    }

    #[test]
    fn hadamard_rejects_mismatch() {
        let a = m(&["01", "10"]);
        assert!(matches!(
            a.hadamard(&BinaryMatrix::ones(2, 3)),
            Err(MatrixError::DimensionMismatch { .. })
        ));
        let b = BinaryMatrix::ones(2, 2)
            .with_labels(vec!["p".into(), "q".into()], vec!["v1".into(), "v2".into()])
            .unwrap();
        assert_eq!(a.hadamard(&b), Err(MatrixError::LabelMismatch));
    }

    #[test]
    fn permute_examples() {
        let a = m(&["01", "10"]);
        let id = Permutation::identity(2);
        assert_eq!(a.permute(&id, &id).unwrap(), a);

        let swap = Permutation::from_order(vec![1, 0]).unwrap();
        let swapped = a.permute(&swap, &id).unwrap();
        assert_eq!(swapped.to_row_strings(), ["10", "01"]);
        assert_eq!(swapped.row_labels(), ["u2", "u1"]);

        let b = m(&["010", "101"]);
        let cp = Permutation::from_order(vec![1, 0, 2]).unwrap();
        assert_eq!(
            b.permute(&Permutation::identity(2), &cp).unwrap().to_row_strings(),
            ["100", "011"]
        );
        assert_eq!(
            b.permute(&Permutation::identity(3), &cp),
            Err(MatrixError::SizeMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn leq_examples() {
        let a = m(&["011", "101"]);
        assert!(a.leq(&a).unwrap());
        assert!(BinaryMatrix::zeros(2, 3).leq(&a).unwrap());
        assert!(!m(&["10"]).leq(&m(&["01"])).unwrap());
        assert!(a.leq(&BinaryMatrix::ones(3, 2)).is_err());
    }

    #[test]
    fn permutation_checks_bijection() {
        assert!(Permutation::from_order(vec![0, 0]).is_err());
        assert!(Permutation::from_order(vec![0, 2]).is_err());
        let p = Permutation::from_order(vec![2, 0, 1]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.one_based(), vec![3, 1, 2]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,1,2]");
    }

    #[test]
    fn try_get_bounds() {
        let a = m(&["01"]);
        assert_eq!(a.try_get(0, 1), Ok(true));
        assert!(matches!(a.try_get(1, 0), Err(MatrixError::IndexOutOfBounds { .. })));
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let a = BinaryMatrix::from_fn(3, 130, |i, j| (i + j) % 3 == 0);
        let t = a.transpose();
        assert_eq!(t.transpose(), a);
        assert_eq!(a.count_ones(), t.count_ones());
        let c = a.row_complement(0);
        assert_eq!(bits::count(&c) + a.row_degree(0), 130);
        assert_eq!(a.row_ones(0).count(), a.row_degree(0));
    }
}

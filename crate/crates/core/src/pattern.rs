//! `{0,1,*}` patterns and order-preserving submatrix containment.
//!
//! A matrix contains a pattern when some row subsequence and some column
//! subsequence select a submatrix that agrees with the pattern on every
//! non-star cell. Rows and columns are never permuted here.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::bits;
use crate::matrix::{parse_grid, BinaryMatrix, MatrixError, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Zero,
    One,
    Star,
}

impl Cell {
    pub fn accepts(self, value: bool) -> bool {
        match self {
            Cell::Zero => !value,
            Cell::One => value,
            Cell::Star => true,
        }
    }

    fn as_char(self) -> char {
        match self {
            Cell::Zero => '0',
            Cell::One => '1',
            Cell::Star => '*',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
}

impl Pattern {
    pub fn parse(text: &str) -> Result<Pattern, ParseError> {
        let grid = parse_grid(text, &['0', '1', '*'], false)?;
        let cells = grid
            .rows
            .iter()
            .flatten()
            .map(|&c| match c {
                '0' => Cell::Zero,
                '1' => Cell::One,
                _ => Cell::Star,
            })
            .collect();
        Ok(Pattern {
            rows: grid.rows.len(),
            cols: grid.cols,
            cells,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Cell {
        self.cells[i * self.cols + j]
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).as_char()).collect())
            .collect()
    }

    /// The pattern as a template over the zero (0) and one (1) symbol planes.
    fn template(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| match self.get(i, j) {
                        Cell::Zero => Some(0),
                        Cell::One => Some(1),
                        Cell::Star => None,
                    })
                    .collect()
            })
            .collect()
    }
}

impl FromStr for Pattern {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::parse(s)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({})", self.to_row_strings().join("/"))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_row_strings() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Where a pattern embeds: strictly increasing row and column indices
/// (0-based; serialized 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Occurrence {
    /// Returns `None` unless both index lists are strictly increasing.
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Option<Occurrence> {
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        (increasing(&rows) && increasing(&cols)).then_some(Occurrence { rows, cols })
    }
}

impl Serialize for Occurrence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Occurrence", 2)?;
        st.serialize_field("rows", &self.rows.iter().map(|i| i + 1).collect::<Vec<_>>())?;
        st.serialize_field("cols", &self.cols.iter().map(|j| j + 1).collect::<Vec<_>>())?;
        st.end()
    }
}

/// True iff the submatrix of `m` selected by `occ` matches `p`.
pub fn matches_at(m: &BinaryMatrix, p: &Pattern, occ: &Occurrence) -> Result<bool, MatrixError> {
    if occ.rows.len() != p.rows() || occ.cols.len() != p.cols() {
        return Err(MatrixError::SizeMismatch {
            expected: p.rows() * p.cols(),
            found: occ.rows.len() * occ.cols.len(),
        });
    }
    for (pi, &i) in occ.rows.iter().enumerate() {
        for (pj, &j) in occ.cols.iter().enumerate() {
            if !p.get(pi, pj).accepts(m.try_get(i, j)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lexicographically least occurrence of `p` in `m` (by row tuple, then
/// column tuple), if any.
pub fn find_pattern(m: &BinaryMatrix, p: &Pattern) -> Option<Occurrence> {
    if p.rows() > m.rows() || p.cols() > m.cols() {
        return None;
    }
    find_embedding(&SymbolPlanes::of_matrix(m), &p.template())
}

/// First pattern of `ps` (in slice order) that occurs in `m`, with its
/// least occurrence.
pub fn first_occurrence(m: &BinaryMatrix, ps: &[Pattern]) -> Option<(usize, Occurrence)> {
    if ps.is_empty() {
        return None;
    }
    let planes = SymbolPlanes::of_matrix(m);
    ps.iter().enumerate().find_map(|(k, p)| {
        if p.rows() > m.rows() || p.cols() > m.cols() {
            return None;
        }
        find_embedding(&planes, &p.template()).map(|occ| (k, occ))
    })
}

pub fn is_free(m: &BinaryMatrix, ps: &[Pattern]) -> bool {
    first_occurrence(m, ps).is_none()
}

/// Per-symbol column masks of every row of a grid over a small alphabet.
///
/// Plane `s`, row `r` holds the set of columns whose entry in row `r` is
/// symbol `s`.
pub(crate) struct SymbolPlanes {
    rows: usize,
    cols: usize,
    words: usize,
    planes: Vec<Vec<u64>>,
}

impl SymbolPlanes {
    pub(crate) fn new(rows: usize, cols: usize, symbols: usize) -> Self {
        let words = bits::words_for(cols);
        SymbolPlanes {
            rows,
            cols,
            words,
            planes: vec![vec![0; rows * words]; symbols],
        }
    }

    fn of_matrix(m: &BinaryMatrix) -> Self {
        let mut planes = SymbolPlanes::new(m.rows(), m.cols(), 2);
        for i in 0..m.rows() {
            planes.row_mut(0, i).copy_from_slice(&m.row_complement(i));
            planes.row_mut(1, i).copy_from_slice(m.row(i));
        }
        planes
    }

    #[inline]
    pub(crate) fn row(&self, symbol: usize, r: usize) -> &[u64] {
        &self.planes[symbol][r * self.words..(r + 1) * self.words]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, symbol: usize, r: usize) -> &mut [u64] {
        &mut self.planes[symbol][r * self.words..(r + 1) * self.words]
    }
}

/// Least embedding of `template` (cells name a symbol plane, `None` is a
/// wildcard) into `planes`.
///
/// Row tuples are tried in lexicographic order. After fixing a row prefix,
/// `cand[pc]` is the set of columns compatible with pattern column `pc` on
/// the fixed rows; the prefix survives only if a greedy left-to-right pick
/// through the candidate sets succeeds, which is exact because each
/// candidate set only shrinks as rows are added. On a full row tuple the
/// greedy pick is the least column tuple.
pub(crate) fn find_embedding(
    planes: &SymbolPlanes,
    template: &[Vec<Option<usize>>],
) -> Option<Occurrence> {
    let prows = template.len();
    let pcols = template.first().map_or(0, Vec::len);
    if prows == 0 || pcols == 0 || prows > planes.rows || pcols > planes.cols {
        return None;
    }
    let words = planes.words;
    let mut stack = vec![vec![0u64; pcols * words]; prows + 1];
    for pc in 0..pcols {
        bits::fill_prefix(&mut stack[0][pc * words..(pc + 1) * words], planes.cols);
    }
    let mut search = Embedder {
        planes,
        template,
        pcols,
        words,
        stack,
        chosen: Vec::with_capacity(prows),
        witness: vec![0; pcols],
    };
    search.descend(0, 0).then(|| Occurrence {
        rows: search.chosen,
        cols: search.witness,
    })
}

struct Embedder<'a> {
    planes: &'a SymbolPlanes,
    template: &'a [Vec<Option<usize>>],
    pcols: usize,
    words: usize,
    stack: Vec<Vec<u64>>,
    chosen: Vec<usize>,
    witness: Vec<usize>,
}

impl Embedder<'_> {
    fn descend(&mut self, depth: usize, start: usize) -> bool {
        let prows = self.template.len();
        let words = self.words;
        let last = self.planes.rows - (prows - depth);
        for r in start..=last {
            {
                let (head, tail) = self.stack.split_at_mut(depth + 1);
                let cur = &head[depth];
                let next = &mut tail[0];
                for pc in 0..self.pcols {
                    let span = pc * words..(pc + 1) * words;
                    let dst = &mut next[span.clone()];
                    let src = &cur[span];
                    match self.template[depth][pc] {
                        None => dst.copy_from_slice(src),
                        Some(s) => {
                            let row = self.planes.row(s, r);
                            for ((d, a), b) in dst.iter_mut().zip(src).zip(row) {
                                *d = a & b;
                            }
                        }
                    }
                }
            }
            if !self.greedy(depth + 1) {
                continue;
            }
            self.chosen.push(r);
            if depth + 1 == prows || self.descend(depth + 1, r + 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }

    fn greedy(&mut self, level: usize) -> bool {
        let cand = &self.stack[level];
        let mut from = 0;
        for pc in 0..self.pcols {
            match bits::next_set(&cand[pc * self.words..(pc + 1) * self.words], from) {
                Some(c) => {
                    self.witness[pc] = c;
                    from = c + 1;
                }
                None => return false,
            }
        }
        true
    }
}

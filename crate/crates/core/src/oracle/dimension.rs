//! Exact Ferrers dimension by covering zeros.
//!
//! `G` is the intersection of `d` chain graphs `G_k ⊇ G` iff the zeros of
//! its matrix are covered by `d` sets `Z_k`, each of which is the zero set
//! of a chain graph ("feasible"). Feasibility is not closed under taking
//! subsets, so every subset of the zeros is tested and covers may overlap.

use std::collections::{BTreeSet, HashSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::OracleError;
use crate::matrix::BinaryMatrix;

pub const DEFAULT_ZERO_BUDGET: usize = 20;
pub const DEFAULT_MAX_DIMENSION: usize = 4;
/// Hard ceiling on the zero count: the search keeps two flags per subset.
const MAX_ZERO_BITS: usize = 24;

/// A set of zero positions of a reference matrix (0-based; serialized
/// 1-based as `[row, col]` pairs).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroSet {
    cells: Vec<(usize, usize)>,
}

impl ZeroSet {
    pub fn new(cells: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<_> = cells.into_iter().collect();
        ZeroSet {
            cells: set.into_iter().collect(),
        }
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

impl Serialize for ZeroSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self.cells.iter().map(|&(i, j)| [i + 1, j + 1]).collect();
        pairs.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Exact(usize),
    /// Larger than the given bound.
    Exceeds(usize),
}

impl Dimension {
    pub fn at_most(self, d: usize) -> bool {
        matches!(self, Dimension::Exact(k) if k <= d)
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Dimension::Exact(d) => s.serialize_u64(d as u64),
            Dimension::Exceeds(d) => s.serialize_str(&format!("exceeds {d}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionCertificate {
    pub dimension: Dimension,
    pub d_max: usize,
    /// One feasible zero set per chain factor; empty unless the dimension
    /// is exact.
    pub cover: Vec<ZeroSet>,
}

impl DimensionCertificate {
    /// Re-checks the cover independently of how it was found: every set is
    /// feasible, the sets cover exactly the zeros, and there are as many
    /// sets as the claimed dimension.
    pub fn verify(&self, a: &BinaryMatrix) -> bool {
        let Dimension::Exact(d) = self.dimension else {
            return self.cover.is_empty();
        };
        if self.cover.len() != d {
            return false;
        }
        if !self
            .cover
            .iter()
            .all(|z| is_feasible_zero_set(a, z).unwrap_or(false))
        {
            return false;
        }
        let union: BTreeSet<_> = self.cover.iter().flat_map(|z| z.cells.iter().copied()).collect();
        union.into_iter().eq(a.zero_cells())
    }
}

impl Serialize for DimensionCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DimensionCertificate", 3)?;
        st.serialize_field("dimension", &self.dimension)?;
        st.serialize_field("d_max", &self.d_max)?;
        st.serialize_field("cover", &self.cover)?;
        st.end()
    }
}

/// Whether the matrix that is zero exactly on `z` is a chain graph: no two
/// cells `(r1,c2)`, `(r2,c1)` of `z` whose opposite corners `(r1,c1)` and
/// `(r2,c2)` both lie outside `z`.
pub fn is_feasible_zero_set(a: &BinaryMatrix, z: &ZeroSet) -> Result<bool, OracleError> {
    for &(row, col) in &z.cells {
        if a.try_get(row, col).unwrap_or(true) {
            return Err(OracleError::CellNotZero { row, col });
        }
    }
    let inside: HashSet<(usize, usize)> = z.cells.iter().copied().collect();
    for &(r1, c2) in &z.cells {
        for &(r2, c1) in &z.cells {
            if r1 != r2 && c1 != c2 && !inside.contains(&(r1, c1)) && !inside.contains(&(r2, c2)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn ferrers_dimension(a: &BinaryMatrix, d_max: usize) -> Result<DimensionCertificate, OracleError> {
    ferrers_dimension_with_budget(a, d_max, DEFAULT_ZERO_BUDGET)
}

/// Smallest `d <= d_max` such that the zeros of `a` are covered by `d`
/// feasible zero sets.
pub fn ferrers_dimension_with_budget(
    a: &BinaryMatrix,
    d_max: usize,
    zero_budget: usize,
) -> Result<DimensionCertificate, OracleError> {
    let zeros = a.zero_cells();
    let budget = zero_budget.min(MAX_ZERO_BITS);
    if zeros.len() > budget {
        return Err(OracleError::BudgetExceeded {
            what: "zero count",
            found: zeros.len(),
            budget,
        });
    }
    let certificate = |dimension, masks: &[u32]| DimensionCertificate {
        dimension,
        d_max,
        cover: masks
            .iter()
            .map(|&m| ZeroSet::new(bits_of(m).map(|e| zeros[e])))
            .collect(),
    };
    if zeros.is_empty() {
        return Ok(certificate(Dimension::Exact(0), &[]));
    }

    let feasible = FeasibilityTable::new(&zeros);
    let full = feasible.full;
    if feasible.is_feasible(full) {
        return Ok(if d_max >= 1 {
            certificate(Dimension::Exact(1), &[full])
        } else {
            certificate(Dimension::Exceeds(d_max), &[])
        });
    }
    let maximal = feasible.maximal_sets();
    let mut picked = Vec::new();
    for d in 2..=d_max {
        if cover(&maximal, full, 0, d, &mut picked) {
            return Ok(certificate(Dimension::Exact(d), &picked));
        }
    }
    Ok(certificate(Dimension::Exceeds(d_max), &[]))
}

fn bits_of(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |e| mask >> e & 1 == 1)
}

/// Depth-limited search for `depth` sets covering `full`. Branches on the
/// lowest uncovered zero.
fn cover(sets: &[u32], full: u32, covered: u32, depth: usize, picked: &mut Vec<u32>) -> bool {
    if covered == full {
        return true;
    }
    if depth == 0 {
        return false;
    }
    let e = (full & !covered).trailing_zeros();
    for &s in sets.iter().filter(|&&s| s >> e & 1 == 1) {
        picked.push(s);
        if cover(sets, full, covered | s, depth - 1, picked) {
            return true;
        }
        picked.pop();
    }
    false
}

/// Feasibility of every subset of the zeros, indexed by bit mask over the
/// zero list.
struct FeasibilityTable {
    full: u32,
    feasible: Vec<bool>,
}

impl FeasibilityTable {
    fn new(zeros: &[(usize, usize)]) -> Self {
        // Only rows and columns holding a zero can take part in a 2×2
        // obstruction, so the check runs on that compressed submatrix.
        let rows: Vec<usize> = zeros.iter().map(|c| c.0).collect::<BTreeSet<_>>().into_iter().collect();
        let cols: Vec<usize> = zeros.iter().map(|c| c.1).collect::<BTreeSet<_>>().into_iter().collect();
        let cells: Vec<(usize, u32)> = zeros
            .iter()
            .map(|&(r, c)| {
                (
                    rows.binary_search(&r).unwrap(),
                    1u32 << cols.binary_search(&c).unwrap(),
                )
            })
            .collect();
        let all_cols: u32 = if cols.len() == 32 { !0 } else { (1 << cols.len()) - 1 };
        let n = 1usize << zeros.len();
        let mut feasible = vec![false; n];
        let mut row_bits = vec![0u32; rows.len()];
        for (mask, slot) in feasible.iter_mut().enumerate() {
            row_bits.fill(all_cols);
            for (e, &(r, bit)) in cells.iter().enumerate() {
                if mask >> e & 1 == 1 {
                    row_bits[r] &= !bit;
                }
            }
            *slot = rows_nested(&mut row_bits);
        }
        FeasibilityTable {
            full: (n - 1) as u32,
            feasible,
        }
    }

    fn is_feasible(&self, mask: u32) -> bool {
        self.feasible[mask as usize]
    }

    /// Feasible sets with no feasible strict superset.
    fn maximal_sets(&self) -> Vec<u32> {
        let n = self.feasible.len();
        let z = n.trailing_zeros();
        // below[m]: m is contained in some feasible set.
        let mut below = self.feasible.clone();
        for mask in (0..n).rev() {
            if below[mask] {
                continue;
            }
            below[mask] = (0..z).any(|b| mask >> b & 1 == 0 && below[mask | 1 << b]);
        }
        (0..n)
            .filter(|&m| self.feasible[m] && (0..z).all(|b| m >> b & 1 == 1 || !below[m | 1 << b]))
            .map(|m| m as u32)
            .collect()
    }
}

/// Whether rows (as column bit sets) form an inclusion chain.
fn rows_nested(rows: &mut [u32]) -> bool {
    rows.sort_unstable_by_key(|r| r.count_ones());
    rows.windows(2).all(|w| w[0] & !w[1] == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::parse(&rows.join("\n")).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        let a = m(&["01", "10"]);
        assert!(is_feasible_zero_set(&a, &ZeroSet::new([])).unwrap());
        assert!(!is_feasible_zero_set(&a, &ZeroSet::new([(0, 0), (1, 1)])).unwrap());
        assert!(is_feasible_zero_set(&a, &ZeroSet::new([(0, 0)])).unwrap());
        assert_eq!(
            is_feasible_zero_set(&a, &ZeroSet::new([(0, 1)])),
            Err(OracleError::CellNotZero { row: 0, col: 1 })
        );
        assert!(is_feasible_zero_set(&a, &ZeroSet::new([(5, 5)])).is_err());
    }

    #[test]
    fn dimension_examples() {
        let chain = m(&["11", "01"]);
        let c = ferrers_dimension(&chain, 4).unwrap();
        assert_eq!(c.dimension, Dimension::Exact(1));
        assert!(c.verify(&chain));

        let sw = m(&["01", "10"]);
        let c = ferrers_dimension(&sw, 4).unwrap();
        assert_eq!(c.dimension, Dimension::Exact(2));
        assert!(c.verify(&sw));

        let c6 = m(&["011", "101", "110"]);
        assert_eq!(ferrers_dimension(&c6, 4).unwrap().dimension, Dimension::Exact(3));

        let j4 = m(&["0111", "1011", "1101", "1110"]);
        let c = ferrers_dimension(&j4, 4).unwrap();
        assert_eq!(c.dimension, Dimension::Exact(4));
        assert!(c.verify(&j4));
        assert_eq!(ferrers_dimension(&j4, 3).unwrap().dimension, Dimension::Exceeds(3));
    }

    #[test]
    fn all_ones_has_dimension_zero() {
        let c = ferrers_dimension(&BinaryMatrix::ones(3, 3), 4).unwrap();
        assert_eq!(c.dimension, Dimension::Exact(0));
        assert!(c.cover.is_empty());
        assert!(c.verify(&BinaryMatrix::ones(3, 3)));
    }

    #[test]
    fn budget_enforced() {
        let err = ferrers_dimension(&BinaryMatrix::zeros(5, 5), 4).unwrap_err();
        assert_eq!(
            err,
            OracleError::BudgetExceeded { what: "zero count", found: 25, budget: 20 }
        );
        assert!(ferrers_dimension_with_budget(&BinaryMatrix::zeros(4, 5), 4, 20).is_ok());
    }

    #[test]
    fn verify_rejects_bad_covers() {
        let sw = m(&["01", "10"]);
        let bad = DimensionCertificate {
            dimension: Dimension::Exact(1),
            d_max: 4,
            cover: vec![ZeroSet::new([(0, 0), (1, 1)])],
        };
        assert!(!bad.verify(&sw));
        let short = DimensionCertificate {
            dimension: Dimension::Exact(1),
            d_max: 4,
            cover: vec![ZeroSet::new([(0, 0)])],
        };
        assert!(!short.verify(&sw));
    }

    #[test]
    fn json_shape() {
        let c = ferrers_dimension(&m(&["01", "10"]), 4).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["dimension"], 2);
        assert_eq!(v["cover"], serde_json::json!([[[1, 1]], [[2, 2]]]));
        let e = ferrers_dimension(&m(&["0111", "1011", "1101", "1110"]), 3).unwrap();
        assert_eq!(serde_json::to_value(&e).unwrap()["dimension"], "exceeds 3");
    }
}

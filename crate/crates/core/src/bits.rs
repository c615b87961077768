//! Word-level helpers for dense bit rows.

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

#[inline]
pub(crate) fn get(row: &[u64], idx: usize) -> bool {
    (row[idx / WORD_BITS] >> (idx % WORD_BITS)) & 1 == 1
}

#[inline]
pub(crate) fn set(row: &mut [u64], idx: usize, value: bool) {
    let mask = 1u64 << (idx % WORD_BITS);
    if value {
        row[idx / WORD_BITS] |= mask;
    } else {
        row[idx / WORD_BITS] &= !mask;
    }
}

/// Sets bits `0..len` and clears the padding above `len`.
pub(crate) fn fill_prefix(row: &mut [u64], len: usize) {
    for (w, word) in row.iter_mut().enumerate() {
        let lo = w * WORD_BITS;
        *word = if lo + WORD_BITS <= len {
            !0
        } else if lo >= len {
            0
        } else {
            (1u64 << (len - lo)) - 1
        };
    }
}

/// Index of the first set bit at or after `from`.
#[inline]
pub(crate) fn next_set(row: &[u64], from: usize) -> Option<usize> {
    let mut w = from / WORD_BITS;
    if w >= row.len() {
        return None;
    }
    let mut cur = row[w] & (!0u64 << (from % WORD_BITS));
    loop {
        if cur != 0 {
            return Some(w * WORD_BITS + cur.trailing_zeros() as usize);
        }
        w += 1;
        if w >= row.len() {
            return None;
        }
        cur = row[w];
    }
}

/// Index of the last set bit, if any.
pub(crate) fn last_set(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
}

#[inline]
pub(crate) fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub(crate) fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

#[inline]
pub(crate) fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_across_words() {
        let mut row = vec![0u64; 3];
        set(&mut row, 5, true);
        set(&mut row, 70, true);
        set(&mut row, 130, true);
        assert_eq!(next_set(&row, 0), Some(5));
        assert_eq!(next_set(&row, 6), Some(70));
        assert_eq!(next_set(&row, 71), Some(130));
        assert_eq!(next_set(&row, 131), None);
        assert_eq!(next_set(&row, 500), None);
        assert_eq!(last_set(&row), Some(130));
        assert_eq!(count(&row), 3);
    }

    #[test]
    fn prefix_fill_masks_padding() {
        let mut row = vec![0u64; 2];
        fill_prefix(&mut row, 65);
        assert_eq!(row, vec![!0, 1]);
        fill_prefix(&mut row, 64);
        assert_eq!(row, vec![!0, 0]);
        fill_prefix(&mut row, 0);
        assert_eq!(row, vec![0, 0]);
    }
}

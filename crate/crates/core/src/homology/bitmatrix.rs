//! Dense bit-packed vectors and matrices over the two-element field.

use std::fmt;

/// A vector over F2 of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.toggle(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// Inner product `Σ a_i b_i` over F2.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// Row-major bit-packed matrix over F2.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Self { cols, rows }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_indices(self.nrows(), (0..self.nrows()).filter(|&i| self.get(i, j)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.xor_assign(b);
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix { cols: other.cols, rows }
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        BitVec::from_indices(self.nrows(), (0..self.nrows()).filter(|&i| self.rows[i].dot(v)))
    }

    /// Rank by row elimination.
    pub fn rank(&self) -> usize {
        let mut basis = Echelon::new(self.cols, 0);
        self.rows.iter().filter(|r| basis.insert((*r).clone(), BitVec::zeros(0)).is_none()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r:?}")?;
        }
        Ok(())
    }
}

/// Incrementally built echelon basis whose vectors carry tag vectors that
/// record the combination of inserted inputs they represent.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    tag_len: usize,
    pivots: Vec<usize>,
    vectors: Vec<BitVec>,
    tags: Vec<BitVec>,
}

impl Echelon {
    pub fn new(len: usize, tag_len: usize) -> Self {
        Self {
            len,
            tag_len,
            pivots: Vec::new(),
            vectors: Vec::new(),
            tags: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Reduces `(v, tag)` against the basis.
    pub fn reduce(&self, mut v: BitVec, mut tag: BitVec) -> (BitVec, BitVec) {
        debug_assert_eq!(v.len(), self.len);
        for ((&p, b), t) in self.pivots.iter().zip(&self.vectors).zip(&self.tags) {
            if v.get(p) {
                v.xor_assign(b);
                tag.xor_assign(t);
            }
        }
        (v, tag)
    }

    /// Inserts `v`; returns the reduced tag when `v` lies in the span.
    pub fn insert(&mut self, v: BitVec, tag: BitVec) -> Option<BitVec> {
        debug_assert_eq!(tag.len(), self.tag_len);
        let (v, tag) = self.reduce(v, tag);
        match v.first_one() {
            None => Some(tag),
            Some(p) => {
                self.pivots.push(p);
                self.vectors.push(v);
                self.tags.push(tag);
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_rank() {
        assert_eq!(BitMatrix::identity(70).rank(), 70);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn swap_plus_identity_has_rank_one() {
        let mut t = BitMatrix::zeros(2, 2);
        t.set(0, 1, true);
        t.set(1, 0, true);
        assert_eq!(t.add(&BitMatrix::identity(2)).rank(), 1);
        assert_eq!(t.mul(&t), BitMatrix::identity(2));
    }

    fn naive_rank(rows: &[Vec<bool>], cols: usize) -> usize {
        let mut m: Vec<Vec<bool>> = rows.to_vec();
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..m.len()).find(|&i| m[i][c]) {
                m.swap(rank, p);
                for i in 0..m.len() {
                    if i != rank && m[i][c] {
                        let pivot = m[rank].clone();
                        for (x, y) in m[i].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    proptest! {
        #[test]
        fn rank_matches_naive_elimination(rows in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 70), 0..12)) {
            let m = BitMatrix::from_rows(70, rows.iter().map(|r| BitVec::from_indices(70, r.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))).collect());
            prop_assert_eq!(m.rank(), naive_rank(&rows, 70));
            prop_assert_eq!(m.transpose().rank(), m.rank());
        }
    }
}

//! Faces as sorted vertex sets.
//!
//! A [`Face`] is a finite set of vertex indices. It is stored as a bitset
//! whose trailing zero words are always trimmed, so structural equality and
//! hashing coincide with set equality. Iteration always yields vertices in
//! strictly increasing order, which is the canonical sequence form of a face.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

type Words = SmallVec<[u64; 2]>;

/// A set of vertex indices; the empty face has dimension −1.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Face {
    words: Words,
}

impl Face {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(v: usize) -> Self {
        let mut f = Self::empty();
        f.insert(v);
        f
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut f = Self::empty();
        for v in vertices {
            f.insert(v);
        }
        f
    }

    /// Builds a face from the low `n` bits of a mask.
    pub fn from_mask(mask: u128) -> Self {
        let mut words: Words = SmallVec::new();
        words.push(mask as u64);
        words.push((mask >> 64) as u64);
        let mut f = Self { words };
        f.trim();
        f
    }

    /// Returns the face as a 128-bit mask, or `None` if it uses a vertex ≥ 128.
    pub fn to_mask(&self) -> Option<u128> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0] as u128),
            2 => Some(self.words[0] as u128 | ((self.words[1] as u128) << 64)),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Dimension `|F| - 1`.
    #[inline]
    pub fn dim(&self) -> isize {
        self.len() as isize - 1
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v >> 6)
            .is_some_and(|w| (w >> (v & 63)) & 1 == 1)
    }

    pub fn insert(&mut self, v: usize) {
        let w = v >> 6;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (v & 63);
    }

    pub fn remove(&mut self, v: usize) {
        let w = v >> 6;
        if w < self.words.len() {
            self.words[w] &= !(1 << (v & 63));
            self.trim();
        }
    }

    pub fn with(&self, v: usize) -> Self {
        let mut f = self.clone();
        f.insert(v);
        f
    }

    pub fn without(&self, v: usize) -> Self {
        let mut f = self.clone();
        f.remove(v);
        f
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.words.len() > other.words.len() {
            return false;
        }
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Face) -> Face {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(short.words.iter()) {
            *w |= s;
        }
        Face { words }
    }

    pub fn intersection(&self, other: &Face) -> Face {
        let mut f = Face {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        };
        f.trim();
        f
    }

    pub fn difference(&self, other: &Face) -> Face {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(other.words.iter()) {
            *w &= !o;
        }
        let mut f = Face { words };
        f.trim();
        f
    }

    /// Number of common vertices.
    pub fn intersection_len(&self, other: &Face) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Vertices in increasing order.
    pub fn iter(&self) -> FaceIter<'_> {
        FaceIter {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min_vertex(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn max_vertex(&self) -> Option<usize> {
        let w = self.words.len().checked_sub(1)?;
        Some(w * 64 + 63 - self.words[w].leading_zeros() as usize)
    }

    /// The codimension-one faces `F \ {v}`, in increasing order of `v`.
    pub fn boundary(&self) -> impl Iterator<Item = Face> + '_ {
        self.iter().map(move |v| self.without(v))
    }

    /// All subsets of this face (including ∅ and the face itself).
    pub fn subsets(&self) -> impl Iterator<Item = Face> + '_ {
        let verts = self.vertices();
        assert!(verts.len() < 64, "face too large for subset enumeration");
        (0u64..(1u64 << verts.len())).map(move |m| {
            Face::from_vertices(
                verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (m >> i) & 1 == 1)
                    .map(|(_, &v)| v),
            )
        })
    }

    /// Image of this face under a vertex map.
    pub fn map(&self, perm: &[usize]) -> Face {
        Face::from_vertices(self.iter().map(|v| perm[v]))
    }

    /// Lexicographic comparison of the increasing vertex sequences.
    pub fn lex_cmp(&self, other: &Face) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for Face {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Face::from_vertices(iter)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let verts = Vec::<usize>::deserialize(deserializer)?;
        Ok(Face::from_vertices(verts))
    }
}

pub struct FaceIter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for FaceIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_face_has_dimension_minus_one() {
        let f = Face::empty();
        assert_eq!(f.dim(), -1);
        assert!(f.is_subset(&Face::singleton(3)));
        assert_eq!(f.iter().count(), 0);
    }

    #[test]
    fn vertices_iterate_in_increasing_order() {
        let f = Face::from_vertices([130, 5, 64, 0, 5]);
        assert_eq!(f.vertices(), vec![0, 5, 64, 130]);
        assert_eq!(f.max_vertex(), Some(130));
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn removal_trims_storage() {
        let a = Face::from_vertices([1, 100]).without(100);
        assert_eq!(a, Face::singleton(1));
        assert_eq!(a.to_mask(), Some(2));
    }

    #[test]
    fn lex_order_matches_sequences() {
        let a = Face::from_vertices([0, 5]);
        let b = Face::from_vertices([0, 1, 9]);
        assert!(b < a);
        assert!(Face::empty() < b);
    }

    fn arb_face() -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0usize..150, 0..12)
    }

    proptest! {
        #[test]
        fn set_operations_agree_with_btreeset(a in arb_face(), b in arb_face()) {
            use std::collections::BTreeSet;
            let sa: BTreeSet<usize> = a.iter().copied().collect();
            let sb: BTreeSet<usize> = b.iter().copied().collect();
            let fa = Face::from_vertices(a);
            let fb = Face::from_vertices(b);
            prop_assert_eq!(fa.union(&fb).vertices(), sa.union(&sb).copied().collect::<Vec<_>>());
            prop_assert_eq!(fa.intersection(&fb).vertices(), sa.intersection(&sb).copied().collect::<Vec<_>>());
            prop_assert_eq!(fa.difference(&fb).vertices(), sa.difference(&sb).copied().collect::<Vec<_>>());
            prop_assert_eq!(fa.is_subset(&fb), sa.is_subset(&sb));
            prop_assert_eq!(fa.is_disjoint(&fb), sa.is_disjoint(&sb));
            prop_assert_eq!(fa.intersection_len(&fb), sa.intersection(&sb).count());
            prop_assert_eq!(fa.cmp(&fb), sa.iter().cmp(sb.iter()));
        }
    }
}

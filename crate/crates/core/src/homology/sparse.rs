//! Sparse column reduction over F2 with clearing.

use super::bitmatrix::{BitMatrix, BitVec};

/// Column-major sparse matrix; each column holds its sorted row indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseColumns {
    nrows: usize,
    cols: Vec<Vec<u32>>,
}

impl SparseColumns {
    pub fn new(nrows: usize, cols: Vec<Vec<u32>>) -> Self {
        debug_assert!(cols
            .iter()
            .all(|c| c.windows(2).all(|w| w[0] < w[1]) && c.last().is_none_or(|&r| (r as usize) < nrows)));
        Self { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> SparseColumns {
        let mut out = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &i in c {
                out[i as usize].push(j as u32);
            }
        }
        SparseColumns {
            nrows: self.cols.len(),
            cols: out,
        }
    }

    pub fn to_dense(&self) -> BitMatrix {
        let columns: Vec<BitVec> = self
            .cols
            .iter()
            .map(|c| BitVec::from_indices(self.nrows, c.iter().map(|&i| i as usize)))
            .collect();
        BitMatrix::from_columns(self.nrows, &columns)
    }

    /// Column-wise product `self · other` over F2.
    pub fn mul(&self, other: &SparseColumns) -> SparseColumns {
        assert_eq!(self.ncols(), other.nrows);
        let cols = other
            .cols
            .iter()
            .map(|c| {
                let mut acc: Vec<u32> = Vec::new();
                for &k in c {
                    acc = symmetric_difference(&acc, &self.cols[k as usize]);
                }
                acc
            })
            .collect();
        SparseColumns {
            nrows: self.nrows,
            cols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}

pub(crate) fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Ranks of a chain of matrices in which the row set of `mats[i]` is the
/// column set of `mats[i + 1]` and the composite of consecutive maps is zero.
/// A pivot row of `mats[i]` marks a column of `mats[i + 1]` that reduces to
/// zero, so that column is skipped.
pub fn ranks_with_clearing(mats: &[SparseColumns]) -> Vec<usize> {
    let mut ranks = Vec::with_capacity(mats.len());
    let mut cleared: Vec<bool> = Vec::new();
    for (idx, m) in mats.iter().enumerate() {
        if idx > 0 {
            debug_assert_eq!(cleared.len(), m.ncols());
        }
        let mut owner: Vec<u32> = vec![u32::MAX; m.nrows()];
        let mut reduced: Vec<Vec<u32>> = vec![Vec::new(); m.ncols()];
        let mut next_cleared = vec![false; m.nrows()];
        let mut rank = 0;
        for j in 0..m.ncols() {
            if cleared.get(j).copied().unwrap_or(false) {
                continue;
            }
            let mut col = m.column(j).to_vec();
            while let Some(&low) = col.last() {
                let o = owner[low as usize];
                if o == u32::MAX {
                    break;
                }
                col = symmetric_difference(&col, &reduced[o as usize]);
            }
            if let Some(&low) = col.last() {
                owner[low as usize] = j as u32;
                next_cleared[low as usize] = true;
                reduced[j] = col;
                rank += 1;
            }
        }
        ranks.push(rank);
        cleared = next_cleared;
    }
    ranks
}

/// Rank of a single matrix.
pub fn rank(m: &SparseColumns) -> usize {
    ranks_with_clearing(std::slice::from_ref(m))[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_matrix() -> impl Strategy<Value = SparseColumns> {
        (1usize..20).prop_flat_map(|nrows| {
            proptest::collection::vec(proptest::collection::btree_set(0..nrows as u32, 0..5), 0..20)
                .prop_map(move |cols| SparseColumns::new(nrows, cols.into_iter().map(|s| s.into_iter().collect()).collect()))
        })
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(m in arb_matrix()) {
            prop_assert_eq!(rank(&m), m.to_dense().rank());
            prop_assert_eq!(rank(&m.transpose()), rank(&m));
        }
    }
}

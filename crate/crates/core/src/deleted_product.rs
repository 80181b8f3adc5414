//! k-fold deleted products as regular cell complexes.
//!
//! A cell is a k-tuple `(σ_1, …, σ_k)` of non-empty, pairwise disjoint faces
//! of the base; its dimension is `Σ dim σ_i`. The cellular boundary over F2 is
//! `Σ_i Σ_{v ∈ σ_i, |σ_i| ≥ 2} (…, σ_i ∖ v, …)`. The chain complex is augmented
//! by a single cell below the vertices, the empty tuple.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::face::Face;
use crate::homology::sparse::SparseColumns;
use crate::homology::{BettiVector, ChainComplexF2};
use crate::matroid::Matroid;

/// Default maximum number of cells.
pub const DEFAULT_CELL_BUDGET: usize = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("k must be at least 1")]
    BadK,
    #[error("deleted product exceeds the cell budget of {0}")]
    TooManyCells(usize),
}

/// A product of relative interiors; the empty tuple is the augmentation cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductCell {
    pub factors: Vec<Face>,
}

impl ProductCell {
    pub fn dim(&self) -> isize {
        if self.factors.is_empty() {
            return -1;
        }
        self.factors.iter().map(|f| f.len() as isize - 1).sum()
    }

    /// Cells in the F2 boundary.
    pub fn boundary(&self) -> Vec<ProductCell> {
        if self.dim() == 0 {
            return vec![ProductCell { factors: Vec::new() }];
        }
        let mut out = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            if f.len() < 2 {
                continue;
            }
            for v in f.iter() {
                let mut factors = self.factors.clone();
                factors[i] = f.without(v);
                out.push(ProductCell { factors });
            }
        }
        out
    }

    /// The cell with factors permuted: position `i` receives factor `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> ProductCell {
        ProductCell {
            factors: perm.iter().map(|&j| self.factors[j].clone()).collect(),
        }
    }
}

/// The deleted product, or its skeleton up to `max_dim`, with cells grouped
/// by level `dim + 1`, each level sorted; level 0 holds the augmentation cell.
#[derive(Clone, Debug)]
pub struct CWProductComplex {
    pub base: SimplicialComplex,
    pub k: usize,
    pub max_dim: Option<isize>,
    pub cells: Vec<Vec<ProductCell>>,
}

impl CWProductComplex {
    pub fn dim(&self) -> isize {
        self.cells.len() as isize - 2
    }

    /// Number of cells of each dimension `0, 1, …`.
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().skip(1).map(Vec::len).collect()
    }

    pub fn num_cells(&self) -> usize {
        self.cell_counts().iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.num_cells() == 0
    }

    /// Reduced Euler characteristic from cell counts.
    pub fn reduced_euler(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(s, l)| if s % 2 == 1 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }
}

struct Enumeration<'a> {
    faces: &'a [Face],
    k: usize,
    max_vertices: usize,
    budget: usize,
    count: &'a AtomicUsize,
}

impl Enumeration<'_> {
    fn extend(&self, prefix: &mut Vec<Face>, used: &Face, out: &mut Vec<ProductCell>) -> Result<(), ProductError> {
        if prefix.len() == self.k {
            if self.count.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(ProductError::TooManyCells(self.budget));
            }
            out.push(ProductCell {
                factors: prefix.clone(),
            });
            return Ok(());
        }
        // Each later factor needs at least one vertex.
        let room = self.max_vertices.saturating_sub(used.len() + (self.k - prefix.len() - 1));
        for f in self.faces {
            if f.len() <= room && f.is_disjoint(used) {
                prefix.push(f.clone());
                self.extend(prefix, &used.union(f), out)?;
                prefix.pop();
            }
        }
        Ok(())
    }
}

/// All k-tuples of non-empty pairwise disjoint faces.
pub fn deleted_product(base: &SimplicialComplex, k: usize, budget: usize) -> Result<CWProductComplex, ProductError> {
    deleted_product_skeleton(base, k, None, budget)
}

/// Cells of dimension at most `max_dim` (all cells for `None`). The budget
/// bounds the number of cells generated.
pub fn deleted_product_skeleton(
    base: &SimplicialComplex,
    k: usize,
    max_dim: Option<isize>,
    budget: usize,
) -> Result<CWProductComplex, ProductError> {
    if k == 0 {
        return Err(ProductError::BadK);
    }
    let max_vertices = match max_dim {
        Some(m) if m + (k as isize) < 0 => 0,
        Some(m) => (m + k as isize) as usize,
        None => usize::MAX,
    };
    let faces: Vec<Face> = base.faces().iter().filter(|f| !f.is_empty()).cloned().collect();
    let count = AtomicUsize::new(0);
    let e = Enumeration {
        faces: &faces,
        k,
        max_vertices,
        budget,
        count: &count,
    };
    let per_first: Vec<Vec<ProductCell>> = faces
        .par_iter()
        .filter(|first| first.len() + k - 1 <= max_vertices)
        .map(|first| {
            let mut out = Vec::new();
            e.extend(&mut vec![first.clone()], first, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_, ProductError>>()?;
    let mut cells: Vec<Vec<ProductCell>> = vec![vec![ProductCell { factors: Vec::new() }]];
    for cell in per_first.into_iter().flatten() {
        let level = (cell.dim() + 1) as usize;
        if cells.len() <= level {
            cells.resize(level + 1, Vec::new());
        }
        cells[level].push(cell);
    }
    for level in &mut cells {
        level.sort_unstable();
    }
    Ok(CWProductComplex {
        base: base.clone(),
        k,
        max_dim,
        cells,
    })
}

/// Augmented cellular chain complex; `∂∘∂ = 0` is checked on construction.
pub fn product_chain_complex(p: &CWProductComplex) -> ChainComplexF2<ProductCell> {
    let index: Vec<HashMap<&ProductCell, u32>> = p
        .cells
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, c)| (c, i as u32)).collect())
        .collect();
    let boundaries = p
        .cells
        .iter()
        .enumerate()
        .map(|(s, level)| {
            if s == 0 {
                return SparseColumns::new(0, vec![Vec::new(); level.len()]);
            }
            let cols = level
                .iter()
                .map(|c| {
                    let mut col: Vec<u32> = c.boundary().iter().map(|b| index[s - 1][b]).collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            SparseColumns::new(p.cells[s - 1].len(), cols)
        })
        .collect();
    ChainComplexF2::from_parts(p.cells.clone(), boundaries).expect("cellular boundary squares to zero")
}

pub fn betti_product(p: &CWProductComplex) -> BettiVector {
    product_chain_complex(p).betti()
}

/// Largest `c` with `β̃_i = 0` for all `i ≤ c`, capped at the dimension when
/// the complex is acyclic; `−2` when empty and `−1` when disconnected.
///
/// A skeleton with cap `m` that reaches dimension `m` determines `β̃_i` only
/// for `i < m`; the result is then exact when below `m − 1` and otherwise the
/// lower bound `m − 1`.
pub fn homological_connectivity(p: &CWProductComplex) -> isize {
    if p.is_empty() {
        return -2;
    }
    let b = betti_product(p);
    let exact_below = match p.max_dim {
        Some(m) if p.dim() >= m => m,
        _ => isize::MAX,
    };
    match b.connectivity() {
        Some(c) if c < exact_below - 1 => c,
        Some(_) => exact_below - 1,
        None => p.dim().min(exact_below - 1),
    }
}

/// The 2-fold deleted product, a deformation retract of the configuration
/// space of two distinct points.
pub fn conf2(m: &Matroid, budget: usize) -> Result<CWProductComplex, ProductError> {
    deleted_product(&m.complex, 2, budget)
}

/// `r − 2 − ⌊r(k−1)/b⌋`, the connectivity lower bound for a rank-`r` matroid
/// with `b` disjoint bases, valid when `k ≥ 2`, `r ≥ k` and `b ≥ k`.
pub fn connectivity_bound(r: usize, b: usize, k: usize) -> isize {
    r as isize - 2 - (r * (k - 1) / b) as isize
}

/// Whether `b ≥ r(k−1)+1` and whether `b ≥ (r−1)(k−1)+1`, the two stated
/// thresholds above which the product is claimed not `(r−1)`-connected.
pub fn sharpness_hypotheses(r: usize, b: usize, k: usize) -> (bool, bool) {
    (b > r * (k - 1), b > (r - 1) * (k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::anonymous_vertices;
    use crate::matroid::{build_mr, build_mr_prime, uniform};

    fn bettis(c: &SimplicialComplex, k: usize) -> Vec<u64> {
        betti_product(&deleted_product(c, k, DEFAULT_CELL_BUDGET).unwrap()).values
    }

    #[test]
    fn edge_gives_two_points() {
        let p = deleted_product(&SimplicialComplex::simplex(2), 2, 100).unwrap();
        assert_eq!(p.cell_counts(), vec![2]);
        assert_eq!(betti_product(&p).values, vec![1]);
        assert_eq!(homological_connectivity(&p), -1);
    }

    #[test]
    fn boundary_of_a_two_cell() {
        let c = ProductCell {
            factors: vec![Face::from_vertices([0, 1]), Face::singleton(2)],
        };
        assert_eq!(
            c.boundary(),
            vec![
                ProductCell { factors: vec![Face::singleton(1), Face::singleton(2)] },
                ProductCell { factors: vec![Face::singleton(0), Face::singleton(2)] },
            ]
        );
    }

    #[test]
    fn triangle_boundary_gives_hexagon() {
        let p = deleted_product(&SimplicialComplex::simplex(3).skeleton(1), 2, 100).unwrap();
        assert_eq!(p.cell_counts(), vec![6, 6]);
        assert_eq!(betti_product(&p).values, vec![0, 1]);
    }

    #[test]
    fn simplex_products() {
        for r in 2..=5usize {
            assert!(bettis(&SimplicialComplex::simplex(r), 1).iter().all(|&b| b == 0));
            let b = bettis(&SimplicialComplex::simplex(r), 2);
            let sphere: Vec<u64> = (0..b.len()).map(|i| u64::from(i == r - 2)).collect();
            assert_eq!(b, sphere, "r={r}");
        }
        // Three factors: homology only in degree r − 3, of ranks 5, 13, 29.
        for (r, rank) in [(3usize, 5u64), (4, 13), (5, 29)] {
            let b = bettis(&SimplicialComplex::simplex(r), 3);
            let expected: Vec<u64> = (0..b.len()).map(|i| if i == r - 3 { rank } else { 0 }).collect();
            assert_eq!(b, expected, "r={r}");
        }
    }

    #[test]
    fn euler_matches_betti() {
        let m = build_mr(3).unwrap();
        let p = conf2(&m, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(betti_product(&p).euler(), p.reduced_euler());
    }

    #[test]
    fn top_cells_are_ordered_disjoint_bases() {
        let m = uniform(2, 4).unwrap();
        let p = deleted_product(&m.complex, 2, 1000).unwrap();
        // Ordered pairs of disjoint 2-subsets of a 4-set.
        assert_eq!(p.cells.last().unwrap().len(), 6);
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn factor_swap_preserves_homology() {
        let m = build_mr(3).unwrap();
        let p = conf2(&m, DEFAULT_CELL_BUDGET).unwrap();
        let mut swapped = p.clone();
        for level in &mut swapped.cells {
            for c in level.iter_mut() {
                if !c.factors.is_empty() {
                    *c = c.permuted(&[1, 0]);
                }
            }
            level.sort_unstable();
        }
        assert_eq!(swapped.cells, p.cells);
        assert_eq!(betti_product(&swapped), betti_product(&p));
    }

    #[test]
    fn bound_holds_on_block_matroids() {
        let m = build_mr(3).unwrap();
        let c = homological_connectivity(&conf2(&m, DEFAULT_CELL_BUDGET).unwrap());
        assert!(c >= connectivity_bound(3, 3, 2));
        let m = build_mr_prime(3).unwrap();
        let p = conf2(&m, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(homological_connectivity(&p), 1);
        assert!(betti_product(&p).get(2) > 0);
    }

    #[test]
    fn empty_and_budget() {
        let void = SimplicialComplex::void(anonymous_vertices(2));
        assert_eq!(homological_connectivity(&deleted_product(&void, 2, 10).unwrap()), -2);
        assert_eq!(
            deleted_product(&SimplicialComplex::simplex(4), 2, 3).unwrap_err(),
            ProductError::TooManyCells(3)
        );
    }

    #[test]
    fn skeleton_agrees_below_the_cap() {
        let m = build_mr(3).unwrap();
        let full = conf2(&m, DEFAULT_CELL_BUDGET).unwrap();
        let fb = betti_product(&full);
        for cap in 0..=full.dim() {
            let s = deleted_product_skeleton(&m.complex, 2, Some(cap), DEFAULT_CELL_BUDGET).unwrap();
            assert_eq!(s.dim(), cap);
            for (level, cells) in s.cells.iter().enumerate() {
                assert_eq!(cells, &full.cells[level]);
            }
            let sb = betti_product(&s);
            for i in -1..cap {
                assert_eq!(sb.get(i), fb.get(i), "cap {cap}, degree {i}");
            }
            assert_eq!(homological_connectivity(&s), homological_connectivity(&full).min(cap - 1));
        }
        // A cap above the dimension changes nothing.
        let s = deleted_product_skeleton(&m.complex, 2, Some(full.dim() + 3), DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(homological_connectivity(&s), homological_connectivity(&full));
    }

    #[test]
    fn budget_is_global() {
        // 5 · 4 ordered pairs of distinct vertices alone exceed 19.
        let s = SimplicialComplex::simplex(5);
        assert!(deleted_product(&s, 2, 19).is_err());
        assert!(deleted_product_skeleton(&s, 2, Some(0), 20).is_ok());
    }
}

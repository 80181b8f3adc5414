//! Reduced homology over F2.
//!
//! Chain groups are indexed by level `s = d + 1`, so level 0 holds the
//! augmentation cell (the empty face of a simplicial complex) and
//! `boundaries[s]` maps level `s` to level `s − 1`.
//!
//! Cohomology and homology agree in dimension over a field, and an involution
//! acts freely on one iff it does on the dual, so only homology is computed.

pub mod bitmatrix;
pub mod pi1;
pub mod sparse;

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::complex::{check_permutation, SimplicialComplex};
use crate::face::Face;
use bitmatrix::{BitMatrix, BitVec, Echelon};
use sparse::{ranks_with_clearing, SparseColumns};

pub use pi1::{pi1_presentation, try_trivialize, GroupPresentation, Pi1Outcome, DEFAULT_TIETZE_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("vertex map is not an automorphism of the complex")]
    NotAnAutomorphism,
    #[error("map is not an involution")]
    NotInvolution,
    #[error("boundary of boundary is non-zero from dimension {0}")]
    BoundarySquaredNonzero(isize),
    #[error("chain complex shape mismatch at level {0}")]
    ShapeMismatch(usize),
    #[error("complex is disconnected")]
    Disconnected,
    #[error("chain is not a cycle")]
    NotACycle,
}

/// Which side of the chain complex is reduced when computing ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RankStrategy {
    /// Coboundary columns, lowest dimension first.
    #[default]
    Cohomology,
    /// Boundary columns, highest dimension first.
    Homology,
    /// Dense elimination of each boundary matrix.
    Dense,
}

/// An augmented chain complex over F2 with cells of type `C`.
#[derive(Clone, Debug)]
pub struct ChainComplexF2<C> {
    cells: Vec<Vec<C>>,
    boundaries: Vec<SparseColumns>,
}

impl<C: Clone + Eq + Hash> ChainComplexF2<C> {
    /// Assembles a chain complex and checks shapes and `∂∘∂ = 0`.
    pub fn from_parts(cells: Vec<Vec<C>>, mut boundaries: Vec<SparseColumns>) -> Result<Self, HomologyError> {
        if boundaries.is_empty() && !cells.is_empty() {
            boundaries.push(SparseColumns::new(0, vec![Vec::new(); cells[0].len()]));
        }
        if boundaries.len() != cells.len() {
            return Err(ShapeMismatch(boundaries.len()));
        }
        for s in 0..cells.len() {
            let rows = if s == 0 { 0 } else { cells[s - 1].len() };
            if boundaries[s].ncols() != cells[s].len() || boundaries[s].nrows() != rows {
                return Err(ShapeMismatch(s));
            }
        }
        let c = Self { cells, boundaries };
        for s in 2..c.cells.len() {
            if !c.boundaries[s - 1].mul(&c.boundaries[s]).is_zero() {
                return Err(HomologyError::BoundarySquaredNonzero(s as isize - 1));
            }
        }
        Ok(c)
    }

    /// Number of levels (top dimension + 2).
    pub fn levels(&self) -> usize {
        self.cells.len()
    }

    /// Cells of dimension `s − 1`.
    pub fn cells_at(&self, s: usize) -> &[C] {
        self.cells.get(s).map_or(&[], Vec::as_slice)
    }

    pub fn boundary_at(&self, s: usize) -> &SparseColumns {
        &self.boundaries[s]
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// `ranks[s]` is the rank of the map from level `s` to level `s − 1`.
    pub fn ranks(&self, strategy: RankStrategy) -> Vec<usize> {
        let l = self.cells.len();
        let mut ranks = vec![0; l];
        match strategy {
            RankStrategy::Cohomology => {
                let mats: Vec<SparseColumns> = (1..l).map(|s| self.boundaries[s].transpose()).collect();
                for (i, r) in ranks_with_clearing(&mats).into_iter().enumerate() {
                    ranks[i + 1] = r;
                }
            }
            RankStrategy::Homology => {
                let mats: Vec<SparseColumns> = (1..l).rev().map(|s| self.boundaries[s].clone()).collect();
                for (i, r) in ranks_with_clearing(&mats).into_iter().enumerate() {
                    ranks[l - 1 - i] = r;
                }
            }
            RankStrategy::Dense => {
                for s in 1..l {
                    ranks[s] = self.boundaries[s].to_dense().rank();
                }
            }
        }
        ranks
    }

    pub fn betti(&self) -> BettiVector {
        self.betti_with(RankStrategy::default())
    }

    pub fn betti_with(&self, strategy: RankStrategy) -> BettiVector {
        let ranks = self.ranks(strategy);
        let l = self.cells.len();
        let beta = |s: usize| -> u64 {
            let next = if s + 1 < l { ranks[s + 1] } else { 0 };
            (self.cells[s].len() - ranks[s] - next) as u64
        };
        if l == 0 {
            return BettiVector::default();
        }
        BettiVector {
            minus_one: beta(0),
            values: (1..l).map(beta).collect(),
        }
    }

    /// Reduced Euler characteristic from cell counts.
    pub fn reduced_euler(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(s, c)| if s % 2 == 1 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }

    /// Position of each cell within its level.
    pub fn cell_index(&self, s: usize) -> HashMap<&C, usize> {
        self.cells[s].iter().enumerate().map(|(i, c)| (c, i)).collect()
    }

    /// A basis of reduced homology in dimension `dim` given by cycle representatives.
    pub fn homology_basis(&self, dim: isize) -> HomologyBasis {
        let s = (dim + 1) as usize;
        let n = self.cells_at(s).len();
        let kernel: Vec<BitVec> = if s == 0 || s >= self.levels() {
            (0..n).map(|j| BitVec::unit(n, j)).collect()
        } else {
            let d = &self.boundaries[s];
            let mut e = Echelon::new(d.nrows(), n);
            (0..n)
                .filter_map(|j| {
                    let col = BitVec::from_indices(d.nrows(), d.column(j).iter().map(|&i| i as usize));
                    e.insert(col, BitVec::unit(n, j))
                })
                .collect()
        };
        let mut basis = Echelon::new(n, kernel.len());
        if s + 1 < self.levels() {
            let d = &self.boundaries[s + 1];
            for c in d.columns() {
                basis.insert(BitVec::from_indices(n, c.iter().map(|&i| i as usize)), BitVec::zeros(kernel.len()));
            }
        }
        let mut kept = Vec::new();
        for (k, z) in kernel.iter().enumerate() {
            if basis.insert(z.clone(), BitVec::unit(kernel.len(), k)).is_none() {
                kept.push(k);
            }
        }
        HomologyBasis {
            dim,
            representatives: kept.iter().map(|&k| kernel[k].clone()).collect(),
            kernel_to_rep: {
                let mut m = vec![usize::MAX; kernel.len()];
                for (i, &k) in kept.iter().enumerate() {
                    m[k] = i;
                }
                m
            },
            echelon: basis,
            boundary: if s >= 1 && s < self.levels() {
                Some(self.boundaries[s].clone())
            } else {
                None
            },
        }
    }
}

use HomologyError::ShapeMismatch;

/// Cycle representatives of a homology basis together with the data needed
/// to express any cycle in that basis.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub dim: isize,
    pub representatives: Vec<BitVec>,
    kernel_to_rep: Vec<usize>,
    echelon: Echelon,
    boundary: Option<SparseColumns>,
}

impl HomologyBasis {
    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of `cycle` in the representative basis.
    pub fn coordinates(&self, cycle: &BitVec) -> Result<BitVec, HomologyError> {
        if let Some(d) = &self.boundary {
            let is_cycle = d
                .columns()
                .iter()
                .enumerate()
                .filter(|(j, _)| cycle.get(*j))
                .fold(Vec::new(), |acc, (_, c)| sparse::symmetric_difference(&acc, c))
                .is_empty();
            if !is_cycle {
                return Err(HomologyError::NotACycle);
            }
        }
        let (rest, tag) = self.echelon.reduce(cycle.clone(), BitVec::zeros(self.kernel_to_rep.len()));
        if !rest.is_zero() {
            return Err(HomologyError::NotACycle);
        }
        Ok(BitVec::from_indices(self.rank(), tag.ones().map(|k| self.kernel_to_rep[k])))
    }
}

/// Reduced Betti numbers over F2; `values[i]` is `β̃_i` for `i ≥ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiVector {
    pub values: Vec<u64>,
    pub minus_one: u64,
}

impl BettiVector {
    pub fn get(&self, i: isize) -> u64 {
        match i {
            -1 => self.minus_one,
            i if i >= 0 => self.values.get(i as usize).copied().unwrap_or(0),
            _ => 0,
        }
    }

    /// `Σ (−1)^i β̃_i`.
    pub fn euler(&self) -> i64 {
        let s: i64 = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        s - self.minus_one as i64
    }

    pub fn is_acyclic(&self) -> bool {
        self.minus_one == 0 && self.values.iter().all(|&b| b == 0)
    }

    /// Degrees with non-zero reduced Betti number.
    pub fn support(&self) -> Vec<isize> {
        let mut out: Vec<isize> = if self.minus_one > 0 { vec![-1] } else { vec![] };
        out.extend(self.values.iter().enumerate().filter(|(_, &b)| b > 0).map(|(i, _)| i as isize));
        out
    }

    /// Largest `c` with `β̃_i = 0` for all `i ≤ c`; `None` when acyclic.
    pub fn connectivity(&self) -> Option<isize> {
        self.support().first().map(|&d| d - 1)
    }
}

impl Serialize for BettiVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BettiVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Self {
            values: Vec::deserialize(deserializer)?,
            minus_one: 0,
        })
    }
}

/// Simplicial chain complex, augmented by the empty face.
pub fn chain_complex(complex: &SimplicialComplex) -> ChainComplexF2<Face> {
    let table = complex.faces();
    let cells: Vec<Vec<Face>> = table.levels().to_vec();
    let boundaries = cells
        .iter()
        .enumerate()
        .map(|(s, level)| {
            if s == 0 {
                return SparseColumns::new(0, vec![Vec::new(); level.len()]);
            }
            let cols = level
                .iter()
                .map(|f| {
                    let mut c: Vec<u32> = f
                        .boundary()
                        .map(|g| table.position(&g).expect("closed under faces") as u32)
                        .collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            SparseColumns::new(cells[s - 1].len(), cols)
        })
        .collect();
    ChainComplexF2::from_parts(cells, boundaries).expect("simplicial boundary squares to zero")
}

/// Reduced F2 Betti numbers of a simplicial complex.
pub fn betti_f2(complex: &SimplicialComplex) -> BettiVector {
    chain_complex(complex).betti()
}

/// An endomorphism of `H̃_dim`; column `i` is the image of basis vector `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub source_dim: isize,
    pub target_dim: isize,
    pub matrix: BitMatrix,
}

impl InducedMap {
    pub fn rank_of_one_plus(&self) -> usize {
        self.matrix.add(&BitMatrix::identity(self.matrix.nrows())).rank()
    }
}

/// The map induced on `H̃_dim` by a simplicial involution `phi`.
pub fn induced_involution(complex: &SimplicialComplex, phi: &[usize], dim: isize) -> Result<InducedMap, HomologyError> {
    check_permutation(phi, complex.num_vertices()).map_err(|_| HomologyError::NotAnAutomorphism)?;
    if !complex.is_automorphism(phi) {
        return Err(HomologyError::NotAnAutomorphism);
    }
    if (0..phi.len()).any(|v| phi[phi[v]] != v) {
        return Err(HomologyError::NotInvolution);
    }
    let chain = chain_complex(complex);
    let basis = chain.homology_basis(dim);
    let s = (dim + 1) as usize;
    let table = complex.faces();
    let image_of = |level: usize| -> Vec<usize> {
        table
            .of_size(level)
            .iter()
            .map(|f| table.position(&f.map(phi)).expect("automorphism preserves faces"))
            .collect()
    };
    let map_s = image_of(s);
    if s >= 1 && s < chain.levels() {
        let map_below = image_of(s - 1);
        let d = chain.boundary_at(s);
        for j in 0..d.ncols() {
            let mut lhs: Vec<u32> = d.column(map_s[j]).to_vec();
            let mut rhs: Vec<u32> = d.column(j).iter().map(|&i| map_below[i as usize] as u32).collect();
            lhs.sort_unstable();
            rhs.sort_unstable();
            if lhs != rhs {
                return Err(HomologyError::NotAnAutomorphism);
            }
        }
    }
    let n = basis.rank();
    let mut matrix = BitMatrix::zeros(n, n);
    for (i, h) in basis.representatives.iter().enumerate() {
        let image = BitVec::from_indices(h.len(), h.ones().map(|j| map_s[j]));
        for k in basis.coordinates(&image)?.ones() {
            matrix.set(k, i, true);
        }
    }
    Ok(InducedMap {
        source_dim: dim,
        target_dim: dim,
        matrix,
    })
}

/// Whether an involution makes its space a free `F2[Z/2]`-module,
/// i.e. `rank(1 + t) = n / 2`. Odd dimension is never free.
pub fn is_free_f2z2(m: &InducedMap) -> Result<bool, HomologyError> {
    let n = m.matrix.nrows();
    if m.matrix.mul(&m.matrix) != BitMatrix::identity(n) {
        return Err(HomologyError::NotInvolution);
    }
    if n % 2 == 1 {
        return Ok(false);
    }
    Ok(m.rank_of_one_plus() == n / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::anonymous_vertices;
    use crate::join::join;
    use proptest::prelude::*;

    fn sphere(n: usize) -> SimplicialComplex {
        SimplicialComplex::simplex(n).skeleton(n as isize - 2)
    }

    #[test]
    fn simplex_is_acyclic() {
        for n in 1..6 {
            assert!(betti_f2(&SimplicialComplex::simplex(n)).is_acyclic());
        }
    }

    #[test]
    fn empty_face_only_has_minus_one_class() {
        let b = betti_f2(&SimplicialComplex::empty_face_only(vec![]));
        assert_eq!(b.minus_one, 1);
        assert_eq!(b.euler(), -1);
    }

    #[test]
    fn sphere_betti() {
        for n in 2..6 {
            let b = betti_f2(&sphere(n));
            assert_eq!(b.support(), vec![n as isize - 2]);
            assert_eq!(b.get(n as isize - 2), 1);
        }
    }

    #[test]
    fn edge_boundary() {
        let c = chain_complex(&SimplicialComplex::simplex(2));
        assert_eq!(c.boundary_at(2).column(0), &[0, 1]);
    }

    #[test]
    fn strategies_agree_on_torus_like_join() {
        let c = join(&[SimplicialComplex::points(3), sphere(3), SimplicialComplex::points(2)]);
        let chain = chain_complex(&c);
        let a = chain.betti_with(RankStrategy::Cohomology);
        assert_eq!(a, chain.betti_with(RankStrategy::Homology));
        assert_eq!(a, chain.betti_with(RankStrategy::Dense));
        // reduced homology of a join: β̃_{i+j+1} = β̃_i β̃_j, so 2·1·1 in degree 0+1+0+2
        assert_eq!(a.support(), vec![3]);
        assert_eq!(a.get(3), 2);
    }

    #[test]
    fn homology_basis_of_circle() {
        let chain = chain_complex(&sphere(3));
        let basis = chain.homology_basis(1);
        assert_eq!(basis.rank(), 1);
        assert_eq!(basis.representatives[0].count_ones(), 3);
    }

    #[test]
    fn identity_induces_identity() {
        let c = sphere(4);
        let id: Vec<usize> = (0..4).collect();
        let m = induced_involution(&c, &id, 2).unwrap();
        assert_eq!(m.matrix, BitMatrix::identity(1));
        assert!(!is_free_f2z2(&m).unwrap());
    }

    #[test]
    fn free_criterion_on_coordinate_swap() {
        let mut t = BitMatrix::zeros(2, 2);
        t.set(0, 1, true);
        t.set(1, 0, true);
        let m = InducedMap { source_dim: 0, target_dim: 0, matrix: t };
        assert!(is_free_f2z2(&m).unwrap());
        let id = InducedMap { source_dim: 0, target_dim: 0, matrix: BitMatrix::identity(2) };
        assert!(!is_free_f2z2(&id).unwrap());
    }

    #[test]
    fn swapping_two_points() {
        let c = SimplicialComplex::points(2);
        let m = induced_involution(&c, &[1, 0], 0).unwrap();
        assert_eq!(m.matrix, BitMatrix::identity(1));
        assert!(matches!(induced_involution(&c, &[0, 0], 0), Err(HomologyError::NotAnAutomorphism)));
    }

    fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
        proptest::collection::vec(proptest::collection::btree_set(0usize..7, 1..5), 1..7).prop_map(|gens| {
            SimplicialComplex::from_generators(anonymous_vertices(7), gens.into_iter().map(|s| s.into_iter().collect()))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn betti_euler_matches_face_count(c in arb_complex()) {
            let chain = chain_complex(&c);
            let b = chain.betti();
            prop_assert_eq!(b.euler(), c.reduced_euler());
            prop_assert_eq!(&b, &chain.betti_with(RankStrategy::Dense));
            prop_assert_eq!(&b, &chain.betti_with(RankStrategy::Homology));
        }

        #[test]
        fn join_kunneth(a in arb_complex(), b in arb_complex()) {
            let ba = betti_f2(&a);
            let bb = betti_f2(&b);
            let bj = betti_f2(&join(&[a, b]));
            for n in 0..12isize {
                let expected: u64 = (-1..=n).map(|i| ba.get(i) * bb.get(n - 1 - i)).sum();
                prop_assert_eq!(bj.get(n), expected);
            }
        }
    }
}

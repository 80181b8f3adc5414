//! Matroids as independence complexes.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{anonymous_vertices, SimplicialComplex, VertexId};
use crate::face::Face;
use crate::join::{deleted_join, join};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("rank {rank} is invalid for a ground set of size {size}")]
    BadRank { rank: usize, size: usize },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("complex is not a matroid: {0:?}")]
    NotMatroid(MatroidWitness),
}

/// An independence complex together with rank and a packing of disjoint bases.
#[derive(Clone, Debug)]
pub struct Matroid {
    pub complex: SimplicialComplex,
    pub rank: usize,
    pub verified: bool,
    pub disjoint_bases: Vec<Face>,
}

impl Matroid {
    /// Verifies the matroid property and computes a maximum basis packing.
    pub fn from_complex(complex: SimplicialComplex) -> Result<Self, MatroidError> {
        let check = is_matroid(&complex, MatroidCheckMode::Exhaustive);
        if let Some(w) = check.witness {
            return Err(MatroidError::NotMatroid(w));
        }
        let rank = complex.facets().iter().map(Face::len).max().unwrap_or(0);
        let mut m = Self {
            complex,
            rank,
            verified: true,
            disjoint_bases: Vec::new(),
        };
        m.disjoint_bases = disjoint_bases(&m);
        Ok(m)
    }

    /// Number of pairwise disjoint bases recorded.
    pub fn b(&self) -> usize {
        self.disjoint_bases.len()
    }

    pub fn ground_size(&self) -> usize {
        self.complex.num_vertices()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatroidCheckMode {
    /// Purity of every restriction `Σ|A`.
    Exhaustive,
    /// Augmentation: for independent `|I| < |J|` some `x ∈ J∖I` has `I+x` independent.
    Exchange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatroidWitness {
    /// `small` is maximal in `Σ|subset` but `large ⊆ subset` is bigger.
    ImpureRestriction { subset: Face, small: Face, large: Face },
    /// No element of `j ∖ i` augments `i`.
    NoAugmentation { i: Face, j: Face },
    /// The complex has no faces.
    Void,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidCheck {
    pub is_matroid: bool,
    pub witness: Option<MatroidWitness>,
}

impl MatroidCheck {
    fn from_witness(witness: Option<MatroidWitness>) -> Self {
        Self {
            is_matroid: witness.is_none(),
            witness,
        }
    }
}

pub fn is_matroid(complex: &SimplicialComplex, mode: MatroidCheckMode) -> MatroidCheck {
    if complex.is_void() {
        return MatroidCheck::from_witness(Some(MatroidWitness::Void));
    }
    MatroidCheck::from_witness(match mode {
        MatroidCheckMode::Exhaustive => restriction_witness(complex),
        MatroidCheckMode::Exchange => exchange_witness(complex),
    })
}

/// For each independent `I`, the largest `A` in which `I` is maximal is
/// `V ∖ {v ∉ I : I+v independent}`; `Σ|A` is impure iff its rank exceeds `|I|`.
fn restriction_witness(complex: &SimplicialComplex) -> Option<MatroidWitness> {
    let table = complex.faces();
    let all = Face::from_vertices(0..complex.num_vertices());
    for i in table.iter() {
        let mut subset = all.clone();
        for v in all.iter().filter(|&v| !i.contains(v)) {
            if table.contains(&i.with(v)) {
                subset.remove(v);
            }
        }
        let best = complex
            .facets()
            .iter()
            .map(|f| f.intersection(&subset))
            .max_by_key(Face::len)
            .expect("non-void");
        if best.len() > i.len() {
            return Some(MatroidWitness::ImpureRestriction {
                subset,
                small: i.clone(),
                large: best,
            });
        }
    }
    None
}

fn exchange_witness(complex: &SimplicialComplex) -> Option<MatroidWitness> {
    let table = complex.faces();
    let top = table.max_size()?;
    for size in 0..top {
        for i in table.of_size(size) {
            for j in table.of_size(size + 1) {
                if !j.difference(i).iter().any(|x| table.contains(&i.with(x))) {
                    return Some(MatroidWitness::NoAugmentation {
                        i: i.clone(),
                        j: j.clone(),
                    });
                }
            }
        }
    }
    None
}

/// Maximum packing of pairwise disjoint bases by exact branch and bound.
pub fn disjoint_bases(m: &Matroid) -> Vec<Face> {
    let bases: Vec<&Face> = m.complex.facets().iter().filter(|f| f.len() == m.rank).collect();
    if m.rank == 0 {
        return vec![Face::empty()];
    }
    let n = m.complex.num_vertices();
    let mut by_min: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, b) in bases.iter().enumerate() {
        by_min[b.min_vertex().expect("rank > 0")].push(i);
    }
    struct Search<'a> {
        bases: &'a [&'a Face],
        by_min: &'a [Vec<usize>],
        rank: usize,
        best: Vec<usize>,
        current: Vec<usize>,
    }
    impl Search<'_> {
        fn run(&mut self, from: usize, used: &Face) {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            let free = self.by_min.len() - from - used.iter().filter(|&v| v >= from).count();
            if self.current.len() + free / self.rank <= self.best.len() {
                return;
            }
            for v in from..self.by_min.len() {
                if used.contains(v) {
                    continue;
                }
                for &i in &self.by_min[v] {
                    if self.bases[i].is_disjoint(used) {
                        self.current.push(i);
                        self.run(v + 1, &used.union(self.bases[i]));
                        self.current.pop();
                    }
                }
            }
        }
    }
    let mut s = Search {
        bases: &bases,
        by_min: &by_min,
        rank: m.rank,
        best: Vec::new(),
        current: Vec::new(),
    };
    s.run(0, &Face::empty());
    let mut out: Vec<Face> = s.best.iter().map(|&i| bases[i].clone()).collect();
    out.sort_unstable();
    out
}

/// Whether some ground element lies in every basis.
pub fn has_coloops(m: &Matroid) -> bool {
    !coloops(m).is_empty()
}

pub fn coloops(m: &Matroid) -> Face {
    let mut it = m.complex.facets().iter();
    let first = it.next().cloned().unwrap_or_default();
    it.fold(first, |acc, f| acc.intersection(f))
}

/// `U_{m,n}` on the given ground set, reindexed by position.
pub fn uniform_matroid(m: usize, mut ground: Vec<VertexId>) -> Result<Matroid, MatroidError> {
    let n = ground.len();
    for (i, v) in ground.iter_mut().enumerate() {
        v.index = i;
    }
    if m > n {
        return Err(MatroidError::BadRank { rank: m, size: n });
    }
    let facets = k_subsets(n, m);
    let complex = SimplicialComplex::new(ground, facets)
        .map_err(|e| MatroidError::BadParameter(e.to_string()))?;
    let disjoint_bases = if m == 0 {
        vec![Face::empty()]
    } else {
        (0..n / m).map(|i| Face::from_vertices(i * m..(i + 1) * m)).collect()
    };
    Ok(Matroid {
        complex,
        rank: m,
        verified: true,
        disjoint_bases,
    })
}

fn k_subsets(n: usize, k: usize) -> Vec<Face> {
    let mut out = Vec::new();
    let mut stack = vec![(Face::empty(), 0usize)];
    while let Some((f, next)) = stack.pop() {
        if f.len() == k {
            out.push(f);
            continue;
        }
        for v in (next..n).rev() {
            if n - v >= k - f.len() {
                stack.push((f.with(v), v + 1));
            }
        }
    }
    out
}

/// Direct sum; the underlying complex is the join.
pub fn direct_sum(parts: &[Matroid]) -> Matroid {
    let complex = join(&parts.iter().map(|p| p.complex.clone()).collect::<Vec<_>>());
    let mut offsets = Vec::new();
    let mut acc = 0;
    for p in parts {
        offsets.push(acc);
        acc += p.ground_size();
    }
    let b = parts.iter().map(Matroid::b).min().unwrap_or(0);
    let disjoint_bases = (0..b)
        .map(|i| {
            parts
                .iter()
                .zip(&offsets)
                .flat_map(|(p, &off)| p.disjoint_bases[i].iter().map(move |v| v + off))
                .collect()
        })
        .collect();
    Matroid {
        complex,
        rank: parts.iter().map(|p| p.rank).sum(),
        verified: parts.iter().all(|p| p.verified),
        disjoint_bases,
    }
}

/// Ground set of `r−1` blocks `v_i^1..v_i^c` followed by the block `w_1..w_c`,
/// indexed block-major.
pub fn block_ground_set(r: usize, c: usize) -> Vec<Vec<VertexId>> {
    (1..=r)
        .map(|i| {
            (1..=c)
                .map(|j| {
                    let label = if i < r { format!("v_{i}^{j}") } else { format!("w_{j}") };
                    VertexId::new((i - 1) * c + j - 1, label).with_block(i as u32)
                })
                .collect()
        })
        .collect()
}

/// The `(r−1)`-skeleton of `U_{1,c}^{⊕(r−1)} ⊕ U_{c,c}` with its `c` transversal bases.
fn block_matroid(r: usize, c: usize) -> Result<Matroid, MatroidError> {
    if r < 2 {
        return Err(MatroidError::BadParameter(format!("r = {r} must be at least 2")));
    }
    let blocks = block_ground_set(r, c);
    let parts: Vec<Matroid> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| uniform_matroid(if i + 1 < r { 1 } else { c }, b.clone()))
        .collect::<Result<_, _>>()?;
    let hat = direct_sum(&parts);
    let vertices: Vec<VertexId> = blocks.into_iter().flatten().collect();
    let skel = hat.complex.skeleton(r as isize - 1);
    let complex = SimplicialComplex::new(vertices, skel.sorted_facets())
        .map_err(|e| MatroidError::BadParameter(e.to_string()))?;
    let disjoint_bases = (0..c)
        .map(|j| (0..r).map(|i| i * c + j).collect())
        .collect();
    Ok(Matroid {
        complex,
        rank: r,
        verified: true,
        disjoint_bases,
    })
}

/// `M_r`: blocks of size `r`, rank `r`, `r` disjoint bases.
pub fn build_mr(r: usize) -> Result<Matroid, MatroidError> {
    block_matroid(r, r)
}

/// `M'_r`: blocks of size `r+1`, rank `r`, `r+1` disjoint bases.
pub fn build_mr_prime(r: usize) -> Result<Matroid, MatroidError> {
    block_matroid(r, r + 1)
}

/// `M̂_r = U_{1,r}^{⊕(r−1)} ⊕ U_{r,r}` before truncation.
pub fn build_mr_hat(r: usize) -> Result<Matroid, MatroidError> {
    if r < 2 {
        return Err(MatroidError::BadParameter(format!("r = {r} must be at least 2")));
    }
    let parts: Vec<Matroid> = block_ground_set(r, r)
        .into_iter()
        .enumerate()
        .map(|(i, b)| uniform_matroid(if i + 1 < r { 1 } else { r }, b))
        .collect::<Result<_, _>>()?;
    Ok(direct_sum(&parts))
}

/// Chessboard complex `Δ_{k,r}`: the k-fold deleted join of `r` points.
pub fn chessboard(k: usize, r: usize) -> SimplicialComplex {
    assert!(k >= 1 && r >= 1, "chessboard dimensions must be positive");
    let points = SimplicialComplex::new(
        (0..r).map(|j| VertexId::new(j, format!("c{}", j + 1))).collect(),
        (0..r).map(Face::singleton).collect(),
    )
    .expect("points form an antichain");
    deleted_join(&points, k)
}

/// Anonymous `U_{m,n}`.
pub fn uniform(m: usize, n: usize) -> Result<Matroid, MatroidError> {
    uniform_matroid(m, anonymous_vertices(n))
}

/// Checks that `bases` are pairwise disjoint facets of size `rank`.
pub fn are_disjoint_bases(m: &Matroid, bases: &[Face]) -> bool {
    let facets: HashSet<&Face> = m.complex.facets().iter().collect();
    let mut used = Face::empty();
    for b in bases {
        if b.len() != m.rank || !facets.contains(b) || !b.is_disjoint(&used) {
            return false;
        }
        used = used.union(b);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::anonymous_vertices;
    use proptest::prelude::*;

    #[test]
    fn uniform_edge_cases() {
        let full = uniform(3, 3).unwrap();
        assert_eq!(full.complex.facets(), &[Face::from_vertices(0..3)]);
        assert!(has_coloops(&full));
        assert_eq!(uniform(0, 4).unwrap().complex.facets(), &[Face::empty()]);
        assert_eq!(uniform(1, 4).unwrap().complex.facets().len(), 4);
        assert!(matches!(uniform(5, 4), Err(MatroidError::BadRank { .. })));
    }

    #[test]
    fn mr_hat_rank_and_dimension() {
        let hat = build_mr_hat(3).unwrap();
        assert_eq!(hat.rank, 5);
        assert_eq!(hat.complex.dim(), 4);
        assert_eq!(build_mr_hat(3).unwrap().complex.skeleton(2).sorted_facets(), build_mr(3).unwrap().complex.sorted_facets());
    }

    #[test]
    fn m2_has_five_bases() {
        let m = build_mr(2).unwrap();
        assert_eq!(m.complex.facets().len(), 5);
        assert_eq!(m.complex.num_vertices(), 4);
    }

    #[test]
    fn mr_structure() {
        for r in 2..=4 {
            let m = build_mr(r).unwrap();
            assert_eq!(m.complex.num_vertices(), r * r);
            assert_eq!(m.rank, r);
            assert!(are_disjoint_bases(&m, &m.disjoint_bases));
            assert_eq!(m.b(), r);
            assert!(!has_coloops(&m));
            for f in m.complex.faces().iter() {
                assert!(f.len() <= r);
                for block in 0..r - 1 {
                    assert!(f.iter().filter(|v| v / r == block).count() <= 1);
                }
            }
            let packed = disjoint_bases(&m);
            assert_eq!(packed.len(), r);
            assert!(are_disjoint_bases(&m, &packed));
        }
    }

    #[test]
    fn mr_prime_structure() {
        for r in 2..=3 {
            let m = build_mr_prime(r).unwrap();
            assert_eq!(m.complex.num_vertices(), r * (r + 1));
            assert_eq!(m.b(), r + 1);
            assert!(are_disjoint_bases(&m, &m.disjoint_bases));
            assert!(!has_coloops(&m));
        }
    }

    #[test]
    fn verifiers_accept_mr() {
        for r in 2..=4 {
            let m = build_mr(r).unwrap();
            assert!(is_matroid(&m.complex, MatroidCheckMode::Exhaustive).is_matroid);
            assert!(is_matroid(&m.complex, MatroidCheckMode::Exchange).is_matroid);
        }
    }

    #[test]
    fn edge_plus_point_is_not_matroid() {
        let c = SimplicialComplex::new(
            anonymous_vertices(3),
            vec![Face::from_vertices([0, 1]), Face::singleton(2)],
        )
        .unwrap();
        let res = is_matroid(&c, MatroidCheckMode::Exhaustive);
        assert!(!res.is_matroid);
        match res.witness.unwrap() {
            MatroidWitness::ImpureRestriction { subset, small, large } => {
                assert!(small.is_subset(&subset) && large.is_subset(&subset));
                assert!(large.len() > small.len());
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(!is_matroid(&c, MatroidCheckMode::Exchange).is_matroid);
    }

    #[test]
    fn chessboard_small() {
        let c = chessboard(2, 2);
        assert_eq!(c.num_vertices(), 4);
        assert_eq!(c.facets().len(), 2);
        assert_eq!(chessboard(1, 5).facets().len(), 5);
    }

    #[test]
    fn direct_sum_is_join() {
        let a = uniform(1, 2).unwrap();
        let b = uniform(2, 3).unwrap();
        let s = direct_sum(&[a.clone(), b.clone()]);
        assert_eq!(s.rank, 3);
        assert_eq!(s.complex.sorted_facets(), join(&[a.complex, b.complex]).sorted_facets());
        assert_eq!(direct_sum(std::slice::from_ref(&s)).complex.sorted_facets(), s.complex.sorted_facets());
    }

    proptest! {
        #[test]
        fn verifier_routes_agree(gens in proptest::collection::vec(proptest::collection::btree_set(0usize..7, 0..4), 1..6)) {
            let c = SimplicialComplex::from_generators(anonymous_vertices(7), gens.into_iter().map(|s| s.into_iter().collect())).unwrap();
            let a = is_matroid(&c, MatroidCheckMode::Exhaustive).is_matroid;
            let b = is_matroid(&c, MatroidCheckMode::Exchange).is_matroid;
            prop_assert_eq!(a, b);
        }
    }
}

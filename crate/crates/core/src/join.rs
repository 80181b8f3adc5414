//! Joins and deleted joins.
//!
//! In a k-fold deleted join the copy of base vertex `v` in row `i` (1-based)
//! has index `v * k + (i - 1)`, so indices follow the base vertex order first
//! and the row second.

use std::collections::HashSet;

use crate::complex::{facets_from_oracle, FaceOracle, SimplicialComplex, VertexId};
use crate::face::Face;

/// Join of the given complexes. Facets are listed in product order with the
/// first component varying slowest.
pub fn join(components: &[SimplicialComplex]) -> SimplicialComplex {
    let vertices = joined_vertex_table(components);
    let mut offsets = Vec::with_capacity(components.len());
    let mut acc = 0;
    for c in components {
        offsets.push(acc);
        acc += c.num_vertices();
    }
    let mut facets = vec![Face::empty()];
    if components.is_empty() {
        return SimplicialComplex::from_parts(vertices, facets);
    }
    for (c, &off) in components.iter().zip(&offsets) {
        let shifted: Vec<Face> = c
            .facets()
            .iter()
            .map(|f| f.iter().map(|v| v + off).collect())
            .collect();
        facets = facets
            .iter()
            .flat_map(|f| shifted.iter().map(move |g| f.union(g)))
            .collect();
    }
    SimplicialComplex::from_parts(vertices, facets)
}

/// Concatenated vertex table; rows tag the component when labels would clash.
fn joined_vertex_table(components: &[SimplicialComplex]) -> Vec<VertexId> {
    let mut seen = HashSet::new();
    let distinct = components
        .iter()
        .flat_map(|c| c.vertices())
        .all(|v| seen.insert((v.label.clone(), v.row)));
    let mut out = Vec::new();
    for (i, c) in components.iter().enumerate() {
        for v in c.vertices() {
            let mut nv = v.clone();
            nv.index = out.len();
            if !distinct {
                if let Some(row) = v.row {
                    nv.label = format!("{}/{}", v.label, row);
                }
                nv.row = Some(i as u32 + 1);
            }
            out.push(nv);
        }
    }
    out
}

/// Membership oracle for the k-fold deleted join of `base`.
#[derive(Clone, Copy, Debug)]
pub struct DeletedJoin<'a> {
    base: &'a SimplicialComplex,
    k: usize,
}

impl<'a> DeletedJoin<'a> {
    pub fn new(base: &'a SimplicialComplex, k: usize) -> Self {
        assert!(k >= 1, "deleted join needs at least one copy");
        Self { base, k }
    }

    pub fn base(&self) -> &'a SimplicialComplex {
        self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Index of base vertex `v` in row `row` (1-based).
    pub fn vertex(&self, v: usize, row: usize) -> usize {
        debug_assert!((1..=self.k).contains(&row));
        v * self.k + row - 1
    }

    /// `(base vertex, row)` of a deleted-join vertex.
    pub fn coordinates(&self, u: usize) -> (usize, usize) {
        (u / self.k, u % self.k + 1)
    }

    /// Per-row parts `σ_1, …, σ_k` in base coordinates.
    pub fn split(&self, face: &Face) -> Vec<Face> {
        let mut parts = vec![Face::empty(); self.k];
        for u in face.iter() {
            let (v, row) = self.coordinates(u);
            parts[row - 1].insert(v);
        }
        parts
    }

    /// Inverse of [`Self::split`].
    pub fn combine(&self, parts: &[Face]) -> Face {
        assert_eq!(parts.len(), self.k);
        let mut face = Face::empty();
        for (i, p) in parts.iter().enumerate() {
            for v in p.iter() {
                face.insert(self.vertex(v, i + 1));
            }
        }
        face
    }

    /// Vertex table: row-tagged copies of the base vertices.
    pub fn vertex_table(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.base.num_vertices() * self.k);
        for v in self.base.vertices() {
            for row in 1..=self.k {
                out.push(VertexId {
                    index: out.len(),
                    label: v.label.clone(),
                    row: Some(row as u32),
                    block: v.block,
                });
            }
        }
        out
    }

    /// Row permutation `row i ↦ perm[i-1]` (1-based) as a vertex permutation.
    pub fn row_permutation(&self, perm: &[usize]) -> Vec<usize> {
        assert_eq!(perm.len(), self.k);
        (0..self.vertex_count())
            .map(|u| {
                let (v, row) = self.coordinates(u);
                self.vertex(v, perm[row - 1])
            })
            .collect()
    }

    pub fn to_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_parts(self.vertex_table(), facets_from_oracle(self))
    }
}

impl FaceOracle for DeletedJoin<'_> {
    fn vertex_count(&self) -> usize {
        self.base.num_vertices() * self.k
    }

    fn is_face(&self, face: &Face) -> bool {
        let table = self.base.faces();
        let mut used = Face::empty();
        let mut parts = vec![Face::empty(); self.k];
        for u in face.iter() {
            let (v, row) = self.coordinates(u);
            if used.contains(v) {
                return false;
            }
            used.insert(v);
            parts[row - 1].insert(v);
        }
        parts.iter().all(|p| table.contains(p))
    }
}

/// The k-fold deleted join `Σ*ᵏ_Δ`, with facets sorted lexicographically.
pub fn deleted_join(base: &SimplicialComplex, k: usize) -> SimplicialComplex {
    DeletedJoin::new(base, k).to_complex()
}

/// Swap of rows 1 and 2 in a deleted join with `k` rows over `n` base vertices.
pub fn row_swap(n: usize, k: usize) -> Vec<usize> {
    assert!(k >= 2);
    let mut perm: Vec<usize> = (1..=k).collect();
    perm.swap(0, 1);
    (0..n * k)
        .map(|u| (u / k) * k + perm[u % k] - 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::anonymous_vertices;
    use proptest::prelude::*;

    #[test]
    fn bipartite_join() {
        let j = join(&[SimplicialComplex::points(2), SimplicialComplex::points(3)]);
        assert_eq!(j.facets().len(), 6);
        assert_eq!(j.dim(), 1);
        assert_eq!(j.num_vertices(), 5);
    }

    #[test]
    fn join_with_empty_face_is_identity() {
        let s = SimplicialComplex::simplex(3);
        let e = SimplicialComplex::empty_face_only(vec![]);
        assert_eq!(join(&[s.clone(), e]).sorted_facets(), s.sorted_facets());
    }

    #[test]
    fn join_with_void_is_void() {
        let s = SimplicialComplex::simplex(2);
        assert!(join(&[s, SimplicialComplex::void(vec![])]).is_void());
    }

    #[test]
    fn threefold_join_of_points_euler() {
        let p = SimplicialComplex::points(3);
        let j = join(&[p.clone(), p.clone(), p]);
        assert_eq!(j.facets().len(), 27);
        assert_eq!(j.dim(), 2);
        // 27 - 27 + 9 = 9 = 1 + (−1)^2 2^3
        assert_eq!(j.euler_characteristic(), 9);
    }

    #[test]
    fn deleted_join_of_points_is_chessboard() {
        let c = deleted_join(&SimplicialComplex::points(3), 2);
        assert_eq!(c.facets().len(), 6);
        assert!(c.facets().iter().all(|f| f.len() == 2));
        assert_eq!(c.num_vertices(), 6);
    }

    #[test]
    fn deleted_join_k1_is_identity() {
        let base = SimplicialComplex::new(
            anonymous_vertices(4),
            vec![Face::from_vertices([0, 1, 2]), Face::from_vertices([2, 3])],
        )
        .unwrap();
        let d = deleted_join(&base, 1);
        assert_eq!(d.sorted_facets(), base.sorted_facets());
        assert!(d.vertices().iter().all(|v| v.row == Some(1)));
    }

    #[test]
    fn row_swap_is_involution() {
        let p = row_swap(4, 3);
        assert!((0..12).all(|u| p[p[u]] == u));
        assert_eq!(p[0], 1);
        assert_eq!(p[2], 2);
    }

    fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
        proptest::collection::vec(proptest::collection::btree_set(0usize..6, 1..4), 1..5).prop_map(|gens| {
            SimplicialComplex::from_generators(
                anonymous_vertices(6),
                gens.into_iter().map(|s| s.into_iter().collect()),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn deleted_join_is_subcomplex_of_join(base in arb_complex()) {
            let dj = DeletedJoin::new(&base, 2);
            let full = join(&[base.clone(), base.clone()]);
            let n = base.num_vertices();
            for f in deleted_join(&base, 2).facets() {
                let parts = dj.split(f);
                let in_join: Face = parts[0].iter().chain(parts[1].iter().map(|v| v + n)).collect();
                prop_assert!(full.contains_face(&in_join));
            }
            let roundtrip: Vec<Face> = deleted_join(&base, 2).facets().iter().map(|f| dj.combine(&dj.split(f))).collect();
            prop_assert_eq!(roundtrip, deleted_join(&base, 2).facets().to_vec());
        }
    }
}

//! Finite abstract simplicial complexes.
//!
//! A [`SimplicialComplex`] is stored by its facets (an antichain of
//! [`Face`]s) together with a vertex table. The full downward closure is
//! computed on demand and cached in a [`FaceTable`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::face::Face;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face {0} is not a face of the complex")]
    FaceNotInComplex(Face),
    #[error("facet {smaller} is contained in facet {larger}")]
    NotAntichain { smaller: Face, larger: Face },
    #[error("vertex {vertex} is outside the vertex table of size {size}")]
    VertexOutOfRange { vertex: usize, size: usize },
    #[error("vertex table entry {position} carries index {index}")]
    BadVertexIndex { position: usize, index: usize },
    #[error("vertex ({label}, row {row:?}) appears twice")]
    DuplicateVertex { label: String, row: Option<u32> },
    #[error("deleting the empty face removes every face")]
    EmptyDeletion,
    #[error("map is not a permutation of the {0} vertices")]
    NotAPermutation(usize),
    #[error("instance too large: {0}")]
    TooLarge(String),
}

/// A vertex of a complex.
///
/// `row` is the copy index in a join or deleted join (1-based) and `block`
/// the block of a block-structured ground set (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexId {
    pub index: usize,
    pub label: String,
    pub row: Option<u32>,
    pub block: Option<u32>,
}

impl VertexId {
    pub fn new(index: usize, label: impl Into<String>) -> Self {
        Self {
            index,
            label: label.into(),
            row: None,
            block: None,
        }
    }

    pub fn with_row(mut self, row: u32) -> Self {
        self.row = Some(row);
        self
    }

    pub fn with_block(mut self, block: u32) -> Self {
        self.block = Some(block);
        self
    }
}

/// Vertex table with labels `"0"`, `"1"`, ….
pub fn anonymous_vertices(n: usize) -> Vec<VertexId> {
    (0..n).map(|i| VertexId::new(i, i.to_string())).collect()
}

/// All faces of a complex, grouped by cardinality and sorted lexicographically.
#[derive(Debug, Default)]
pub struct FaceTable {
    levels: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
}

impl FaceTable {
    fn build(facets: &[Face]) -> Self {
        let Some(top) = facets.iter().map(Face::len).max() else {
            return Self::default();
        };
        let mut levels: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
        let mut above: Vec<Face> = Vec::new();
        for size in (0..=top).rev() {
            let mut level: HashSet<Face> = facets.iter().filter(|f| f.len() == size).cloned().collect();
            for f in &above {
                level.extend(f.boundary());
            }
            let mut level: Vec<Face> = level.into_iter().collect();
            level.sort_unstable();
            above = level.clone();
            levels[size] = level;
        }
        let index = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
            .collect();
        Self { levels, index }
    }

    /// Largest face cardinality, `None` for the void complex.
    pub fn max_size(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn of_size(&self, size: usize) -> &[Face] {
        self.levels.get(size).map_or(&[], Vec::as_slice)
    }

    pub fn of_dim(&self, dim: isize) -> &[Face] {
        if dim < -1 {
            return &[];
        }
        self.of_size((dim + 1) as usize)
    }

    /// Position of `face` within its size level.
    pub fn position(&self, face: &Face) -> Option<usize> {
        self.index.get(face.len())?.get(face).copied()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.position(face).is_some()
    }

    /// Number of faces, the empty face included.
    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `f[s]` is the number of faces with `s` vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.levels.iter().flatten()
    }

    pub fn levels(&self) -> &[Vec<Face>] {
        &self.levels
    }
}

/// Membership oracle for a (possibly implicit) simplicial complex.
pub trait FaceOracle: Sync {
    fn vertex_count(&self) -> usize;
    fn is_face(&self, face: &Face) -> bool;
}

/// Maximal faces of the complex described by `oracle`, sorted lexicographically.
pub fn facets_from_oracle<O: FaceOracle + ?Sized>(oracle: &O) -> Vec<Face> {
    let root = Face::empty();
    if !oracle.is_face(&root) {
        return Vec::new();
    }
    let n = oracle.vertex_count();
    let mut facets = Vec::new();
    let mut stack = vec![root];
    while let Some(face) = stack.pop() {
        let start = face.max_vertex().map_or(0, |m| m + 1);
        let mut extended = false;
        for v in start..n {
            let g = face.with(v);
            if oracle.is_face(&g) {
                extended = true;
                stack.push(g);
            }
        }
        if !extended && (0..start).all(|v| face.contains(v) || !oracle.is_face(&face.with(v))) {
            facets.push(face);
        }
    }
    facets.sort_unstable();
    facets
}

/// Facets of the link of `sigma` in the complex described by `oracle`.
pub fn link_facets_from_oracle<O: FaceOracle + ?Sized>(oracle: &O, sigma: &Face) -> Result<Vec<Face>, ComplexError> {
    if !oracle.is_face(sigma) {
        return Err(ComplexError::FaceNotInComplex(sigma.clone()));
    }
    struct Link<'a, O: ?Sized> {
        inner: &'a O,
        sigma: &'a Face,
    }
    impl<O: FaceOracle + ?Sized> FaceOracle for Link<'_, O> {
        fn vertex_count(&self) -> usize {
            self.inner.vertex_count()
        }
        fn is_face(&self, face: &Face) -> bool {
            face.is_disjoint(self.sigma) && self.inner.is_face(&face.union(self.sigma))
        }
    }
    Ok(facets_from_oracle(&Link { inner: oracle, sigma }))
}

/// Keeps the inclusion-maximal faces of `generators`, sorted lexicographically.
pub fn maximal_faces(generators: impl IntoIterator<Item = Face>) -> Vec<Face> {
    let mut gens: Vec<Face> = generators.into_iter().collect::<HashSet<_>>().into_iter().collect();
    gens.sort_unstable_by_key(|f| std::cmp::Reverse(f.len()));
    let mut kept: Vec<Face> = Vec::new();
    let mut postings: HashMap<usize, Vec<u32>> = HashMap::new();
    for f in gens {
        let covered = match f.iter().min_by_key(|v| postings.get(v).map_or(0, Vec::len)) {
            None => !kept.is_empty(),
            Some(v) => postings
                .get(&v)
                .is_some_and(|list| list.iter().any(|&g| f.is_subset(&kept[g as usize]))),
        };
        if covered {
            continue;
        }
        for v in f.iter() {
            postings.entry(v).or_default().push(kept.len() as u32);
        }
        kept.push(f);
    }
    kept.sort_unstable();
    kept
}

/// A finite abstract simplicial complex given by its facets.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: Vec<VertexId>,
    facets: Vec<Face>,
    face_cache: OnceLock<Arc<FaceTable>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.vertices.len())
            .field("facets", &self.facets)
            .finish()
    }
}

/// Two complexes are equal when they have the same vertex count and facet set.
impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices.len() == other.vertices.len() && self.sorted_facets() == other.sorted_facets()
    }
}

impl Eq for SimplicialComplex {}

fn validate_vertices(vertices: &[VertexId]) -> Result<(), ComplexError> {
    let mut seen = HashSet::new();
    for (position, v) in vertices.iter().enumerate() {
        if v.index != position {
            return Err(ComplexError::BadVertexIndex {
                position,
                index: v.index,
            });
        }
        if !seen.insert((v.label.as_str(), v.row)) {
            return Err(ComplexError::DuplicateVertex {
                label: v.label.clone(),
                row: v.row,
            });
        }
    }
    Ok(())
}

fn validate_range(vertices: &[VertexId], facets: &[Face]) -> Result<(), ComplexError> {
    for f in facets {
        if let Some(m) = f.max_vertex() {
            if m >= vertices.len() {
                return Err(ComplexError::VertexOutOfRange {
                    vertex: m,
                    size: vertices.len(),
                });
            }
        }
    }
    Ok(())
}

impl SimplicialComplex {
    /// Builds a complex from an explicit facet list, which must be an antichain.
    pub fn new(vertices: Vec<VertexId>, facets: Vec<Face>) -> Result<Self, ComplexError> {
        validate_vertices(&vertices)?;
        validate_range(&vertices, &facets)?;
        let maximal = maximal_faces(facets.iter().cloned());
        if maximal.len() != facets.len() {
            let set: HashSet<&Face> = maximal.iter().collect();
            for f in &facets {
                if !set.contains(f) {
                    let larger = facets
                        .iter()
                        .find(|g| *g != f && f.is_subset(g))
                        .cloned()
                        .unwrap_or_else(|| f.clone());
                    return Err(ComplexError::NotAntichain {
                        smaller: f.clone(),
                        larger,
                    });
                }
            }
        }
        Ok(Self::from_parts(vertices, facets))
    }

    /// Builds the complex generated by arbitrary faces, keeping the maximal ones.
    pub fn from_generators(
        vertices: Vec<VertexId>,
        generators: impl IntoIterator<Item = Face>,
    ) -> Result<Self, ComplexError> {
        validate_vertices(&vertices)?;
        let facets = maximal_faces(generators);
        validate_range(&vertices, &facets)?;
        Ok(Self::from_parts(vertices, facets))
    }

    /// Complex generated by `generators` over the vertex table of `self`.
    pub fn generated(&self, generators: impl IntoIterator<Item = Face>) -> Self {
        Self::from_parts(self.vertices.clone(), maximal_faces(generators))
    }

    pub(crate) fn from_parts(vertices: Vec<VertexId>, facets: Vec<Face>) -> Self {
        Self {
            vertices,
            facets,
            face_cache: OnceLock::new(),
        }
    }

    /// The complex with no faces at all.
    pub fn void(vertices: Vec<VertexId>) -> Self {
        Self::from_parts(vertices, Vec::new())
    }

    /// The complex `{∅}`.
    pub fn empty_face_only(vertices: Vec<VertexId>) -> Self {
        Self::from_parts(vertices, vec![Face::empty()])
    }

    /// The full simplex on `n` anonymous vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_parts(anonymous_vertices(n), vec![Face::from_vertices(0..n)])
    }

    /// `n` isolated points.
    pub fn points(n: usize) -> Self {
        Self::from_parts(anonymous_vertices(n), (0..n).map(Face::singleton).collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn sorted_facets(&self) -> Vec<Face> {
        let mut f = self.facets.clone();
        f.sort_unstable();
        f
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; −1 for both `{∅}` and the void complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Sorted list of the distinct facet dimensions.
    pub fn facet_dimensions(&self) -> Vec<isize> {
        let mut dims: Vec<isize> = self.facets.iter().map(Face::dim).collect();
        dims.sort_unstable();
        dims.dedup();
        dims
    }

    /// Vertices lying in at least one face.
    pub fn support(&self) -> Face {
        self.facets.iter().fold(Face::empty(), |acc, f| acc.union(f))
    }

    /// The cached downward closure.
    pub fn faces(&self) -> &FaceTable {
        self.face_cache.get_or_init(|| Arc::new(FaceTable::build(&self.facets)))
    }

    pub fn num_faces(&self) -> usize {
        self.faces().len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces().f_vector()
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        match self.face_cache.get() {
            Some(t) => t.contains(face),
            None => self.facets.iter().any(|f| face.is_subset(f)),
        }
    }

    /// Position of a facet in [`Self::facets`].
    pub fn facet_index(&self) -> HashMap<&Face, usize> {
        self.facets.iter().enumerate().map(|(i, f)| (f, i)).collect()
    }

    /// For every face, the value obtained by merging `value(i)` over all
    /// facets `i` containing it. Aligned with [`FaceTable::levels`].
    pub fn propagate_from_facets<T: Copy>(
        &self,
        value: impl Fn(usize) -> T,
        merge: impl Fn(T, T) -> T,
    ) -> Vec<Vec<T>> {
        let table = self.faces();
        let mut out: Vec<Vec<Option<T>>> = table.levels().iter().map(|l| vec![None; l.len()]).collect();
        for (i, f) in self.facets.iter().enumerate() {
            let pos = table.position(f).expect("facet present in its own face table");
            let slot = &mut out[f.len()][pos];
            *slot = Some(match *slot {
                Some(old) => merge(old, value(i)),
                None => value(i),
            });
        }
        for size in (1..table.levels().len()).rev() {
            for (pos, face) in table.of_size(size).iter().enumerate() {
                let val = out[size][pos].expect("every face lies in a facet");
                for sub in face.boundary() {
                    let p = table.position(&sub).expect("closure is downward closed");
                    let slot = &mut out[size - 1][p];
                    *slot = Some(match *slot {
                        Some(old) => merge(old, val),
                        None => val,
                    });
                }
            }
        }
        out.into_iter()
            .map(|l| l.into_iter().map(|v| v.expect("every face lies in a facet")).collect())
            .collect()
    }

    /// `Σ/σ = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ Σ}`.
    pub fn link(&self, sigma: &Face) -> Result<SimplicialComplex, ComplexError> {
        let gens: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset(f))
            .map(|f| f.difference(sigma))
            .collect();
        if gens.is_empty() {
            return Err(ComplexError::FaceNotInComplex(sigma.clone()));
        }
        Ok(self.generated(gens))
    }

    /// `Σ \ σ = {τ ∈ Σ : σ ⊄ τ}`. Deleting ∅ yields the void complex.
    pub fn deletion(&self, sigma: &Face) -> SimplicialComplex {
        let mut gens = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            if sigma.is_subset(f) {
                gens.extend(sigma.iter().map(|v| f.without(v)));
            } else {
                gens.push(f.clone());
            }
        }
        self.generated(gens)
    }

    /// Like [`Self::deletion`] but rejects the empty face.
    pub fn try_deletion(&self, sigma: &Face) -> Result<SimplicialComplex, ComplexError> {
        if sigma.is_empty() {
            return Err(ComplexError::EmptyDeletion);
        }
        Ok(self.deletion(sigma))
    }

    /// Deletion of a single vertex, `Σ \ {v}`.
    pub fn delete_vertex(&self, v: usize) -> SimplicialComplex {
        self.deletion(&Face::singleton(v))
    }

    /// `Σ|W = {τ ∈ Σ : τ ⊆ W}`.
    pub fn restriction(&self, w: &Face) -> SimplicialComplex {
        if self.is_void() {
            return self.clone();
        }
        self.generated(self.facets.iter().map(|f| f.intersection(w)))
    }

    /// Faces of dimension at most `m` (`m ≥ −1`).
    pub fn skeleton(&self, m: isize) -> SimplicialComplex {
        assert!(m >= -1, "skeleton dimension must be at least -1");
        if m >= self.dim() {
            return self.clone();
        }
        let size = (m + 1) as usize;
        let mut facets: Vec<Face> = self.faces().of_size(size).to_vec();
        facets.extend(self.facets.iter().filter(|f| f.len() < size).cloned());
        facets.sort_unstable();
        Self::from_parts(self.vertices.clone(), facets)
    }

    /// `δ(A)`: the size of a largest facet containing `a`.
    pub fn degree(&self, a: &Face) -> Result<usize, ComplexError> {
        self.facets
            .iter()
            .filter(|f| a.is_subset(f))
            .map(Face::len)
            .max()
            .ok_or_else(|| ComplexError::FaceNotInComplex(a.clone()))
    }

    /// Degrees of all faces, aligned with [`FaceTable::levels`].
    pub fn degrees(&self) -> Vec<Vec<usize>> {
        self.propagate_from_facets(|i| self.facets[i].len(), usize::max)
    }

    pub fn f_triangle(&self) -> FTriangle {
        FTriangle::from_complex(self)
    }

    /// `χ = Σ_{i ≥ 0} (−1)^i f_i` over non-empty faces.
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.f_vector(), 1)
    }

    /// `χ̃ = χ − 1`, counting the empty face in dimension −1.
    pub fn reduced_euler(&self) -> i64 {
        alternating_sum(&self.f_vector(), 0)
    }

    /// Connected components, each over the full vertex table.
    pub fn connected_components(&self) -> Vec<SimplicialComplex> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            let mut it = f.iter();
            if let Some(first) = it.next() {
                for v in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                    parent[a] = b;
                }
            }
        }
        let mut groups: HashMap<usize, Vec<Face>> = HashMap::new();
        for f in self.facets.iter().filter(|f| !f.is_empty()) {
            let root = find(&mut parent, f.min_vertex().expect("non-empty"));
            groups.entry(root).or_default().push(f.clone());
        }
        let mut comps: Vec<Vec<Face>> = groups.into_values().collect();
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort_unstable();
        comps
            .into_iter()
            .map(|facets| Self::from_parts(self.vertices.clone(), facets))
            .collect()
    }

    /// Subcomplex generated by the facets with the given positions.
    pub fn subcomplex(&self, facet_positions: impl IntoIterator<Item = usize>) -> SimplicialComplex {
        self.generated(facet_positions.into_iter().map(|i| self.facets[i].clone()))
    }

    /// Faces common to both complexes (which share a vertex table).
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let (small, big) = if self.num_faces() <= other.num_faces() {
            (self, other)
        } else {
            (other, self)
        };
        let big_table = big.faces();
        let common = small.faces().iter().filter(|f| big_table.contains(f)).cloned();
        self.generated(common)
    }

    /// Image under a vertex permutation.
    pub fn relabel(&self, perm: &[usize]) -> Result<SimplicialComplex, ComplexError> {
        check_permutation(perm, self.vertices.len())?;
        let mut facets: Vec<Face> = self.facets.iter().map(|f| f.map(perm)).collect();
        facets.sort_unstable();
        Ok(Self::from_parts(self.vertices.clone(), facets))
    }

    /// Whether `perm` maps the facet set onto itself.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        match self.relabel(perm) {
            Ok(image) => image.sorted_facets() == self.sorted_facets(),
            Err(_) => false,
        }
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<(), ComplexError> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(ComplexError::NotAPermutation(n));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(ComplexError::NotAPermutation(n));
        }
    }
    Ok(())
}

fn alternating_sum(f: &[usize], skip: usize) -> i64 {
    f.iter()
        .enumerate()
        .skip(skip)
        .map(|(size, &n)| if size % 2 == 1 { n as i64 } else { -(n as i64) })
        .sum()
}

impl FaceOracle for SimplicialComplex {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn is_face(&self, face: &Face) -> bool {
        self.faces().contains(face)
    }
}

/// Face counts refined by degree.
///
/// `entries[i][j]` counts faces with `i` vertices whose largest containing
/// facet has `j` vertices; `h_diagonal[j] = (−1)^j Σ_{i ≤ j} (−1)^i f_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FTriangle {
    pub d: isize,
    pub entries: Vec<Vec<u64>>,
    pub h_diagonal: Vec<i64>,
}

impl FTriangle {
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        let d = complex.dim();
        let n = (d + 2) as usize;
        let mut entries = vec![vec![0u64; n]; n];
        if !complex.is_void() {
            let degrees = complex.degrees();
            for (size, level) in degrees.iter().enumerate() {
                for &deg in level {
                    entries[size][deg] += 1;
                }
            }
        }
        let h_diagonal = (0..n)
            .map(|j| {
                let s: i64 = (0..=j)
                    .map(|i| {
                        let v = entries[i][j] as i64;
                        if i % 2 == 0 { v } else { -v }
                    })
                    .sum();
                if j % 2 == 0 { s } else { -s }
            })
            .collect();
        Self { d, entries, h_diagonal }
    }

    /// `f_{i,j}`.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    /// Row sums `Σ_j f_{i,j}`: the f-vector indexed by face size.
    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_plus_point() -> SimplicialComplex {
        SimplicialComplex::new(
            anonymous_vertices(3),
            vec![Face::from_vertices([0, 1]), Face::singleton(2)],
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_antichain() {
        let err = SimplicialComplex::new(
            anonymous_vertices(3),
            vec![Face::from_vertices([0, 1]), Face::singleton(1)],
        )
        .unwrap_err();
        assert!(matches!(err, ComplexError::NotAntichain { .. }));
    }

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        assert!(matches!(
            SimplicialComplex::new(anonymous_vertices(2), vec![Face::singleton(5)]),
            Err(ComplexError::VertexOutOfRange { .. })
        ));
        let mut vs = anonymous_vertices(2);
        vs[1].label = "0".into();
        assert!(matches!(
            SimplicialComplex::new(vs, vec![]),
            Err(ComplexError::DuplicateVertex { .. })
        ));
    }

    #[test]
    fn face_table_is_downward_closure() {
        let s = SimplicialComplex::simplex(5);
        let binom = [1, 5, 10, 10, 5, 1];
        assert_eq!(s.f_vector(), binom);
        assert!(s.faces().iter().all(|f| s.contains_face(f)));
    }

    #[test]
    fn link_of_empty_face_and_facet() {
        let c = edge_plus_point();
        assert_eq!(c.link(&Face::empty()).unwrap(), c);
        let l = c.link(&Face::from_vertices([0, 1])).unwrap();
        assert_eq!(l.facets(), &[Face::empty()]);
        assert!(matches!(
            c.link(&Face::from_vertices([0, 2])),
            Err(ComplexError::FaceNotInComplex(_))
        ));
    }

    #[test]
    fn deletion_and_restriction() {
        let c = edge_plus_point();
        assert!(c.deletion(&Face::empty()).is_void());
        assert_eq!(c.try_deletion(&Face::empty()), Err(ComplexError::EmptyDeletion));
        let all = Face::from_vertices(0..3);
        assert_eq!(c.restriction(&all), c);
        for v in 0..3 {
            assert_eq!(c.delete_vertex(v), c.restriction(&all.without(v)));
        }
        let d = c.deletion(&Face::from_vertices([0, 1]));
        assert_eq!(d.sorted_facets(), vec![Face::singleton(0), Face::singleton(1), Face::singleton(2)]);
    }

    #[test]
    fn skeleton_of_simplex_is_sphere() {
        let s = SimplicialComplex::simplex(4).skeleton(2);
        assert_eq!(s.facets().len(), 4);
        assert_eq!(s.reduced_euler(), 1);
        assert_eq!(SimplicialComplex::simplex(4).skeleton(3), SimplicialComplex::simplex(4));
    }

    #[test]
    fn simplex_f_triangle() {
        let t = SimplicialComplex::simplex(4).f_triangle();
        for i in 0..=4 {
            assert_eq!(t.get(i, 4), [1, 4, 6, 4, 1][i]);
            for j in 0..4 {
                assert_eq!(t.get(i, j), 0);
            }
        }
        assert!(t.h_diagonal.iter().all(|&h| h == 0));
    }

    #[test]
    fn euler_of_point() {
        let p = SimplicialComplex::points(1);
        assert_eq!(p.euler_characteristic(), 1);
        assert_eq!(p.reduced_euler(), 0);
    }

    #[test]
    fn degree_of_faces() {
        let c = edge_plus_point();
        assert_eq!(c.degree(&Face::empty()).unwrap(), 2);
        assert_eq!(c.degree(&Face::singleton(2)).unwrap(), 1);
        assert!(c.degree(&Face::from_vertices([1, 2])).is_err());
    }

    #[test]
    fn components_split_by_vertices() {
        let comps = edge_plus_point().connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].facets(), &[Face::from_vertices([0, 1])]);
    }

    #[test]
    fn oracle_enumeration_matches_facets() {
        let c = SimplicialComplex::new(
            anonymous_vertices(5),
            vec![Face::from_vertices([0, 1, 2]), Face::from_vertices([2, 3]), Face::from_vertices([1, 4])],
        )
        .unwrap();
        assert_eq!(facets_from_oracle(&c), c.sorted_facets());
        let l = link_facets_from_oracle(&c, &Face::singleton(1)).unwrap();
        assert_eq!(l, c.link(&Face::singleton(1)).unwrap().sorted_facets());
    }
}

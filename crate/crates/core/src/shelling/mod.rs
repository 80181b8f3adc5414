//! Non-pure shellings.
//!
//! An order `F_1, F_2, …` of the facets is a shelling when for every `j > 1`
//! the complex generated by `F_j ∩ F_i` (`i < j`) is pure of dimension
//! `dim F_j − 1`. Equivalently, for every earlier `A` there are an earlier `C`
//! and a vertex `v ∈ B = F_j` with `A ∩ B ⊆ B ∩ C = B ∖ {v}`.
//!
//! Two verifiers implement the two formulations independently: the pairwise
//! one works on facet intersections only, the intersection one on the face
//! table and the earliest facet containing each face.

mod balanced;
mod mr2;
mod random;
mod search;
mod vd;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::face::Face;

pub use balanced::{
    balanced_b_skeleton, compatible_skeleton_shelling, is_compatible, shell_balanced_skeleton, Shelled, VertexColoring,
};
pub use mr2::{block_symmetries, covering_subcomplexes, join_shelling, shelling_mr2, shelling_mr2_prime, Covering, Mr2Shelling};
pub use random::{random_complex, random_shellable};
pub use search::{search_shelling, SearchOutcome, DEFAULT_SEARCH_BUDGET};
pub use vd::{
    first_w_shed_refutation, is_vertex_decomposable, FirstShedRefutation, ShedAction, ShedStep, ShedTree, VdOutcome,
    DEFAULT_VD_BUDGET,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShellingError {
    #[error("order is not a permutation of the {0} facets")]
    NotAPermutation(usize),
    #[error("input order is not a shelling (first failure at position {0})")]
    InputNotShelling(usize),
    #[error("complex is not balanced with respect to the coloring")]
    NotBalanced,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("constructed order fails at position {0}")]
    ConstructionFailed(usize),
    #[error("no compatible order found within budget")]
    Exhausted,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Witness that facet `b` meets the earlier facet `c` in `b ∖ {v}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "B")]
    pub b: usize,
    #[serde(rename = "C")]
    pub c: usize,
    pub v: usize,
}

/// Facet order plus, for every non-initial facet `B`, one witness per vertex
/// `v ∈ B` for which some earlier facet contains `B ∖ {v}`. For each earlier
/// `A` a witness with `v ∉ A` exists exactly when the order is a shelling.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingOrder {
    pub order: Vec<usize>,
    #[serde(default)]
    pub witnesses: Vec<Witness>,
}

impl ShellingOrder {
    /// Facets in shelling order.
    pub fn facets<'a>(&'a self, complex: &'a SimplicialComplex) -> impl Iterator<Item = &'a Face> + 'a {
        self.order.iter().map(|&i| &complex.facets()[i])
    }
}

/// Result of a verifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingCheck {
    pub valid: bool,
    /// Position in the order of the first facet violating the condition.
    pub first_failure: Option<usize>,
    pub certificate: Option<ShellingOrder>,
}

pub(crate) fn check_order(complex: &SimplicialComplex, order: &[usize]) -> Result<(), ShellingError> {
    let n = complex.facets().len();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(ShellingError::NotAPermutation(n));
    }
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(ShellingError::NotAPermutation(n));
        }
    }
    Ok(())
}

/// Set operations the pairwise verifier needs, on 128-bit masks or faces.
trait VertexSet: Sync + Send + Clone {
    fn size(&self) -> usize;
    fn common(&self, other: &Self) -> usize;
    fn is_subset_of(&self, other: &Self) -> bool;
    /// The single vertex of `self ∖ other`, assuming there is exactly one.
    fn lone_difference(&self, other: &Self) -> usize;
    fn add(&mut self, v: usize);
    fn empty() -> Self;
}

impl VertexSet for u128 {
    fn size(&self) -> usize {
        self.count_ones() as usize
    }
    fn common(&self, other: &Self) -> usize {
        (self & other).count_ones() as usize
    }
    fn is_subset_of(&self, other: &Self) -> bool {
        self & !other == 0
    }
    fn lone_difference(&self, other: &Self) -> usize {
        (self & !other).trailing_zeros() as usize
    }
    fn add(&mut self, v: usize) {
        *self |= 1u128 << v;
    }
    fn empty() -> Self {
        0
    }
}

impl VertexSet for Face {
    fn size(&self) -> usize {
        self.len()
    }
    fn common(&self, other: &Self) -> usize {
        self.intersection_len(other)
    }
    fn is_subset_of(&self, other: &Self) -> bool {
        self.is_subset(other)
    }
    fn lone_difference(&self, other: &Self) -> usize {
        self.difference(other).min_vertex().expect("non-empty difference")
    }
    fn add(&mut self, v: usize) {
        self.insert(v);
    }
    fn empty() -> Self {
        Face::empty()
    }
}

/// For facet position `p`: the witnesses `(C, v)` and whether every earlier
/// `A` avoids some witnessed `v`.
fn pairwise_at<S: VertexSet>(sets: &[S], p: usize) -> (bool, Vec<(usize, usize)>) {
    let b = &sets[p];
    let k = b.size();
    let mut witnessed = S::empty();
    let mut found: Vec<(usize, usize)> = Vec::new();
    for (q, c) in sets[..p].iter().enumerate() {
        if k > 0 && b.common(c) == k - 1 {
            let v = b.lone_difference(c);
            if !found.iter().any(|&(_, w)| w == v) {
                found.push((q, v));
                witnessed.add(v);
            }
        }
    }
    let ok = sets[..p].iter().all(|a| !witnessed.is_subset_of(a));
    (ok, found)
}

/// Whether facet `b` may follow the facets `placed`.
fn can_follow<S: VertexSet>(sets: &[S], placed: &[usize], b: usize) -> bool {
    if placed.is_empty() {
        return true;
    }
    let bset = &sets[b];
    let k = bset.size();
    let mut witnessed = S::empty();
    let mut any = false;
    for &c in placed {
        let cset = &sets[c];
        if k > 0 && bset.common(cset) == k - 1 {
            witnessed.add(bset.lone_difference(cset));
            any = true;
        }
    }
    any && placed.iter().all(|&a| !witnessed.is_subset_of(&sets[a]))
}

fn pairwise_generic<S: VertexSet>(sets: Vec<S>) -> (Option<usize>, Vec<Vec<(usize, usize)>>) {
    let results: Vec<(bool, Vec<(usize, usize)>)> = (0..sets.len()).into_par_iter().map(|p| pairwise_at(&sets, p)).collect();
    let first_failure = results.iter().enumerate().skip(1).find(|(_, r)| !r.0).map(|(p, _)| p);
    (first_failure, results.into_iter().map(|r| r.1).collect())
}

/// Pairwise verifier: for each `A ≪ B` looks for `C ≪ B` and `v` with
/// `A ∩ B ⊆ B ∩ C = B ∖ {v}`.
pub fn verify_shelling_pairwise(complex: &SimplicialComplex, order: &[usize]) -> Result<ShellingCheck, ShellingError> {
    check_order(complex, order)?;
    let facets: Vec<&Face> = order.iter().map(|&i| &complex.facets()[i]).collect();
    let masks: Option<Vec<u128>> = facets.iter().map(|f| f.to_mask()).collect();
    let (first_failure, found) = match masks {
        Some(m) => pairwise_generic(m),
        None => pairwise_generic(facets.iter().map(|f| (*f).clone()).collect()),
    };
    let certificate = first_failure.is_none().then(|| ShellingOrder {
        order: order.to_vec(),
        witnesses: found
            .iter()
            .enumerate()
            .flat_map(|(p, ws)| {
                ws.iter().map(move |&(q, v)| Witness {
                    b: order[p],
                    c: order[q],
                    v,
                })
            })
            .collect(),
    });
    Ok(ShellingCheck {
        valid: first_failure.is_none(),
        first_failure,
        certificate,
    })
}

/// Earliest position (in `order`) of a facet containing each face, aligned
/// with the face table levels.
pub(crate) fn min_positions(complex: &SimplicialComplex, order: &[usize]) -> Vec<Vec<usize>> {
    let mut pos = vec![0; order.len()];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    complex.propagate_from_facets(|i| pos[i], usize::min)
}

/// Intersection verifier: `B ∩ (⋃ earlier facets)` is pure of dimension `dim B − 1`.
pub fn verify_shelling_intersection(complex: &SimplicialComplex, order: &[usize]) -> Result<ShellingCheck, ShellingError> {
    check_order(complex, order)?;
    let minpos = min_positions(complex, order);
    let table = complex.faces();
    let earliest = |f: &Face| minpos[f.len()][table.position(f).expect("subface of a facet")];
    let failures: Vec<bool> = order
        .par_iter()
        .enumerate()
        .skip(1)
        .map(|(p, &i)| {
            let b = &complex.facets()[i];
            let verts = b.vertices();
            let k = verts.len();
            assert!(k < 32, "facet too large for subset enumeration");
            let full = (1u32 << k) - 1;
            let marked: Vec<bool> = (0..=full)
                .map(|m| {
                    m != full && earliest(&Face::from_vertices((0..k).filter(|t| m >> t & 1 == 1).map(|t| verts[t]))) < p
                })
                .collect();
            (0..full).any(|m| {
                marked[m as usize]
                    && (m.count_ones() as usize) + 1 < k
                    && (0..k).all(|t| m >> t & 1 == 1 || !marked[(m | 1 << t) as usize])
            })
        })
        .collect();
    let first_failure = failures.iter().position(|&f| f).map(|p| p + 1);
    Ok(ShellingCheck {
        valid: first_failure.is_none(),
        first_failure,
        certificate: None,
    })
}

/// Re-checks a stored certificate without recomputing witnesses.
pub fn check_certificate(complex: &SimplicialComplex, cert: &ShellingOrder) -> Result<bool, ShellingError> {
    check_order(complex, &cert.order)?;
    let facets = complex.facets();
    let mut pos = vec![0; facets.len()];
    for (p, &i) in cert.order.iter().enumerate() {
        pos[i] = p;
    }
    let mut by_b: Vec<Vec<usize>> = vec![Vec::new(); facets.len()];
    for w in &cert.witnesses {
        if w.b >= facets.len() || w.c >= facets.len() || pos[w.c] >= pos[w.b] {
            return Ok(false);
        }
        let (b, c) = (&facets[w.b], &facets[w.c]);
        if !b.contains(w.v) || b.without(w.v) != b.intersection(c) {
            return Ok(false);
        }
        by_b[w.b].push(w.v);
    }
    for (p, &bi) in cert.order.iter().enumerate() {
        for &ai in &cert.order[..p] {
            if !by_b[bi].iter().any(|&v| !facets[ai].contains(v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Stable reorder by decreasing facet dimension.
pub fn dimension_decreasing(complex: &SimplicialComplex, order: &[usize]) -> Vec<usize> {
    let mut out = order.to_vec();
    out.sort_by_key(|&i| std::cmp::Reverse(complex.facets()[i].len()));
    out
}

/// Sphere counts `(h_1, …, h_{d+1})` of a shellable complex.
pub fn homotopy_from_shelling(complex: &SimplicialComplex, order: &[usize]) -> Result<Vec<i64>, ShellingError> {
    let check = verify_shelling_intersection(complex, order)?;
    if let Some(p) = check.first_failure {
        return Err(ShellingError::InputNotShelling(p));
    }
    Ok(complex.f_triangle().h_diagonal.into_iter().skip(1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::anonymous_vertices;
    use crate::matroid::chessboard;

    fn faces(fs: &[&[usize]]) -> Vec<Face> {
        fs.iter().map(|f| Face::from_vertices(f.iter().copied())).collect()
    }

    #[test]
    fn boundary_of_tetrahedron_any_order() {
        let c = SimplicialComplex::simplex(4).skeleton(2);
        let order: Vec<usize> = (0..4).rev().collect();
        assert!(verify_shelling_pairwise(&c, &order).unwrap().valid);
        assert!(verify_shelling_intersection(&c, &order).unwrap().valid);
    }

    #[test]
    fn two_disjoint_edges_fail_both_orders() {
        let c = chessboard(2, 2);
        for order in [[0, 1], [1, 0]] {
            assert!(!verify_shelling_pairwise(&c, &order).unwrap().valid);
            assert!(!verify_shelling_intersection(&c, &order).unwrap().valid);
        }
    }

    #[test]
    fn non_pure_example() {
        // Triangle then a pendant edge sharing one vertex is a shelling,
        // the reverse is not.
        let c = SimplicialComplex::new(anonymous_vertices(4), faces(&[&[0, 1, 2], &[2, 3]])).unwrap();
        let good = verify_shelling_pairwise(&c, &[0, 1]).unwrap();
        assert!(good.valid);
        assert!(verify_shelling_intersection(&c, &[0, 1]).unwrap().valid);
        assert!(check_certificate(&c, good.certificate.as_ref().unwrap()).unwrap());
        assert!(!verify_shelling_pairwise(&c, &[1, 0]).unwrap().valid);
        assert!(!verify_shelling_intersection(&c, &[1, 0]).unwrap().valid);
    }

    #[test]
    fn rejects_bad_permutation() {
        let c = chessboard(2, 2);
        assert_eq!(verify_shelling_pairwise(&c, &[0, 0]), Err(ShellingError::NotAPermutation(2)));
        assert_eq!(verify_shelling_intersection(&c, &[0]), Err(ShellingError::NotAPermutation(2)));
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let c = SimplicialComplex::simplex(4).skeleton(2);
        let mut cert = verify_shelling_pairwise(&c, &[0, 1, 2, 3]).unwrap().certificate.unwrap();
        assert!(check_certificate(&c, &cert).unwrap());
        cert.witnesses.pop();
        assert!(!check_certificate(&c, &cert).unwrap());
    }

    #[test]
    fn simplex_homotopy_is_trivial() {
        let s = SimplicialComplex::simplex(4);
        assert!(homotopy_from_shelling(&s, &[0]).unwrap().iter().all(|&h| h == 0));
    }
}

//! Balanced complexes, their b-skeleta, and skeleton shellings compatible
//! with a shelling of the ambient complex.

use std::collections::HashSet;

use super::{can_follow, min_positions, verify_shelling_pairwise, ShellingError, ShellingOrder};
use crate::complex::SimplicialComplex;
use crate::face::Face;

/// Partition of the vertex set into color classes `V_1, …, V_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexColoring {
    color_of: Vec<usize>,
    classes: Vec<Face>,
}

impl VertexColoring {
    /// `color_of[v]` is the class of vertex `v`; classes are `0..m`.
    pub fn new(color_of: Vec<usize>) -> Self {
        let m = color_of.iter().max().map_or(0, |&c| c + 1);
        let mut classes = vec![Face::empty(); m];
        for (v, &c) in color_of.iter().enumerate() {
            classes[c].insert(v);
        }
        Self { color_of, classes }
    }

    /// Colors by the row tag of each vertex (row `i` gets color `i − 1`).
    pub fn by_row(complex: &SimplicialComplex) -> Result<Self, ShellingError> {
        complex
            .vertices()
            .iter()
            .map(|v| v.row.map(|r| r as usize - 1))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
            .ok_or_else(|| ShellingError::BadParameter("vertex without a row tag".into()))
    }

    pub fn num_colors(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Face] {
        &self.classes
    }

    pub fn color(&self, v: usize) -> usize {
        self.color_of[v]
    }

    /// `(|F ∩ V_1|, …, |F ∩ V_m|)`.
    pub fn counts(&self, face: &Face) -> Vec<usize> {
        self.classes.iter().map(|c| c.intersection_len(face)).collect()
    }

    /// The common type vector of all facets.
    pub fn type_of(&self, complex: &SimplicialComplex) -> Result<Vec<usize>, ShellingError> {
        if self.color_of.len() != complex.num_vertices() {
            return Err(ShellingError::BadParameter("coloring does not cover the vertex set".into()));
        }
        let mut facets = complex.facets().iter();
        let Some(first) = facets.next() else {
            return Err(ShellingError::NotBalanced);
        };
        let a = self.counts(first);
        if facets.all(|f| self.counts(f) == a) {
            Ok(a)
        } else {
            Err(ShellingError::NotBalanced)
        }
    }
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = subsets_of_size(&items[1..], k - 1);
    for s in &mut with {
        s.insert(0, items[0]);
    }
    with.extend(subsets_of_size(&items[1..], k));
    with
}

fn check_b(a: &[usize], b: &[usize]) -> Result<(), ShellingError> {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| y > x) {
        return Err(ShellingError::BadParameter(format!("b = {b:?} is not bounded by the type {a:?}")));
    }
    Ok(())
}

/// Faces `F` with `|F ∩ V_i| ≤ b_i`. For a balanced complex its facets are
/// exactly the faces with `|F ∩ V_i| = b_i`.
pub fn balanced_b_skeleton(
    complex: &SimplicialComplex,
    coloring: &VertexColoring,
    b: &[usize],
) -> Result<SimplicialComplex, ShellingError> {
    let a = coloring.type_of(complex)?;
    check_b(&a, b)?;
    let mut seen: HashSet<Face> = HashSet::new();
    for f in complex.facets() {
        let mut partial = vec![Face::empty()];
        for (class, &bi) in coloring.classes().iter().zip(b) {
            let part: Vec<usize> = f.intersection(class).vertices();
            let choices = subsets_of_size(&part, bi);
            partial = partial
                .iter()
                .flat_map(|p| choices.iter().map(move |c| p.union(&Face::from_vertices(c.iter().copied()))))
                .collect();
        }
        seen.extend(partial);
    }
    let mut facets: Vec<Face> = seen.into_iter().collect();
    facets.sort();
    Ok(SimplicialComplex::from_parts(complex.vertices().to_vec(), facets))
}

/// A complex together with a shelling of it.
#[derive(Clone, Debug)]
pub struct Shelled {
    pub complex: SimplicialComplex,
    pub shelling: ShellingOrder,
}

fn require_shelling(complex: &SimplicialComplex, order: &[usize]) -> Result<(), ShellingError> {
    let check = verify_shelling_pairwise(complex, order)?;
    match check.first_failure {
        Some(p) => Err(ShellingError::InputNotShelling(p)),
        None => Ok(()),
    }
}

/// Earliest position in `order` of a facet of `complex` containing each facet of `sub`.
fn earliest_containing(complex: &SimplicialComplex, order: &[usize], sub: &SimplicialComplex) -> Vec<usize> {
    let minpos = min_positions(complex, order);
    let table = complex.faces();
    sub.facets()
        .iter()
        .map(|f| minpos[f.len()][table.position(f).expect("face of the ambient complex")])
        .collect()
}

/// Whether the earliest ambient facet containing each skeleton facet is
/// non-decreasing along `sub_order`.
pub fn is_compatible(
    complex: &SimplicialComplex,
    order: &[usize],
    sub: &SimplicialComplex,
    sub_order: &[usize],
) -> bool {
    let e = earliest_containing(complex, order, sub);
    sub_order.windows(2).all(|w| e[w[0]] <= e[w[1]])
}

/// Orders `group` after `placed`, keeping every step valid. Returns false
/// when the group cannot be completed within `budget` nodes.
fn place_group(sets: &[Face], placed: &mut Vec<usize>, group: &[usize], budget: &mut usize) -> bool {
    if group.is_empty() {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    for (t, &b) in group.iter().enumerate() {
        if !can_follow(sets, placed, b) {
            continue;
        }
        placed.push(b);
        let rest: Vec<usize> = group.iter().enumerate().filter(|&(s, _)| s != t).map(|(_, &g)| g).collect();
        if place_group(sets, placed, &rest, budget) {
            return true;
        }
        placed.pop();
    }
    false
}

/// A shelling of the `m`-skeleton compatible with `order`: faces sorted by
/// the earliest ambient facet containing them, then lexicographically.
/// When that order fails, each group of faces sharing an earliest facet is
/// reordered by search.
pub fn compatible_skeleton_shelling(
    complex: &SimplicialComplex,
    order: &[usize],
    m: isize,
) -> Result<Shelled, ShellingError> {
    if m < 0 || m > complex.dim() {
        return Err(ShellingError::BadParameter(format!("skeleton dimension {m} out of range")));
    }
    require_shelling(complex, order)?;
    let skel = complex.skeleton(m);
    let earliest = earliest_containing(complex, order, &skel);
    let facets = skel.facets();
    let mut sorted: Vec<usize> = (0..facets.len()).collect();
    sorted.sort_by(|&i, &j| earliest[i].cmp(&earliest[j]).then_with(|| facets[i].cmp(&facets[j])));
    let check = verify_shelling_pairwise(&skel, &sorted)?;
    let shelling = match check.certificate {
        Some(c) => c,
        None => {
            let mut placed: Vec<usize> = Vec::with_capacity(sorted.len());
            let mut budget = 1_000_000usize;
            for group in sorted.chunk_by(|&i, &j| earliest[i] == earliest[j]) {
                if !place_group(facets, &mut placed, group, &mut budget) {
                    return Err(ShellingError::Exhausted);
                }
            }
            verify_shelling_pairwise(&skel, &placed)?
                .certificate
                .ok_or(ShellingError::Exhausted)?
        }
    };
    Ok(Shelled {
        complex: skel,
        shelling,
    })
}

/// Shelling of the balanced b-skeleton obtained by lowering one entry of the
/// type at a time: take a compatible codimension-one skeleton shelling and
/// keep the faces of the lowered type in the same order.
pub fn shell_balanced_skeleton(
    complex: &SimplicialComplex,
    coloring: &VertexColoring,
    b: &[usize],
    order: &[usize],
) -> Result<Shelled, ShellingError> {
    let a = coloring.type_of(complex)?;
    check_b(&a, b)?;
    require_shelling(complex, order)?;
    let mut current = complex.clone();
    let mut current_order = order.to_vec();
    let mut t = a;
    while let Some(i) = (0..t.len()).find(|&i| t[i] > b[i]) {
        t[i] -= 1;
        let skel = compatible_skeleton_shelling(&current, &current_order, current.dim() - 1)?;
        let kept: Vec<Face> = skel
            .shelling
            .facets(&skel.complex)
            .filter(|f| coloring.counts(f) == t)
            .cloned()
            .collect();
        current_order = (0..kept.len()).collect();
        current = SimplicialComplex::from_parts(complex.vertices().to_vec(), kept);
    }
    let check = verify_shelling_pairwise(&current, &current_order)?;
    match check.certificate {
        Some(shelling) => Ok(Shelled {
            complex: current,
            shelling,
        }),
        None => Err(ShellingError::ConstructionFailed(check.first_failure.unwrap_or(0))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::chessboard;
    use crate::shelling::{join_shelling, search_shelling, verify_shelling_intersection, SearchOutcome};

    fn shelled_chessboard(c: usize) -> (SimplicialComplex, Vec<usize>) {
        let board = chessboard(2, c);
        let SearchOutcome::Shellable(o) = search_shelling(&board, &[], 100_000) else {
            panic!("chessboard(2,{c}) is shellable");
        };
        (board, o.order)
    }

    #[test]
    fn full_dimension_keeps_order() {
        let (board, order) = shelled_chessboard(3);
        let s = compatible_skeleton_shelling(&board, &order, 1).unwrap();
        let a: Vec<&Face> = s.shelling.facets(&s.complex).collect();
        let b: Vec<&Face> = order.iter().map(|&i| &board.facets()[i]).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn edges_of_a_triangle_in_lex_order() {
        let t = SimplicialComplex::simplex(3);
        let s = compatible_skeleton_shelling(&t, &[0], 1).unwrap();
        let edges: Vec<Vec<usize>> = s.shelling.facets(&s.complex).map(Face::vertices).collect();
        assert_eq!(edges, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn codimension_one_skeleton_of_chessboard_join() {
        let (board, order) = shelled_chessboard(3);
        let (cj, cj_order) = join_shelling(&[(&board, order.as_slice()); 3]);
        assert!(verify_shelling_pairwise(&cj, &cj_order).unwrap().valid);
        let s = compatible_skeleton_shelling(&cj, &cj_order, cj.dim() - 1).unwrap();
        assert!(verify_shelling_intersection(&s.complex, &s.shelling.order).unwrap().valid);
        assert!(is_compatible(&cj, &cj_order, &s.complex, &s.shelling.order));
    }

    #[test]
    fn b_skeleton_edge_cases() {
        let (board, order) = shelled_chessboard(3);
        let (cj, _) = join_shelling(&[(&board, order.as_slice()); 2]);
        let rows = VertexColoring::new((0..cj.num_vertices()).map(|u| u % 2).collect());
        assert_eq!(rows.type_of(&cj).unwrap(), vec![2, 2]);
        assert_eq!(balanced_b_skeleton(&cj, &rows, &[2, 2]).unwrap(), cj);
        let zero = balanced_b_skeleton(&cj, &rows, &[0, 0]).unwrap();
        assert_eq!(zero.facets(), &[Face::empty()]);
        assert!(balanced_b_skeleton(&cj, &rows, &[3, 0]).is_err());
    }

    #[test]
    fn lowered_skeleton_of_two_chessboards() {
        let (board, order) = shelled_chessboard(3);
        let (cj, cj_order) = join_shelling(&[(&board, order.as_slice()); 2]);
        let rows = VertexColoring::new((0..cj.num_vertices()).map(|u| u % 2).collect());
        let out = shell_balanced_skeleton(&cj, &rows, &[2, 1], &cj_order).unwrap();
        assert_eq!(out.complex, balanced_b_skeleton(&cj, &rows, &[2, 1]).unwrap());
        assert!(verify_shelling_pairwise(&out.complex, &out.shelling.order).unwrap().valid);

        // One lowering step is the restriction of the compatible skeleton order.
        let skel = compatible_skeleton_shelling(&cj, &cj_order, cj.dim() - 1).unwrap();
        let restricted: Vec<&Face> = skel
            .shelling
            .facets(&skel.complex)
            .filter(|f| rows.counts(f) == [2, 1])
            .collect();
        let produced: Vec<&Face> = out.shelling.facets(&out.complex).collect();
        assert_eq!(restricted, produced);
    }

    #[test]
    fn rejects_unbalanced_and_unshelled_input() {
        let board = chessboard(2, 2);
        let rows = VertexColoring::new(vec![1, 0, 0, 0]);
        assert_eq!(rows.type_of(&board), Err(ShellingError::NotBalanced));
        let rows = VertexColoring::new(vec![0, 1, 0, 1]);
        assert_eq!(
            shell_balanced_skeleton(&board, &rows, &[1, 0], &[0, 1]).unwrap_err(),
            ShellingError::InputNotShelling(1)
        );
    }
}

//! Explicit shelling of the 2-fold deleted join of the block matroids, and
//! the covering of that deleted join by its facets of the two top sizes.
//!
//! Vertices use the deleted-join indexing `2v + (row − 1)` with base vertices
//! block-major, so the index order is block, then column, then row.

use std::collections::HashMap;

use super::balanced::{shell_balanced_skeleton, VertexColoring};
use super::search::{search_shelling, SearchOutcome, DEFAULT_SEARCH_BUDGET};
use super::{verify_shelling_pairwise, ShellingError, ShellingOrder};
use crate::complex::SimplicialComplex;
use crate::face::Face;
use crate::join::{join, row_swap, DeletedJoin};
use crate::matroid::{build_mr, build_mr_prime, chessboard, Matroid};

/// Join of shelled complexes, shelled lexicographically: facets compare by
/// their factor positions, the first factor most significant.
pub fn join_shelling(factors: &[(&SimplicialComplex, &[usize])]) -> (SimplicialComplex, Vec<usize>) {
    let parts: Vec<SimplicialComplex> = factors.iter().map(|(c, _)| (*c).clone()).collect();
    let joined = join(&parts);
    let ranks: Vec<Vec<usize>> = factors
        .iter()
        .map(|(c, order)| {
            let mut rank = vec![0; c.facets().len()];
            for (p, &i) in order.iter().enumerate() {
                rank[i] = p;
            }
            rank
        })
        .collect();
    // Facets of the join come in product order, first factor slowest.
    let mut keys: Vec<(Vec<usize>, usize)> = Vec::with_capacity(joined.facets().len());
    let mut digits = vec![0usize; factors.len()];
    for idx in 0..joined.facets().len() {
        keys.push((digits.iter().zip(&ranks).map(|(&d, r)| r[d]).collect(), idx));
        for t in (0..digits.len()).rev() {
            digits[t] += 1;
            if digits[t] < factors[t].0.facets().len() {
                break;
            }
            digits[t] = 0;
        }
    }
    keys.sort();
    (joined, keys.into_iter().map(|(_, i)| i).collect())
}

/// Certified shelling of a 2-fold deleted join of a block matroid.
#[derive(Clone, Debug)]
pub struct Mr2Shelling {
    pub complex: SimplicialComplex,
    pub shelling: ShellingOrder,
    /// Number of leading facets that form the join of chessboards.
    pub chessboard_facets: usize,
}

/// `(s(x), x)` with `s(x)` the entries sorted decreasingly; compared lexicographically.
fn pair_key(x: (usize, usize)) -> ((usize, usize), (usize, usize)) {
    ((x.0.max(x.1), x.0.min(x.1)), x)
}

fn shell_block_deleted_join(m: &Matroid, c: usize) -> Result<Mr2Shelling, ShellingError> {
    let r = m.rank;
    let dj = DeletedJoin::new(&m.complex, 2);
    let sigma = dj.to_complex();
    let board = chessboard(2, c);
    let SearchOutcome::Shellable(board_order) = search_shelling(&board, &[row_swap(c, 2)], DEFAULT_SEARCH_BUDGET) else {
        return Err(ShellingError::BadParameter(format!("chessboard(2,{c}) has no shelling")));
    };
    let board_order = board_order.order;
    let (cj, cj_order) = join_shelling(&vec![(&board, board_order.as_slice()); r]);
    let cj_rank: HashMap<&Face, usize> = cj_order.iter().enumerate().map(|(p, &i)| (&cj.facets()[i], p)).collect();

    let last = (r - 1) * 2 * c;
    let (sj, sj_order) = join_shelling(&vec![(&board, board_order.as_slice()); r - 1]);
    let sub = SimplicialComplex::from_parts(sigma.vertices()[..last].to_vec(), sj.facets().to_vec());
    let rows = VertexColoring::new((0..last).map(|u| u % 2).collect());
    let tail = Face::from_vertices(last..sigma.num_vertices());

    let mut first: Vec<(usize, usize)> = Vec::new();
    let mut rest: Vec<(((usize, usize), (usize, usize)), Face, Face, Vec<usize>, usize)> = Vec::new();
    for (i, f) in sigma.facets().iter().enumerate() {
        if let Some(&p) = cj_rank.get(f) {
            first.push((p, i));
            continue;
        }
        let fr = f.intersection(&tail);
        let x = (fr.iter().filter(|u| u % 2 == 0).count(), fr.iter().filter(|u| u % 2 == 1).count());
        let b = vec![(r - x.0).min(r - 1), (r - x.1).min(r - 1)];
        rest.push((pair_key(x), fr, f.difference(&tail), b, i));
    }
    first.sort();

    let mut skeleton_rank: HashMap<Vec<usize>, HashMap<Face, usize>> = HashMap::new();
    for (_, _, _, b, _) in &rest {
        if !skeleton_rank.contains_key(b) {
            let shelled = shell_balanced_skeleton(&sub, &rows, b, &sj_order)?;
            let rank = shelled
                .shelling
                .facets(&shelled.complex)
                .enumerate()
                .map(|(p, f)| (f.clone(), p))
                .collect();
            skeleton_rank.insert(b.clone(), rank);
        }
    }
    let mut keyed = Vec::with_capacity(rest.len());
    for (x, fr, fbar, b, i) in rest {
        let Some(&p) = skeleton_rank[&b].get(&fbar) else {
            return Err(ShellingError::BadParameter(format!("facet part {fbar} is not of type {b:?}")));
        };
        keyed.push((x, fr, p, i));
    }
    keyed.sort();

    let order: Vec<usize> = first.iter().map(|&(_, i)| i).chain(keyed.iter().map(|k| k.3)).collect();
    let check = verify_shelling_pairwise(&sigma, &order)?;
    let shelling = check
        .certificate
        .ok_or_else(|| ShellingError::ConstructionFailed(check.first_failure.unwrap_or(0)))?;
    Ok(Mr2Shelling {
        complex: sigma,
        shelling,
        chessboard_facets: first.len(),
    })
}

/// Shelling of the 2-fold deleted join of `M_r`, `r ≥ 3`.
pub fn shelling_mr2(r: usize) -> Result<Mr2Shelling, ShellingError> {
    if r < 3 {
        return Err(ShellingError::BadParameter(format!("r = {r} must be at least 3")));
    }
    let m = build_mr(r).map_err(|e| ShellingError::BadParameter(e.to_string()))?;
    shell_block_deleted_join(&m, r)
}

/// Shelling of the 2-fold deleted join of `M'_r`, `r ≥ 2`.
pub fn shelling_mr2_prime(r: usize) -> Result<Mr2Shelling, ShellingError> {
    if r < 2 {
        return Err(ShellingError::BadParameter(format!("r = {r} must be at least 2")));
    }
    let m = build_mr_prime(r).map_err(|e| ShellingError::BadParameter(e.to_string()))?;
    shell_block_deleted_join(&m, r + 1)
}

/// Generators of the automorphisms of the 2-fold deleted join of the block
/// matroid with `r` blocks of `c` columns: the row swap, permutations of the
/// columns inside one block, and permutations of the first `r − 1` blocks.
pub fn block_symmetries(r: usize, c: usize) -> Vec<Vec<usize>> {
    let n = r * c;
    let lift = |base: Vec<usize>| -> Vec<usize> { (0..2 * n).map(|u| 2 * base[u / 2] + u % 2).collect() };
    let mut gens = vec![row_swap(n, 2)];
    for block in 0..r {
        if c >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(block * c, block * c + 1);
            gens.push(lift(swap));
            let cycle: Vec<usize> = (0..n)
                .map(|v| if v / c == block { block * c + (v % c + 1) % c } else { v })
                .collect();
            gens.push(lift(cycle));
        }
    }
    if r >= 3 {
        let swap: Vec<usize> = (0..n)
            .map(|v| match v / c {
                0 => c + v % c,
                1 => v % c,
                _ => v,
            })
            .collect();
        gens.push(lift(swap));
        let cycle: Vec<usize> = (0..n)
            .map(|v| if v / c < r - 1 { (v / c + 1) % (r - 1) * c + v % c } else { v })
            .collect();
        gens.push(lift(cycle));
    }
    gens
}

/// Covering of the 2-fold deleted join of `M_r` by the subcomplex generated by
/// facets of size `2r` and the two components generated by facets of size `2r − 1`.
#[derive(Clone, Debug)]
pub struct Covering {
    pub full: SimplicialComplex,
    pub top: SimplicialComplex,
    /// `low[0]` has the whole last block in row 1, `low[1]` in row 2.
    pub low: [SimplicialComplex; 2],
    pub intersections: [SimplicialComplex; 2],
}

pub fn covering_subcomplexes(r: usize) -> Result<Covering, ShellingError> {
    if r < 3 {
        return Err(ShellingError::BadParameter(format!("r = {r} must be at least 3")));
    }
    let m = build_mr(r).map_err(|e| ShellingError::BadParameter(e.to_string()))?;
    let full = DeletedJoin::new(&m.complex, 2).to_complex();
    let by_size = |size: usize| {
        full.subcomplex(full.facets().iter().enumerate().filter(|(_, f)| f.len() == size).map(|(i, _)| i))
    };
    let top = by_size(2 * r);
    let mut components = by_size(2 * r - 1).connected_components();
    if components.len() != 2 {
        return Err(ShellingError::BadParameter(format!(
            "expected two components of lower facets, found {}",
            components.len()
        )));
    }
    let w1_row1 = 2 * (r - 1) * r;
    if !components[0].support().contains(w1_row1) {
        components.swap(0, 1);
    }
    let [low1, low2]: [SimplicialComplex; 2] = components.try_into().expect("two components");
    if low1.relabel(&row_swap(r * r, 2))? != low2 {
        return Err(ShellingError::BadParameter("row swap does not exchange the components".into()));
    }
    let intersections = [top.intersection(&low1), top.intersection(&low2)];
    Ok(Covering {
        full,
        top,
        low: [low1, low2],
        intersections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti_f2;
    use crate::shelling::{dimension_decreasing, verify_shelling_intersection};

    #[test]
    fn mr2_shelling_r3() {
        let s = shelling_mr2(3).unwrap();
        let order = &s.shelling.order;
        assert!(verify_shelling_intersection(&s.complex, order).unwrap().valid);
        assert_eq!(s.complex.facets()[order[0]].len(), 6);
        assert!(order[..s.chessboard_facets].iter().all(|&i| s.complex.facets()[i].len() == 6));
        let h = s.complex.f_triangle().h_diagonal;
        assert_eq!(h[5], 8);
        let reordered = dimension_decreasing(&s.complex, order);
        assert!(verify_shelling_intersection(&s.complex, &reordered).unwrap().valid);
    }

    #[test]
    fn mr2_prime_shelling_small() {
        for r in [2, 3] {
            let s = shelling_mr2_prime(r).unwrap();
            assert!(s.complex.is_pure());
            assert!(verify_shelling_intersection(&s.complex, &s.shelling.order).unwrap().valid);
        }
    }

    #[test]
    fn symmetries_are_automorphisms() {
        let m = build_mr(3).unwrap();
        let dj = DeletedJoin::new(&m.complex, 2).to_complex();
        for g in block_symmetries(3, 3) {
            assert!(dj.is_automorphism(&g));
        }
    }

    #[test]
    fn rejects_small_rank() {
        assert!(shelling_mr2(2).is_err());
        assert!(covering_subcomplexes(2).is_err());
    }

    #[test]
    fn covering_r3() {
        let c = covering_subcomplexes(3).unwrap();
        for low in &c.low {
            assert!(betti_f2(low).is_acyclic());
        }
        let b = betti_f2(&c.intersections[0]);
        assert_eq!(b.get(3), 4);
        assert!(betti_f2(&c.top).get(5) > 0);
    }
}

//! Backtracking search for shellings.
//!
//! Whether a facet may follow a prefix depends only on the set of facets in
//! the prefix, so failed prefix sets are memoized. A shelling stays a shelling
//! when stably reordered by decreasing dimension, so only facets of the
//! largest remaining size are tried at each step.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::{can_follow, verify_shelling_pairwise, ShellingOrder, VertexSet};
use crate::complex::SimplicialComplex;
use crate::face::Face;

/// Default number of search nodes.
pub const DEFAULT_SEARCH_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Shellable(ShellingOrder),
    NotShellable,
    Exhausted,
}

impl SearchOutcome {
    pub fn is_shellable(&self) -> bool {
        matches!(self, SearchOutcome::Shellable(_))
    }
}

type Prefix = Vec<u64>;

struct Search<'a, S: VertexSet> {
    sets: &'a [S],
    sizes: Vec<usize>,
    /// Facet permutations induced by the supplied automorphisms.
    symmetries: Vec<Vec<usize>>,
    failed: Mutex<HashSet<Prefix>>,
    nodes: AtomicUsize,
    budget: usize,
    exhausted: AtomicBool,
}

fn has(p: &Prefix, i: usize) -> bool {
    p[i / 64] >> (i % 64) & 1 == 1
}

fn put(p: &mut Prefix, i: usize) {
    p[i / 64] |= 1 << (i % 64);
}

impl<S: VertexSet> Search<'_, S> {
    fn mark_failed(&self, p: &Prefix) {
        let mut failed = self.failed.lock().expect("memo lock");
        failed.insert(p.clone());
        for sym in &self.symmetries {
            let mut image = vec![0u64; p.len()];
            for (i, &j) in sym.iter().enumerate() {
                if has(p, i) {
                    put(&mut image, j);
                }
            }
            failed.insert(image);
        }
    }

    fn dfs(&self, placed: &mut Vec<usize>, prefix: &mut Prefix) -> bool {
        let n = self.sets.len();
        if placed.len() == n {
            return true;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        if self.failed.lock().expect("memo lock").contains(prefix) {
            return false;
        }
        let top = (0..n).filter(|&i| !has(prefix, i)).map(|i| self.sizes[i]).max().unwrap_or(0);
        for b in 0..n {
            if has(prefix, b) || self.sizes[b] != top || !can_follow(self.sets, placed, b) {
                continue;
            }
            placed.push(b);
            put(prefix, b);
            if self.dfs(placed, prefix) {
                return true;
            }
            placed.pop();
            prefix[b / 64] &= !(1 << (b % 64));
            if self.exhausted.load(Ordering::Relaxed) {
                return false;
            }
        }
        self.mark_failed(prefix);
        false
    }
}

fn facet_orbit_representatives(n: usize, symmetries: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for sym in symmetries {
        for (i, &j) in sym.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).collect()
}

fn run<S: VertexSet>(complex: &SimplicialComplex, sets: &[S], symmetries: Vec<Vec<usize>>, budget: usize) -> SearchOutcome {
    let n = sets.len();
    if n == 0 {
        return SearchOutcome::Shellable(ShellingOrder::default());
    }
    let search = Search {
        sets,
        sizes: sets.iter().map(VertexSet::size).collect(),
        failed: Mutex::new(HashSet::new()),
        nodes: AtomicUsize::new(0),
        budget,
        exhausted: AtomicBool::new(false),
        symmetries,
    };
    let top = *search.sizes.iter().max().expect("non-empty");
    let starts: Vec<usize> = facet_orbit_representatives(n, &search.symmetries)
        .into_iter()
        .filter(|&i| search.sizes[i] == top)
        .collect();
    let found = starts.par_iter().find_map_first(|&first| {
        let mut placed = vec![first];
        let mut prefix = vec![0u64; n.div_ceil(64)];
        put(&mut prefix, first);
        search.dfs(&mut placed, &mut prefix).then_some(placed)
    });
    match found {
        Some(order) => {
            let check = verify_shelling_pairwise(complex, &order).expect("search yields a permutation");
            assert!(check.valid, "search produced an invalid order");
            SearchOutcome::Shellable(check.certificate.expect("valid order has a certificate"))
        }
        None if search.exhausted.load(Ordering::Relaxed) => SearchOutcome::Exhausted,
        None => SearchOutcome::NotShellable,
    }
}

/// Exhaustive shelling search. `symmetries` are vertex automorphisms of the
/// complex used to prune equivalent branches; pass an empty slice for none.
pub fn search_shelling(complex: &SimplicialComplex, symmetries: &[Vec<usize>], budget: usize) -> SearchOutcome {
    let index = complex.facet_index();
    let facet_syms: Vec<Vec<usize>> = symmetries
        .iter()
        .map(|perm| {
            assert!(complex.is_automorphism(perm), "symmetry is not an automorphism");
            complex.facets().iter().map(|f| index[&f.map(perm)]).collect()
        })
        .collect();
    let masks: Option<Vec<u128>> = complex.facets().iter().map(Face::to_mask).collect();
    match masks {
        Some(m) => run(complex, &m, facet_syms, budget),
        None => run(complex, complex.facets(), facet_syms, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::join::row_swap;
    use crate::matroid::chessboard;
    use crate::shelling::verify_shelling_intersection;

    #[test]
    fn small_chessboards() {
        assert_eq!(search_shelling(&chessboard(2, 2), &[], 1000), SearchOutcome::NotShellable);
        assert_eq!(search_shelling(&chessboard(3, 3), &[], 100_000), SearchOutcome::NotShellable);
        let c = chessboard(2, 4);
        let SearchOutcome::Shellable(order) = search_shelling(&c, &[], 100_000) else {
            panic!("chessboard(2,4) should be shellable");
        };
        assert!(verify_shelling_intersection(&c, &order.order).unwrap().valid);
    }

    #[test]
    fn symmetry_reduction_keeps_verdicts() {
        let c = chessboard(3, 3);
        let swap = row_swap(3, 3);
        assert_eq!(search_shelling(&c, &[swap], 100_000), SearchOutcome::NotShellable);
        let c = chessboard(2, 3);
        assert!(search_shelling(&c, &[row_swap(3, 2)], 1000).is_shellable());
    }

    #[test]
    fn budget_is_reported() {
        assert_eq!(search_shelling(&chessboard(3, 3), &[], 1), SearchOutcome::Exhausted);
    }
}

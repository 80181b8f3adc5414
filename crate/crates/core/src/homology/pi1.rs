//! Edge-path presentations of the fundamental group and Tietze simplification.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::HomologyError;
use crate::complex::SimplicialComplex;

/// Default number of letters the simplifier may rewrite.
pub const DEFAULT_TIETZE_BUDGET: usize = 100_000;

/// Generators are the edges off a spanning tree; letter `±(g+1)` is
/// generator `g` traversed from its smaller to larger endpoint (`+`) or back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<(usize, usize)>,
    pub relators: Vec<Vec<i32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pi1Outcome {
    /// Every generator was eliminated.
    Trivial,
    /// No relators remain; the group is free of this rank.
    Free { rank: usize },
    /// Simplification stalled or ran out of budget.
    Inconclusive { generators: usize, relators: usize },
}

pub fn pi1_presentation(complex: &SimplicialComplex) -> Result<GroupPresentation, HomologyError> {
    let support = complex.support();
    let Some(root) = support.min_vertex() else {
        return Err(HomologyError::Disconnected);
    };
    let table = complex.faces();
    let n = complex.num_vertices();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in table.of_size(2) {
        let v = e.vertices();
        adj[v[0]].push(v[1]);
        adj[v[1]].push(v[0]);
    }
    let mut seen = vec![false; n];
    let mut tree: HashSet<(usize, usize)> = HashSet::new();
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                tree.insert((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
    }
    if support.iter().any(|v| !seen[v]) {
        return Err(HomologyError::Disconnected);
    }
    let generators: Vec<(usize, usize)> = table
        .of_size(2)
        .iter()
        .map(|e| {
            let v = e.vertices();
            (v[0], v[1])
        })
        .filter(|e| !tree.contains(e))
        .collect();
    let id: std::collections::HashMap<(usize, usize), i32> =
        generators.iter().enumerate().map(|(i, &e)| (e, i as i32 + 1)).collect();
    let letter = |x: usize, y: usize| -> Option<i32> {
        if x < y {
            id.get(&(x, y)).copied()
        } else {
            id.get(&(y, x)).map(|g| -g)
        }
    };
    let relators = table
        .of_size(3)
        .iter()
        .map(|t| {
            let v = t.vertices();
            [(v[0], v[1]), (v[1], v[2]), (v[2], v[0])]
                .into_iter()
                .filter_map(|(x, y)| letter(x, y))
                .collect()
        })
        .collect();
    Ok(GroupPresentation { generators, relators })
}

fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j > i + 1 && out[i] == -out[j - 1] {
        i += 1;
        j -= 1;
    }
    out[i..j].to_vec()
}

fn inverse(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|x| -x).collect()
}

/// Tietze simplification: repeatedly solves a relator for a generator that
/// occurs in it exactly once and substitutes the solution everywhere.
pub fn try_trivialize(p: &GroupPresentation, budget: usize) -> Pi1Outcome {
    let mut alive = vec![true; p.generators.len()];
    let mut relators: Vec<Vec<i32>> = p.relators.clone();
    let mut steps = 0usize;
    loop {
        let mut seen = HashSet::new();
        relators = relators
            .iter()
            .map(|r| free_reduce(r))
            .filter(|r| !r.is_empty() && seen.insert(r.clone()))
            .collect();
        let remaining = alive.iter().filter(|&&a| a).count();
        if remaining == 0 {
            return Pi1Outcome::Trivial;
        }
        if relators.is_empty() {
            return Pi1Outcome::Free { rank: remaining };
        }
        let inconclusive = |relators: &Vec<Vec<i32>>| Pi1Outcome::Inconclusive {
            generators: remaining,
            relators: relators.len(),
        };
        let mut best: Option<(usize, usize)> = None;
        for (ri, r) in relators.iter().enumerate() {
            if best.is_some_and(|(b, _)| relators[b].len() <= r.len()) {
                continue;
            }
            let mut counts = std::collections::HashMap::new();
            for &x in r {
                *counts.entry(x.unsigned_abs()).or_insert(0usize) += 1;
            }
            if let Some(pos) = r.iter().position(|x| counts[&x.unsigned_abs()] == 1) {
                best = Some((ri, pos));
            }
        }
        let Some((ri, pos)) = best else {
            return inconclusive(&relators);
        };
        let r = relators.swap_remove(ri);
        let x = r[pos];
        let rest: Vec<i32> = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        // x · rest = 1, so x = rest⁻¹.
        let value = inverse(&rest);
        let value_inv = rest;
        let g = x.unsigned_abs() as usize;
        alive[g - 1] = false;
        let (plus, minus) = if x > 0 { (value, value_inv) } else { (value_inv, value) };
        for w in relators.iter_mut() {
            steps += w.len();
            if w.iter().any(|y| y.unsigned_abs() as usize == g) {
                let mut out = Vec::with_capacity(w.len());
                for &y in w.iter() {
                    if y == g as i32 {
                        out.extend_from_slice(&plus);
                    } else if y == -(g as i32) {
                        out.extend_from_slice(&minus);
                    } else {
                        out.push(y);
                    }
                }
                steps += out.len();
                *w = out;
            }
        }
        if steps > budget {
            return inconclusive(&relators);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::anonymous_vertices;
    use crate::face::Face;

    #[test]
    fn triangle_boundary_is_free_of_rank_one() {
        let c = SimplicialComplex::simplex(3).skeleton(1);
        let p = pi1_presentation(&c).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(try_trivialize(&p, DEFAULT_TIETZE_BUDGET), Pi1Outcome::Free { rank: 1 });
    }

    #[test]
    fn filled_triangle_is_trivial() {
        let p = pi1_presentation(&SimplicialComplex::simplex(3)).unwrap();
        assert_eq!(try_trivialize(&p, DEFAULT_TIETZE_BUDGET), Pi1Outcome::Trivial);
    }

    #[test]
    fn sphere_is_simply_connected() {
        let s2 = SimplicialComplex::simplex(4).skeleton(2);
        let p = pi1_presentation(&s2).unwrap();
        assert_eq!(try_trivialize(&p, DEFAULT_TIETZE_BUDGET), Pi1Outcome::Trivial);
    }

    #[test]
    fn disconnected_is_rejected() {
        let c = SimplicialComplex::new(anonymous_vertices(2), vec![Face::singleton(0), Face::singleton(1)]).unwrap();
        assert_eq!(pi1_presentation(&c), Err(HomologyError::Disconnected));
    }

    #[test]
    fn projective_plane_is_not_trivialized() {
        // Six-vertex real projective plane.
        let tris = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let c = SimplicialComplex::new(anonymous_vertices(6), tris.iter().map(|t| Face::from_vertices(*t)).collect()).unwrap();
        let out = try_trivialize(&pi1_presentation(&c).unwrap(), DEFAULT_TIETZE_BUDGET);
        assert!(matches!(out, Pi1Outcome::Inconclusive { generators: 1, .. }), "{out:?}");
    }

    #[test]
    fn reduction_is_cyclic() {
        assert_eq!(free_reduce(&[1, 2, -2, 3, -1]), vec![3]);
    }
}

//! Vertex decomposability.
//!
//! A complex is vertex-decomposable when it is a simplex (including `{∅}` and
//! the void complex), or some vertex `v` has vertex-decomposable link and
//! deletion and no facet of the link is a facet of the deletion. The last
//! condition holds exactly when every `F ∖ {v}` (`v ∈ F` a facet) lies in a
//! facet avoiding `v`; the deletion then has exactly the facets avoiding `v`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ShellingError;
use crate::complex::SimplicialComplex;
use crate::face::Face;
use crate::join::DeletedJoin;
use crate::matroid::build_mr;

pub const DEFAULT_VD_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShedTree {
    Simplex,
    Shed {
        vertex: usize,
        link: Arc<ShedTree>,
        deletion: Arc<ShedTree>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShedAction {
    Link,
    Delete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShedStep {
    pub vertex: usize,
    pub action: ShedAction,
}

impl ShedTree {
    /// Pre-order flattening: `(v, link)` then the link's steps, then
    /// `(v, delete)` then the deletion's steps.
    pub fn steps(&self) -> Vec<ShedStep> {
        let mut out = Vec::new();
        self.push_steps(&mut out);
        out
    }

    fn push_steps(&self, out: &mut Vec<ShedStep>) {
        if let ShedTree::Shed { vertex, link, deletion } = self {
            out.push(ShedStep {
                vertex: *vertex,
                action: ShedAction::Link,
            });
            link.push_steps(out);
            out.push(ShedStep {
                vertex: *vertex,
                action: ShedAction::Delete,
            });
            deletion.push_steps(out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VdOutcome {
    Yes(Arc<ShedTree>),
    No,
    Exhausted,
}

struct Exhausted;

struct Decomposer {
    memo: HashMap<Vec<u128>, Option<Arc<ShedTree>>>,
    calls: usize,
    budget: usize,
}

/// Link facets of `v` when `v` is a shedding vertex, otherwise `None`.
fn shedding_split(facets: &[u128], v: usize) -> Option<(Vec<u128>, Vec<u128>)> {
    let bit = 1u128 << v;
    let (with, without): (Vec<u128>, Vec<u128>) = facets.iter().partition(|&&f| f & bit != 0);
    let link: Vec<u128> = with.iter().map(|f| f & !bit).collect();
    link.iter()
        .all(|&l| without.iter().any(|&g| l & !g == 0))
        .then_some((link, without))
}

impl Decomposer {
    fn decompose(&mut self, mut facets: Vec<u128>, candidates: Option<&[usize]>) -> Result<Option<Arc<ShedTree>>, Exhausted> {
        if facets.len() <= 1 {
            return Ok(Some(Arc::new(ShedTree::Simplex)));
        }
        facets.sort_unstable();
        if candidates.is_none() {
            if let Some(known) = self.memo.get(&facets) {
                return Ok(known.clone());
            }
        }
        self.calls += 1;
        if self.calls > self.budget {
            return Err(Exhausted);
        }
        let support = facets.iter().fold(0u128, |a, f| a | f);
        let all: Vec<usize> = (0..128).filter(|v| support >> v & 1 == 1).collect();
        let mut result = None;
        for &v in candidates.unwrap_or(&all) {
            let Some((link, deletion)) = shedding_split(&facets, v) else {
                continue;
            };
            let Some(l) = self.decompose(link, None)? else {
                continue;
            };
            if let Some(d) = self.decompose(deletion, None)? {
                result = Some(Arc::new(ShedTree::Shed {
                    vertex: v,
                    link: l,
                    deletion: d,
                }));
                break;
            }
        }
        if candidates.is_none() {
            self.memo.insert(facets, result.clone());
        }
        Ok(result)
    }
}

/// Exhaustive memoized search for a vertex decomposition. At the top level
/// only one vertex per orbit of the group generated by `symmetries` is tried.
pub fn is_vertex_decomposable(
    complex: &SimplicialComplex,
    symmetries: &[Vec<usize>],
    budget: usize,
) -> Result<VdOutcome, ShellingError> {
    let facets: Vec<u128> = complex
        .facets()
        .iter()
        .map(Face::to_mask)
        .collect::<Option<_>>()
        .ok_or_else(|| ShellingError::BadParameter("more than 128 vertices".into()))?;
    let n = complex.num_vertices();
    let mut orbit_rep: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for sym in symmetries {
            if !complex.is_automorphism(sym) {
                return Err(ShellingError::BadParameter("symmetry is not an automorphism".into()));
            }
            for v in 0..n {
                let m = orbit_rep[v].min(orbit_rep[sym[v]]);
                if orbit_rep[v] != m || orbit_rep[sym[v]] != m {
                    orbit_rep[v] = m;
                    orbit_rep[sym[v]] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let reps: Vec<usize> = (0..n).filter(|&v| orbit_rep[v] == v).collect();
    let mut d = Decomposer {
        memo: HashMap::new(),
        calls: 0,
        budget,
    };
    Ok(match d.decompose(facets, Some(&reps)) {
        Ok(Some(tree)) => VdOutcome::Yes(tree),
        Ok(None) => VdOutcome::No,
        Err(Exhausted) => VdOutcome::Exhausted,
    })
}

fn maximal_masks(mut sets: Vec<u128>) -> Vec<u128> {
    sets.sort_unstable_by_key(|s| std::cmp::Reverse(s.count_ones()));
    let mut out: Vec<u128> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|&t| s & !t == 0) {
            out.push(s);
        }
    }
    out
}

/// Outcome of the targeted check on the 2-fold deleted join of `M_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstShedRefutation {
    /// Pairs (reachable deletion set, last-block vertex) checked.
    pub cases: usize,
    /// Cases in which the last-block vertex satisfied the shedding condition.
    pub sheddable: usize,
    /// With nothing deleted, a facet of both the link and the deletion of
    /// `(w_1, 2)`.
    pub shared_facet: Option<Face>,
}

impl FirstShedRefutation {
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.sheddable == 0 && self.shared_facet.is_some()
    }
}

/// Every decomposition deletes vertices along a chain of shedding vertices
/// ending in a simplex, and no complex obtained by deleting vertices outside
/// the last block is a simplex. So some last-block vertex must be a shedding
/// vertex after deleting a set of other vertices reachable by such a chain.
/// This enumerates the reachable sets, checks every last-block vertex
/// against each, and reports a facet shared by the link and deletion of
/// `(w_1, 2)` in the whole complex.
pub fn first_w_shed_refutation(r: usize) -> Result<FirstShedRefutation, ShellingError> {
    if r < 2 {
        return Err(ShellingError::BadParameter(format!("r = {r} must be at least 2")));
    }
    let m = build_mr(r).map_err(|e| ShellingError::BadParameter(e.to_string()))?;
    let dj = DeletedJoin::new(&m.complex, 2);
    let sigma = dj.to_complex();
    let facets: Vec<u128> = sigma
        .facets()
        .iter()
        .map(Face::to_mask)
        .collect::<Option<_>>()
        .ok_or_else(|| ShellingError::BadParameter("more than 128 vertices".into()))?;
    let last = 2 * r * (r - 1);
    if last > 24 {
        return Err(ShellingError::BadParameter(format!("r = {r} has too many deletion sets")));
    }
    let n = sigma.num_vertices();
    let mut reachable = vec![false; 1 << last];
    reachable[0] = true;
    let mut cases = 0;
    let mut sheddable = 0;
    for deleted in 0..reachable.len() {
        if !reachable[deleted] {
            continue;
        }
        let remaining = maximal_masks(facets.iter().map(|f| f & !(deleted as u128)).collect());
        let support = remaining.iter().fold(0u128, |a, f| a | f);
        for v in (0..last).filter(|&v| support >> v & 1 == 1) {
            if shedding_split(&remaining, v).is_some() {
                reachable[deleted | 1 << v] = true;
            }
        }
        for s0 in (last..n).filter(|&v| support >> v & 1 == 1) {
            cases += 1;
            if shedding_split(&remaining, s0).is_some() {
                sheddable += 1;
            }
        }
    }
    let s0 = dj.vertex((r - 1) * r, 2);
    let link = sigma.link(&Face::singleton(s0))?;
    let deletion = sigma.delete_vertex(s0);
    let del_facets = deletion.sorted_facets();
    let shared_facet = link
        .sorted_facets()
        .into_iter()
        .find(|a| del_facets.binary_search(a).is_ok());
    Ok(FirstShedRefutation {
        cases,
        sheddable,
        shared_facet,
    })
}

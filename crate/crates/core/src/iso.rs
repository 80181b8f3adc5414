//! Canonical labeling and isomorphism of small complexes.
//!
//! Uses color refinement on the vertex/facet incidence structure followed by
//! individualization over every leaf of the search tree. The canonical form
//! is the lexicographically least relabeled sorted facet list.

use std::collections::BTreeMap;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::face::Face;

/// Default cap on refinement-tree leaves.
pub const DEFAULT_LEAF_BUDGET: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical index of vertex `v`.
    pub labeling: Vec<usize>,
    pub facets: Vec<Face>,
}

fn refine(facets: &[Face], mut colors: Vec<usize>) -> Vec<usize> {
    let n = colors.len();
    let mut classes = count_classes(&colors);
    loop {
        let mut sigs: Vec<(usize, Vec<(usize, Vec<usize>)>)> = (0..n).map(|v| (colors[v], Vec::new())).collect();
        for f in facets {
            let mut fc: Vec<usize> = f.iter().map(|v| colors[v]).collect();
            fc.sort_unstable();
            for v in f.iter() {
                sigs[v].1.push((f.len(), fc.clone()));
            }
        }
        for s in &mut sigs {
            s.1.sort_unstable();
        }
        let ranks: BTreeMap<_, usize> = {
            let mut distinct: Vec<_> = sigs.iter().collect();
            distinct.sort_unstable();
            distinct.dedup();
            distinct.into_iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
        };
        colors = sigs.iter().map(|s| ranks[s]).collect();
        let now = count_classes(&colors);
        if now == classes {
            return colors;
        }
        classes = now;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    // Doubling keeps the relative order of existing cells.
    colors
        .iter()
        .enumerate()
        .map(|(u, &c)| if u == v { 2 * c } else { 2 * c + 1 })
        .collect()
}

/// Canonical form of `complex`, ignoring vertex labels.
pub fn canonical_form(complex: &SimplicialComplex, leaf_budget: usize) -> Result<CanonicalForm, ComplexError> {
    let facets = complex.facets();
    let n = complex.num_vertices();
    let start = refine(facets, vec![0; n]);
    let mut best: Option<CanonicalForm> = None;
    let mut leaves = 0usize;
    let mut stack = vec![start];
    while let Some(colors) = stack.pop() {
        if count_classes(&colors) == n {
            leaves += 1;
            if leaves > leaf_budget {
                return Err(ComplexError::TooLarge(format!(
                    "canonical labeling exceeded {leaf_budget} leaves"
                )));
            }
            let labeling = colors;
            let mut image: Vec<Face> = facets.iter().map(|f| f.map(&labeling)).collect();
            image.sort_unstable();
            if best.as_ref().is_none_or(|b| image < b.facets) {
                best = Some(CanonicalForm { labeling, facets: image });
            }
            continue;
        }
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &colors {
            *sizes.entry(c).or_default() += 1;
        }
        let target = *sizes.iter().find(|(_, &s)| s > 1).expect("non-discrete partition").0;
        for v in (0..n).filter(|&v| colors[v] == target) {
            stack.push(refine(facets, individualize(&colors, v)));
        }
    }
    Ok(best.unwrap_or(CanonicalForm {
        labeling: Vec::new(),
        facets: Vec::new(),
    }))
}

/// A vertex bijection `φ` with `φ(a) = b`, if one exists.
pub fn find_isomorphism(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    leaf_budget: usize,
) -> Result<Option<Vec<usize>>, ComplexError> {
    if a.num_vertices() != b.num_vertices() || a.facets().len() != b.facets().len() {
        return Ok(None);
    }
    let ca = canonical_form(a, leaf_budget)?;
    let cb = canonical_form(b, leaf_budget)?;
    if ca.facets != cb.facets {
        return Ok(None);
    }
    let mut inverse_b = vec![0; cb.labeling.len()];
    for (v, &l) in cb.labeling.iter().enumerate() {
        inverse_b[l] = v;
    }
    Ok(Some(ca.labeling.iter().map(|&l| inverse_b[l]).collect()))
}

/// Drops vertices outside the support, renumbering the rest in order.
pub fn compress(complex: &SimplicialComplex) -> (SimplicialComplex, Vec<usize>) {
    let support = complex.support();
    let kept: Vec<usize> = support.iter().collect();
    let mut map = vec![usize::MAX; complex.num_vertices()];
    for (i, &v) in kept.iter().enumerate() {
        map[v] = i;
    }
    let vertices = kept
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut id = complex.vertices()[v].clone();
            id.index = i;
            id
        })
        .collect();
    let facets = complex.facets().iter().map(|f| f.map(&map)).collect();
    (SimplicialComplex::from_parts(vertices, facets), kept)
}

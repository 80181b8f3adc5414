//! Random complexes for cross-checking.

use rand::seq::SliceRandom;
use rand::Rng;

use super::can_follow;
use crate::complex::{anonymous_vertices, maximal_faces, SimplicialComplex};
use crate::face::Face;

/// Complex generated by up to `generators` random faces of size `1..=max_size`
/// on `n` vertices.
pub fn random_complex<R: Rng>(rng: &mut R, n: usize, generators: usize, max_size: usize) -> SimplicialComplex {
    assert!(n >= 1 && max_size >= 1);
    let gens: Vec<Face> = (0..generators.max(1))
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(n));
            let mut verts: Vec<usize> = (0..n).collect();
            verts.shuffle(rng);
            Face::from_vertices(verts[..size].iter().copied())
        })
        .collect();
    SimplicialComplex::new(anonymous_vertices(n), maximal_faces(gens)).expect("maximal faces form an antichain")
}

/// A shellable complex on `n ≤ 128` vertices built facet by facet, each new
/// facet swapping one vertex of an earlier facet for `0..=2` fresh vertices and
/// kept only when it may follow the facets so far. Returns the complex and
/// the order of construction.
pub fn random_shellable<R: Rng>(rng: &mut R, n: usize, target_facets: usize) -> (SimplicialComplex, Vec<usize>) {
    assert!((2..=128).contains(&n));
    let first_size = rng.gen_range(1..=n.min(4));
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    let mut facets: Vec<Face> = vec![Face::from_vertices(verts[..first_size].iter().copied())];
    let mut masks: Vec<u128> = vec![facets[0].to_mask().expect("n ≤ 128")];
    for _ in 0..target_facets.saturating_mul(20) {
        if facets.len() >= target_facets {
            break;
        }
        let c = &facets[rng.gen_range(0..facets.len())];
        let cv = c.vertices();
        let mut b = c.without(cv[rng.gen_range(0..cv.len())]);
        let fresh: Vec<usize> = (0..n).filter(|&v| !c.contains(v)).collect();
        let extra = rng.gen_range(0..=2usize).min(fresh.len());
        for &v in fresh.choose_multiple(rng, extra) {
            b.insert(v);
        }
        if b.is_empty() || facets.iter().any(|f| f.is_subset(&b) || b.is_subset(f)) {
            continue;
        }
        masks.push(b.to_mask().expect("n ≤ 128"));
        let placed: Vec<usize> = (0..facets.len()).collect();
        if can_follow(&masks, &placed, facets.len()) {
            facets.push(b);
        } else {
            masks.pop();
        }
    }
    let order = (0..facets.len()).collect();
    let complex = SimplicialComplex::new(anonymous_vertices(n), facets).expect("antichain by construction");
    (complex, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shelling::verify_shelling_intersection;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_orders_are_shellings() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (c, order) = random_shellable(&mut rng, 8, 10);
            assert!(verify_shelling_intersection(&c, &order).unwrap().valid);
        }
    }
}

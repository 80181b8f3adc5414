//! Builds and certifies the shelling of the 2-fold deleted join of `M_r`,
//! then searches for a vertex decomposition when `vd` is passed.
//!
//! Usage: `mr2_shelling [r] [vd]`

use std::time::Instant;

use tvlab_core::shelling::{
    block_symmetries, is_vertex_decomposable, shelling_mr2, verify_shelling_intersection, DEFAULT_VD_BUDGET,
};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let r: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let t = Instant::now();
    let s = shelling_mr2(r).expect("construction");
    println!("facets {} (chessboard part {}), constructed and pairwise-verified in {:?}", s.complex.facets().len(), s.chessboard_facets, t.elapsed());
    let t = Instant::now();
    let check = verify_shelling_intersection(&s.complex, &s.shelling.order).expect("permutation");
    println!("intersection verifier: {} in {:?}", check.valid, t.elapsed());
    println!("h-diagonal {:?}", s.complex.f_triangle().h_diagonal);
    if args.get(2).map(String::as_str) == Some("vd") {
        let t = Instant::now();
        let out = is_vertex_decomposable(&s.complex, &block_symmetries(r, r), DEFAULT_VD_BUDGET).expect("vd");
        println!("vertex decomposable: {:?} in {:?}", std::mem::discriminant(&out), t.elapsed());
        println!("{}", match out { tvlab_core::shelling::VdOutcome::Yes(_) => "yes", tvlab_core::shelling::VdOutcome::No => "no", tvlab_core::shelling::VdOutcome::Exhausted => "exhausted" });
    }
}

//! Reduced F2 Betti numbers of the 2-fold deleted join of `M_r`.
//!
//! Usage: `cargo run --release --example mr2_betti -- 3`

use std::time::Instant;

use tvlab_core::homology::{chain_complex, RankStrategy};
use tvlab_core::matroid::build_mr;
use tvlab_core::deleted_join;

fn main() {
    let r: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let strategy = match std::env::args().nth(2).as_deref() {
        Some("homology") => RankStrategy::Homology,
        Some("dense") => RankStrategy::Dense,
        _ => RankStrategy::Cohomology,
    };
    let t = Instant::now();
    let m = build_mr(r).expect("r >= 2");
    let dj = deleted_join(&m.complex, 2);
    println!("facets {} ({:?})", dj.facets().len(), t.elapsed());
    println!("f-vector {:?} ({:?})", dj.f_vector(), t.elapsed());
    let chain = chain_complex(&dj);
    println!("chain complex ({:?})", t.elapsed());
    let b = chain.betti_with(strategy);
    println!("betti {:?} ({:?})", b.values, t.elapsed());
}

//! Registry of checkable claims about the block matroids, their deleted
//! joins and products, and the Tverberg bounds. Every claim is independent
//! and produces one record per run.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tvlab_core::bounds::{eq2_holds, is_prime_power, npp_ceiling, p_le_two_ell, tt_lower_bound, BoundQuery};
use tvlab_core::complex::link_facets_from_oracle;
use tvlab_core::deleted_product::{
    betti_product, conf2, connectivity_bound, deleted_product, deleted_product_skeleton, homological_connectivity,
    ProductError, DEFAULT_CELL_BUDGET,
};
use tvlab_core::homology::{
    betti_f2, induced_involution, is_free_f2z2, pi1_presentation, try_trivialize, BettiVector, Pi1Outcome,
    DEFAULT_TIETZE_BUDGET,
};
use tvlab_core::iso::{compress, find_isomorphism, DEFAULT_LEAF_BUDGET};
use tvlab_core::matroid::{build_mr, build_mr_prime, chessboard, direct_sum, uniform, Matroid};
use tvlab_core::shelling::{
    block_symmetries, covering_subcomplexes, first_w_shed_refutation, homotopy_from_shelling, is_vertex_decomposable,
    random_complex, random_shellable, search_shelling, shelling_mr2, shelling_mr2_prime, verify_shelling_intersection,
    verify_shelling_pairwise, SearchOutcome, ShellingOrder, VdOutcome, DEFAULT_SEARCH_BUDGET, DEFAULT_VD_BUDGET,
};
use tvlab_core::{deleted_join, DeletedJoin, Exact, Face, SimplicialComplex};

use crate::cache::Cache;
use crate::io::ComplexFile;

#[derive(Clone, Debug)]
pub struct Context {
    pub rmax: usize,
    /// Overrides the default search budgets.
    pub budget: Option<usize>,
    pub seed: u64,
    pub cache: Cache,
    /// When set, claims outside the list are skipped.
    pub only: Option<Vec<String>>,
}

impl Context {
    pub fn new(rmax: usize) -> Self {
        Context {
            rmax,
            budget: None,
            seed: 0,
            cache: Cache::disabled(),
            only: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub statement: String,
    pub parameters: Value,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rmax: usize,
    pub seed: u64,
    pub claims: Vec<ClaimRecord>,
    /// Wall-clock seconds per claim id; the only run-dependent field.
    pub runtimes: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn record(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# Verification report (rmax = {}, seed = {})\n\n", self.rmax, self.seed);
        out.push_str("| claim | status | expected | computed | seconds |\n|---|---|---|---|---|\n");
        for c in &self.claims {
            let status = match &c.status {
                Status::Pass => "pass".to_string(),
                Status::Fail => "**fail**".to_string(),
                Status::Skipped(why) => format!("skipped ({why})"),
            };
            let secs = self.runtimes.get(&c.id).copied().unwrap_or(0.0);
            out.push_str(&format!(
                "| `{}` | {} | `{}` | `{}` | {:.3} |\n",
                c.id, status, c.expected, c.computed, secs
            ));
        }
        out
    }
}

struct Outcome {
    parameters: Value,
    expected: Value,
    computed: Value,
    pass: bool,
}

pub struct Claim {
    pub id: &'static str,
    /// Acceptance criterion the claim belongs to.
    pub criterion: u8,
    pub statement: &'static str,
    /// Smallest `rmax` at which the claim runs.
    pub needs_rmax: usize,
    /// Heavy claims run one at a time after the others to bound peak memory.
    pub heavy: bool,
    run: fn(&Context) -> Outcome,
}

pub fn registry() -> Vec<Claim> {
    macro_rules! claim {
        ($id:expr, $crit:expr, $rmax:expr, $stmt:expr, $run:expr) => {
            Claim {
                id: $id,
                criterion: $crit,
                statement: $stmt,
                needs_rmax: $rmax,
                heavy: matches!($id, "mr2.betti.r4" | "mr2.shelling.r4" | "product.connectivity_bound"),
                run: $run,
            }
        };
    }
    vec![
        claim!("mr2.betti.r3", 1, 3,
            "reduced F2 Betti numbers of the 2-fold deleted join of M_3: zero up to 3, 8 in degree 4, at least 1 in degree 5",
            |ctx| mr2_betti(ctx, 3)),
        claim!("mr2.betti.r4", 2, 4,
            "reduced F2 Betti numbers of the 2-fold deleted join of M_4: zero up to 5, 54 in degree 6, at least 625 in degree 7",
            |ctx| mr2_betti(ctx, 4)),
        claim!("mr2.shelling.r3", 3, 3,
            "constructed shelling of the 2-fold deleted join of M_3 passes both verifiers and its h-diagonal equals the Betti vector",
            |ctx| mr2_shelling(ctx, 3)),
        claim!("mr2.shelling.r4", 3, 4,
            "constructed shelling of the 2-fold deleted join of M_4 passes both verifiers and its h-diagonal equals the Betti vector",
            |ctx| mr2_shelling(ctx, 4)),
        claim!("mr2.r2.euler_pi1", 4, 2,
            "the 2-fold deleted join of M_2 has Euler characteristic 2, non-zero reduced Betti number in degree 2 and trivial fundamental group",
            mr2_r2),
        claim!("mr2prime.betti.r2", 5, 2,
            "the 2-fold deleted join of M'_2 has vanishing reduced Betti numbers up to degree 2",
            |ctx| mr2_prime_betti(ctx, 2)),
        claim!("mr2prime.betti.r3", 5, 3,
            "the 2-fold deleted join of M'_3 has vanishing reduced Betti numbers up to degree 4",
            |ctx| mr2_prime_betti(ctx, 3)),
        claim!("mr2prime.shelling.r3", 5, 3,
            "constructed shelling of the 2-fold deleted join of M'_3 passes both verifiers",
            mr2_prime_shelling),
        claim!("mr2.covering.r3", 6, 3,
            "the two components of the lower facets are acyclic and exchanged by the row swap; each meets the top part in a complex with Betti vector 4 in degree 3; the top part has homology only in degree 5",
            covering),
        claim!("mr2.free_involution.r3", 7, 3,
            "the row swap acts freely on the degree-4 F2 homology of the 2-fold deleted join of M_3: rank(1 + t) = 4",
            free_involution),
        claim!("chessboard.not_shellable", 8, 2,
            "exhaustive search finds no shelling of the chessboard complexes with 2 x 2 and 3 x 3 squares",
            chessboards_not_shellable),
        claim!("mr5dj3.link_is_chessboard22", 8, 2,
            "in the 3-fold deleted join of M_5 the link of the blocking face is isomorphic to the 2 x 2 chessboard complex",
            link_is_chessboard),
        claim!("mr2.not_vd.r3", 8, 3,
            "the 2-fold deleted join of M_3 is not vertex-decomposable, and no last-block vertex can be the first one deleted",
            not_vd),
        claim!("simplex_product.k1", 9, 2,
            "the 1-fold deleted product of the simplex on r vertices has the Betti vector of a single (r-1)-sphere for r <= 5",
            |ctx| simplex_products(ctx, 1)),
        claim!("simplex_product.k2", 9, 2,
            "the 2-fold deleted product of the simplex on r vertices has the Betti vector of a single (r-2)-sphere for 2 <= r <= 5",
            |ctx| simplex_products(ctx, 2)),
        claim!("simplex_product.k3", 9, 2,
            "the 3-fold deleted product of the simplex on r vertices has the Betti vector of a single (r-3)-sphere for 3 <= r <= 5",
            |ctx| simplex_products(ctx, 3)),
        claim!("product.connectivity_bound", 10, 2,
            "homological connectivity of the k-fold deleted product is at least r - 2 - floor(r(k-1)/b) on the matroid corpus with r, b, k <= 4",
            product_bounds),
        claim!("conf2.mr_prime3", 10, 3,
            "the 2-fold deleted product of M'_3 has homological connectivity exactly 1 and non-zero reduced Betti number in degree 2",
            conf2_mr_prime3),
        claim!("bounds.quadratic_grid", 11, 2,
            "every prime power p <= 2 ell(b, r, d + 1) satisfies the quadratic inequality exactly for b, r, d in 1..=50",
            bounds_grid),
        claim!("bounds.npp_oracle", 11, 2,
            "npp_ceiling agrees with trial division for all arguments up to 10^4",
            npp_oracle),
        claim!("random.h_equals_betti", 12, 2,
            "for 200 random shellable complexes the h-diagonal equals the reduced Betti vector",
            random_h_equals_betti),
        claim!("random.verifiers_agree", 12, 2,
            "for 200 random complexes with random facet orders the two shelling verifiers agree",
            random_verifiers_agree),
    ]
}

fn run_claim(ctx: &Context, claim: &Claim) -> (ClaimRecord, f64) {
    let start = Instant::now();
    let skip = if ctx.only.as_ref().is_some_and(|ids| !ids.iter().any(|i| i == claim.id)) {
        Some("not selected".to_string())
    } else if ctx.rmax < claim.needs_rmax {
        Some(format!("needs rmax >= {}", claim.needs_rmax))
    } else {
        None
    };
    let record = match skip {
        Some(reason) => ClaimRecord {
            id: claim.id.into(),
            statement: claim.statement.into(),
            parameters: Value::Null,
            expected: Value::Null,
            computed: Value::Null,
            status: Status::Skipped(reason),
        },
        None => {
            let o = (claim.run)(ctx);
            ClaimRecord {
                id: claim.id.into(),
                statement: claim.statement.into(),
                parameters: o.parameters,
                expected: o.expected,
                computed: o.computed,
                status: if o.pass { Status::Pass } else { Status::Fail },
            }
        }
    };
    (record, start.elapsed().as_secs_f64())
}

/// Runs the light claims on a rayon pool, then the heavy ones in turn.
/// Records keep registry order.
pub fn verify(ctx: &Context) -> VerificationReport {
    let claims = registry();
    let mut results: Vec<Option<(ClaimRecord, f64)>> = claims
        .par_iter()
        .map(|claim| (!claim.heavy).then(|| run_claim(ctx, claim)))
        .collect();
    for (slot, claim) in results.iter_mut().zip(&claims) {
        if claim.heavy {
            *slot = Some(run_claim(ctx, claim));
        }
    }
    let results: Vec<(ClaimRecord, f64)> = results.into_iter().map(|r| r.expect("every claim ran")).collect();
    let runtimes = results.iter().map(|(r, t)| (r.id.clone(), *t)).collect();
    VerificationReport {
        rmax: ctx.rmax,
        seed: ctx.seed,
        claims: results.into_iter().map(|(r, _)| r).collect(),
        runtimes,
    }
}

#[derive(Serialize, Deserialize)]
struct StoredBetti {
    values: Vec<u64>,
    minus_one: u64,
}

fn complex_key(kind: &str, c: &SimplicialComplex) -> String {
    let mut file = ComplexFile::from_complex(c);
    file.facets.sort();
    Cache::key(kind, serde_json::to_string(&file).expect("serializable").as_bytes())
}

/// Reduced F2 Betti numbers, cached by complex content.
pub fn betti_cached(cache: &Cache, c: &SimplicialComplex) -> BettiVector {
    let (stored, _) = cache.get_or_compute(&complex_key("betti-f2", c), || {
        let b = betti_f2(c);
        StoredBetti {
            values: b.values,
            minus_one: b.minus_one,
        }
    });
    BettiVector {
        values: stored.values,
        minus_one: stored.minus_one,
    }
}

/// `β̃_{-1}, β̃_0, …` as a JSON array.
fn betti_json(b: &BettiVector) -> Value {
    let mut v = vec![b.minus_one];
    v.extend(&b.values);
    json!(v)
}

fn mr_dj(r: usize) -> SimplicialComplex {
    deleted_join(&build_mr(r).expect("r >= 2").complex, 2)
}

fn mr2_betti(ctx: &Context, r: usize) -> Outcome {
    let b = betti_cached(&ctx.cache, &mr_dj(r));
    let top = 2 * r as isize - 2;
    let middle = 2 * (r as u64 - 1).pow(r as u32 - 1);
    let lower = (r as u64 * r as u64 + 1 - 3 * r as u64).pow(r as u32);
    let pass = (-1..top).all(|i| b.get(i) == 0) && b.get(top) == middle && b.get(top + 1) >= lower;
    Outcome {
        parameters: json!({ "r": r, "k": 2 }),
        expected: json!({ "zero_through": top - 1, "degree": top, "rank": middle, "next_degree_at_least": lower }),
        computed: betti_json(&b),
        pass,
    }
}

/// Shelling of the 2-fold deleted join of `M_r`, cached by complex content.
pub fn mr2_shelling_cached(cache: &Cache, r: usize) -> (SimplicialComplex, ShellingOrder) {
    let complex = mr_dj(r);
    let key = complex_key("mr2-shelling", &complex);
    let (order, _) = cache.get_or_compute(&key, || shelling_mr2(r).expect("construction verified").shelling);
    (complex, order)
}

fn h_and_betti(cache: &Cache, c: &SimplicialComplex, order: &[usize]) -> (bool, bool, Option<Vec<i64>>, BettiVector) {
    let pairwise = verify_shelling_pairwise(c, order).map(|s| s.valid).unwrap_or(false);
    let intersection = verify_shelling_intersection(c, order).map(|s| s.valid).unwrap_or(false);
    let h = homotopy_from_shelling(c, order).ok();
    (pairwise, intersection, h, betti_cached(cache, c))
}

fn h_matches(h: &[i64], b: &BettiVector) -> bool {
    b.minus_one == 0 && (0..h.len().max(b.values.len())).all(|i| h.get(i).copied().unwrap_or(0) == b.get(i as isize) as i64)
}

fn mr2_shelling(ctx: &Context, r: usize) -> Outcome {
    let (c, cert) = mr2_shelling_cached(&ctx.cache, r);
    let (pairwise, intersection, h, b) = h_and_betti(&ctx.cache, &c, &cert.order);
    let matches = h.as_ref().is_some_and(|h| h_matches(h, &b));
    Outcome {
        parameters: json!({ "r": r, "facets": c.facets().len() }),
        expected: json!({ "pairwise": true, "intersection": true, "h_equals_betti": true }),
        computed: json!({ "pairwise": pairwise, "intersection": intersection, "h": h, "betti": betti_json(&b) }),
        pass: pairwise && intersection && matches,
    }
}

fn mr2_r2(ctx: &Context) -> Outcome {
    let c = mr_dj(2);
    let b = betti_cached(&ctx.cache, &c);
    let chi = c.euler_characteristic();
    let pi1 = pi1_presentation(&c).map(|p| try_trivialize(&p, DEFAULT_TIETZE_BUDGET));
    let trivial = matches!(pi1, Ok(Pi1Outcome::Trivial));
    Outcome {
        parameters: json!({ "r": 2, "k": 2, "tietze_budget": DEFAULT_TIETZE_BUDGET }),
        expected: json!({ "euler": 2, "betti_2_nonzero": true, "pi1": "trivial" }),
        computed: json!({ "euler": chi, "betti": betti_json(&b), "pi1": format!("{pi1:?}") }),
        pass: chi == 2 && b.get(2) != 0 && trivial,
    }
}

fn mr2_prime_betti(ctx: &Context, r: usize) -> Outcome {
    let c = deleted_join(&build_mr_prime(r).expect("r >= 2").complex, 2);
    let b = betti_cached(&ctx.cache, &c);
    let top = 2 * r as isize - 2;
    Outcome {
        parameters: json!({ "r": r, "k": 2 }),
        expected: json!({ "zero_through": top }),
        computed: betti_json(&b),
        pass: (-1..=top).all(|i| b.get(i) == 0),
    }
}

fn mr2_prime_shelling(ctx: &Context) -> Outcome {
    let s = shelling_mr2_prime(3).expect("construction verified");
    let (pairwise, intersection, h, b) = h_and_betti(&ctx.cache, &s.complex, &s.shelling.order);
    Outcome {
        parameters: json!({ "r": 3, "facets": s.complex.facets().len() }),
        expected: json!({ "pairwise": true, "intersection": true }),
        computed: json!({ "pairwise": pairwise, "intersection": intersection, "h": h, "betti": betti_json(&b) }),
        pass: pairwise && intersection && h.is_some_and(|h| h_matches(&h, &b)),
    }
}

fn covering(ctx: &Context) -> Outcome {
    let r = 3usize;
    let cov = covering_subcomplexes(r).expect("r = 3");
    let low: Vec<BettiVector> = cov.low.iter().map(|c| betti_cached(&ctx.cache, c)).collect();
    let swapped = cov.low[0].relabel(&tvlab_core::join::row_swap(r * r, 2)).ok() == Some(cov.low[1].clone());
    let inter: Vec<BettiVector> = cov.intersections.iter().map(|c| betti_cached(&ctx.cache, c)).collect();
    let top = betti_cached(&ctx.cache, &cov.top);
    let d = 2 * r as isize - 3;
    let pass = low.iter().all(BettiVector::is_acyclic)
        && swapped
        && inter.iter().all(|b| b.support() == vec![d] && b.get(d) == 4)
        && top.support() == vec![d + 2];
    Outcome {
        parameters: json!({ "r": r }),
        expected: json!({ "low_acyclic": true, "row_swap_exchanges": true, "intersection_support": [d], "intersection_rank": 4, "top_support": [d + 2] }),
        computed: json!({
            "low": low.iter().map(betti_json).collect::<Vec<_>>(),
            "row_swap_exchanges": swapped,
            "intersections": inter.iter().map(betti_json).collect::<Vec<_>>(),
            "top": betti_json(&top),
        }),
        pass,
    }
}

fn free_involution(_: &Context) -> Outcome {
    let r = 3usize;
    let c = mr_dj(r);
    let t = tvlab_core::join::row_swap(r * r, 2);
    let m = induced_involution(&c, &t, 2 * r as isize - 2);
    let (rank, free) = match &m {
        Ok(m) => (Some(m.rank_of_one_plus()), is_free_f2z2(m).ok()),
        Err(_) => (None, None),
    };
    Outcome {
        parameters: json!({ "r": r, "degree": 2 * r - 2 }),
        expected: json!({ "rank_one_plus_t": 4, "free": true }),
        computed: json!({ "rank_one_plus_t": rank, "free": free }),
        pass: rank == Some(4) && free == Some(true),
    }
}

/// Search on a copy of `complex` with vertices shuffled by `seed`; seed 0
/// searches the complex as given. Orders index the original facets.
pub fn seeded_search(complex: &SimplicialComplex, symmetries: &[Vec<usize>], budget: usize, seed: u64) -> SearchOutcome {
    if seed == 0 {
        return search_shelling(complex, symmetries, budget);
    }
    let n = complex.num_vertices();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut vertices = complex.vertices().to_vec();
    for (v, &p) in perm.iter().enumerate() {
        vertices[p] = complex.vertices()[v].clone();
        vertices[p].index = p;
    }
    let shuffled = SimplicialComplex::new(vertices, complex.facets().iter().map(|f| f.map(&perm)).collect())
        .expect("relabeling keeps the antichain");
    let conjugated: Vec<Vec<usize>> = symmetries
        .iter()
        .map(|g| {
            let mut h = vec![0; n];
            for v in 0..n {
                h[perm[v]] = perm[g[v]];
            }
            h
        })
        .collect();
    search_shelling(&shuffled, &conjugated, budget)
}

fn chessboards_not_shellable(ctx: &Context) -> Outcome {
    let budget = ctx.budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
    let mut computed = serde_json::Map::new();
    let mut pass = true;
    for (k, r) in [(2usize, 2usize), (3, 3)] {
        let board = chessboard(k, r);
        let outcome = seeded_search(&board, &[tvlab_core::join::row_swap(r, k)], budget, ctx.seed);
        pass &= matches!(outcome, SearchOutcome::NotShellable);
        let label = match outcome {
            SearchOutcome::Shellable(_) => "shellable",
            SearchOutcome::NotShellable => "not shellable",
            SearchOutcome::Exhausted => "exhausted",
        };
        computed.insert(format!("{k}x{r}"), json!(label));
    }
    Outcome {
        parameters: json!({ "budget": budget, "seed": ctx.seed }),
        expected: json!({ "2x2": "not shellable", "3x3": "not shellable" }),
        computed: Value::Object(computed),
        pass,
    }
}

/// Face of the `k`-fold deleted join of `M_r`, `r = 2k − 1`, whose link is the
/// `(k−1) × (k−1)` chessboard: rows `i < k` take column `i` of the first
/// `r − 1` blocks; row `k` takes column `r` of the first `k − 1` blocks and
/// `w_k, …, w_r`.
pub fn blocking_face(dj: &DeletedJoin<'_>, k: usize) -> Face {
    let r = 2 * k - 1;
    let base = |block: usize, col: usize| (block - 1) * r + col - 1;
    let mut face = Face::empty();
    for i in 1..k {
        for block in 1..r {
            face.insert(dj.vertex(base(block, i), i));
        }
    }
    for block in 1..k {
        face.insert(dj.vertex(base(block, r), k));
    }
    for j in k..=r {
        face.insert(dj.vertex(base(r, j), k));
    }
    face
}

fn link_is_chessboard(_: &Context) -> Outcome {
    let (k, r) = (3usize, 5usize);
    let m = build_mr(r).expect("r >= 2");
    let dj = DeletedJoin::new(&m.complex, k);
    let a = blocking_face(&dj, k);
    let link = link_facets_from_oracle(&dj, &a).and_then(|facets| SimplicialComplex::new(dj.vertex_table(), facets));
    let (found, facets) = match &link {
        Ok(link) => {
            let (small, _) = compress(link);
            let iso = find_isomorphism(&small, &chessboard(k - 1, k - 1), DEFAULT_LEAF_BUDGET).ok().flatten();
            (iso.is_some(), small.facets().len())
        }
        Err(_) => (false, 0),
    };
    Outcome {
        parameters: json!({ "r": r, "k": k, "face": a.vertices() }),
        expected: json!({ "isomorphic_to_chessboard": [k - 1, k - 1] }),
        computed: json!({ "isomorphism_found": found, "link_facets": facets }),
        pass: found,
    }
}

fn not_vd(ctx: &Context) -> Outcome {
    let r = 3usize;
    let c = mr_dj(r);
    let budget = ctx.budget.unwrap_or(DEFAULT_VD_BUDGET);
    let vd = is_vertex_decomposable(&c, &block_symmetries(r, r), budget);
    let refutation = first_w_shed_refutation(r);
    let label = match &vd {
        Ok(VdOutcome::Yes(_)) => "yes",
        Ok(VdOutcome::No) => "no",
        Ok(VdOutcome::Exhausted) => "exhausted",
        Err(_) => "error",
    };
    let refuted = refutation.as_ref().is_ok_and(|f| f.passed());
    let pass = match &vd {
        Ok(VdOutcome::No) => true,
        Ok(VdOutcome::Exhausted) => refuted,
        _ => false,
    } && refuted;
    Outcome {
        parameters: json!({ "r": r, "budget": budget }),
        expected: json!({ "vertex_decomposable": "no", "first_shed_refutation": true }),
        computed: json!({
            "vertex_decomposable": label,
            "first_shed_refutation": refuted,
            "refutation": refutation.ok(),
        }),
        pass,
    }
}

fn simplex_products(_: &Context, k: usize) -> Outcome {
    let mut computed = serde_json::Map::new();
    let mut pass = true;
    for r in k.max(1)..=5 {
        let p = deleted_product(&SimplicialComplex::simplex(r), k, DEFAULT_CELL_BUDGET).expect("small");
        let b = betti_product(&p);
        let sphere = r as isize - k as isize;
        pass &= b.support() == vec![sphere] && b.get(sphere) == 1;
        computed.insert(format!("r={r}"), betti_json(&b));
    }
    Outcome {
        parameters: json!({ "k": k, "r": format!("{}..=5", k.max(1)) }),
        expected: json!(format!("Betti vector of S^(r-{k})")),
        computed: Value::Object(computed),
        pass,
    }
}

/// Matroids with rank and disjoint-basis count at most 4.
pub fn product_corpus() -> Vec<(String, Matroid)> {
    let mut out = Vec::new();
    for (m, n) in [(1, 2), (1, 3), (1, 4), (2, 4), (2, 5), (2, 6), (3, 6), (3, 7), (4, 8)] {
        out.push((format!("U({m},{n})"), uniform(m, n).expect("m <= n")));
    }
    for r in 2..=4 {
        out.push((format!("M_{r}"), build_mr(r).expect("r >= 2")));
    }
    for r in 2..=3 {
        out.push((format!("M'_{r}"), build_mr_prime(r).expect("r >= 2")));
    }
    let u12 = uniform(1, 2).expect("valid");
    let u24 = uniform(2, 4).expect("valid");
    out.push(("U(1,2)+U(1,2)".into(), direct_sum(&[u12.clone(), u12.clone()])));
    out.push(("U(1,2)+U(2,4)".into(), direct_sum(&[u12, u24])));
    out
}

/// Homological connectivity of the full product when it fits the budget,
/// otherwise the certified lower bound from the skeleton one dimension above
/// `target`.
fn connectivity_within_budget(
    complex: &SimplicialComplex,
    k: usize,
    target: isize,
    budget: usize,
) -> Result<(isize, bool), ProductError> {
    match deleted_product(complex, k, budget) {
        Ok(p) => Ok((homological_connectivity(&p), true)),
        Err(ProductError::TooManyCells(_)) => {
            let p = deleted_product_skeleton(complex, k, Some(target.max(-1) + 1), budget)?;
            Ok((homological_connectivity(&p), false))
        }
        Err(e) => Err(e),
    }
}

fn product_bounds(ctx: &Context) -> Outcome {
    let budget = ctx.budget.unwrap_or(DEFAULT_CELL_BUDGET);
    let cases: Vec<(String, usize, usize, usize, SimplicialComplex)> = product_corpus()
        .into_iter()
        .flat_map(|(name, m)| (1..=4).map(move |k| (name.clone(), m.rank, m.b(), k, m.complex.clone())))
        .filter(|(_, r, b, _, _)| *r <= 4 && *b <= 4)
        .collect();
    // Sequential: the larger products need most of the memory budget.
    let results: Vec<(String, Value, bool)> = cases
        .iter()
        .map(|(name, r, b, k, complex)| {
            let bound = connectivity_bound(*r, *b, *k);
            let id = format!("{name} k={k}");
            match connectivity_within_budget(complex, *k, bound, budget) {
                Ok((conn, exact)) => {
                    let key = if exact { "connectivity" } else { "connectivity_at_least" };
                    (id, json!({ "r": r, "b": b, "bound": bound, key: conn }), conn >= bound)
                }
                Err(e) => (id, json!({ "r": r, "b": b, "bound": bound, "error": e.to_string() }), false),
            }
        })
        .collect();
    let pass = results.iter().all(|(_, _, ok)| *ok);
    Outcome {
        parameters: json!({ "cell_budget": budget, "k": "1..=4" }),
        expected: json!("connectivity >= bound for every instance"),
        computed: Value::Object(results.into_iter().map(|(id, v, _)| (id, v)).collect()),
        pass,
    }
}

fn conf2_mr_prime3(ctx: &Context) -> Outcome {
    let m = build_mr_prime(3).expect("r >= 2");
    let budget = ctx.budget.unwrap_or(DEFAULT_CELL_BUDGET);
    let (conn, b) = match conf2(&m, budget) {
        Ok(p) => (Some(homological_connectivity(&p)), Some(betti_product(&p))),
        Err(_) => (None, None),
    };
    Outcome {
        parameters: json!({ "r": 3, "b": m.b(), "k": 2 }),
        expected: json!({ "connectivity": 1, "betti_2_nonzero": true }),
        computed: json!({ "connectivity": conn, "betti": b.as_ref().map(betti_json) }),
        pass: conn == Some(1) && b.is_some_and(|b| b.get(2) != 0),
    }
}

fn bounds_grid(_: &Context) -> Outcome {
    let mut checked = 0u64;
    let mut violations = Vec::new();
    let mut lower_bounds = 0u64;
    for b in 1..=50u64 {
        for r in 1..=50u64 {
            for d in 1..=50u64 {
                let q = BoundQuery::new(b, r, d).expect("positive");
                let mut p = 2;
                while p_le_two_ell(b, r, q.x, p) {
                    if is_prime_power(p) {
                        checked += 1;
                        if !eq2_holds(b, r, q.x, Exact::from_integer(p as i128)) {
                            violations.push([b, r, d, p]);
                        }
                    }
                    p += 1;
                }
                lower_bounds += u64::from(tt_lower_bound(&q).is_some());
            }
        }
    }
    Outcome {
        parameters: json!({ "b": "1..=50", "r": "1..=50", "d": "1..=50" }),
        expected: json!({ "violations": 0 }),
        computed: json!({ "prime_powers_checked": checked, "queries_with_lower_bound": lower_bounds, "violations": violations.len(), "first_violations": &violations[..violations.len().min(5)] }),
        pass: violations.is_empty() && checked > 0,
    }
}

/// Number of distinct prime factors by trial division.
fn distinct_prime_factors(mut n: u64) -> usize {
    let mut count = 0;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            count += 1;
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    count + usize::from(n > 1)
}

fn npp_oracle(_: &Context) -> Outcome {
    let oracle = |k: u64| (k.max(2)..).find(|&j| distinct_prime_factors(j) >= 2).expect("6 qualifies");
    let mut mismatches = Vec::new();
    let mut checked = 0u64;
    for n in 0..=10_000u64 {
        for x in [n as f64, n as f64 - 0.5] {
            if x < 0.0 {
                continue;
            }
            checked += 1;
            let want = oracle(x.ceil() as u64);
            if npp_ceiling(x) != want {
                mismatches.push(x);
            }
        }
    }
    Outcome {
        parameters: json!({ "arguments": "n and n - 1/2 for n in 0..=10000" }),
        expected: json!({ "mismatches": 0 }),
        computed: json!({ "checked": checked, "mismatches": mismatches.len() }),
        pass: mismatches.is_empty(),
    }
}

fn random_h_equals_betti(ctx: &Context) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut mismatches = 0;
    let mut nontrivial = 0;
    for _ in 0..200 {
        let n = rng.gen_range(3..=10);
        let target = rng.gen_range(2..=14);
        let (c, order) = random_shellable(&mut rng, n, target);
        let b = betti_f2(&c);
        match homotopy_from_shelling(&c, &order) {
            Ok(h) if h_matches(&h, &b) => nontrivial += usize::from(!b.is_acyclic()),
            _ => mismatches += 1,
        }
    }
    Outcome {
        parameters: json!({ "complexes": 200, "max_vertices": 10, "seed": ctx.seed }),
        expected: json!({ "mismatches": 0 }),
        computed: json!({ "mismatches": mismatches, "non_acyclic": nontrivial }),
        pass: mismatches == 0,
    }
}

fn random_verifiers_agree(ctx: &Context) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed.wrapping_add(1));
    let mut disagreements = 0;
    let mut valid = 0;
    for i in 0..200 {
        let n = rng.gen_range(3..=10);
        let (c, mut order) = if i % 2 == 0 {
            let generators = rng.gen_range(2..=8);
            let c = random_complex(&mut rng, n, generators, 4);
            let order = (0..c.facets().len()).collect::<Vec<_>>();
            (c, order)
        } else {
            let target = rng.gen_range(2..=10);
            random_shellable(&mut rng, n, target)
        };
        // Half of the shellable ones keep their construction order.
        if i % 4 != 1 {
            order.shuffle(&mut rng);
        }
        let a = verify_shelling_pairwise(&c, &order).expect("permutation");
        let b = verify_shelling_intersection(&c, &order).expect("permutation");
        if a.valid != b.valid || a.first_failure != b.first_failure {
            disagreements += 1;
        }
        valid += usize::from(a.valid);
    }
    Outcome {
        parameters: json!({ "complexes": 200, "max_vertices": 10, "seed": ctx.seed }),
        expected: json!({ "disagreements": 0 }),
        computed: json!({ "disagreements": disagreements, "valid_orders": valid }),
        pass: disagreements == 0 && valid > 0,
    }
}

//! Tverberg-number bounds for matroids: the lower bound from `b` disjoint
//! bases through the quadratic `q(p) = −2xp² + (2x − xb + br)p + xb` and the
//! upper bound through the next non-prime-power.
//!
//! `x = d + 1` throughout. The larger root of `q` is `2ℓ(b, r, x)`.

use num_traits::{Float, FromPrimitive, Num};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("b, r and d must be positive (got b = {b}, r = {r}, d = {d})")]
    InvalidQuery { b: u64, r: u64, d: u64 },
    #[error("upper bound needs d ≥ 3 and r ≤ d − 2 (got r = {r}, d = {d})")]
    HypothesisViolated { r: u64, d: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub b: u64,
    pub r: u64,
    pub d: u64,
    pub x: u64,
}

impl BoundQuery {
    pub fn new(b: u64, r: u64, d: u64) -> Result<Self, BoundsError> {
        if b == 0 || r == 0 || d == 0 {
            return Err(BoundsError::InvalidQuery { b, r, d });
        }
        Ok(BoundQuery { b, r, d, x: d + 1 })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub query: BoundQuery,
    pub ell: f64,
    /// Largest prime power `p ≤ 2ℓ`.
    pub best_prime_power: Option<u64>,
    /// Strict upper bound valid for every rank-`r` matroid; `None` outside
    /// `d ≥ 3, r ≤ d − 2`.
    pub upper_npp: Option<u64>,
    /// `⌈br / (⌈b/p⌉ + 1)⌉ − 2` for `p = best_prime_power`.
    pub connectivity_lower: Option<i64>,
}

/// `ℓ(b, r, x) = (2x + (r−x)b + √((2x + b(r−x))² + 8bx²)) / (8x)`.
pub fn ell<T: Float + FromPrimitive>(b: u64, r: u64, x: u64) -> T {
    let c = |v: u64| T::from_u64(v).expect("representable");
    let (b, r, x) = (c(b), c(r), c(x));
    let two = c(2);
    let lin = two * x + (r - x) * b;
    (lin + (lin * lin + c(8) * b * x * x).sqrt()) / (c(8) * x)
}

/// `q(p) = −2xp² + (2x − xb + br)p + xb`.
pub fn eq2_value<T: Num + Copy + FromPrimitive>(b: u64, r: u64, x: u64, p: T) -> T {
    let c = |v: u64| T::from_u64(v).expect("representable");
    let (b, r, x) = (c(b), c(r), c(x));
    let two = c(2);
    (two * x + b * r - x * b) * p + x * b - two * x * p * p
}

pub fn eq2_holds<T: Num + Copy + FromPrimitive + PartialOrd>(b: u64, r: u64, x: u64, p: T) -> bool {
    eq2_value(b, r, x, p) >= T::zero()
}

/// Exact test of `p ≤ 2ℓ(b, r, x)`. With `B = 2x + b(r − x)` this is
/// `4xp − B ≤ √(B² + 8bx²)`.
pub fn p_le_two_ell(b: u64, r: u64, x: u64, p: u64) -> bool {
    let (b, r, x, p) = (b as i128, r as i128, x as i128, p as i128);
    let lin = 2 * x + b * (r - x);
    let lhs = 4 * x * p - lin;
    lhs <= 0 || lhs * lhs <= lin * lin + 8 * b * x * x
}

/// Roots of `q`, smaller first.
pub fn eq2_roots<T: Float + FromPrimitive>(b: u64, r: u64, x: u64) -> (T, T) {
    let c = |v: u64| T::from_u64(v).expect("representable");
    let lin = c(2) * c(x) + c(b) * c(r) - c(x) * c(b);
    let disc = (lin * lin + c(8) * c(b) * c(x) * c(x)).sqrt();
    let den = c(4) * c(x);
    ((lin - disc) / den, (lin + disc) / den)
}

/// `p^m` with `p` prime and `m ≥ 1`.
pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            let mut m = n;
            while m % q == 0 {
                m /= q;
            }
            return m == 1;
        }
        q += 1;
    }
    true
}

/// Least integer `k ≥ max(start, 2)` that is not a prime power.
fn next_non_prime_power(start: u64) -> u64 {
    (start.max(2)..).find(|&k| !is_prime_power(k)).expect("6 is not a prime power")
}

/// Least integer `k ≥ x`, `k ≥ 2`, that is not a prime power.
pub fn npp_ceiling<T: Float>(x: T) -> u64 {
    assert!(x >= T::zero(), "npp_ceiling needs a non-negative argument");
    next_non_prime_power(x.ceil().to_u64().expect("argument fits in u64"))
}

/// `npp_ceiling(num / den)` without rounding.
pub fn npp_ceiling_ratio(num: u64, den: u64) -> u64 {
    assert!(den > 0);
    next_non_prime_power(num.div_ceil(den))
}

/// Largest prime power `p ≤ 2ℓ`, or `None` when `2ℓ < 2`.
pub fn tt_lower_bound(q: &BoundQuery) -> Option<u64> {
    let guess = (2.0 * ell::<f64>(q.b, q.r, q.x)).floor() as u64 + 1;
    let mut p = guess;
    while p > 0 && !p_le_two_ell(q.b, q.r, q.x, p) {
        p -= 1;
    }
    while p_le_two_ell(q.b, q.r, q.x, p + 1) {
        p += 1;
    }
    (2..=p).rev().find(|&k| is_prime_power(k))
}

/// `⌈br / (⌈b/p⌉ + 1)⌉ − 2`.
pub fn bkm_connectivity(b: u64, r: u64, p: u64) -> i64 {
    assert!(p > 0);
    let den = b.div_ceil(p) + 1;
    (b * r).div_ceil(den) as i64 - 2
}

/// `npp_ceiling(d / (d − r + 1))`, a strict upper bound on the Tverberg
/// number of any rank-`r` matroid in dimension `d`.
pub fn tt_upper_bound(r: u64, d: u64) -> Result<u64, BoundsError> {
    if d < 3 || r + 2 > d {
        return Err(BoundsError::HypothesisViolated { r, d });
    }
    Ok(npp_ceiling_ratio(d, d - r + 1))
}

pub fn bound_report(q: &BoundQuery) -> BoundReport {
    let best = tt_lower_bound(q);
    BoundReport {
        query: *q,
        ell: ell(q.b, q.r, q.x),
        best_prime_power: best,
        upper_npp: tt_upper_bound(q.r, q.d).ok(),
        connectivity_lower: best.map(|p| bkm_connectivity(q.b, q.r, p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use proptest::prelude::*;

    /// Number of distinct prime factors, by full trial factorization.
    fn distinct_primes(mut n: u64) -> usize {
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

    #[test]
    fn prime_powers_small() {
        assert!(is_prime_power(8));
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(1));
        assert!(!is_prime_power(0));
        let npp: Vec<u64> = (2..=22).filter(|&n| !is_prime_power(n)).collect();
        assert_eq!(npp, vec![6, 10, 12, 14, 15, 18, 20, 21, 22]);
    }

    #[test]
    fn prime_powers_match_sieve_up_to_a_million() {
        const N: usize = 1_000_000;
        let mut spf = vec![0u32; N + 1];
        for i in 2..=N {
            if spf[i] == 0 {
                for j in (i..=N).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
        }
        for n in 2..=N {
            let mut m = n;
            let p = spf[n] as usize;
            while m % p == 0 {
                m /= p;
            }
            assert_eq!(is_prime_power(n as u64), m == 1, "n = {n}");
        }
    }

    #[test]
    fn npp_ceiling_values() {
        assert_eq!(npp_ceiling(3.0f64), 6);
        assert_eq!(npp_ceiling(6.01f64), 10);
        assert_eq!(npp_ceiling(0.0f64), 6);
        assert_eq!(npp_ceiling(6.0f32), 6);
        for n in 0..=10_000u64 {
            let oracle = (n.max(2)..).find(|&k| distinct_primes(k) >= 2).unwrap();
            assert_eq!(npp_ceiling(n as f64), oracle);
            assert_eq!(npp_ceiling_ratio(n, 1), oracle);
        }
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(tt_upper_bound(5, 6), Err(BoundsError::HypothesisViolated { r: 5, d: 6 }));
        assert_eq!(tt_upper_bound(4, 6), Ok(6));
        assert_eq!(tt_upper_bound(3, 10), Ok(6));
        assert_eq!(tt_upper_bound(1, 2), Err(BoundsError::HypothesisViolated { r: 1, d: 2 }));
        // r = d − 2: ratio d/3.
        assert_eq!(tt_upper_bound(28, 30), Ok(10));
    }

    #[test]
    fn ell_on_the_diagonal() {
        // b = 1, r = x: (2x + √(12x²)) / 8x.
        let expected = (1.0 + 3f64.sqrt()) / 4.0;
        for x in 1..40 {
            assert!((ell::<f64>(1, x, x) - expected).abs() < 1e-12);
        }
        assert!((ell::<f32>(1, 5, 5) - expected as f32).abs() < 1e-6);
    }

    #[test]
    fn ell_increases_in_b_when_r_exceeds_x() {
        for x in 1..20 {
            for r in x + 1..x + 20 {
                for b in 1..100 {
                    assert!(ell::<f64>(b + 1, r, x) > ell::<f64>(b, r, x));
                }
            }
        }
    }

    #[test]
    fn grid_prime_powers_satisfy_quadratic() {
        let mut checked = 0usize;
        for b in 1..=50 {
            for r in 1..=50 {
                for d in 1..=50 {
                    let q = BoundQuery::new(b, r, d).unwrap();
                    let two_ell = 2.0 * ell::<f64>(b, r, q.x);
                    for p in (2..=two_ell.floor() as u64 + 1).filter(|&p| is_prime_power(p)) {
                        if !p_le_two_ell(b, r, q.x, p) {
                            continue;
                        }
                        checked += 1;
                        assert!(eq2_holds(b, r, q.x, Ratio::<i128>::from_integer(p as i128)));
                    }
                    let (lo, hi) = eq2_roots::<f64>(b, r, q.x);
                    assert!((hi - two_ell).abs() <= 1e-9 * two_ell.max(1.0));
                    assert!(lo <= two_ell / 2.0);
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn lower_bound_monotone_in_b() {
        for r in 1..=50 {
            for d in 1..=50 {
                let mut prev = 0;
                for b in 1..=50 {
                    let p = tt_lower_bound(&BoundQuery::new(b, r, d).unwrap()).unwrap_or(0);
                    assert!(p >= prev, "b = {b}, r = {r}, d = {d}");
                    prev = p;
                }
            }
        }
    }

    #[test]
    fn report_fields() {
        let q = BoundQuery::new(3, 3, 2).unwrap();
        let rep = bound_report(&q);
        assert_eq!(q.x, 3);
        assert_eq!(rep.upper_npp, None);
        // 2ℓ = 21.87…/12 < 2.
        assert_eq!(rep.best_prime_power, None);
        assert_eq!(rep.connectivity_lower, None);
        // b = 3, r = 6, x = 3: the radicand is 441, so 2ℓ = (15 + 21)/12 = 3 exactly.
        let rep = bound_report(&BoundQuery::new(3, 6, 2).unwrap());
        assert_eq!(rep.best_prime_power, Some(3));
        assert_eq!(eq2_value(3, 6, 3, 3i128), 0);
        assert_eq!(rep.connectivity_lower, Some(bkm_connectivity(3, 6, 3)));
        assert_eq!(bkm_connectivity(3, 6, 3), 7);
        assert!(BoundQuery::new(0, 1, 1).is_err());
    }

    proptest! {
        #[test]
        fn exact_comparison_matches_quadratic(b in 1u64..200, r in 1u64..200, d in 1u64..200, p in 0u64..400) {
            let x = d + 1;
            // The larger root is 2ℓ and the smaller is ≤ 0, so for p ≥ 0 both tests agree.
            prop_assert_eq!(p_le_two_ell(b, r, x, p), eq2_holds(b, r, x, p as i128));
        }

        #[test]
        fn lower_bound_is_largest(b in 1u64..200, r in 1u64..200, d in 1u64..200) {
            let q = BoundQuery::new(b, r, d).unwrap();
            if let Some(p) = tt_lower_bound(&q) {
                prop_assert!(is_prime_power(p) && p_le_two_ell(b, r, q.x, p));
                prop_assert!((p + 1..=p * 2).all(|k| !is_prime_power(k) || !p_le_two_ell(b, r, q.x, k)));
            } else {
                prop_assert!(!p_le_two_ell(b, r, q.x, 2));
            }
        }
    }
}

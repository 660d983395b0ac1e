//! Bound arithmetic against independent rules.

use proptest::prelude::*;
use skeleta::bounds::{
    conjecture_value, is_prime_power, lower_bound, next_prime_power_geq, report, upper_bound,
};

/// Prime powers below `limit` by a sieve.
fn prime_power_table(limit: u64) -> Vec<bool> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut table = vec![false; n + 1];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for m in (p * p..=n).step_by(p) {
            composite[m] = true;
        }
        let mut q = p;
        while q <= n {
            table[q] = true;
            q *= p;
        }
    }
    table
}

#[test]
fn prime_powers_match_a_sieve() {
    let table = prime_power_table(5000);
    for r in 2..=5000u64 {
        assert_eq!(is_prime_power(r).unwrap(), table[r as usize], "r={r}");
    }
    for r in 2..=4000u64 {
        let q = next_prime_power_geq(r).unwrap();
        assert!(table[q as usize] && (r..q).all(|x| !table[x as usize]));
    }
}

#[test]
fn prime_power_values_are_exact() {
    for r in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        for d in 1..=100 {
            let rep = report(r, d).unwrap();
            let v = (r - 1) * (d + 1);
            assert_eq!((rep.lower.value, rep.upper.value, rep.conjecture.value), (v, v, v));
            assert_eq!(rep.exact.unwrap().value, v);
        }
    }
}

#[test]
fn lower_bounds_scale_along_joins() {
    for r in 2..=12u64 {
        for d in 1..=30u64 {
            for k in 1..=4u64 {
                let big = k * (d + 1) - 1;
                assert!(
                    lower_bound(r, big).unwrap().value >= k * lower_bound(r, d).unwrap().value,
                    "r={r} d={d} k={k}"
                );
            }
        }
    }
}

#[test]
fn seeds_give_the_alpha_plus_c_rate() {
    // with α = r - 1 and c = 1 at a seed d₀, every d = k(d₀ + 1) - 1 has
    // N_r(d) ≥ (α + c/(d₀ + 1))(d + 1) = (r - 1)(d + 1) + k
    for r in [6u64, 10, 12, 14, 15] {
        for seed_k in 3..=5 {
            let d0 = r * seed_k + 1;
            assert!(lower_bound(r, d0).unwrap().value > (r - 1) * (d0 + 1));
            for k in 1..=6 {
                let d = k * (d0 + 1) - 1;
                assert!(lower_bound(r, d).unwrap().value >= (r - 1) * (d + 1) + k, "r={r} d0={d0} k={k}");
            }
        }
    }
}

#[test]
fn non_seed_dimensions_keep_the_baseline() {
    assert_eq!(lower_bound(6, 18).unwrap().value, 5 * 19);
    assert_eq!(lower_bound(6, 20).unwrap().value, 5 * 21);
    assert_eq!(lower_bound(10, 30).unwrap().value, 9 * 31);
}

proptest! {
    #[test]
    fn conjecture_sits_between_the_bounds(r in 2u64..=40, d in 1u64..=2000) {
        let rep = report(r, d).unwrap();
        prop_assert!(rep.lower.value <= rep.conjecture.value);
        prop_assert!(rep.conjecture.value <= rep.upper.value);
        prop_assert_eq!(rep.conjecture.value, conjecture_value(r, d).unwrap());
        prop_assert_eq!(rep.upper.value, upper_bound(r, d).unwrap().value);
    }
}

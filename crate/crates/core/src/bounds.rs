//! Arithmetic of the Tverberg number `N_r(d)`.
//!
//! The baseline `(r - 1)(d + 1)` is exact for prime powers `r`. For other
//! `r` the deficiency `β_r(d) = N_r(d) - (r - 1)(d + 1)` is at least one at
//! every seed dimension `d₀ = rk + 1` with `k >= 3`, and seeds propagate
//! through `β_r(k'(d₀ + 1) - 1) >= k' β_r(d₀)`. Upper bounds come from the
//! next prime power `q >= r`, and for `r >= 6` from `(2r - 6)(d + 1)`.

use std::fmt;

use crate::error::{input, Error, Result};

/// Largest dimension for which seeds are searched during propagation.
pub const PROPAGATION_LIMIT: u64 = 1_000_000;

pub fn is_prime_power(r: u64) -> Result<bool> {
    if r < 2 {
        return input(format!("prime powers start at 2, got {r}"));
    }
    let p = smallest_prime_factor(r);
    let mut rest = r;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    Ok(rest == 1)
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).take_while(|p| p * p <= n).find(|p| n.is_multiple_of(*p)).unwrap_or(n)
}

pub fn next_prime_power_geq(r: u64) -> Result<u64> {
    if r < 2 {
        return input(format!("prime powers start at 2, got {r}"));
    }
    Ok((r..).find(|&q| is_prime_power(q).unwrap_or(false)).expect("prime powers are unbounded"))
}

/// A bound together with the rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: u64,
    pub provenance: String,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.provenance)
    }
}

fn check_params(r: u64, d: u64) -> Result<()> {
    if r < 2 {
        return input(format!("r must be at least 2, got {r}"));
    }
    if d < 1 {
        return input(format!("d must be at least 1, got {d}"));
    }
    Ok(())
}

pub fn upper_bound(r: u64, d: u64) -> Result<Bound> {
    check_params(r, d)?;
    let q = next_prime_power_geq(r)?;
    if q == r {
        return Ok(Bound {
            value: (r - 1) * (d + 1),
            provenance: "prime power exact".into(),
        });
    }
    let shifted = Bound {
        value: (q - 1) * d + r - 1,
        provenance: format!("prime-power shift q={q}"),
    };
    if r >= 6 {
        let bertrand = (2 * r - 6) * (d + 1);
        if bertrand < shifted.value {
            return Ok(Bound {
                value: bertrand,
                provenance: "bertrand (2r-6)(d+1)".into(),
            });
        }
    }
    Ok(shifted)
}

/// `(N, d) = ((r - 1)(rk + 2), rk + 1)`: a map `Δ_N -> R^d` without an
/// `r`-fold Tverberg partition exists for these parameters.
pub fn counterexample_parameters(r: u64, k: u64) -> Result<(u64, u64)> {
    if r < 6 || is_prime_power(r)? {
        return input(format!(
            "counterexamples need r >= 6 not a prime power, got r = {r}"
        ));
    }
    if k < 3 {
        return input(format!(
            "counterexamples need k >= 3 (the embedding step requires it), got k = {k}"
        ));
    }
    Ok(((r - 1) * (r * k + 2), r * k + 1))
}

/// Best propagated lower bound on `β_r(d)` and the seed `k` it came from.
fn beta_lower(r: u64, d: u64) -> Option<(u64, u64)> {
    if is_prime_power(r).unwrap_or(true) || d > PROPAGATION_LIMIT {
        return None;
    }
    let mut best: Option<(u64, u64)> = None;
    for seed_k in 3.. {
        let d0 = r * seed_k + 1;
        if d0 > d {
            break;
        }
        if (d + 1).is_multiple_of(d0 + 1) {
            let factor = (d + 1) / (d0 + 1);
            if best.is_none_or(|(b, _)| factor > b) {
                best = Some((factor, seed_k));
            }
        }
    }
    best
}

pub fn lower_bound(r: u64, d: u64) -> Result<Bound> {
    check_params(r, d)?;
    let base = (r - 1) * (d + 1);
    if is_prime_power(r)? {
        return Ok(Bound {
            value: base,
            provenance: "prime power exact".into(),
        });
    }
    Ok(match beta_lower(r, d) {
        Some((1, seed_k)) => Bound {
            value: base + 1,
            provenance: format!("counterexample seed k={seed_k}"),
        },
        Some((beta, seed_k)) => Bound {
            value: base + beta,
            provenance: format!(
                "seed propagation k'={beta} from seed d={} (k={seed_k})",
                r * seed_k + 1
            ),
        },
        None => Bound {
            value: base,
            provenance: "baseline (r-1)(d+1)".into(),
        },
    })
}

pub fn conjecture_value(r: u64, d: u64) -> Result<u64> {
    check_params(r, d)?;
    Ok(if is_prime_power(r)? || d <= r {
        (r - 1) * (d + 1)
    } else {
        r * (d + 1) - 1
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub r: u64,
    pub d: u64,
    pub lower: Bound,
    pub upper: Bound,
    pub exact: Option<Bound>,
    pub conjecture: Bound,
}

/// Rejects bound pairs that cannot both be true.
pub fn reconcile(r: u64, d: u64, lower: &Bound, upper: &Bound) -> Result<()> {
    if lower.value > upper.value {
        return Err(Error::Inconsistency(format!(
            "r={r}, d={d}: lower bound {lower} exceeds upper bound {upper}"
        )));
    }
    Ok(())
}

pub fn report(r: u64, d: u64) -> Result<BoundsReport> {
    let lower = lower_bound(r, d)?;
    let upper = upper_bound(r, d)?;
    reconcile(r, d, &lower, &upper)?;
    let conjecture = Bound {
        value: conjecture_value(r, d)?,
        provenance: if is_prime_power(r)? {
            "prime power exact".into()
        } else if d <= r {
            "conjectured (r-1)(d+1) for d <= r".into()
        } else {
            "conjectured r(d+1)-1".into()
        },
    };
    if conjecture.value < lower.value || conjecture.value > upper.value {
        return Err(Error::Inconsistency(format!(
            "r={r}, d={d}: conjecture {} outside [{}, {}]",
            conjecture.value, lower.value, upper.value
        )));
    }
    let exact = (lower.value == upper.value).then(|| Bound {
        value: lower.value,
        provenance: if is_prime_power(r).unwrap_or(false) {
            "prime power exact".into()
        } else {
            "lower bound meets upper bound".into()
        },
    });
    Ok(BoundsReport {
        r,
        d,
        lower,
        upper,
        exact,
        conjecture,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(8).unwrap());
        assert!(!is_prime_power(6).unwrap());
        assert!(is_prime_power(49).unwrap());
        assert!(is_prime_power(2).unwrap());
        assert!(!is_prime_power(1).is_ok());
        assert_eq!(next_prime_power_geq(6).unwrap(), 7);
        assert_eq!(next_prime_power_geq(10).unwrap(), 11);
        assert_eq!(next_prime_power_geq(9).unwrap(), 9);
    }

    #[test]
    fn upper_examples() {
        let u = upper_bound(6, 19).unwrap();
        assert_eq!(u.value, 119);
        assert_eq!(u.provenance, "prime-power shift q=7");
        assert_eq!(upper_bound(5, 3).unwrap().value, 16);
        assert_eq!(upper_bound(6, 1).unwrap().value, 11);
    }

    #[test]
    fn counterexample_examples() {
        assert_eq!(counterexample_parameters(6, 3).unwrap(), (100, 19));
        assert_eq!(counterexample_parameters(10, 3).unwrap(), (288, 31));
        assert_eq!(counterexample_parameters(6, 4).unwrap(), (130, 25));
        assert!(counterexample_parameters(7, 3).is_err());
        assert!(counterexample_parameters(6, 2).is_err());
    }

    #[test]
    fn lower_examples() {
        let p = lower_bound(5, 7).unwrap();
        assert_eq!((p.value, p.provenance.as_str()), (32, "prime power exact"));
        let seed = lower_bound(6, 19).unwrap();
        assert_eq!((seed.value, seed.provenance.as_str()), (101, "counterexample seed k=3"));
        let propagated = lower_bound(6, 39).unwrap();
        assert_eq!(propagated.value, 202);
        assert!(propagated.provenance.starts_with("seed propagation k'=2"));
        assert_eq!(lower_bound(6, 18).unwrap().value, 95);
    }

    #[test]
    fn conjecture_examples() {
        assert_eq!(conjecture_value(6, 5).unwrap(), 30);
        assert_eq!(conjecture_value(6, 19).unwrap(), 119);
        assert_eq!(conjecture_value(7, 100).unwrap(), 606);
        // both branches at the boundary d = r
        assert_eq!(conjecture_value(6, 6).unwrap(), 5 * 7);
        assert_eq!(conjecture_value(6, 7).unwrap(), 6 * 8 - 1);
    }

    #[test]
    fn report_examples() {
        let r = report(7, 3).unwrap();
        assert_eq!(r.exact.unwrap().value, 24);
        assert_eq!((r.lower.value, r.upper.value, r.conjecture.value), (24, 24, 24));
        assert_eq!(report(2, 1).unwrap().exact.unwrap().value, 2);
        let r = report(6, 19).unwrap();
        assert_eq!((r.lower.value, r.upper.value), (101, 119));
        assert!(r.exact.is_none());
    }

    #[test]
    fn reconciliation_rejects_crossed_bounds() {
        let lower = Bound {
            value: 121,
            provenance: "counterexample seed k=3".into(),
        };
        let upper = upper_bound(6, 19).unwrap();
        assert!(matches!(reconcile(6, 19, &lower, &upper), Err(Error::Inconsistency(_))));
    }
}

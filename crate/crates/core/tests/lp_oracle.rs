//! The simplex feasibility test against Fourier–Motzkin elimination.

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use skeleta::exact_linalg::{int, lp_feasible, FeasibilitySystem, RatMatrix, Rational};

/// Decides `A x = b, x >= 0` by eliminating every variable from the
/// inequality form `a.x <= c`.
fn fourier_motzkin(a: &[Vec<i64>], b: &[i64]) -> bool {
    let n = a[0].len();
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for (row, &rhs) in a.iter().zip(b) {
        let r: Vec<Rational> = row.iter().map(|&x| int(x)).collect();
        rows.push((r.clone(), int(rhs)));
        rows.push((r.iter().map(|x| -x).collect(), int(-rhs)));
    }
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = int(-1);
        rows.push((e, Rational::zero()));
    }
    for j in 0..n {
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for row in rows {
            if row.0[j].is_positive() {
                pos.push(row);
            } else if row.0[j].is_negative() {
                neg.push(row);
            } else {
                keep.push(row);
            }
        }
        for (pa, pc) in &pos {
            for (na, nc) in &neg {
                let s = -&na[j];
                let t = pa[j].clone();
                let coeffs: Vec<Rational> = pa.iter().zip(na).map(|(x, y)| x * &s + y * &t).collect();
                keep.push((coeffs, pc * &s + nc * &t));
            }
        }
        rows = keep;
    }
    rows.iter().all(|(_, c)| !c.is_negative())
}

fn system() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, n), m),
            prop::collection::vec(-4i64..=4, m),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn simplex_agrees_with_elimination((a, b) in system()) {
        let matrix = RatMatrix::from_rows(a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap();
        let sys = FeasibilitySystem::nonnegative(matrix, b.iter().map(|&x| int(x)).collect()).unwrap();
        let found = lp_feasible(&sys);
        prop_assert_eq!(found.is_some(), fourier_motzkin(&a, &b));
        if let Some(x) = found {
            prop_assert!(sys.is_satisfied_by(&x));
        }
    }
}

#[test]
fn elimination_oracle_sanity() {
    assert!(fourier_motzkin(&[vec![1, 1]], &[1]));
    assert!(!fourier_motzkin(&[vec![1, 1]], &[-1]));
    assert!(!fourier_motzkin(&[vec![1, -1], vec![1, 1]], &[2, 1]));
}

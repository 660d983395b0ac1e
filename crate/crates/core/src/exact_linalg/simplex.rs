//! Exact phase-1 simplex for linear feasibility problems.
//!
//! The production path for every certificate search in the crate. Entering
//! and leaving variables follow Bland's rule with the lexicographic column
//! order, so the returned witness is a pure function of the input.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::matrix::RatMatrix;
use super::rational::Rational;
use crate::error::{input, Result};

/// `A x = b` with `x_i >= 0` for every index in `nonnegative`; the remaining
/// variables are free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilitySystem {
    a: RatMatrix,
    b: Vec<Rational>,
    nonnegative: BTreeSet<usize>,
}

impl FeasibilitySystem {
    pub fn new(a: RatMatrix, b: Vec<Rational>, nonnegative: impl IntoIterator<Item = usize>) -> Result<Self> {
        if a.rows() != b.len() {
            return input(format!(
                "feasibility system has {} rows but {} right-hand sides",
                a.rows(),
                b.len()
            ));
        }
        let nonnegative: BTreeSet<usize> = nonnegative.into_iter().collect();
        if let Some(&bad) = nonnegative.iter().find(|&&i| i >= a.cols()) {
            return input(format!("nonnegativity index {bad} exceeds variable count {}", a.cols()));
        }
        Ok(Self { a, b, nonnegative })
    }

    /// All variables constrained to be nonnegative.
    pub fn nonnegative(a: RatMatrix, b: Vec<Rational>) -> Result<Self> {
        let n = a.cols();
        Self::new(a, b, 0..n)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.b
    }

    pub fn is_nonnegative(&self, var: usize) -> bool {
        self.nonnegative.contains(&var)
    }

    pub fn variable_count(&self) -> usize {
        self.a.cols()
    }

    /// Exact check that `x` satisfies every equality and sign constraint.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.a.cols()
            && self.a.mul_vec(x) == self.b
            && self.nonnegative.iter().all(|&i| !x[i].is_negative())
    }
}

/// Returns a point of the system, or `None` iff it is infeasible.
pub fn lp_feasible(sys: &FeasibilitySystem) -> Option<Vec<Rational>> {
    // Free variables are split into a +/- pair of adjacent columns.
    let mut columns: Vec<(usize, bool)> = Vec::with_capacity(sys.a.cols() * 2);
    for j in 0..sys.a.cols() {
        columns.push((j, false));
        if !sys.nonnegative.contains(&j) {
            columns.push((j, true));
        }
    }
    let m = sys.a.rows();
    let n = columns.len();
    let rhs = n;

    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let negate = sys.b[i].is_negative();
        let mut row = Vec::with_capacity(n + 1);
        for &(j, minus) in &columns {
            let v = sys.a[(i, j)].clone();
            row.push(if minus != negate { -v } else { v });
        }
        row.push(if negate { -sys.b[i].clone() } else { sys.b[i].clone() });
        tab.push(row);
    }

    // Artificial variable i has column id n + i and starts basic in row i.
    let mut basis: Vec<usize> = (0..m).map(|i| n + i).collect();
    let mut objective: Vec<Rational> = (0..=n)
        .map(|j| -tab.iter().map(|row| &row[j]).sum::<Rational>())
        .collect();

    loop {
        let Some(enter) = (0..n).find(|&j| objective[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[enter];
            let better = match &leave {
                None => true,
                Some((best, best_ratio)) => {
                    ratio < *best_ratio || (ratio == *best_ratio && basis[i] < basis[*best])
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-1 objective is bounded below by zero, so a positive
        // reduced-cost column always has a blocking row.
        let (pivot, _) = leave.expect("phase-1 objective is bounded");
        pivot_on(&mut tab, &mut objective, pivot, enter);
        basis[pivot] = enter;
    }

    if !objective[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); sys.a.cols()];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            let (j, minus) = columns[var];
            if minus {
                x[j] -= &tab[i][rhs];
            } else {
                x[j] += &tab[i][rhs];
            }
        }
    }
    Some(x)
}

fn pivot_on(tab: &mut [Vec<Rational>], objective: &mut [Rational], pivot: usize, enter: usize) {
    let inv = tab[pivot][enter].recip();
    for v in tab[pivot].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    let prow = std::mem::take(&mut tab[pivot]);
    let nonzero: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
    let eliminate = |row: &mut Vec<Rational>| {
        if row[enter].is_zero() {
            return;
        }
        let f = row[enter].clone();
        for &j in &nonzero {
            row[j] -= &f * &prow[j];
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != pivot {
            eliminate(row);
        }
    }
    let mut obj = objective.to_vec();
    eliminate(&mut obj);
    objective.clone_from_slice(&obj);
    tab[pivot] = prow;
}

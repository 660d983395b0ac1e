//! Barycenter certificates on random interior points of the corpus.

use proptest::prelude::*;
use skeleta::barycenter::{solve_barycenter, solve_barycenter_recursive, verify_certificate, BarycenterRejection};
use skeleta::exact_linalg::{int, Rational};
use skeleta::polytope::{shapes, Point, Polytope};

fn corpus() -> Vec<Polytope> {
    vec![
        shapes::segment(),
        shapes::triangle(),
        shapes::square(),
        shapes::cube(3),
        shapes::octahedron(),
        shapes::prism(),
    ]
}

/// A point of the polytope as a weighted average of its vertices.
fn weighted_point(poly: &Polytope, weights: &[u32]) -> Point {
    let w: Vec<u32> = weights.iter().take(poly.vertices().len()).copied().collect();
    let total: u32 = w.iter().sum();
    let mut p = vec![int(0); poly.ambient_dim()];
    for (v, &wi) in poly.vertices().iter().zip(&w) {
        for (pc, vc) in p.iter_mut().zip(v) {
            *pc += vc * Rational::new(wi.into(), total.into());
        }
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn certificates_exist_when_kr_reaches_dimension(
        which in 0usize..6,
        weights in prop::collection::vec(1u32..6, 8),
        k in 1usize..=3,
        r in 1usize..=6,
    ) {
        let poly = &corpus()[which];
        let d = poly.dim();
        let k = k.min(d);
        prop_assume!(k * r >= d);
        let p = weighted_point(poly, &weights);
        let direct = solve_barycenter(poly, &p, k, r).unwrap();
        prop_assert!(direct.is_some());
        prop_assert_eq!(verify_certificate(poly, &p, k, r, direct.as_ref().unwrap()), Ok(()));
        let recursive = solve_barycenter_recursive(poly, &p, k, r).unwrap();
        prop_assert!(recursive.is_some());
        prop_assert_eq!(verify_certificate(poly, &p, k, r, recursive.as_ref().unwrap()), Ok(()));
    }

    #[test]
    fn tampered_certificates_are_rejected(
        which in 0usize..6,
        weights in prop::collection::vec(1u32..6, 8),
        r in 2usize..=4,
        slot in 0usize..4,
    ) {
        let poly = &corpus()[which];
        let d = poly.dim();
        let p = weighted_point(poly, &weights);
        let mut cert = solve_barycenter(poly, &p, d, r).unwrap().unwrap();
        let slot = slot % r;
        cert.points[slot][0] += Rational::new(1.into(), 7.into());
        let why = verify_certificate(poly, &p, d, r, &cert).unwrap_err();
        prop_assert_eq!(why, BarycenterRejection::PointNotInFace(slot));
    }
}

#[test]
fn vertices_alone_cannot_average_to_the_square_center_once() {
    let sq = shapes::square();
    let center = vec![int(0), int(0)];
    assert!(solve_barycenter(&sq, &center, 0, 1).unwrap().is_none());
    assert!(solve_barycenter(&sq, &center, 0, 2).unwrap().is_some());
}

#[test]
fn recursion_may_fail_below_the_dimension_threshold() {
    // kr = 0·4 < d = 2: four vertices of the triangle cannot be split 2 + 2
    // through the carrier of a half-sum, while the direct search succeeds.
    let tri = shapes::triangle();
    let p = vec![Rational::new(1.into(), 4.into()), Rational::new(1.into(), 4.into())];
    assert!(solve_barycenter(&tri, &p, 0, 4).unwrap().is_some());
    assert!(solve_barycenter_recursive(&tri, &p, 0, 4).unwrap().is_none());
}

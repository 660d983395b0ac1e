//! Face lattices, carriers and skeleton distances.

use proptest::prelude::*;
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
        shapes::simplex(4),
        shapes::cube(4),
    ]
}

fn weighted_point(poly: &Polytope, weights: &[u32]) -> Point {
    let w: Vec<u32> = weights.iter().take(poly.vertices().len()).copied().collect();
    let total: u32 = w.iter().sum::<u32>().max(1);
    let mut p = vec![int(0); poly.ambient_dim()];
    for (v, &wi) in poly.vertices().iter().zip(&w) {
        for (pc, vc) in p.iter_mut().zip(v) {
            *pc += vc * Rational::new(wi.into(), total.into());
        }
    }
    p
}

#[test]
fn euler_relation_holds() {
    for poly in corpus() {
        let f = poly.f_vector();
        let alternating: i64 = f.iter().enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        // f_0 - f_1 + ... ± f_d (the polytope itself included) equals 1
        assert_eq!(alternating, 1, "{f:?}");
    }
}

#[test]
fn recomputed_lattices_survive_verification() {
    for poly in corpus() {
        let faces: Vec<Vec<usize>> = poly.faces().iter().map(|f| f.vertices.clone()).collect();
        let again = Polytope::with_faces(poly.vertices().to_vec(), &faces).unwrap();
        assert_eq!(again.f_vector(), poly.f_vector());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn carrier_is_the_smallest_face_holding_the_point(
        which in 0usize..7,
        weights in prop::collection::vec(0u32..4, 16),
    ) {
        let poly = &corpus()[which];
        prop_assume!(weights.iter().take(poly.vertices().len()).any(|&w| w > 0));
        let p = weighted_point(poly, &weights);
        let carrier = poly.minimal_face(&p).unwrap().clone();
        prop_assert!(poly.face_contains(&carrier, &p).is_some());
        for face in poly.faces() {
            if !face.is_empty() && poly.face_contains(face, &p).is_some() {
                prop_assert!(carrier.vertices.iter().all(|v| face.vertices.contains(v)));
            }
        }
        prop_assert!(poly.skeleton_distance_sq(carrier.dim as usize, &p).unwrap() == int(0));
    }

    #[test]
    fn skeleton_distance_shrinks_with_k(
        which in 0usize..7,
        weights in prop::collection::vec(0u32..4, 16),
    ) {
        let poly = &corpus()[which];
        prop_assume!(weights.iter().take(poly.vertices().len()).any(|&w| w > 0));
        let p = weighted_point(poly, &weights);
        let dists: Vec<Rational> = (0..=poly.dim()).map(|k| poly.skeleton_distance_sq(k, &p).unwrap()).collect();
        prop_assert!(dists.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(dists.last().unwrap().clone(), int(0));
    }
}

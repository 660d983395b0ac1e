//! Evaluators and lifts.

use proptest::prelude::*;
use skeleta::delprod::SimplicialComplex;
use skeleta::exact_linalg::{int, one, zero, Rational};
use skeleta::plmaps::{
    check_lift_reflection, constraint_lift, evaluate, join_lift_config, simplex_skeleton_distance_sq, AffineVertexMap,
    BarycentricPoint,
};
use skeleta::polytope::Polytope;
use skeleta::tverberg::PointConfiguration;

fn weights(raw: &[u32]) -> Vec<Rational> {
    let total: u32 = raw.iter().sum::<u32>().max(1);
    let mut w: Vec<Rational> = raw.iter().map(|&x| Rational::new(x.into(), total.into())).collect();
    if raw.iter().all(|&x| x == 0) {
        w[0] = one();
    }
    w
}

/// `conv(e_0, …, e_N)` in `R^{N+1}`, as the face of `conv(0, e_0, …, e_N)`
/// opposite the origin.
fn standard_simplex(n: usize) -> Polytope {
    let mut verts = vec![vec![zero(); n + 1]];
    for i in 0..=n {
        let mut e = vec![zero(); n + 1];
        e[i] = one();
        verts.push(e);
    }
    let cone = Polytope::from_vertices(verts).unwrap();
    let facet: Vec<usize> = (1..=n + 1).collect();
    let id = cone.face_id(&facet).unwrap();
    cone.sub_polytope(cone.face(id)).unwrap().0
}

fn config(points: &[Vec<i64>]) -> PointConfiguration {
    let d = points[0].len();
    PointConfiguration::new(d, points.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn closed_form_distance_matches_face_projection(raw in prop::collection::vec(0u32..5, 2..=5), k in 0usize..4) {
        let n = raw.len() - 1;
        let k = k.min(n);
        let w = weights(&raw);
        let by_faces = standard_simplex(n).skeleton_distance_sq(k, &w).unwrap();
        prop_assert_eq!(simplex_skeleton_distance_sq(&w, k), by_faces);
    }

    #[test]
    fn lift_distance_vanishes_exactly_on_the_skeleton(raw in prop::collection::vec(0u32..4, 2..=6), k in 0usize..5) {
        let n = raw.len() - 1;
        let k = k.min(n);
        let w = weights(&raw);
        let support = w.iter().filter(|x| **x != zero()).count();
        let f = AffineVertexMap::new(SimplicialComplex::simplex(n), 1, (0..=n).map(|i| vec![int(i as i64)]).collect()).unwrap();
        let x = BarycentricPoint::new(w).unwrap();
        let g = constraint_lift(f.clone(), k).unwrap().eval(&x).unwrap();
        prop_assert_eq!(g.distance_sq == zero(), support <= k + 1);
        prop_assert!((g.distance == 0.0) == (support <= k + 1));
        prop_assert_eq!(g.image, evaluate(&f, &x).unwrap());
    }

    #[test]
    fn evaluation_is_affine(
        a in prop::collection::vec(0u32..4, 4),
        b in prop::collection::vec(0u32..4, 4),
        t in 0u32..=6,
        images in prop::collection::vec(prop::collection::vec(-5i64..=5, 2), 4),
    ) {
        let f = AffineVertexMap::new(
            SimplicialComplex::simplex(3),
            2,
            images.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect(),
        ).unwrap();
        let (x, y) = (weights(&a), weights(&b));
        let t = Rational::new(t.into(), 6.into());
        let s = one() - &t;
        let mix: Vec<Rational> = x.iter().zip(&y).map(|(p, q)| &t * p + &s * q).collect();
        let fx = evaluate(&f, &BarycentricPoint::new(x).unwrap()).unwrap();
        let fy = evaluate(&f, &BarycentricPoint::new(y).unwrap()).unwrap();
        let fm = evaluate(&f, &BarycentricPoint::new(mix).unwrap()).unwrap();
        let expected: Vec<Rational> = fx.iter().zip(&fy).map(|(p, q)| &t * p + &s * q).collect();
        prop_assert_eq!(fm, expected);
    }

    #[test]
    fn join_weights_are_recovered(
        pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3),
        k in 1usize..=3,
        raw in prop::collection::vec(0u32..4, 9),
    ) {
        let cfg = config(&pts);
        let lift = join_lift_config(&cfg, k).unwrap();
        let w = weights(&raw[..3 * k]);
        let image: Vec<Rational> = (0..lift.dim())
            .map(|c| lift.points().iter().zip(&w).map(|(p, wi)| &p[c] * wi).sum())
            .collect();
        let copy_weight = |i: usize| -> Rational { w[3 * i..3 * i + 3].iter().sum() };
        let mut recovered: Vec<Rational> = image[..k - 1].to_vec();
        recovered.push(one() - recovered.iter().sum::<Rational>());
        prop_assert_eq!(recovered, (0..k).map(copy_weight).collect::<Vec<_>>());
    }
}

#[test]
fn reflection_over_small_grid_configurations() {
    let coords = [-1i64, 0, 1];
    for a in coords {
        for b in coords {
            for c in coords {
                for d in coords {
                    let cfg = config(&[vec![a, b], vec![c, d], vec![a + c, b - d]]);
                    for k in 1..=3 {
                        let rep = check_lift_reflection(&cfg, 2, k).unwrap();
                        assert!(!rep.fatal, "{:?} k={k}", cfg.points());
                        if rep.lifted.is_some() {
                            assert!(rep.lambdas_agree);
                            assert!(rep.back_projected.is_some());
                        }
                    }
                }
            }
        }
    }
}

//! Points of a polytope as barycenters of points in its `k`-skeleton.
//!
//! The direct solver searches multisets of faces and decides each multiset
//! with one exact LP. Feasibility only grows when a face is replaced by a
//! larger face of dimension at most `k`, so it suffices to search multisets
//! of `k`-dimensional faces; every returned point is then moved to its
//! carrier face. The recursive solver splits `r = q * m` on the smallest
//! prime `q` and decomposes within carrier faces.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{input, Error, Result};
use crate::exact_linalg::{int, lp_feasible, one, FeasibilitySystem, RatMatrix, Rational};
use crate::polytope::{format_point, Face, Point, Polytope};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycenterCertificate {
    /// Carrier face of each point; repetition allowed.
    pub faces: Vec<Face>,
    pub points: Vec<Point>,
    /// Convex coefficients of each point, aligned with `faces[i].vertices`.
    pub coefficients: Vec<Vec<Rational>>,
}

/// Why [`verify_certificate`] rejected a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BarycenterRejection {
    WrongCount { expected: usize, found: usize },
    DimensionMismatch,
    UnknownFace(usize),
    FaceDimensionExceedsK { slot: usize, dim: i32, k: usize },
    BadCoefficients(usize),
    PointNotInFace(usize),
    BarycenterMismatch,
}

impl BarycenterRejection {
    pub fn code(&self) -> &'static str {
        match self {
            Self::WrongCount { .. } => "wrong point count",
            Self::DimensionMismatch => "dimension mismatch",
            Self::UnknownFace(_) => "face not in lattice",
            Self::FaceDimensionExceedsK { .. } => "face dimension exceeds k",
            Self::BadCoefficients(_) => "coefficients not convex",
            Self::PointNotInFace(_) => "point does not match coefficients",
            Self::BarycenterMismatch => "barycenter mismatch",
        }
    }
}

impl fmt::Display for BarycenterRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongCount { expected, found } => write!(f, "{}: expected {expected}, found {found}", self.code()),
            Self::FaceDimensionExceedsK { slot, dim, k } => {
                write!(f, "{}: slot {slot} has dimension {dim} > {k}", self.code())
            }
            Self::UnknownFace(i) | Self::BadCoefficients(i) | Self::PointNotInFace(i) => {
                write!(f, "{} (slot {i})", self.code())
            }
            _ => f.write_str(self.code()),
        }
    }
}

fn check_query(poly: &Polytope, p: &[Rational], r: usize) -> Result<()> {
    if r == 0 {
        return input("r must be at least 1");
    }
    if p.len() != poly.ambient_dim() {
        return input(format!(
            "point has dimension {}, polytope lives in R^{}",
            p.len(),
            poly.ambient_dim()
        ));
    }
    if !poly.contains(p) {
        return input(format!("point {} is not in the polytope", format_point(p)));
    }
    Ok(())
}

/// Direct search: `r` points of the `k`-skeleton averaging to `p`.
pub fn solve_barycenter(poly: &Polytope, p: &[Rational], k: usize, r: usize) -> Result<Option<BarycenterCertificate>> {
    check_query(poly, p, r)?;
    let k = k.min(poly.dim());
    let candidates = poly.faces_of_dim(k);
    let d = poly.ambient_dim();
    let target: Vec<Rational> = p.iter().map(|x| x * int(r as i64)).collect();

    let boxes: Vec<(Vec<Rational>, Vec<Rational>)> = candidates
        .iter()
        .map(|&id| bounding_box(poly, poly.face(id)))
        .collect();
    let global = bounding_box(poly, poly.top_face());

    let mut search = MultisetSearch {
        poly,
        candidates: &candidates,
        boxes: &boxes,
        global: &global,
        target: &target,
        r,
        chosen: Vec::with_capacity(r),
        lo: vec![Rational::zero(); d],
        hi: vec![Rational::zero(); d],
    };
    Ok(search.run(0))
}

struct MultisetSearch<'a> {
    poly: &'a Polytope,
    candidates: &'a [usize],
    boxes: &'a [(Vec<Rational>, Vec<Rational>)],
    global: &'a (Vec<Rational>, Vec<Rational>),
    target: &'a [Rational],
    r: usize,
    chosen: Vec<usize>,
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

impl MultisetSearch<'_> {
    fn run(&mut self, start: usize) -> Option<BarycenterCertificate> {
        let left = int((self.r - self.chosen.len()) as i64);
        // Minkowski-sum bounding box of the remaining slots must reach the target.
        for c in 0..self.target.len() {
            if &self.lo[c] + &left * &self.global.0[c] > self.target[c]
                || &self.hi[c] + &left * &self.global.1[c] < self.target[c]
            {
                return None;
            }
        }
        if self.chosen.len() == self.r {
            let faces: Vec<&Face> = self.chosen.iter().map(|&i| self.poly.face(self.candidates[i])).collect();
            return solve_face_multiset(self.poly, &faces, self.target);
        }
        for i in start..self.candidates.len() {
            let (blo, bhi) = &self.boxes[i];
            for c in 0..self.target.len() {
                self.lo[c] += &blo[c];
                self.hi[c] += &bhi[c];
            }
            self.chosen.push(i);
            let found = self.run(i);
            self.chosen.pop();
            for c in 0..self.target.len() {
                self.lo[c] -= &blo[c];
                self.hi[c] -= &bhi[c];
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn bounding_box(poly: &Polytope, face: &Face) -> (Vec<Rational>, Vec<Rational>) {
    let verts = poly.vertices();
    let first = &verts[face.vertices[0]];
    let mut lo = first.clone();
    let mut hi = first.clone();
    for &v in &face.vertices[1..] {
        for (c, x) in verts[v].iter().enumerate() {
            if *x < lo[c] {
                lo[c] = x.clone();
            }
            if *x > hi[c] {
                hi[c] = x.clone();
            }
        }
    }
    (lo, hi)
}

/// One LP: `x_i` in face `i` (convex coefficients), `sum x_i = target`.
fn solve_face_multiset(poly: &Polytope, faces: &[&Face], target: &[Rational]) -> Option<BarycenterCertificate> {
    let d = target.len();
    let r = faces.len();
    let nvars: usize = faces.iter().map(|f| f.vertices.len()).sum();
    let mut a = RatMatrix::zeros(r + d, nvars);
    let mut col = 0;
    for (slot, face) in faces.iter().enumerate() {
        for &v in &face.vertices {
            a[(slot, col)] = one();
            for c in 0..d {
                a[(r + c, col)] = poly.vertices()[v][c].clone();
            }
            col += 1;
        }
    }
    let mut b = vec![one(); r];
    b.extend(target.iter().cloned());
    let sys = FeasibilitySystem::nonnegative(a, b).expect("consistent shapes");
    let x = lp_feasible(&sys)?;

    let mut cert = BarycenterCertificate {
        faces: Vec::with_capacity(r),
        points: Vec::with_capacity(r),
        coefficients: Vec::with_capacity(r),
    };
    let mut offset = 0;
    for face in faces {
        let lambda = &x[offset..offset + face.vertices.len()];
        offset += face.vertices.len();
        let support: Vec<usize> = face
            .vertices
            .iter()
            .zip(lambda)
            .filter(|(_, l)| l.is_positive())
            .map(|(&v, _)| v)
            .collect();
        let carrier = poly.smallest_face_containing(&support).clone();
        let coeffs: Vec<Rational> = carrier
            .vertices
            .iter()
            .map(|v| {
                face.vertices
                    .iter()
                    .position(|w| w == v)
                    .map_or_else(Rational::zero, |j| lambda[j].clone())
            })
            .collect();
        cert.points.push(combine(poly, &carrier.vertices, &coeffs));
        cert.faces.push(carrier);
        cert.coefficients.push(coeffs);
    }
    Some(cert)
}

fn combine(poly: &Polytope, vertices: &[usize], coeffs: &[Rational]) -> Point {
    let mut x = vec![Rational::zero(); poly.ambient_dim()];
    for (&v, c) in vertices.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (xi, vi) in x.iter_mut().zip(&poly.vertices()[v]) {
            *xi += c * vi;
        }
    }
    x
}

pub fn smallest_prime_factor(n: usize) -> usize {
    (2..).take_while(|q| q * q <= n).find(|q| n.is_multiple_of(*q)).unwrap_or(n)
}

/// Prime-divisor induction: solve for `m = r / q` points in the
/// `qk`-skeleton, then split each into `q` points of the `k`-skeleton of its
/// carrier face. Complete whenever `kr >= dim P`.
pub fn solve_barycenter_recursive(
    poly: &Polytope,
    p: &[Rational],
    k: usize,
    r: usize,
) -> Result<Option<BarycenterCertificate>> {
    check_query(poly, p, r)?;
    let q = smallest_prime_factor(r);
    if r <= 1 || q == r {
        return solve_barycenter(poly, p, k, r);
    }
    let m = r / q;
    let coarse_k = (q * k).min(poly.dim());
    let Some(coarse) = solve_barycenter_recursive(poly, p, coarse_k, m)? else {
        return Ok(None);
    };
    let mut cert = BarycenterCertificate {
        faces: Vec::with_capacity(r),
        points: Vec::with_capacity(r),
        coefficients: Vec::with_capacity(r),
    };
    for (face, x) in coarse.faces.iter().zip(&coarse.points) {
        let (sub, map) = poly.sub_polytope(face)?;
        let Some(part) = solve_barycenter(&sub, x, k, q)? else {
            return Ok(None);
        };
        for ((f, pt), coeffs) in part.faces.into_iter().zip(part.points).zip(part.coefficients) {
            let global: Vec<usize> = f.vertices.iter().map(|&v| map[v]).collect();
            let id = poly
                .face_id(&global)
                .ok_or_else(|| Error::Inconsistency("sub-polytope face missing from lattice".into()))?;
            cert.faces.push(poly.face(id).clone());
            cert.points.push(pt);
            cert.coefficients.push(coeffs);
        }
    }
    Ok(Some(cert))
}

/// The carrier face of `p` as a standalone polytope, together with the map
/// from its vertex indices back to `poly`'s.
#[derive(Debug, Clone)]
pub struct Carrier {
    pub polytope: Polytope,
    pub vertex_map: Vec<usize>,
    pub point: Point,
}

pub fn restrict_to_carrier(poly: &Polytope, p: &[Rational]) -> Result<Carrier> {
    let face = poly.minimal_face(p)?.clone();
    let (polytope, vertex_map) = poly.sub_polytope(&face)?;
    Ok(Carrier {
        polytope,
        vertex_map,
        point: p.to_vec(),
    })
}

/// Exact re-check of a certificate. Uses only the stored lattice and
/// arithmetic on the certificate; no LP.
pub fn verify_certificate(
    poly: &Polytope,
    p: &[Rational],
    k: usize,
    r: usize,
    cert: &BarycenterCertificate,
) -> std::result::Result<(), BarycenterRejection> {
    let found = cert.points.len();
    if found != r || cert.faces.len() != r || cert.coefficients.len() != r {
        return Err(BarycenterRejection::WrongCount { expected: r, found });
    }
    if p.len() != poly.ambient_dim() || cert.points.iter().any(|x| x.len() != p.len()) {
        return Err(BarycenterRejection::DimensionMismatch);
    }
    let mut total = vec![Rational::zero(); p.len()];
    for slot in 0..r {
        let face = &cert.faces[slot];
        match poly.face_id(&face.vertices) {
            Some(id) if poly.face(id).dim == face.dim && !face.is_empty() => {}
            _ => return Err(BarycenterRejection::UnknownFace(slot)),
        }
        if face.dim as usize > k {
            return Err(BarycenterRejection::FaceDimensionExceedsK { slot, dim: face.dim, k });
        }
        let coeffs = &cert.coefficients[slot];
        if coeffs.len() != face.vertices.len()
            || coeffs.iter().any(Signed::is_negative)
            || coeffs.iter().sum::<Rational>() != one()
        {
            return Err(BarycenterRejection::BadCoefficients(slot));
        }
        if combine(poly, &face.vertices, coeffs) != cert.points[slot] {
            return Err(BarycenterRejection::PointNotInFace(slot));
        }
        for (t, x) in total.iter_mut().zip(&cert.points[slot]) {
            *t += x;
        }
    }
    let rp: Vec<Rational> = p.iter().map(|x| x * int(r as i64)).collect();
    if total != rp {
        return Err(BarycenterRejection::BarycenterMismatch);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{int, ratio};
    use crate::polytope::shapes::*;

    fn pt(v: &[i64]) -> Point {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn square_center_two_edge_points() {
        let sq = square();
        let p = pt(&[0, 0]);
        let cert = solve_barycenter(&sq, &p, 1, 2).unwrap().unwrap();
        assert_eq!(verify_certificate(&sq, &p, 1, 2, &cert), Ok(()));
        assert!(cert.faces.iter().all(|f| f.dim <= 1));
    }

    #[test]
    fn vertex_decomposes_into_itself() {
        let sq = square();
        let v = pt(&[1, 1]);
        for r in 1..=4 {
            let cert = solve_barycenter(&sq, &v, 0, r).unwrap().unwrap();
            assert!(cert.points.iter().all(|x| *x == v));
            assert!(cert.faces.iter().all(|f| f.dim == 0));
        }
    }

    #[test]
    fn segment_midpoint() {
        let seg = segment();
        let half = vec![ratio(1, 2)];
        let cert = solve_barycenter(&seg, &half, 0, 2).unwrap().unwrap();
        let mut xs = cert.points.clone();
        xs.sort();
        assert_eq!(xs, vec![pt(&[0]), pt(&[1])]);
        assert_eq!(solve_barycenter(&seg, &half, 0, 1).unwrap(), None);
    }

    #[test]
    fn outside_point_is_input_error() {
        assert!(solve_barycenter(&square(), &pt(&[2, 0]), 1, 2).is_err());
        assert!(solve_barycenter_recursive(&square(), &pt(&[2, 0]), 1, 4).is_err());
        assert!(restrict_to_carrier(&square(), &pt(&[2, 0])).is_err());
    }

    #[test]
    fn cube_recursive_four_edge_points() {
        let c = cube(3);
        let o = pt(&[0, 0, 0]);
        let cert = solve_barycenter_recursive(&c, &o, 1, 4).unwrap().unwrap();
        assert_eq!(verify_certificate(&c, &o, 1, 4, &cert), Ok(()));
    }

    #[test]
    fn prime_r_recursion_is_direct() {
        let c = cube(3);
        let p = vec![ratio(1, 4), ratio(-1, 2), ratio(0, 1)];
        assert_eq!(
            solve_barycenter_recursive(&c, &p, 1, 3).unwrap(),
            solve_barycenter(&c, &p, 1, 3).unwrap()
        );
    }

    #[test]
    fn carrier_restriction() {
        let sq = square();
        let edge = restrict_to_carrier(&sq, &pt(&[1, 0])).unwrap();
        assert_eq!(edge.polytope.dim(), 1);
        assert_eq!(edge.vertex_map, vec![1, 2]);
        assert_eq!(restrict_to_carrier(&sq, &pt(&[0, 0])).unwrap().polytope.dim(), 2);
        let vertex = restrict_to_carrier(&sq, &pt(&[1, 1])).unwrap();
        assert_eq!(vertex.polytope.dim(), 0);
        assert_eq!(vertex.polytope.vertices(), &[pt(&[1, 1])]);
    }

    #[test]
    fn verifier_reason_codes() {
        let sq = square();
        let p = pt(&[0, 0]);
        let cert = solve_barycenter(&sq, &p, 1, 2).unwrap().unwrap();
        // k lowered below the face dimensions used
        let edge_cert = BarycenterCertificate {
            faces: vec![
                sq.face(sq.face_id(&[0, 3]).unwrap()).clone(),
                sq.face(sq.face_id(&[1, 2]).unwrap()).clone(),
            ],
            points: vec![pt(&[-1, 0]), pt(&[1, 0])],
            coefficients: vec![vec![ratio(1, 2); 2], vec![ratio(1, 2); 2]],
        };
        assert_eq!(verify_certificate(&sq, &p, 1, 2, &edge_cert), Ok(()));
        assert_eq!(
            verify_certificate(&sq, &p, 0, 2, &edge_cert).unwrap_err().code(),
            "face dimension exceeds k"
        );
        let off = vec![ratio(1, 10), int(0)];
        assert_eq!(
            verify_certificate(&sq, &off, 1, 2, &cert).unwrap_err().code(),
            "barycenter mismatch"
        );
        let mut bad = edge_cert.clone();
        bad.points[0] = pt(&[-1, 1]);
        assert_eq!(verify_certificate(&sq, &p, 1, 2, &bad).unwrap_err().code(), "point does not match coefficients");
        assert!(matches!(
            verify_certificate(&sq, &p, 1, 3, &cert),
            Err(BarycenterRejection::WrongCount { .. })
        ));
    }
}

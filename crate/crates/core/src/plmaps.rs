//! Affine maps on simplicial complexes and two lifts built from them.
//!
//! The constraint lift appends the distance to the `k`-skeleton of the
//! standard simplex to an affine map. It is not affine, so it is exposed
//! only as an evaluator. The join lift realizes the `k`-fold join of
//! `Δ_N` (vertex `j` of copy `i` gets index `(i - 1)(N + 1) + j`) and maps
//! it affinely into `R^{k(d+1)-1}`; Tverberg partitions of the lift
//! project back to partitions of the original configuration.

use num_traits::{Signed, Zero};

use crate::delprod::SimplicialComplex;
use crate::error::{input, Result};
use crate::exact_linalg::{one, to_f64, Rational};
use crate::polytope::Point;
use crate::tverberg::{tverberg_partition, verify_tverberg_certificate, FaceConstraint, PointConfiguration, TverbergCertificate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycentricPoint {
    weights: Vec<Rational>,
}

impl BarycentricPoint {
    /// Nonnegative weights summing to one.
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.iter().any(Signed::is_negative) {
            return input("barycentric weights must be nonnegative");
        }
        if weights.iter().sum::<Rational>() != one() {
            return input("barycentric weights must sum to 1");
        }
        Ok(Self { weights })
    }

    pub fn vertex(count: usize, v: usize) -> Self {
        let mut weights = vec![Rational::zero(); count];
        weights[v] = one();
        Self { weights }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&v| !self.weights[v].is_zero()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineVertexMap {
    source: SimplicialComplex,
    target_dim: usize,
    images: Vec<Point>,
}

impl AffineVertexMap {
    pub fn new(source: SimplicialComplex, target_dim: usize, images: Vec<Point>) -> Result<Self> {
        if images.len() != source.vertex_count() {
            return input(format!("{} images for {} vertices", images.len(), source.vertex_count()));
        }
        if let Some(v) = images.iter().position(|p| p.len() != target_dim) {
            return input(format!("image of vertex {v} is not in dimension {target_dim}"));
        }
        Ok(Self {
            source,
            target_dim,
            images,
        })
    }

    /// The map `Δ_N -> R^d` determined by a point configuration.
    pub fn from_configuration(cfg: &PointConfiguration) -> Self {
        let n = cfg.len() - 1;
        Self {
            source: SimplicialComplex::simplex(n),
            target_dim: cfg.dim(),
            images: cfg.points().to_vec(),
        }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }
}

pub fn evaluate(f: &AffineVertexMap, x: &BarycentricPoint) -> Result<Vec<Rational>> {
    if x.weights.len() != f.source.vertex_count() {
        return input(format!(
            "point has {} weights, complex has {} vertices",
            x.weights.len(),
            f.source.vertex_count()
        ));
    }
    let support = x.support();
    if !f.source.contains_face(&support) {
        return input(format!("support {support:?} is not a face of the complex"));
    }
    let mut y = vec![Rational::zero(); f.target_dim];
    for v in support {
        for (yi, pi) in y.iter_mut().zip(&f.images[v]) {
            *yi += &x.weights[v] * pi;
        }
    }
    Ok(y)
}

/// Squared distance from a point of `Δ_N ⊂ R^{N+1}` (given by its
/// coordinates, which are its barycentric weights) to the `k`-skeleton.
///
/// The nearest point of the face spanned by a vertex set `S` adds
/// `(1 - Σ_S x_i) / |S|` to each coordinate in `S` and zeroes the rest,
/// and exchanging a coordinate in `S` for a larger one outside never
/// increases the distance, so `S` is taken to be the `k + 1` largest
/// coordinates.
pub fn simplex_skeleton_distance_sq(weights: &[Rational], k: usize) -> Rational {
    let mut sorted: Vec<&Rational> = weights.iter().collect();
    sorted.sort_by(|a, b| b.cmp(a));
    let keep = (k + 1).min(sorted.len());
    let kept: Rational = sorted[..keep].iter().copied().sum();
    let dropped: Rational = sorted[keep..].iter().map(|&w| w * w).sum();
    let gap = one() - kept;
    dropped + &gap * &gap / Rational::from_integer(keep.into())
}

/// `g(x) = (f(x), dist(x, Δ_N^{(k)}))`.
#[derive(Debug, Clone)]
pub struct ConstraintLift {
    f: AffineVertexMap,
    k: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiftValue {
    pub image: Vec<Rational>,
    pub distance_sq: Rational,
    pub distance: f64,
}

impl LiftValue {
    /// The `target_dim + 1` outputs as floats.
    pub fn to_f64(&self) -> Vec<f64> {
        self.image.iter().map(to_f64).chain(std::iter::once(self.distance)).collect()
    }
}

pub fn constraint_lift(f: AffineVertexMap, k: usize) -> Result<ConstraintLift> {
    let n = f.source.vertex_count().saturating_sub(1);
    if f.source != SimplicialComplex::simplex(n) {
        return input("the constraint lift needs a map defined on a full simplex");
    }
    if k > n {
        return input(format!("k = {k} exceeds N = {n}"));
    }
    Ok(ConstraintLift { f, k })
}

impl ConstraintLift {
    pub fn output_dim(&self) -> usize {
        self.f.target_dim + 1
    }

    pub fn eval(&self, x: &BarycentricPoint) -> Result<LiftValue> {
        let image = evaluate(&self.f, x)?;
        let distance_sq = simplex_skeleton_distance_sq(&x.weights, self.k);
        Ok(LiftValue {
            image,
            distance: to_f64(&distance_sq).sqrt(),
            distance_sq,
        })
    }
}

/// Index of vertex `j` of copy `i` (1-based copies) in the `k`-fold join.
pub fn join_vertex_index(n_plus_1: usize, copy: usize, j: usize) -> usize {
    (copy - 1) * n_plus_1 + j
}

/// Images of the join's vertices under
/// `F(λ_1 x_1 + … + λ_k x_k) = (λ_1, …, λ_{k-1}, λ_1 f(x_1), …, λ_k f(x_k))`.
pub fn join_lift_config(cfg: &PointConfiguration, k: usize) -> Result<PointConfiguration> {
    if k == 0 {
        return input("the join lift needs k >= 1");
    }
    let d = cfg.dim();
    let width = k * (d + 1) - 1;
    let mut points = Vec::with_capacity(k * cfg.len());
    for copy in 1..=k {
        for p in cfg.points() {
            let mut x = vec![Rational::zero(); width];
            if copy < k {
                x[copy - 1] = one();
            }
            let block = k - 1 + (copy - 1) * d;
            x[block..block + d].clone_from_slice(p);
            points.push(x);
        }
    }
    PointConfiguration::new(width, points)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReflectionReport {
    pub base: Option<TverbergCertificate>,
    pub lifted: Option<TverbergCertificate>,
    /// Join weights `(λ_1, …, λ_k)` read off the lifted witness.
    pub lambdas: Option<Vec<Rational>>,
    /// Every face of the lifted certificate carries the same join weights.
    pub lambdas_agree: bool,
    /// Partition of the original configuration recovered from the lift.
    pub back_projected: Option<TverbergCertificate>,
    /// The lift has a partition but the original does not, or the
    /// recovered partition fails verification.
    pub fatal: bool,
}

/// Checks that a partition of the join lift yields one of the original
/// configuration, and exhibits it.
pub fn check_lift_reflection(cfg: &PointConfiguration, r: usize, k: usize) -> Result<LiftReflectionReport> {
    let lift = join_lift_config(cfg, k)?;
    let base = tverberg_partition(cfg, r)?;
    let lifted = tverberg_partition(&lift, r)?;
    let mut report = LiftReflectionReport {
        base,
        lifted,
        lambdas: None,
        lambdas_agree: true,
        back_projected: None,
        fatal: false,
    };
    let Some(cert) = &report.lifted else {
        return Ok(report);
    };
    let n1 = cfg.len();
    let lambdas = witness_lambdas(&cert.witness, k);
    report.lambdas_agree = cert.faces.iter().zip(&cert.coefficients).all(|(face, coeffs)| {
        (1..=k).all(|copy| copy_weight(face, coeffs, n1, copy) == lambdas[copy - 1])
    });
    let projected = back_project(cfg, cert, &lambdas, k);
    let valid = projected
        .as_ref()
        .is_some_and(|p| verify_tverberg_certificate(cfg, r, p, &FaceConstraint::default()).is_ok());
    report.fatal = report.base.is_none() || !valid || !report.lambdas_agree;
    report.lambdas = Some(lambdas);
    report.back_projected = projected;
    Ok(report)
}

fn witness_lambdas(witness: &[Rational], k: usize) -> Vec<Rational> {
    let mut lambdas: Vec<Rational> = witness[..k - 1].to_vec();
    let rest = one() - lambdas.iter().sum::<Rational>();
    lambdas.push(rest);
    lambdas
}

fn copy_weight(face: &[usize], coeffs: &[Rational], n1: usize, copy: usize) -> Rational {
    face.iter()
        .zip(coeffs)
        .filter(|(&v, _)| v / n1 + 1 == copy)
        .map(|(_, c)| c)
        .sum()
}

/// Restricts every lifted face to the first copy with positive weight and
/// rescales.
fn back_project(
    cfg: &PointConfiguration,
    cert: &TverbergCertificate,
    lambdas: &[Rational],
    k: usize,
) -> Option<TverbergCertificate> {
    let n1 = cfg.len();
    let d = cfg.dim();
    let copy = lambdas.iter().position(Signed::is_positive)? + 1;
    let lambda = &lambdas[copy - 1];
    let mut faces = Vec::with_capacity(cert.faces.len());
    for (face, coeffs) in cert.faces.iter().zip(&cert.coefficients) {
        let (verts, scaled): (Vec<usize>, Vec<Rational>) = face
            .iter()
            .zip(coeffs)
            .filter(|(&v, c)| v / n1 + 1 == copy && c.is_positive())
            .map(|(&v, c)| (v % n1, c / lambda))
            .unzip();
        faces.push((verts, scaled));
    }
    if faces.iter().any(|(v, _)| v.is_empty()) {
        return None;
    }
    faces.sort_by_key(|(v, _)| v[0]);
    let block = k - 1 + (copy - 1) * d;
    let witness = cert.witness[block..block + d].iter().map(|x| x / lambda).collect();
    let (faces, coefficients) = faces.into_iter().unzip();
    Some(TverbergCertificate {
        faces,
        coefficients,
        witness,
    })
}

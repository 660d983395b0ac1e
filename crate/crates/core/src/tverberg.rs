//! Tverberg-type partitions of affine point configurations.
//!
//! A configuration of `N + 1` labelled points is the image of the vertices
//! of the simplex `Δ_N` under an affine map. A certificate is a family of
//! `r` pairwise disjoint vertex sets whose convex hulls share a witness
//! point, together with the convex coefficients that prove it.
//!
//! Search walks vertex-to-block assignments in restricted-growth order
//! (blocks are labelled by first appearance, so each unordered family is
//! visited once). Enlarging a face never destroys a common point, and the
//! face constraints (size cap, rainbow colouring) are closed under taking
//! subsets, so only families in which no unused vertex could be added to
//! any block are tested. Zero-coefficient vertices are trimmed from the
//! certificate that is returned.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{input, Result};
use crate::exact_linalg::{affine_dim, kernel_vector, lp_feasible, one, ratio, FeasibilitySystem, RatMatrix, Rational};
use crate::polytope::{combinations, Point};
use crate::rng::XorShift64Star;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<Point>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return input("a configuration needs at least one point");
        }
        if let Some(i) = points.iter().position(|p| p.len() != dim) {
            return input(format!("point {i} has dimension {}, expected {dim}", points[i].len()));
        }
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Every subset of at most `d + 1` points is affinely independent.
    pub fn in_general_position(&self) -> bool {
        let size = (self.dim + 1).min(self.len());
        combinations(self.len(), size).all(|s| {
            let pts: Vec<Point> = s.iter().map(|&i| self.points[i].clone()).collect();
            affine_dim(&pts).is_ok_and(|a| a + 1 == size)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TverbergCertificate {
    /// Pairwise disjoint vertex sets, sorted by smallest element.
    pub faces: Vec<Vec<usize>>,
    /// Convex coefficients aligned with `faces`.
    pub coefficients: Vec<Vec<Rational>>,
    pub witness: Point,
}

/// Restrictions on admissible faces. Both are closed under subsets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FaceConstraint {
    /// At most this many vertices per face (`k + 1` for the `k`-skeleton).
    pub max_face_size: Option<usize>,
    /// Colour of each vertex; faces may use each colour at most once.
    pub colors: Option<Vec<u32>>,
}

impl FaceConstraint {
    pub fn skeleton(k: usize) -> Self {
        Self {
            max_face_size: Some(k + 1),
            colors: None,
        }
    }

    pub fn rainbow(colors: Vec<u32>) -> Self {
        Self {
            max_face_size: None,
            colors: Some(colors),
        }
    }

    fn is_trivial(&self) -> bool {
        self.max_face_size.is_none() && self.colors.is_none()
    }

    fn admits(&self, face: &[usize], v: usize) -> bool {
        if self.max_face_size.is_some_and(|cap| face.len() >= cap) {
            return false;
        }
        match &self.colors {
            Some(colors) => face.iter().all(|&u| colors[u] != colors[v]),
            None => true,
        }
    }
}

/// Classical Tverberg partition search.
pub fn tverberg_partition(cfg: &PointConfiguration, r: usize) -> Result<Option<TverbergCertificate>> {
    constrained_partition(cfg, r, &FaceConstraint::default())
}

/// Partition search restricted to the `k`-skeleton of `Δ_N`.
pub fn skeleton_tverberg_partition(
    cfg: &PointConfiguration,
    r: usize,
    k: usize,
) -> Result<Option<TverbergCertificate>> {
    constrained_partition(cfg, r, &FaceConstraint::skeleton(k))
}

/// Partition search restricted to rainbow faces.
pub fn colored_tverberg_partition(
    cfg: &PointConfiguration,
    colors: &[u32],
    r: usize,
) -> Result<Option<TverbergCertificate>> {
    constrained_partition(cfg, r, &FaceConstraint::rainbow(colors.to_vec()))
}

pub fn constrained_partition(
    cfg: &PointConfiguration,
    r: usize,
    constraint: &FaceConstraint,
) -> Result<Option<TverbergCertificate>> {
    if r < 2 {
        return input(format!("r must be at least 2, got {r}"));
    }
    if let Some(colors) = &constraint.colors {
        if colors.len() != cfg.len() {
            return input(format!("{} colours given for {} points", colors.len(), cfg.len()));
        }
    }
    if constraint.max_face_size == Some(0) || cfg.len() < r {
        return Ok(None);
    }
    if r == 2 && constraint.is_trivial() {
        return Ok(radon_partition(cfg));
    }
    let mut search = FamilySearch::new(cfg, r, constraint);
    Ok(search.run(0))
}

/// Radon partitions come straight from an affine dependence: its positive
/// and negative supports have intersecting hulls, and affinely independent
/// points have none.
fn radon_partition(cfg: &PointConfiguration) -> Option<TverbergCertificate> {
    let columns: Vec<Vec<Rational>> = cfg
        .points
        .iter()
        .map(|p| p.iter().cloned().chain(std::iter::once(one())).collect())
        .collect();
    let dep = kernel_vector(&RatMatrix::from_columns(&columns).ok()?)?;
    let scale: Rational = dep.iter().filter(|x| x.is_positive()).sum();
    let mut pos = (Vec::new(), Vec::new());
    let mut neg = (Vec::new(), Vec::new());
    for (v, lambda) in dep.iter().enumerate() {
        if lambda.is_positive() {
            pos.0.push(v);
            pos.1.push(lambda / &scale);
        } else if lambda.is_negative() {
            neg.0.push(v);
            neg.1.push(-lambda / &scale);
        }
    }
    let witness = combine(&cfg.points, &pos.0, &pos.1, cfg.dim);
    let (first, second) = if pos.0[0] < neg.0[0] { (pos, neg) } else { (neg, pos) };
    Some(TverbergCertificate {
        faces: vec![first.0, second.0],
        coefficients: vec![first.1, second.1],
        witness,
    })
}

fn combine(points: &[Point], face: &[usize], coeffs: &[Rational], dim: usize) -> Point {
    let mut x = vec![Rational::zero(); dim];
    for (&v, c) in face.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (xi, pi) in x.iter_mut().zip(&points[v]) {
            *xi += c * pi;
        }
    }
    x
}

struct FamilySearch<'a> {
    cfg: &'a PointConfiguration,
    r: usize,
    constraint: &'a FaceConstraint,
    /// Dense per-coordinate ranks, for exact bounding-box tests without
    /// rational comparisons.
    ranks: Vec<Vec<u32>>,
    blocks: Vec<Vec<usize>>,
    unused: Vec<usize>,
}

impl<'a> FamilySearch<'a> {
    fn new(cfg: &'a PointConfiguration, r: usize, constraint: &'a FaceConstraint) -> Self {
        let n = cfg.len();
        let ranks = (0..cfg.dim)
            .map(|c| {
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| cfg.points[a][c].cmp(&cfg.points[b][c]));
                let mut rank = vec![0u32; n];
                for w in 1..n {
                    let bump = cfg.points[order[w]][c] != cfg.points[order[w - 1]][c];
                    rank[order[w]] = rank[order[w - 1]] + u32::from(bump);
                }
                rank
            })
            .collect();
        Self {
            cfg,
            r,
            constraint,
            ranks,
            blocks: Vec::with_capacity(r),
            unused: Vec::new(),
        }
    }

    fn run(&mut self, v: usize) -> Option<TverbergCertificate> {
        let n = self.cfg.len();
        if self.blocks.len() + (n - v) < self.r {
            return None;
        }
        if v == n {
            return self.leaf();
        }
        for b in 0..self.blocks.len() {
            if self.constraint.admits(&self.blocks[b], v) {
                self.blocks[b].push(v);
                let found = self.run(v + 1);
                self.blocks[b].pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        if self.blocks.len() < self.r {
            self.blocks.push(vec![v]);
            let found = self.run(v + 1);
            self.blocks.pop();
            if found.is_some() {
                return found;
            }
        }
        if !self.constraint.is_trivial() {
            self.unused.push(v);
            let found = self.run(v + 1);
            self.unused.pop();
            return found;
        }
        None
    }

    fn leaf(&self) -> Option<TverbergCertificate> {
        if self.blocks.len() != self.r {
            return None;
        }
        let maximal = self
            .unused
            .iter()
            .all(|&u| self.blocks.iter().all(|b| !self.constraint.admits(b, u)));
        if !maximal || !self.boxes_meet() {
            return None;
        }
        common_point(self.cfg, &self.blocks)
    }

    fn boxes_meet(&self) -> bool {
        self.ranks.iter().all(|rank| {
            let mut lo = 0;
            let mut hi = u32::MAX;
            for b in &self.blocks {
                let (bmin, bmax) = b
                    .iter()
                    .fold((u32::MAX, 0), |(mn, mx), &v| (mn.min(rank[v]), mx.max(rank[v])));
                lo = lo.max(bmin);
                hi = hi.min(bmax);
            }
            lo <= hi
        })
    }
}

/// One LP deciding whether the hulls of `faces` share a point.
fn common_point(cfg: &PointConfiguration, faces: &[Vec<usize>]) -> Option<TverbergCertificate> {
    let d = cfg.dim;
    let r = faces.len();
    let nvars: usize = faces.iter().map(Vec::len).sum();
    let mut a = RatMatrix::zeros(r + (r - 1) * d, nvars);
    let mut col = 0;
    for (b, face) in faces.iter().enumerate() {
        for &v in face {
            a[(b, col)] = one();
            for c in 0..d {
                let x = &cfg.points[v][c];
                if b == 0 {
                    for other in 1..r {
                        a[(r + (other - 1) * d + c, col)] = x.clone();
                    }
                } else {
                    a[(r + (b - 1) * d + c, col)] = -x.clone();
                }
            }
            col += 1;
        }
    }
    let mut rhs = vec![one(); r];
    rhs.extend(std::iter::repeat_n(Rational::zero(), (r - 1) * d));
    let sys = FeasibilitySystem::nonnegative(a, rhs).expect("consistent shapes");
    let x = lp_feasible(&sys)?;

    let mut trimmed: Vec<(Vec<usize>, Vec<Rational>)> = Vec::with_capacity(r);
    let mut offset = 0;
    for face in faces {
        let lambda = &x[offset..offset + face.len()];
        offset += face.len();
        let (verts, coeffs): (Vec<usize>, Vec<Rational>) = face
            .iter()
            .zip(lambda)
            .filter(|(_, l)| l.is_positive())
            .map(|(&v, l)| (v, l.clone()))
            .unzip();
        trimmed.push((verts, coeffs));
    }
    let witness = combine(&cfg.points, &trimmed[0].0, &trimmed[0].1, d);
    trimmed.sort_by_key(|(verts, _)| verts[0]);
    let (faces, coefficients) = trimmed.into_iter().unzip();
    Some(TverbergCertificate {
        faces,
        coefficients,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TverbergRejection {
    WrongFaceCount { expected: usize, found: usize },
    EmptyFace(usize),
    VertexOutOfRange(usize),
    FacesNotDisjoint,
    BadCoefficients(usize),
    WitnessMismatch(usize),
    FaceTooLarge(usize),
    FaceNotRainbow(usize),
    DimensionMismatch,
}

impl TverbergRejection {
    pub fn code(&self) -> &'static str {
        match self {
            Self::WrongFaceCount { .. } => "wrong face count",
            Self::EmptyFace(_) => "empty face",
            Self::VertexOutOfRange(_) => "vertex out of range",
            Self::FacesNotDisjoint => "faces not disjoint",
            Self::BadCoefficients(_) => "coefficients not convex",
            Self::WitnessMismatch(_) => "witness mismatch",
            Self::FaceTooLarge(_) => "face exceeds skeleton",
            Self::FaceNotRainbow(_) => "face not rainbow",
            Self::DimensionMismatch => "dimension mismatch",
        }
    }
}

impl fmt::Display for TverbergRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongFaceCount { expected, found } => write!(f, "{}: expected {expected}, found {found}", self.code()),
            Self::EmptyFace(i)
            | Self::VertexOutOfRange(i)
            | Self::BadCoefficients(i)
            | Self::WitnessMismatch(i)
            | Self::FaceTooLarge(i)
            | Self::FaceNotRainbow(i) => write!(f, "{} (face {i})", self.code()),
            _ => f.write_str(self.code()),
        }
    }
}

/// Exact re-check of a certificate against the configuration and the face
/// constraint; independent of the search.
pub fn verify_tverberg_certificate(
    cfg: &PointConfiguration,
    r: usize,
    cert: &TverbergCertificate,
    constraint: &FaceConstraint,
) -> std::result::Result<(), TverbergRejection> {
    if cert.faces.len() != r || cert.coefficients.len() != r {
        return Err(TverbergRejection::WrongFaceCount {
            expected: r,
            found: cert.faces.len(),
        });
    }
    if cert.witness.len() != cfg.dim {
        return Err(TverbergRejection::DimensionMismatch);
    }
    let mut seen = vec![false; cfg.len()];
    for (i, face) in cert.faces.iter().enumerate() {
        if face.is_empty() {
            return Err(TverbergRejection::EmptyFace(i));
        }
        for &v in face {
            if v >= cfg.len() {
                return Err(TverbergRejection::VertexOutOfRange(i));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(TverbergRejection::FacesNotDisjoint);
            }
        }
    }
    for (i, (face, coeffs)) in cert.faces.iter().zip(&cert.coefficients).enumerate() {
        if coeffs.len() != face.len() || coeffs.iter().any(Signed::is_negative) || coeffs.iter().sum::<Rational>() != one()
        {
            return Err(TverbergRejection::BadCoefficients(i));
        }
        if combine(&cfg.points, face, coeffs, cfg.dim) != cert.witness {
            return Err(TverbergRejection::WitnessMismatch(i));
        }
        if constraint.max_face_size.is_some_and(|cap| face.len() > cap) {
            return Err(TverbergRejection::FaceTooLarge(i));
        }
        if let Some(colors) = &constraint.colors {
            let mut used: Vec<u32> = face.iter().map(|&v| colors.get(v).copied().unwrap_or(u32::MAX)).collect();
            used.sort_unstable();
            if used.windows(2).any(|w| w[0] == w[1]) || colors.len() != cfg.len() {
                return Err(TverbergRejection::FaceNotRainbow(i));
            }
        }
    }
    Ok(())
}

/// `true` iff every family of `r` pairwise disjoint nonempty faces of `Δ_N`
/// contains a face of dimension at most `k`, i.e. iff `N + 1 < r (k + 2)`.
pub fn pigeonhole_vkf_check(n: u64, r: u64, k: u64) -> bool {
    match r.checked_mul(k + 2) {
        Some(need) => n + 1 < need,
        None => true,
    }
}

/// Exhaustive version of [`pigeonhole_vkf_check`]: searches for `r`
/// pairwise disjoint faces of `Δ_N` each with at least `k + 2` vertices.
/// Exponential; meant for `N <= 10`.
pub fn pigeonhole_vkf_exhaustive(n: u64, r: u64, k: u64) -> bool {
    fn large_family_exists(v: usize, n: usize, r: usize, need: usize, sizes: &mut Vec<usize>) -> bool {
        if v == n {
            return sizes.len() == r && sizes.iter().all(|&s| s >= need);
        }
        for b in 0..sizes.len() {
            sizes[b] += 1;
            let hit = large_family_exists(v + 1, n, r, need, sizes);
            sizes[b] -= 1;
            if hit {
                return true;
            }
        }
        if sizes.len() < r {
            sizes.push(1);
            let hit = large_family_exists(v + 1, n, r, need, sizes);
            sizes.pop();
            if hit {
                return true;
            }
        }
        large_family_exists(v + 1, n, r, need, sizes)
    }
    if r == 0 {
        // the empty family has no face of dimension <= k
        return false;
    }
    !large_family_exists(0, n as usize + 1, r as usize, k as usize + 2, &mut Vec::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialMode {
    Classical,
    Skeleton { k: usize },
    /// Vertex `i` gets colour `i mod classes`.
    Colored { classes: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialReport {
    pub trials: usize,
    pub successes: usize,
    pub failures: usize,
    /// Seeds of trials without a certificate.
    pub failing_seeds: Vec<u64>,
    /// Certificates the verifier rejected; always expected to be zero.
    pub rejected_certificates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialSpec {
    pub d: usize,
    pub r: usize,
    /// Configurations have `n + 1` points.
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: TrialMode,
    pub general_position: bool,
}

/// Coordinates are integers in `[-1000, 1000]` divided by 1000, drawn from
/// a generator seeded with `seed + trial`.
pub fn random_configuration(d: usize, n: usize, trial_seed: u64, general_position: bool) -> PointConfiguration {
    let mut rng = XorShift64Star::new(trial_seed);
    loop {
        let points: Vec<Point> = (0..=n)
            .map(|_| (0..d).map(|_| ratio(rng.next_in(-1000, 1000), 1000)).collect())
            .collect();
        let cfg = PointConfiguration::new(d, points).expect("consistent dimensions");
        if !general_position || cfg.in_general_position() {
            return cfg;
        }
    }
}

pub fn random_trial_suite(spec: &TrialSpec) -> Result<TrialReport> {
    let mut report = TrialReport {
        trials: spec.trials,
        successes: 0,
        failures: 0,
        failing_seeds: Vec::new(),
        rejected_certificates: 0,
    };
    for t in 0..spec.trials {
        let seed = spec.seed.wrapping_add(t as u64);
        let cfg = random_configuration(spec.d, spec.n, seed, spec.general_position);
        let constraint = match spec.mode {
            TrialMode::Classical => FaceConstraint::default(),
            TrialMode::Skeleton { k } => FaceConstraint::skeleton(k),
            TrialMode::Colored { classes } => {
                if classes == 0 {
                    return input("colored mode needs at least one colour class");
                }
                FaceConstraint::rainbow((0..cfg.len()).map(|i| (i % classes) as u32).collect())
            }
        };
        match constrained_partition(&cfg, spec.r, &constraint)? {
            Some(cert) => {
                if verify_tverberg_certificate(&cfg, spec.r, &cert, &constraint).is_ok() {
                    report.successes += 1;
                } else {
                    report.rejected_certificates += 1;
                    report.failures += 1;
                    report.failing_seeds.push(seed);
                }
            }
            None => {
                report.failures += 1;
                report.failing_seeds.push(seed);
            }
        }
    }
    Ok(report)
}

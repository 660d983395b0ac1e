//! V-polytopes with explicit face lattices.
//!
//! Faces are stored as sorted vertex-index sets graded by dimension. The
//! lattice is either computed from the vertices (hyperplanes through
//! affinely independent vertex subsets) or supplied and then re-verified.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{input, Error, Result};
use crate::exact_linalg::{
    affine_dim, from_f64, kernel_vector, lp_feasible, one, rank, solve_linear, to_f64, FeasibilitySystem,
    RatMatrix, Rational,
};

pub type Point = Vec<Rational>;

const MAX_VERTICES: usize = 64;

/// A face as a sorted set of indices into [`Polytope::vertices`].
/// The empty face has dimension `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: i32,
}

impl Face {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn mask(&self) -> u64 {
        to_mask(&self.vertices)
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim, &self.vertices).cmp(&(other.dim, &other.vertices))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn to_mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | (1u64 << i))
}

fn from_mask(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask & (1u64 << i) != 0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<Point>,
    /// Sorted by `(dim, vertices)`; the empty face comes first and the
    /// polytope itself last.
    faces: Vec<Face>,
    masks: Vec<u64>,
}

/// Computes the full face lattice of `conv(vertices)`.
pub fn face_lattice(vertices: Vec<Point>) -> Result<Polytope> {
    Polytope::from_vertices(vertices)
}

impl Polytope {
    pub fn from_vertices(vertices: Vec<Point>) -> Result<Self> {
        let d = check_spanning(&vertices)?;
        let n = vertices.len();
        if d == 0 {
            return Self::assemble(0, vertices, [0b1u64].into_iter().collect());
        }

        let mut facets: BTreeSet<u64> = BTreeSet::new();
        for subset in combinations(n, d) {
            let base = &vertices[subset[0]];
            let diffs: Vec<Point> = subset[1..]
                .iter()
                .map(|&i| vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let normal = if diffs.is_empty() {
                let mut e = vec![Rational::zero(); d];
                e[0] = one();
                e
            } else {
                let m = RatMatrix::from_rows(diffs)?;
                if rank(&m) < d - 1 {
                    continue;
                }
                kernel_vector(&m).expect("rank d-1 in d columns leaves a kernel")
            };
            let offset = dot(&normal, base);
            let side: Vec<Rational> = vertices.iter().map(|v| dot(&normal, v) - &offset).collect();
            let below = side.iter().all(|s| !s.is_positive());
            let above = side.iter().all(|s| !s.is_negative());
            if below || above {
                let on: Vec<usize> = (0..n).filter(|&i| side[i].is_zero()).collect();
                facets.insert(to_mask(&on));
            }
        }

        for i in 0..n {
            let carrier = facets
                .iter()
                .filter(|&&f| f & (1 << i) != 0)
                .fold(full_mask(n), |acc, f| acc & f);
            if carrier != 1 << i {
                return input(format!(
                    "input point {i} {} is not a vertex of the convex hull",
                    format_point(&vertices[i])
                ));
            }
        }

        let mut lattice: BTreeSet<u64> = facets.clone();
        lattice.insert(full_mask(n));
        let mut queue: VecDeque<u64> = lattice.iter().copied().collect();
        while let Some(face) = queue.pop_front() {
            for &facet in &facets {
                let meet = face & facet;
                if lattice.insert(meet) {
                    queue.push_back(meet);
                }
            }
        }
        lattice.insert(0);
        Self::assemble(d, vertices, lattice)
    }

    /// Builds a polytope from a supplied face list and re-verifies it: every
    /// supplied face must be cut out exactly by a supporting hyperplane, every
    /// vertex must appear as a 0-face, and the boundary must satisfy Euler's
    /// relation. The list is closed under intersection before checking.
    pub fn with_faces(vertices: Vec<Point>, faces: &[Vec<usize>]) -> Result<Self> {
        let d = check_spanning(&vertices)?;
        let n = vertices.len();
        let mut lattice: BTreeSet<u64> = BTreeSet::new();
        for face in faces {
            if let Some(&bad) = face.iter().find(|&&i| i >= n) {
                return input(format!("supplied face references vertex {bad}, only {n} vertices"));
            }
            let mask = to_mask(face);
            if mask != 0 && mask != full_mask(n) && !is_exposed(&vertices, mask)? {
                return input(format!("supplied face {face:?} is not cut out by a supporting hyperplane"));
            }
            lattice.insert(mask);
        }
        lattice.insert(0);
        lattice.insert(full_mask(n));
        let mut closed: Vec<u64> = lattice.iter().copied().collect();
        let mut i = 0;
        while i < closed.len() {
            for j in 0..i {
                let meet = closed[i] & closed[j];
                if lattice.insert(meet) {
                    closed.push(meet);
                }
            }
            i += 1;
        }
        for v in 0..n {
            if !lattice.contains(&(1 << v)) {
                return input(format!(
                    "supplied lattice has no 0-face for vertex {v} {}",
                    format_point(&vertices[v])
                ));
            }
        }
        let p = Self::assemble(d, vertices, lattice)?;
        if !p.boundary_euler_holds() {
            return input("supplied face lattice is incomplete (Euler relation fails)");
        }
        Ok(p)
    }

    fn assemble(dim: usize, vertices: Vec<Point>, lattice: BTreeSet<u64>) -> Result<Self> {
        let ambient_dim = vertices.first().map_or(0, Vec::len);
        let mut faces = Vec::with_capacity(lattice.len());
        for mask in lattice {
            let idx = from_mask(mask);
            let dim = if idx.is_empty() {
                -1
            } else {
                let pts: Vec<Point> = idx.iter().map(|&i| vertices[i].clone()).collect();
                affine_dim(&pts)? as i32
            };
            faces.push(Face { vertices: idx, dim });
        }
        faces.sort();
        let masks = faces.iter().map(Face::mask).collect();
        Ok(Self {
            ambient_dim,
            dim,
            vertices,
            faces,
            masks,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn face_id(&self, vertices: &[usize]) -> Option<usize> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        self.faces.iter().position(|f| f.vertices == sorted)
    }

    /// The polytope itself as a face.
    pub fn top_face(&self) -> &Face {
        self.faces.last().expect("lattice contains the polytope")
    }

    /// Face counts `f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim + 1];
        for face in &self.faces {
            if face.dim >= 0 {
                f[face.dim as usize] += 1;
            }
        }
        f
    }

    fn boundary_euler_holds(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        let f = self.f_vector();
        let chi: i64 = f[..self.dim]
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        chi == 1 + if self.dim % 2 == 1 { 1 } else { -1 }
    }

    /// All nonempty faces of dimension at most `k`, sorted by `(dim, vertices)`.
    pub fn skeleton(&self, k: usize) -> Result<Vec<&Face>> {
        if k > self.dim {
            return input(format!("skeleton dimension {k} exceeds polytope dimension {}", self.dim));
        }
        Ok(self.faces.iter().filter(|f| f.dim >= 0 && f.dim as usize <= k).collect())
    }

    /// Face ids of exactly dimension `k`.
    pub(crate) fn faces_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].dim == k as i32).collect()
    }

    /// Convex coefficients (aligned with `face.vertices`) expressing `x`, or
    /// `None` when `x` is not in the face.
    pub fn face_contains(&self, face: &Face, x: &[Rational]) -> Option<Vec<Rational>> {
        if x.len() != self.ambient_dim || face.is_empty() {
            return None;
        }
        convex_coefficients(face.vertices.iter().map(|&i| &self.vertices[i]), x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.face_contains(self.top_face(), x).is_some()
    }

    /// The unique face containing `x` in its relative interior.
    pub fn minimal_face(&self, x: &[Rational]) -> Result<&Face> {
        let coeffs = self
            .face_contains(self.top_face(), x)
            .ok_or_else(|| Error::Input(format!("point {} is not in the polytope", format_point(x))))?;
        let support: Vec<usize> = self
            .top_face()
            .vertices
            .iter()
            .zip(&coeffs)
            .filter(|(_, c)| c.is_positive())
            .map(|(&v, _)| v)
            .collect();
        Ok(self.smallest_face_containing(&support))
    }

    /// Smallest face whose vertex set contains every index in `support`.
    /// A point with strictly positive coefficients on `support` lies in the
    /// relative interior of this face.
    pub fn smallest_face_containing(&self, support: &[usize]) -> &Face {
        let mask = to_mask(support);
        let id = (0..self.faces.len())
            .filter(|&i| self.masks[i] & mask == mask)
            .min_by_key(|&i| (self.faces[i].dim, i))
            .expect("the polytope itself contains every vertex");
        &self.faces[id]
    }

    /// The face as a standalone polytope; its lattice is the interval below
    /// the face. Also returns the map from new vertex indices to old ones.
    pub fn sub_polytope(&self, face: &Face) -> Result<(Polytope, Vec<usize>)> {
        if face.is_empty() {
            return input("the empty face is not a polytope");
        }
        let outer = face.mask();
        let keep = &face.vertices;
        let mut local = [usize::MAX; MAX_VERTICES];
        for (new, &old) in keep.iter().enumerate() {
            local[old] = new;
        }
        let lattice: BTreeSet<u64> = self
            .masks
            .iter()
            .filter(|&&m| m & outer == m)
            .map(|&m| from_mask(m).iter().fold(0u64, |acc, &old| acc | (1 << local[old])))
            .collect();
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let sub = Self::assemble(face.dim as usize, vertices, lattice)?;
        Ok((sub, keep.clone()))
    }

    /// Squared Euclidean distance from `x` to the `k`-skeleton, exactly.
    ///
    /// For each face of dimension at most `k` the point is projected onto the
    /// face's affine hull; the projection counts only if it lies in the face.
    /// A nearest skeleton point lies in the relative interior of some face
    /// where it is exactly that projection, so the minimum over counted
    /// projections is the distance.
    pub fn skeleton_distance_sq(&self, k: usize, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.ambient_dim {
            return input(format!("point has dimension {}, expected {}", x.len(), self.ambient_dim));
        }
        let mut best: Option<Rational> = None;
        for face in self.skeleton(k)? {
            let pts: Vec<&Point> = face.vertices.iter().map(|&i| &self.vertices[i]).collect();
            let proj = project_to_affine_hull(&pts, x)?;
            if face.dim > 0 && convex_coefficients(pts.iter().copied(), &proj).is_none() {
                continue;
            }
            let dist = squared_norm_diff(x, &proj);
            if best.as_ref().is_none_or(|b| dist < *b) {
                best = Some(dist);
            }
        }
        best.ok_or_else(|| Error::Input("empty skeleton".into()))
    }

    /// Euclidean distance from a float point to the `k`-skeleton. The input
    /// is converted exactly; only the final square root is inexact.
    pub fn dist_to_skeleton(&self, k: usize, x: &[f64]) -> Result<f64> {
        let exact: Vec<Rational> = x.iter().map(|&v| from_f64(v)).collect::<Result<_>>()?;
        Ok(to_f64(&self.skeleton_distance_sq(k, &exact)?).sqrt())
    }
}

fn check_spanning(vertices: &[Point]) -> Result<usize> {
    let Some(first) = vertices.first() else {
        return input("polytope needs at least one vertex");
    };
    let d = first.len();
    if vertices.iter().any(|v| v.len() != d) {
        return input("vertices have different dimensions");
    }
    if vertices.len() > MAX_VERTICES {
        return input(format!("at most {MAX_VERTICES} vertices are supported"));
    }
    if d == 0 {
        if vertices.len() != 1 {
            return input("0-dimensional polytope must have exactly one vertex");
        }
        return Ok(0);
    }
    if vertices.len() < d + 1 || affine_dim(vertices)? < d {
        return input(format!("vertices do not affinely span R^{d} (degenerate input)"));
    }
    Ok(d)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Exact exposedness test: is there `(a, b)` with `a.v = b` on the face and
/// `a.v <= b - 1` off it?
fn is_exposed(vertices: &[Point], mask: u64) -> Result<bool> {
    let d = vertices[0].len();
    let n = vertices.len();
    let off: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
    // variables: a (d, free), b (free), slack per off-face vertex (>= 0)
    let cols = d + 1 + off.len();
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for (i, v) in vertices.iter().enumerate() {
        let mut row = vec![Rational::zero(); cols];
        row[..d].clone_from_slice(v);
        row[d] = -one();
        if let Some(s) = off.iter().position(|&j| j == i) {
            row[d + 1 + s] = one();
            rhs.push(-one());
        } else {
            rhs.push(Rational::zero());
        }
        rows.push(row);
    }
    let sys = FeasibilitySystem::new(RatMatrix::from_rows(rows)?, rhs, d + 1..cols)?;
    Ok(lp_feasible(&sys).is_some())
}

pub(crate) fn convex_coefficients<'a>(
    points: impl Iterator<Item = &'a Point> + Clone,
    x: &[Rational],
) -> Option<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = points
        .map(|p| p.iter().cloned().chain(std::iter::once(one())).collect())
        .collect();
    if cols.is_empty() {
        return None;
    }
    let a = RatMatrix::from_columns(&cols).ok()?;
    let mut b = x.to_vec();
    b.push(one());
    let sys = FeasibilitySystem::nonnegative(a, b).ok()?;
    lp_feasible(&sys)
}

fn project_to_affine_hull(points: &[&Point], x: &[Rational]) -> Result<Point> {
    let base = points[0];
    let diffs: Vec<Point> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    // keep an independent subset of directions
    let mut basis: Vec<Point> = Vec::new();
    for dvec in diffs {
        let mut trial = basis.clone();
        trial.push(dvec.clone());
        if rank(&RatMatrix::from_rows(trial)?) > basis.len() {
            basis.push(dvec);
        }
    }
    if basis.is_empty() {
        return Ok(base.clone());
    }
    let rel: Point = x.iter().zip(base).map(|(a, b)| a - b).collect();
    let gram: Vec<Vec<Rational>> = basis
        .iter()
        .map(|u| basis.iter().map(|v| dot(u, v)).collect())
        .collect();
    let rhs: Vec<Rational> = basis.iter().map(|u| dot(u, &rel)).collect();
    let c = solve_linear(&RatMatrix::from_rows(gram)?, &rhs)?
        .ok_or_else(|| Error::Inconsistency("singular Gram matrix of independent directions".into()))?;
    let mut y = base.clone();
    for (coef, dir) in c.iter().zip(&basis) {
        for (yi, di) in y.iter_mut().zip(dir) {
            *yi += coef * di;
        }
    }
    Ok(y)
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn squared_norm_diff(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            &d * &d
        })
        .sum()
}

pub(crate) fn format_point(x: &[Rational]) -> String {
    let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - k + i {
                    c[i] += 1;
                    for j in i + 1..k {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        current = next;
        Some(out)
    })
}

/// Small named polytopes used by tests, examples and the CLI.
pub mod shapes {
    use super::{Point, Polytope};
    use crate::exact_linalg::int;

    fn pts(coords: &[&[i64]]) -> Vec<Point> {
        coords.iter().map(|c| c.iter().map(|&v| int(v)).collect()).collect()
    }

    /// `[0, 1]`.
    pub fn segment() -> Polytope {
        Polytope::from_vertices(pts(&[&[0], &[1]])).expect("valid polytope")
    }

    pub fn triangle() -> Polytope {
        Polytope::from_vertices(pts(&[&[0, 0], &[1, 0], &[0, 1]])).expect("valid polytope")
    }

    /// `[-1, 1]^2`, vertices in counter-clockwise order from `(-1,-1)`.
    pub fn square() -> Polytope {
        Polytope::from_vertices(pts(&[&[-1, -1], &[1, -1], &[1, 1], &[-1, 1]])).expect("valid polytope")
    }

    /// `[-1, 1]^d`.
    pub fn cube(d: usize) -> Polytope {
        let verts = (0..1usize << d)
            .map(|m| (0..d).map(|i| int(if m >> i & 1 == 1 { 1 } else { -1 })).collect())
            .collect();
        Polytope::from_vertices(verts).expect("valid polytope")
    }

    /// Cross-polytope `conv(±e_i)` in `R^3`.
    pub fn octahedron() -> Polytope {
        Polytope::from_vertices(pts(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]))
        .expect("valid polytope")
    }

    /// Triangle `conv(0, e1, e2)` times `[0, 1]`.
    pub fn prism() -> Polytope {
        Polytope::from_vertices(pts(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 0, 1],
            &[0, 1, 1],
        ]))
        .expect("valid polytope")
    }

    /// `conv(e_0, ..., e_n)` in `R^n` shifted so that vertex 0 is the origin
    /// (full-dimensional model of the n-simplex).
    pub fn simplex(n: usize) -> Polytope {
        let mut verts = vec![vec![int(0); n]];
        for i in 0..n {
            let mut v = vec![int(0); n];
            v[i] = int(1);
            verts.push(v);
        }
        Polytope::from_vertices(verts).expect("valid polytope")
    }
}

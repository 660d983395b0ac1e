//! Pairwise deleted products of simplicial complexes and their integer
//! homology.
//!
//! A cell is an ordered tuple `(σ_1, …, σ_r)` of nonempty, pairwise
//! disjoint faces, stored as vertex bitmasks. Simplices are oriented by
//! ascending vertex order and product cells by the graded Leibniz rule,
//! so boundary matrices are reproducible. Homology comes from the Smith
//! normal form over arbitrary-precision integers.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};
use crate::polytope::combinations;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
    masks: Vec<u64>,
}

impl SimplicialComplex {
    /// Facets must be nonempty, pairwise inclusion-incomparable sets of
    /// vertices below `vertex_count` (at most 64).
    pub fn new(vertex_count: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        if vertex_count > 64 {
            return input(format!("at most 64 vertices supported, got {vertex_count}"));
        }
        let mut masks = Vec::with_capacity(facets.len());
        let mut sorted = Vec::with_capacity(facets.len());
        for mut facet in facets {
            if facet.is_empty() {
                return input("facets must be nonempty");
            }
            let mut mask = 0u64;
            for &v in &facet {
                if v >= vertex_count {
                    return input(format!("vertex {v} out of range for {vertex_count} vertices"));
                }
                if mask & (1 << v) != 0 {
                    return input(format!("vertex {v} repeated in a facet"));
                }
                mask |= 1 << v;
            }
            facet.sort_unstable();
            masks.push(mask);
            sorted.push(facet);
        }
        for (i, &a) in masks.iter().enumerate() {
            for (j, &b) in masks.iter().enumerate() {
                if i != j && a & b == a {
                    return input(format!("facet {i} is contained in facet {j}"));
                }
            }
        }
        Ok(Self {
            vertex_count,
            facets: sorted,
            masks,
        })
    }

    /// The full simplex `Δ_n` on `n + 1` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::simplex_skeleton(n, n)
    }

    /// The `m`-skeleton `Δ_n^{(m)}`.
    pub fn simplex_skeleton(n: usize, m: usize) -> Self {
        let size = (m + 1).min(n + 1);
        Self::new(n + 1, combinations(n + 1, size).collect()).expect("skeleton facets are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        let mut mask = 0u64;
        for &v in face {
            if v >= self.vertex_count {
                return false;
            }
            mask |= 1 << v;
        }
        self.masks.iter().any(|&m| m & mask == mask)
    }

    /// Every nonempty face, as a bitmask, in increasing order.
    pub fn face_masks(&self) -> Vec<u64> {
        let mut faces = BTreeSet::new();
        for &facet in &self.masks {
            let mut sub = facet;
            while sub != 0 {
                faces.insert(sub);
                sub = (sub - 1) & facet;
            }
        }
        faces.into_iter().collect()
    }

    pub fn dim(&self) -> i32 {
        self.facets.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1)
    }
}

pub type Cell = Vec<u64>;

#[derive(Debug, Clone)]
pub struct CellComplex {
    r: usize,
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<Cell, usize>>,
}

fn mask_dim(mask: u64) -> usize {
    mask.count_ones() as usize - 1
}

pub fn deleted_product(k: &SimplicialComplex, r: usize) -> Result<CellComplex> {
    if r < 2 {
        return input(format!("deleted products need r >= 2, got {r}"));
    }
    fn extend(faces: &[u64], r: usize, used: u64, tuple: &mut Cell, out: &mut Vec<Cell>) {
        if tuple.len() == r {
            out.push(tuple.clone());
            return;
        }
        for &f in faces {
            if f & used == 0 {
                tuple.push(f);
                extend(faces, r, used | f, tuple, out);
                tuple.pop();
            }
        }
    }
    let faces = k.face_masks();
    let mut all = Vec::new();
    extend(&faces, r, 0, &mut Vec::with_capacity(r), &mut all);

    let mut cells: Vec<Vec<Cell>> = Vec::new();
    for cell in all {
        let dim: usize = cell.iter().map(|&f| mask_dim(f)).sum();
        if cells.len() <= dim {
            cells.resize(dim + 1, Vec::new());
        }
        cells[dim].push(cell);
    }
    for graded in &mut cells {
        graded.sort();
    }
    let index = cells
        .iter()
        .map(|graded| graded.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
        .collect();
    Ok(CellComplex { r, cells, index })
}

impl CellComplex {
    pub fn r(&self) -> usize {
        self.r
    }

    /// Cells of dimension `dim`, sorted.
    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, c)| if d % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }

    /// Signed boundary of one cell as `(row index in dim - 1, sign)` pairs.
    pub fn cell_boundary(&self, dim: usize, cell: &Cell) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        if dim == 0 {
            return out;
        }
        let mut shift = 0usize;
        for (i, &sigma) in cell.iter().enumerate() {
            let sigma_dim = mask_dim(sigma);
            if sigma_dim > 0 {
                let mut rest = sigma;
                let mut t = 0usize;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest ^= bit;
                    let mut face = cell.clone();
                    face[i] = sigma ^ bit;
                    let sign = if (shift + t).is_multiple_of(2) { 1 } else { -1 };
                    out.push((self.index[dim - 1][&face], sign));
                    t += 1;
                }
            }
            shift += sigma_dim;
        }
        out
    }

    /// Dense boundary matrix `∂_dim` with rows indexed by `(dim - 1)`-cells.
    pub fn boundary_matrix(&self, dim: usize) -> Vec<Vec<i64>> {
        let rows = if dim == 0 { 0 } else { self.cells(dim - 1).len() };
        let cols = self.cells(dim);
        let mut m = vec![vec![0i64; cols.len()]; rows];
        for (j, cell) in cols.iter().enumerate() {
            for (i, s) in self.cell_boundary(dim, cell) {
                m[i][j] += s;
            }
        }
        m
    }

    /// `true` iff every composite `∂_{n-1} ∘ ∂_n` vanishes.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.cells.len()).all(|n| {
            let a = self.boundary_matrix(n - 1);
            let b = self.boundary_matrix(n);
            let inner = self.cells(n - 1).len();
            a.iter().all(|row| {
                (0..self.cells(n).len()).all(|j| (0..inner).map(|t| row[t] * b[t][j]).sum::<i64>() == 0)
            })
        })
    }
}

/// Largest cell dimension, `-1` for the empty complex.
pub fn complex_dim(c: &CellComplex) -> i32 {
    c.cells.len() as i32 - 1
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_invariants(matrix: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
            else {
                return finish_invariants(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let sub = &q * &a[i][t];
                    a[i][j] -= sub;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
        }
        diag.push(a[t][t].abs());
    }
    finish_invariants(diag)
}

/// Turns a nonzero diagonal into invariant factors by gcd/lcm exchanges.
fn finish_invariants(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

/// Cellular homology `H_0, …, H_dim` over the integers.
pub fn homology(c: &CellComplex) -> Vec<HomologyGroup> {
    let top = c.cells.len();
    let invariants: Vec<Vec<BigInt>> = (0..=top)
        .map(|n| if n == 0 || n >= top { Vec::new() } else { smith_invariants(&c.boundary_matrix(n)) })
        .collect();
    (0..top)
        .map(|n| {
            let cycles = c.cells(n).len() - invariants[n].len();
            let boundaries = &invariants[n + 1];
            HomologyGroup {
                betti: cycles - boundaries.len(),
                torsion: boundaries.iter().filter(|x| !x.is_one()).cloned().collect(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub is_free: bool,
    pub orbit_counts: Vec<usize>,
}

/// Diagnostics for `Sym_r` permuting tuple components. A permutation fixes
/// a cell exactly when it only moves equal components, so the action is
/// free iff no cell repeats a component. Orbits are counted by sorting
/// each tuple.
pub fn sym_action_check(c: &CellComplex) -> SymmetryReport {
    let mut is_free = true;
    let orbit_counts = c
        .cells
        .iter()
        .map(|graded| {
            let mut orbits = BTreeSet::new();
            for cell in graded {
                let mut key = cell.clone();
                key.sort_unstable();
                is_free &= key.windows(2).all(|w| w[0] != w[1]);
                orbits.insert(key);
            }
            orbits.len()
        })
        .collect();
    SymmetryReport { is_free, orbit_counts }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bettis(c: &CellComplex) -> Vec<usize> {
        homology(c).iter().map(|h| h.betti).collect()
    }

    #[test]
    fn rejects_bad_complexes() {
        assert!(SimplicialComplex::new(3, vec![vec![0, 1], vec![0]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![0, 2]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![]]).is_err());
        assert!(deleted_product(&SimplicialComplex::simplex(1), 1).is_err());
    }

    #[test]
    fn edge_square_is_two_points() {
        let c = deleted_product(&SimplicialComplex::simplex(1), 2).unwrap();
        assert_eq!(c.f_vector(), vec![2]);
        assert_eq!(c.cells(0), &[vec![1, 2], vec![2, 1]]);
        assert_eq!(complex_dim(&c), 0);
        assert_eq!(bettis(&c), vec![2]);
        assert_eq!(sym_action_check(&c).orbit_counts, vec![1]);
    }

    #[test]
    fn triangle_square_is_hexagon() {
        let c = deleted_product(&SimplicialComplex::simplex(2), 2).unwrap();
        assert_eq!(c.f_vector(), vec![6, 6]);
        assert_eq!(complex_dim(&c), 1);
        assert_eq!(bettis(&c), vec![1, 1]);
        let sym = sym_action_check(&c);
        assert!(sym.is_free);
        assert_eq!(sym.orbit_counts, vec![3, 3]);
    }

    #[test]
    fn tetrahedron_square_is_sphere() {
        let c = deleted_product(&SimplicialComplex::simplex(3), 2).unwrap();
        assert_eq!(c.f_vector(), vec![12, 24, 14]);
        assert!(c.boundary_squares_to_zero());
        assert_eq!(bettis(&c), vec![1, 0, 1]);
        assert!(homology(&c).iter().all(|h| h.torsion.is_empty()));
    }

    #[test]
    fn complete_graph_square() {
        let k5 = SimplicialComplex::simplex_skeleton(4, 1);
        let c = deleted_product(&k5, 2).unwrap();
        assert_eq!(complex_dim(&c), 2);
    }

    #[test]
    fn smith_form_finds_torsion() {
        assert_eq!(smith_invariants(&[vec![2, 4], vec![6, 8]]), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![BigInt::from(1), BigInt::from(6)]);
        assert!(smith_invariants(&[vec![0, 0]]).is_empty());
        assert!(smith_invariants(&[]).is_empty());
    }

    #[test]
    fn leibniz_signs() {
        let c = deleted_product(&SimplicialComplex::simplex(3), 2).unwrap();
        // ∂({0,1} × {2,3}) = {1}×{2,3} − {0}×{2,3} − {0,1}×{3} + {0,1}×{2}
        let cell = vec![0b0011, 0b1100];
        let mut terms: Vec<(Cell, i64)> = c
            .cell_boundary(2, &cell)
            .into_iter()
            .map(|(i, s)| (c.cells(1)[i].clone(), s))
            .collect();
        terms.sort();
        let mut expected = vec![
            (vec![0b0010, 0b1100], 1),
            (vec![0b0001, 0b1100], -1),
            (vec![0b0011, 0b1000], -1),
            (vec![0b0011, 0b0100], 1),
        ];
        expected.sort();
        assert_eq!(terms, expected);
    }
}

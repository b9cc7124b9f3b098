//! Subspaces of ℚ(i)ⁿ stored by their reduced echelon basis.

use std::fmt;

use super::matrix::{combine, is_zero_vec, unit_vector, vec_conj, Echelon, Matrix, Vector};
use super::scalar::Scalar;
use crate::error::{HodgeError, Result};

/// A subspace with canonical basis: two equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(|k| unit_vector(ambient, k)).collect() }
    }

    /// Span of arbitrary vectors, reduced to canonical form.
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length must match ambient dimension");
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let Echelon { reduced, pivots } = Matrix::from_rows(vectors.to_vec()).echelon();
        Subspace { ambient, basis: (0..pivots.len()).map(|i| reduced.row(i)).collect() }
    }

    /// Span of the coordinate vectors `e_k` for the listed indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        Subspace::span(ambient, &indices.iter().map(|&k| unit_vector(ambient, k)).collect::<Vec<_>>())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(HodgeError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, &vs))
    }

    /// Linear functionals (as row vectors) vanishing exactly on `self`.
    pub fn annihilator(&self) -> Vec<Vector> {
        if self.basis.is_empty() {
            return (0..self.ambient).map(|k| unit_vector(self.ambient, k)).collect();
        }
        Matrix::from_rows(self.basis.clone()).kernel_basis()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let ann = other.annihilator();
        if ann.is_empty() {
            return Ok(self.clone());
        }
        // x = Σ c_k a_k with ann·x = 0.
        let a = self.basis_matrix();
        let constraint = &Matrix::from_rows(ann) * &a;
        let coeffs = constraint.kernel_basis();
        let vs: Vec<Vector> = coeffs.iter().map(|c| a.mul_vec(c)).collect();
        Ok(Subspace::span(self.ambient, &vs))
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        if is_zero_vec(v) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        // Reduce against the echelon basis.
        let mut r = v.to_vec();
        for b in &self.basis {
            let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
            if !r[p].is_zero() {
                let c = r[p].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &(&c * y);
                    }
                }
            }
        }
        is_zero_vec(&r)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn conj(&self) -> Subspace {
        Subspace::span(self.ambient, &self.basis.iter().map(|v| vec_conj(v)).collect::<Vec<_>>())
    }

    /// True iff the subspace is stable under conjugation (defined over ℝ).
    pub fn is_real(&self) -> bool {
        self.basis.iter().all(|v| v.iter().all(Scalar::is_real))
    }

    /// Image under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map domain");
        Subspace::span(m.rows(), &self.basis.iter().map(|v| m.mul_vec(v)).collect::<Vec<_>>())
    }

    /// `m·self ⊆ target`.
    pub fn maps_into(&self, m: &Matrix, target: &Subspace) -> bool {
        self.basis.iter().all(|v| target.contains_vector(&m.mul_vec(v)))
    }

    /// Preimage `{v : m·v ∈ self}`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "map codomain");
        let ann = self.annihilator();
        if ann.is_empty() {
            return Subspace::full(m.cols());
        }
        let c = &Matrix::from_rows(ann) * m;
        kernel(&c)
    }

    /// Deterministic complement of `self` inside `sup` (`self ⊆ sup`),
    /// chosen greedily from the echelon basis of `sup`.
    pub fn complement_in(&self, sup: &Subspace) -> Vec<Vector> {
        debug_assert!(sup.contains(self));
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in &sup.basis {
            if acc.dim() == sup.dim() {
                break;
            }
            if !acc.contains_vector(v) {
                out.push(v.clone());
                acc = Subspace::span(self.ambient, &[acc.basis.clone(), vec![v.clone()]].concat());
            }
        }
        out
    }

    /// Coordinates of `v ∈ self` in the canonical basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        self.basis_matrix().solve(v)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (k, v) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", v)?;
        }
        write!(f, "}} ⊆ ℚ(i)^{}", self.ambient)
    }
}

/// `{v : m·v = 0}` in canonical form.
pub fn kernel(m: &Matrix) -> Subspace {
    Subspace::span(m.cols(), &m.kernel_basis())
}

/// Column span of `m` in canonical form.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::span(m.rows(), &m.column_vectors())
}

/// Direct-sum test: dimensions add up.
pub fn is_direct_sum(parts: &[&Subspace]) -> bool {
    let Some(first) = parts.first() else { return true };
    let n = first.ambient_dim();
    let total: usize = parts.iter().map(|p| p.dim()).sum();
    let all: Vec<Vector> = parts.iter().flat_map(|p| p.basis().iter().cloned()).collect();
    Subspace::span(n, &all).dim() == total
}

/// Sum of many subspaces of the same ambient space.
pub fn sum_all(ambient: usize, parts: &[&Subspace]) -> Subspace {
    let all: Vec<Vector> = parts.iter().flat_map(|p| p.basis().iter().cloned()).collect();
    Subspace::span(ambient, &all)
}

/// Coordinates of `v` relative to a list of independent vectors.
pub fn solve_in_basis(dim: usize, basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
    Matrix::from_columns(dim, basis).solve(v)
}

/// Vector from coordinates relative to a basis.
pub fn from_coordinates(dim: usize, basis: &[Vector], coords: &[Scalar]) -> Vector {
    combine(dim, coords, basis)
}

//! Integer matrices, Smith normal form and lattices inside ℚⁿ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Matrix, Vector};
use super::scalar::Scalar;
use super::subspace::Subspace;
use crate::error::{HodgeError, Result};

pub type IntMat = Vec<Vec<BigInt>>;

/// Smith decomposition `D = U·M·V` with `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl Smith {
    /// Nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

pub fn int_identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn int_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn int_mul_vec(a: &IntMat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|row| row.iter().zip(v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)).collect()
}

/// Integer entries of a matrix, or an error naming the first bad entry.
pub fn to_int_mat(m: &Matrix) -> Result<IntMat> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m[(i, j)].to_integer().ok_or_else(|| HodgeError::NotIntegral(format!("entry ({i},{j}) = {}", m[(i, j)]))))
                .collect()
        })
        .collect()
}

pub fn from_int_mat(rows: usize, cols: usize, m: &IntMat) -> Matrix {
    let mut out = Matrix::zeros(rows, cols);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[(i, j)] = Scalar::from(x.clone());
        }
    }
    out
}

/// Smith normal form of an integer matrix. The diagonal is nonnegative and
/// each entry divides the next.
pub fn smith(m: &IntMat, cols: usize) -> Smith {
    let rows = m.len();
    let mut a = m.clone();
    let mut u = int_identity(rows);
    let mut v = int_identity(cols);
    let swap_cols = |x: &mut IntMat, i: usize, j: usize| {
        for row in x.iter_mut() {
            row.swap(i, j);
        }
    };
    // row_i -= q·row_t
    let row_op = |x: &mut IntMat, i: usize, t: usize, q: &BigInt| {
        let src = x[t].clone();
        for (e, s) in x[i].iter_mut().zip(src) {
            *e -= q * s;
        }
    };
    let col_op = |x: &mut IntMat, j: usize, t: usize, q: &BigInt| {
        for row in x.iter_mut() {
            let s = row[t].clone();
            row[j] -= q * s;
        }
    };

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_op(&mut a, i, t, &q);
                    row_op(&mut u, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_op(&mut a, j, t, &q);
                    col_op(&mut v, j, t, &q);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let m1 = -BigInt::one();
                    row_op(&mut a, t, i, &m1);
                    row_op(&mut u, t, i, &m1);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    finish(a, u, v)
}

fn finish(mut a: IntMat, mut u: IntMat, v: IntMat) -> Smith {
    for t in 0..a.len().min(a.first().map_or(0, Vec::len)) {
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    Smith { u, d: a, v }
}

/// Matrix-level Smith normal form: returns `(U, D, V)` with `D = U·m·V`.
pub fn smith_normal_form(m: &Matrix) -> Result<(Matrix, Matrix, Matrix)> {
    let a = to_int_mat(m)?;
    let s = smith(&a, m.cols());
    Ok((
        from_int_mat(m.rows(), m.rows(), &s.u),
        from_int_mat(m.rows(), m.cols(), &s.d),
        from_int_mat(m.cols(), m.cols(), &s.v),
    ))
}

/// Integer determinant by fraction-free elimination (Bareiss).
pub fn int_det(m: &IntMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// A basis of the integer solutions of `c·x = 0` for a rational matrix `c`.
pub fn integer_kernel(c: &Matrix) -> Vec<Vec<BigInt>> {
    let cols = c.cols();
    if c.rows() == 0 {
        return int_identity(cols);
    }
    let a = clear_denominators(c);
    let s = smith(&a, cols);
    let r = s.rank();
    (r..cols).map(|j| s.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Scales each row of a rational (real) matrix to integer entries.
fn clear_denominators(c: &Matrix) -> IntMat {
    (0..c.rows())
        .map(|i| {
            let row = c.row(i);
            assert!(row.iter().all(Scalar::is_real), "integer kernel needs a real matrix");
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.re.denom()));
            row.iter().map(|x| (&x.re * num_rational::BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Solution of `A·x = b` in integers, if one exists.
pub fn solve_integer(a: &IntMat, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith(a, cols);
    let ub = int_mul_vec(&s.u, b);
    let diag = s.diagonal();
    let mut y = vec![BigInt::zero(); cols];
    for (i, x) in ub.iter().enumerate() {
        if i < diag.len() {
            if !x.is_multiple_of(&diag[i]) {
                return None;
            }
            y[i] = x / &diag[i];
        } else if !x.is_zero() {
            return None;
        }
    }
    Some(int_mul_vec(&s.v, &y))
}

/// A full-rank lattice `⊕ ℤ·b_k` in ℚⁿ, given by its basis columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    basis: Matrix,
}

impl IntegerLattice {
    pub fn new(basis: Matrix) -> Result<Self> {
        if !basis.is_real() {
            return Err(HodgeError::Precondition("lattice basis must be rational".into()));
        }
        if basis.rank() != basis.cols() {
            return Err(HodgeError::Precondition("lattice basis vectors are dependent".into()));
        }
        Ok(IntegerLattice { basis })
    }

    /// ℤⁿ with the standard basis.
    pub fn standard(n: usize) -> Self {
        IntegerLattice { basis: Matrix::identity(n) }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn span(&self) -> Subspace {
        Subspace::span(self.basis.rows(), &self.basis.column_vectors())
    }

    /// Coordinates of `v` with respect to the lattice basis (rational).
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        self.basis.solve(v)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(Scalar::is_integral))
    }

    /// Matrix of an endomorphism in lattice coordinates; it must be integral.
    pub fn operator_coordinates(&self, m: &Matrix) -> Result<IntMat> {
        let image = m * &self.basis;
        let cols: Vec<Vector> = image
            .column_vectors()
            .iter()
            .map(|c| self.coordinates(c).ok_or_else(|| HodgeError::LatticeNotPreserved("image leaves the lattice span".into())))
            .collect::<Result<_>>()?;
        let a = Matrix::from_columns(self.rank(), &cols);
        to_int_mat(&a).map_err(|e| HodgeError::LatticeNotPreserved(e.to_string()))
    }

    /// The sublattice of points lying in a subspace (e.g. `H_ℤ = V_ℤ ∩ W₋₁`).
    pub fn intersect_subspace(&self, s: &Subspace) -> IntegerLattice {
        let ann = s.annihilator();
        let gens: Vec<Vector> = if ann.is_empty() {
            self.basis.column_vectors()
        } else {
            let c = &Matrix::from_rows(ann) * &self.basis;
            integer_kernel(&c)
                .iter()
                .map(|k| self.basis.mul_vec(&k.iter().map(|x| Scalar::from(x.clone())).collect::<Vec<_>>()))
                .collect()
        };
        IntegerLattice { basis: Matrix::from_columns(self.ambient_dim(), &gens) }
    }

    /// Restriction of the ambient coordinate `v` to integer lattice coordinates.
    pub fn integer_coordinates(&self, v: &[Scalar]) -> Option<Vec<BigInt>> {
        self.coordinates(v)?.iter().map(Scalar::to_integer).collect()
    }

    pub fn vector(&self, coords: &[BigInt]) -> Vector {
        self.basis.mul_vec(&coords.iter().map(|x| Scalar::from(x.clone())).collect::<Vec<_>>())
    }
}

/// The finite group `(L_ℤ ∩ A·L_ℚ) / A·L_ℤ` for an integral endomorphism
/// `A` given in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelTorsion {
    smith: Smith,
    factors: Vec<BigInt>,
    offset: usize,
}

impl CokernelTorsion {
    pub fn new(a: &IntMat, rank: usize) -> Self {
        let smith = smith(a, rank);
        let diag = smith.diagonal();
        let offset = diag.iter().take_while(|d| d.is_one()).count();
        let factors = diag[offset..].to_vec();
        CokernelTorsion { smith, factors, offset }
    }

    /// Invariant factors `> 1`; empty for the trivial group.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Class of `x ∈ L_ℤ ∩ A·L_ℚ` in invariant-factor coordinates.
    pub fn class_of(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = int_mul_vec(&self.smith.u, x);
        let r = self.smith.rank();
        if y[r..].iter().any(|c| !c.is_zero()) {
            return Err(HodgeError::Precondition("vector is not in the saturated image".into()));
        }
        Ok(self.factors.iter().enumerate().map(|(k, d)| y[self.offset + k].mod_floor(d)).collect())
    }
}

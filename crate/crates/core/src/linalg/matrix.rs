//! Dense matrices over ℚ(i). Matrices act on column vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::scalar::Scalar;
use crate::error::{HodgeError, Result};

pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, c: &Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `dim`).
    pub fn from_columns(dim: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zeros(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect())
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn diag_ints(entries: &[i64]) -> Self {
        Matrix::diag(&entries.iter().map(|&x| Scalar::from(x)).collect::<Vec<_>>())
    }

    /// The rank-one operator sending basis vector `from` to basis vector `to`.
    pub fn unit(n: usize, to: usize, from: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m[(to, from)] = Scalar::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Scalar::is_integral)
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// Real and imaginary parts, entrywise.
    pub fn real_part(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| Scalar::real(x.re.clone())).collect() }
    }

    pub fn imag_part(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| Scalar::real(x.im.clone())).collect() }
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The commutator `[a, b] = ab − ba`.
    pub fn bracket(a: &Matrix, b: &Matrix) -> Matrix {
        &(a * b) - &(b * a)
    }

    /// Conjugation `g·x·g⁻¹` given both `g` and `g⁻¹`.
    pub fn conjugate_by(&self, g: &Matrix, g_inv: &Matrix) -> Matrix {
        &(g * self) * g_inv
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Row-major flattening, used to treat gl(V) as a vector space.
    pub fn flatten(&self) -> Vector {
        self.data.clone()
    }

    pub fn unflatten(n: usize, v: &[Scalar]) -> Matrix {
        Matrix::from_vec(n, n, v.to_vec())
    }

    /// Max-norm `max |a_ij|` as a float.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    /// Exact `max |a_ij|²`.
    pub fn max_norm_sqr(&self) -> BigRational {
        self.data.iter().map(Scalar::norm_sqr).fold(BigRational::zero(), |a, b| if b > a { b } else { a })
    }

    /// Reduced row echelon form: leftmost nonzero column first, topmost
    /// candidate row as pivot, pivots scaled to 1.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{v : m·v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&reduced[(row, f)];
                }
                v
            })
            .collect()
    }

    /// One solution of `m·x = b` (free variables set to zero), if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(HodgeError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let Echelon { reduced, pivots } = self.hstack(&Matrix::identity(n)).echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(HodgeError::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = reduced[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }

    /// Smallest `k` with `self^k = 0`, for a nilpotent matrix.
    pub fn nilpotency_order(&self) -> Option<u32> {
        if !self.is_square() {
            return None;
        }
        let mut p = Matrix::identity(self.rows);
        for k in 0..=self.rows as u32 {
            if p.is_zero() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }
}

/// `exp(n)` for nilpotent `n`; the power series terminates.
pub fn nilpotent_exp(n: &Matrix) -> Result<Matrix> {
    if !n.is_nilpotent() {
        return Err(HodgeError::NotNilpotent);
    }
    Ok(exp_series(n))
}

/// Terminating exponential series; caller guarantees nilpotency.
pub(crate) fn exp_series(n: &Matrix) -> Matrix {
    let dim = n.rows();
    let mut out = Matrix::identity(dim);
    let mut term = Matrix::identity(dim);
    for k in 1..=dim as i64 {
        term = (&term * n).scale(&Scalar::ratio(1, k));
        if term.is_zero() {
            break;
        }
        out = &out + &term;
    }
    out
}

/// `log(t)` for unipotent `t`; the series in `t − 1` terminates.
pub fn nilpotent_log(t: &Matrix) -> Result<Matrix> {
    if !t.is_square() {
        return Err(HodgeError::NotUnipotent);
    }
    let dim = t.rows();
    let u = t - &Matrix::identity(dim);
    if !u.is_nilpotent() {
        return Err(HodgeError::NotUnipotent);
    }
    let mut out = Matrix::zeros(dim, dim);
    let mut power = Matrix::identity(dim);
    for k in 1..=dim as i64 {
        power = &power * &u;
        if power.is_zero() {
            break;
        }
        let c = Scalar::ratio(if k % 2 == 1 { 1 } else { -1 }, k);
        out = &out + &power.scale(&c);
    }
    Ok(out)
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimensions");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out[(i, j)] += &t;
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimensions");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimensions");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Linear combination `Σ c_k v_k`.
pub fn combine(dim: usize, coeffs: &[Scalar], vectors: &[Vector]) -> Vector {
    let mut out = vec![Scalar::zero(); dim];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += &(c * x);
            }
        }
    }
    out
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vector {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_conj(a: &[Scalar]) -> Vector {
    a.iter().map(Scalar::conj).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn unit_vector(dim: usize, k: usize) -> Vector {
    let mut v = vec![Scalar::zero(); dim];
    v[k] = Scalar::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        let m = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        assert_eq!(m.kernel_basis(), vec![vec![Scalar::zero(), Scalar::one()]]);
        assert!(Matrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn exp_log_examples() {
        let n = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        assert_eq!(nilpotent_exp(&n).unwrap(), Matrix::from_ints(&[&[1, 0], &[1, 1]]));
        assert!(nilpotent_log(&Matrix::identity(2)).unwrap().is_zero());
        let t = Matrix::from_ints(&[&[1, 0], &[2, 1]]);
        assert_eq!(nilpotent_log(&t).unwrap(), Matrix::from_ints(&[&[0, 0], &[2, 0]]));
        assert_eq!(nilpotent_exp(&Matrix::identity(2)), Err(HodgeError::NotNilpotent));
        assert_eq!(nilpotent_log(&Matrix::diag_ints(&[2, 1])), Err(HodgeError::NotUnipotent));
    }

    #[test]
    fn exp_log_jordan3() {
        let n = Matrix::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let t = nilpotent_exp(&n).unwrap();
        assert_eq!(t[(2, 0)], Scalar::ratio(1, 2));
        assert_eq!(nilpotent_log(&t).unwrap(), n);
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert_eq!(Matrix::from_ints(&[&[1, 1], &[1, 1]]).inverse(), Err(HodgeError::Singular));
        let x = m.solve(&[Scalar::from(3), Scalar::from(2)]).unwrap();
        assert_eq!(x, vec![Scalar::from(1), Scalar::from(1)]);
        assert!(Matrix::from_ints(&[&[1, 1], &[1, 1]]).solve(&[Scalar::from(1), Scalar::from(2)]).is_none());
    }
}

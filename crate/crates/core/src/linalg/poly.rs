//! Polynomials in commuting variables `s₁, …, s_r` with matrix or scalar
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::matrix::Matrix;
use super::scalar::Scalar;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

fn add_exp(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Polynomial with scalar coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn add_term(&mut self, mono: Monomial, c: &Scalar) {
        let e = self.terms.entry(mono).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn eval(&self, s: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in s.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Nonzero constant term.
    pub fn constant(&self) -> Scalar {
        self.terms.get(&vec![0; self.vars]).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Variables occurring with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.vars).filter(|&j| self.terms.keys().any(|m| m[j] > 0)).collect()
    }
}

fn fmt_mono(f: &mut fmt::Formatter<'_>, m: &[u32]) -> fmt::Result {
    for (j, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => write!(f, "*s{}", j + 1)?,
            _ => write!(f, "*s{}^{}", j + 1, e)?,
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            fmt_mono(f, m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Polynomial map `s ↦ Σ s^m · A_m` into square matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatPoly {
    dim: usize,
    vars: usize,
    terms: BTreeMap<Monomial, Matrix>,
}

impl MatPoly {
    pub fn zero(dim: usize, vars: usize) -> Self {
        MatPoly { dim, vars, terms: BTreeMap::new() }
    }

    pub fn constant(m: Matrix, vars: usize) -> Self {
        let mut p = MatPoly::zero(m.rows(), vars);
        p.add_term(vec![0; vars], &m);
        p
    }

    /// `s_j · m`.
    pub fn linear(m: Matrix, vars: usize, j: usize) -> Self {
        let mut mono = vec![0; vars];
        mono[j] = 1;
        let mut p = MatPoly::zero(m.rows(), vars);
        p.add_term(mono, &m);
        p
    }

    pub fn from_terms(dim: usize, vars: usize, terms: Vec<(Monomial, Matrix)>) -> Self {
        let mut p = MatPoly::zero(dim, vars);
        for (m, a) in terms {
            assert_eq!(m.len(), vars, "monomial arity");
            p.add_term(m, &a);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Matrix> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Monomial, a: &Matrix) {
        if a.is_zero() {
            return;
        }
        let next = match self.terms.get(&mono) {
            Some(old) => old + a,
            None => a.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, next);
        }
    }

    pub fn add(&self, other: &MatPoly) -> MatPoly {
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(m.clone(), a);
        }
        out
    }

    pub fn sub(&self, other: &MatPoly) -> MatPoly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> MatPoly {
        let mut out = MatPoly::zero(self.dim, self.vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &a.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &MatPoly) -> MatPoly {
        let mut out = MatPoly::zero(self.dim, self.vars);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(add_exp(ma, mb), &(a * b));
            }
        }
        out
    }

    pub fn left_mul(&self, g: &Matrix) -> MatPoly {
        let mut out = MatPoly::zero(self.dim, self.vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &(g * a));
        }
        out
    }

    pub fn right_mul(&self, g: &Matrix) -> MatPoly {
        let mut out = MatPoly::zero(self.dim, self.vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &(a * g));
        }
        out
    }

    /// `exp(P)` for `P` with nilpotent values and `P(0) = 0`: every product
    /// of `dim` values vanishes, so the series stops there.
    pub fn exp(&self) -> MatPoly {
        let mut out = MatPoly::constant(Matrix::identity(self.dim), self.vars);
        let mut term = out.clone();
        for k in 1..=self.dim as i64 {
            term = term.mul(self).scale(&Scalar::ratio(1, k));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        out
    }

    /// `∂/∂s_j`.
    pub fn derivative(&self, j: usize) -> MatPoly {
        let mut out = MatPoly::zero(self.dim, self.vars);
        for (m, a) in &self.terms {
            if m[j] == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm[j] -= 1;
            out.add_term(mm, &a.scale(&Scalar::from(m[j] as i64)));
        }
        out
    }

    /// `s_j · P`.
    pub fn times_var(&self, j: usize) -> MatPoly {
        let mut out = MatPoly::zero(self.dim, self.vars);
        for (m, a) in &self.terms {
            let mut mm = m.clone();
            mm[j] += 1;
            out.add_term(mm, a);
        }
        out
    }

    /// Substitute `s_j = 0`.
    pub fn restrict_zero(&self, j: usize) -> MatPoly {
        let mut out = MatPoly::zero(self.dim, self.vars);
        for (m, a) in &self.terms {
            if m[j] == 0 {
                out.add_term(m.clone(), a);
            }
        }
        out
    }

    pub fn eval(&self, s: &[Scalar]) -> Matrix {
        assert_eq!(s.len(), self.vars, "number of variables");
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for (m, a) in &self.terms {
            let mut c = Scalar::one();
            for (x, &e) in s.iter().zip(m) {
                for _ in 0..e {
                    c *= x;
                }
            }
            if !c.is_zero() {
                acc = &acc + &a.scale(&c);
            }
        }
        acc
    }

    /// Entry `(i, j)` as a scalar polynomial.
    pub fn entry(&self, i: usize, j: usize) -> Poly {
        let mut p = Poly::zero(self.vars);
        for (m, a) in &self.terms {
            if !a[(i, j)].is_zero() {
                p.add_term(m.clone(), &a[(i, j)]);
            }
        }
        p
    }
}

impl fmt::Debug for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, a) in &self.terms {
            write!(f, "[1")?;
            fmt_mono(f, m)?;
            writeln!(f, "] {a:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_matches_pointwise() {
        let lam = Matrix::unit(3, 2, 0);
        let n = Matrix::unit(3, 1, 0);
        let p = MatPoly::linear(lam.clone(), 2, 1).add(&MatPoly::linear(n.clone(), 2, 0));
        let e = p.exp();
        let s = [Scalar::ratio(1, 3), Scalar::gauss(2, -1)];
        let direct = crate::linalg::nilpotent_exp(&p.eval(&s)).unwrap();
        assert_eq!(e.eval(&s), direct);
    }

    #[test]
    fn derivative_and_entries() {
        let a = Matrix::unit(2, 1, 0);
        let p = MatPoly::linear(a.clone(), 1, 0).mul(&MatPoly::linear(Matrix::identity(2), 1, 0));
        let d = p.derivative(0);
        assert_eq!(d.eval(&[Scalar::from(3)]), a.scale(&Scalar::from(6)));
        assert_eq!(p.entry(1, 0).to_string(), "(1)*s1^2");
        assert!(p.entry(0, 0).is_zero());
    }
}

//! Zero loci of normal functions near a boundary point: pointwise
//! membership, integrality of limit gradings, local defining equations and
//! the torsion obstruction to accumulation.

use num_bigint::BigInt;

use crate::error::{HodgeError, Result};
use crate::filtration::Grading;
use crate::ih::{sigma_torsion, AnfData, SigmaTorsion};
use crate::linalg::lattice::solve_integer;
use crate::linalg::matrix::{exp_series, vec_add};
use crate::linalg::{MatPoly, Matrix, Poly, Scalar, Subspace, Vector};
use crate::mhs::{gl_bigrading, sl2_splitting};
use crate::orbits::{grading_at, is_integral_grading, limit_data, LocalNormalForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTest {
    pub in_locus: bool,
    pub grading: Grading,
}

/// `ν(z, s) = 0` iff `Y_{(F(z,s), W)}` is integral.
pub fn zero_test(lnf: &LocalNormalForm, z: &[Scalar], s: &[Scalar]) -> Result<ZeroTest> {
    if lnf.orbit().lattice().is_none() {
        return Err(HodgeError::Precondition("no lattice".into()));
    }
    let g = grading_at(lnf, z, s)?;
    Ok(ZeroTest { in_locus: g.integral, grading: g.grading })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitIntegrality {
    pub limit: Grading,
    pub integral: bool,
    /// `Y ∈ ker(ad N)`.
    pub commutes_with_n: bool,
    /// `Y` preserves `F̂_∞`.
    pub preserves_f_hat: bool,
    /// `ξ ∈ ker(ad N) ∩ Λ^{−1,−1}_{(F̂_∞, M)}`.
    pub xi_ok: bool,
    /// Zero-test outcome at each supplied sample `(z, s)`.
    pub samples: Vec<bool>,
}

pub fn limit_integrality(lnf: &LocalNormalForm, slice: &[Scalar], samples: &[(Vec<Scalar>, Vec<Scalar>)]) -> Result<LimitIntegrality> {
    let data = limit_data(lnf, slice, false)?;
    let n = &lnf.orbit().logs()[0];
    let y = data.untwisted.op();
    let gl = gl_bigrading(&data.f_hat, &data.m)?;
    let samples = samples.iter().map(|(z, s)| zero_test(lnf, z, s).map(|t| t.in_locus)).collect::<Result<Vec<_>>>()?;
    Ok(LimitIntegrality {
        integral: is_integral_grading(y, lnf.orbit().lattice()),
        commutes_with_n: Matrix::bracket(y, n).is_zero(),
        preserves_f_hat: data.f_hat.is_preserved_by(y),
        xi_ok: Matrix::bracket(&data.xi, n).is_zero() && gl.in_lambda(&data.xi),
        limit: data.untwisted,
        samples,
    })
}

/// Entry polynomials of `e^{−Γ(s)} Y_∞ e^{Γ(s)} − Y_∞` and the element
/// `λ = e^{−ξ}·Y_∞ − Y_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSystem {
    /// Nonzero entries `(row, col, polynomial)`, row-major.
    pub equations: Vec<(usize, usize, Poly)>,
    pub lambda: Matrix,
    pub integral_limit: bool,
}

impl DefiningSystem {
    pub fn vanishes_at(&self, s: &[Scalar]) -> bool {
        self.equations.iter().all(|(_, _, p)| p.eval(s).is_zero())
    }

    pub fn is_trivial(&self) -> bool {
        self.equations.is_empty()
    }
}

pub fn defining_equation(lnf: &LocalNormalForm, y_inf: &Grading) -> Result<DefiningSystem> {
    let orbit = lnf.orbit();
    let y = y_inf.op();
    if let Some(j) = orbit.logs().iter().position(|n| !Matrix::bracket(y, n).is_zero()) {
        return Err(HodgeError::Precondition(format!("Y_inf does not commute with N_{}", j + 1)));
    }
    if !orbit.f_inf().is_preserved_by(y) {
        return Err(HodgeError::Precondition("Y_inf does not preserve F_inf".into()));
    }
    let r = orbit.r();
    let gamma = lnf.gamma();
    let conj = gamma.scale(&-Scalar::one()).exp().mul(&MatPoly::constant(y.clone(), r)).mul(&gamma.exp());
    let diff = conj.sub(&MatPoly::constant(y.clone(), r));
    let dim = orbit.dim();
    let mut equations = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let p = diff.entry(i, j);
            if !p.is_zero() {
                equations.push((i, j, p));
            }
        }
    }
    let m = orbit.m()?;
    let xi = sl2_splitting(orbit.f_inf(), &m, false)?.xi;
    let y_z = y.conjugate_by(&exp_series(&-&xi), &exp_series(&xi));
    let lambda = &y_z - y;
    let integral_limit = is_integral_grading(&y_z, orbit.lattice());
    if integral_limit && !lambda.is_zero() {
        return Err(HodgeError::Internal("integral limit with λ ≠ 0".into()));
    }
    Ok(DefiningSystem { equations, lambda, integral_limit })
}

/// `f = g⁻¹ Y_{(F(z,s), W)} g − Y_∞` with `g = e^{zN}e^{Γ(s)}`, and whether
/// `f` lies in the isotropy algebra of `F_∞`.
pub fn isotropy_defect(lnf: &LocalNormalForm, y_inf: &Grading, z: &[Scalar], s: &[Scalar]) -> Result<(Matrix, bool)> {
    let g = lnf.group_element(z, s)?;
    let g_inv = g.inverse()?;
    let y = grading_at(lnf, z, s)?.grading;
    let f = &y.op().conjugate_by(&g_inv, &g) - y_inf.op();
    let ok = lnf.orbit().f_inf().is_preserved_by(&f);
    Ok((f, ok))
}

/// Outcome of [`accumulation_verdict`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AccumulationVerdict {
    /// No `T`-invariant integral grading of `W` exists: `(T−1)(e₀ + h) = 0`
    /// has the rational solution `rational_h` but none in `H_ℤ`.
    Excluded { sigma: SigmaTorsion, rational_h: Vector },
    /// `Y_ℤ` with `E₀ = span(e₀ + h)`, `h ∈ H_ℤ`, commutes with `T`.
    Candidate { grading: Grading, h: Vector, h_coordinates: Vec<BigInt> },
}

impl AccumulationVerdict {
    pub fn is_excluded(&self) -> bool {
        matches!(self, AccumulationVerdict::Excluded { .. })
    }
}

/// Integral gradings of the two-step `W` are `E₀ = span(e₀ + h)`,
/// `E₋₁ = H`, `h ∈ H_ℤ`; commuting with `T` means `(T−1)h = −(T−1)e₀`,
/// which is solvable in `H_ℤ` exactly when `σ = 0`.
pub fn accumulation_verdict(anf: &AnfData) -> Result<AccumulationVerdict> {
    if anf.logs().len() != 1 {
        return Err(HodgeError::Unsupported("accumulation verdicts need exactly one log".into()));
    }
    let sigma = sigma_torsion(anf)?;
    let lattice = anf.lattice().expect("checked by sigma_torsion");
    let hz = lattice.intersect_subspace(anf.h());
    let dim = anf.dim();
    let t1 = &exp_series(&anf.logs()[0]) - &Matrix::identity(dim);
    let a = hz.operator_coordinates(&t1)?;
    let x = hz.integer_coordinates(&t1.mul_vec(anf.e0())).ok_or_else(|| HodgeError::Internal("(T−1)e₀ ∉ H_ℤ".into()))?;
    let b: Vec<BigInt> = x.iter().map(|v| -v).collect();
    match solve_integer(&a, hz.rank(), &b) {
        Some(c) => {
            if sigma.nonzero {
                return Err(HodgeError::Internal("σ ≠ 0 but an integral invariant grading exists".into()));
            }
            let h = hz.vector(&c);
            let e = vec_add(anf.e0(), &h);
            let grading = Grading::from_eigenspaces(dim, &[(0, Subspace::span(dim, &[e])), (-1, anf.h().clone())])?;
            if !Matrix::bracket(grading.op(), &t1).is_zero() {
                return Err(HodgeError::Internal("candidate grading does not commute with T".into()));
            }
            Ok(AccumulationVerdict::Candidate { grading, h, h_coordinates: c })
        }
        None => {
            if !sigma.nonzero {
                return Err(HodgeError::Internal("σ = 0 but no integral invariant grading".into()));
            }
            let cols: Vec<Vector> = (0..hz.rank()).map(|k| t1.mul_vec(&hz.basis().column(k))).collect();
            let target: Vector = t1.mul_vec(anf.e0()).iter().map(|v| -v).collect();
            let c = Matrix::from_columns(dim, &cols).solve(&target).ok_or_else(|| HodgeError::Internal("no rational invariant lift".into()))?;
            let rational_h = crate::linalg::matrix::combine(dim, &c, &(0..hz.rank()).map(|k| hz.basis().column(k)).collect::<Vec<_>>());
            Ok(AccumulationVerdict::Excluded { sigma, rational_h })
        }
    }
}

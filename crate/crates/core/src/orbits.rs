//! Admissible nilpotent orbits, local normal forms
//! `F(z, s) = e^{Σ z_j N_j} e^{Γ(s)}·F_∞`, and their limit gradings.

use crate::error::{HodgeError, Result};
use crate::filtration::{is_grading_of, relative_weight_filtration, DecreasingFiltration, Grading, IncreasingFiltration};
use crate::ih::{sing_class, AnfData};
use crate::linalg::matrix::{exp_series, vec_scale};
use crate::linalg::{IntegerLattice, MatPoly, Matrix, Scalar, Subspace, Vector};
use crate::mhs::{deligne_grading, gl_bigrading, is_mhs, is_type_i, sl2_splitting, zeta_from};
use crate::sl2::deligne_y;

/// `(V, W, N₁…N_r, F_∞)` with an optional integral structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentOrbitData {
    w: IncreasingFiltration,
    logs: Vec<Matrix>,
    f_inf: DecreasingFiltration,
    lattice: Option<IntegerLattice>,
}

fn sum_of(logs: &[Matrix], dim: usize) -> Matrix {
    logs.iter().fold(Matrix::zeros(dim, dim), |acc, n| &acc + n)
}

fn rwf(n: &Matrix, w: &IncreasingFiltration) -> Result<IncreasingFiltration> {
    relative_weight_filtration(n, w)?.map_err(|o| HodgeError::NoRelativeFiltration(format!("obstruction at weight {}", o.weight)))
}

impl NilpotentOrbitData {
    /// Checks shapes, nilpotency, commutation, `W`-preservation and that
    /// each `T_j = e^{N_j}` preserves the lattice. Admissibility proper is
    /// left to [`admissibility_check`].
    pub fn new(w: IncreasingFiltration, logs: Vec<Matrix>, f_inf: DecreasingFiltration, lattice: Option<IntegerLattice>) -> Result<Self> {
        let dim = w.ambient_dim();
        if f_inf.ambient_dim() != dim {
            return Err(HodgeError::DimensionMismatch { expected: dim, found: f_inf.ambient_dim() });
        }
        for (j, n) in logs.iter().enumerate() {
            if n.rows() != dim || n.cols() != dim {
                return Err(HodgeError::DimensionMismatch { expected: dim, found: n.rows() });
            }
            if !n.is_nilpotent() {
                return Err(HodgeError::NotNilpotent);
            }
            if !w.is_preserved_by(n) {
                return Err(HodgeError::NotFiltrationPreserving);
            }
            for (k, m) in logs.iter().enumerate().skip(j + 1) {
                if !Matrix::bracket(n, m).is_zero() {
                    return Err(HodgeError::NonCommuting(j, k));
                }
            }
        }
        if let Some(l) = &lattice {
            if l.ambient_dim() != dim || l.rank() != dim {
                return Err(HodgeError::Precondition("lattice must have full rank".into()));
            }
            for n in &logs {
                l.operator_coordinates(&exp_series(n))?;
            }
        }
        Ok(NilpotentOrbitData { w, logs, f_inf, lattice })
    }

    pub fn dim(&self) -> usize {
        self.w.ambient_dim()
    }

    pub fn w(&self) -> &IncreasingFiltration {
        &self.w
    }

    pub fn logs(&self) -> &[Matrix] {
        &self.logs
    }

    pub fn f_inf(&self) -> &DecreasingFiltration {
        &self.f_inf
    }

    pub fn lattice(&self) -> Option<&IntegerLattice> {
        self.lattice.as_ref()
    }

    pub fn r(&self) -> usize {
        self.logs.len()
    }

    /// `N = Σ N_j`.
    pub fn cone_element(&self) -> Matrix {
        sum_of(&self.logs, self.dim())
    }

    /// `M(Σ N_j, W)`.
    pub fn m(&self) -> Result<IncreasingFiltration> {
        rwf(&self.cone_element(), &self.w)
    }

    pub fn with_f_inf(&self, f_inf: DecreasingFiltration) -> Self {
        NilpotentOrbitData { f_inf, ..self.clone() }
    }

    pub fn with_lattice(&self, lattice: Option<IntegerLattice>) -> Self {
        NilpotentOrbitData { lattice, ..self.clone() }
    }

    /// The extension data `0 → W₋₁ → V → Gr^W_0 → 0` when `W` has weights
    /// `−1, 0` and `Gr^W_0` has rank one.
    pub fn extension(&self) -> Result<AnfData> {
        let top = self.w.get(0);
        let h = self.w.get(-1);
        if !top.is_full() || !self.w.get(-2).is_zero() || h.dim() + 1 != self.dim() {
            return Err(HodgeError::Precondition("W is not an extension of Q(0) by a weight −1 piece".into()));
        }
        let e0 = h.complement_in(&top).remove(0);
        AnfData::new(h, e0, self.logs.clone(), None)
    }
}

/// Report-style outcome: every check in order, and the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub checks: Vec<(String, bool)>,
    pub witness: Option<String>,
}

impl CheckReport {
    fn new() -> Self {
        CheckReport { ok: true, checks: Vec::new(), witness: None }
    }

    fn record(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        let name = name.into();
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
        self.ok &= ok;
        self.checks.push((name, ok));
    }
}

pub fn admissibility_check(orbit: &NilpotentOrbitData) -> CheckReport {
    let mut rep = CheckReport::new();
    let w = &orbit.w;
    for (j, n) in orbit.logs.iter().enumerate() {
        let exists = matches!(relative_weight_filtration(n, w), Ok(Ok(_)));
        rep.record(format!("M(N_{}, W) exists", j + 1), exists, || format!("N_{} has no relative weight filtration", j + 1));
    }
    let m = match orbit.m() {
        Ok(m) => m,
        Err(e) => {
            rep.record("M(ΣN_j, W) exists", false, || e.to_string());
            return rep;
        }
    };
    rep.record("M(ΣN_j, W) exists", true, String::new);
    if orbit.r() > 1 {
        let weighted = orbit.logs.iter().enumerate().fold(Matrix::zeros(orbit.dim(), orbit.dim()), |acc, (j, n)| &acc + &n.scale(&Scalar::from(j as i64 + 1)));
        let same = matches!(relative_weight_filtration(&weighted, w), Ok(Ok(ref m2)) if *m2 == m);
        rep.record("M is constant on the cone", same, || "Σ j·N_j has a different relative filtration".into());
    }
    let mhs = is_mhs(&orbit.f_inf, &m);
    rep.record("(F_inf, M) is a mixed Hodge structure", mhs.ok, || mhs.diagnostic.clone().unwrap_or_default());
    if !mhs.ok {
        return rep;
    }
    match gl_bigrading(&orbit.f_inf, &m) {
        Ok(gl) => {
            for (j, n) in orbit.logs.iter().enumerate() {
                let ok = gl.contains(n, |a, b| a == -1 && b == -1);
                rep.record(format!("N_{} is a (-1,-1)-morphism", j + 1), ok, || format!("N_{} has components off type (-1,-1)", j + 1));
            }
        }
        Err(e) => rep.record("bigrading of (F_inf, M)", false, || e.to_string()),
    }
    rep
}

/// `F(z, s) = e^{Σ z_j N_j} e^{Γ(s)}·F_∞` with `Γ` polynomial and `𝔮`-valued.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalNormalForm {
    orbit: NilpotentOrbitData,
    gamma: MatPoly,
}

impl LocalNormalForm {
    pub fn new(orbit: NilpotentOrbitData, gamma: MatPoly) -> Result<Self> {
        if gamma.vars() != orbit.r() || gamma.dim() != orbit.dim() {
            return Err(HodgeError::Precondition(format!("Γ must be a {}-variable polynomial in dimension {}", orbit.r(), orbit.dim())));
        }
        if gamma.terms().keys().any(|m| m.iter().all(|&e| e == 0)) {
            return Err(HodgeError::Precondition("Γ(0) ≠ 0".into()));
        }
        if !gamma.is_zero() {
            let gl = gl_bigrading(&orbit.f_inf, &orbit.m()?)?;
            if gamma.terms().values().any(|a| !gl.contains(a, |p, _| p < 0)) {
                return Err(HodgeError::Precondition("Γ has a coefficient outside 𝔮".into()));
            }
        }
        Ok(LocalNormalForm { orbit, gamma })
    }

    pub fn untwisted(orbit: NilpotentOrbitData) -> Self {
        let gamma = MatPoly::zero(orbit.dim(), orbit.r());
        LocalNormalForm { orbit, gamma }
    }

    pub fn orbit(&self) -> &NilpotentOrbitData {
        &self.orbit
    }

    pub fn gamma(&self) -> &MatPoly {
        &self.gamma
    }

    /// `e^{Σ z_j N_j} e^{Γ(s)}`.
    pub fn group_element(&self, z: &[Scalar], s: &[Scalar]) -> Result<Matrix> {
        let r = self.orbit.r();
        if z.len() != r || s.len() != r {
            return Err(HodgeError::DimensionMismatch { expected: r, found: z.len().min(s.len()) });
        }
        let dim = self.orbit.dim();
        let zn = self.orbit.logs.iter().zip(z).fold(Matrix::zeros(dim, dim), |acc, (n, zj)| &acc + &n.scale(zj));
        Ok(&exp_series(&zn) * &exp_series(&self.gamma.eval(s)))
    }
}

pub fn evaluate_f(lnf: &LocalNormalForm, z: &[Scalar], s: &[Scalar]) -> Result<DecreasingFiltration> {
    Ok(lnf.orbit.f_inf.map(&lnf.group_element(z, s)?))
}

/// Coefficientwise check of
/// `Ad(e^{−Γ})N_j + 2πi s_j e^{−Γ}∂_j e^{Γ} ∈ ℘₋₁` (the transcendental
/// `2πi` separates the two summands) and of `[Γ|_{s_j=0}, N_j] = 0`.
pub fn horizontality_check(lnf: &LocalNormalForm) -> Result<CheckReport> {
    let orbit = &lnf.orbit;
    let gl = gl_bigrading(&orbit.f_inf, &orbit.m()?)?;
    let in_p1 = |x: &Matrix| gl.contains(x, |a, _| a == -1);
    let (dim, r) = (orbit.dim(), orbit.r());
    let e_plus = lnf.gamma.exp();
    let e_minus = lnf.gamma.scale(&-Scalar::one()).exp();
    let mut rep = CheckReport::new();
    for (j, n) in orbit.logs.iter().enumerate() {
        let ad = e_minus.mul(&MatPoly::constant(n.clone(), r)).mul(&e_plus);
        let bad = ad.terms().iter().find(|(_, a)| !in_p1(a)).map(|(m, _)| m.clone());
        rep.record(format!("Ad(e^-Γ)N_{} ∈ ℘_-1", j + 1), bad.is_none(), || format!("coefficient of s^{:?} in Ad(e^-Γ)N_{} leaves ℘_-1", bad.clone().unwrap_or_default(), j + 1));
        let log_der = e_minus.mul(&e_plus.derivative(j)).times_var(j);
        let bad = log_der.terms().iter().find(|(_, a)| !in_p1(a)).map(|(m, _)| m.clone());
        rep.record(format!("s_{0} e^-Γ ∂_{0} e^Γ ∈ ℘_-1", j + 1), bad.is_none(), || format!("coefficient of s^{:?} in s_{} e^-Γ ∂ e^Γ leaves ℘_-1", bad.clone().unwrap_or_default(), j + 1));
        let slice = lnf.gamma.restrict_zero(j);
        let nj = MatPoly::constant(n.clone(), r);
        let br = slice.mul(&nj).sub(&nj.mul(&slice));
        rep.record(format!("[Γ^({}), N_{}] = 0", j + 1, j + 1), br.is_zero(), || format!("Γ restricted to s_{} = 0 does not commute with N_{}", j + 1, j + 1));
    }
    debug_assert_eq!(dim, e_plus.dim());
    Ok(rep)
}

/// `Y_{(F(z,s), W)}` and whether it is integral in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointGrading {
    pub grading: Grading,
    pub integral: bool,
}

pub fn is_integral_grading(y: &Matrix, lattice: Option<&IntegerLattice>) -> bool {
    match lattice {
        Some(l) => y.is_real() && l.operator_coordinates(y).is_ok(),
        None => y.is_integral(),
    }
}

pub fn grading_at(lnf: &LocalNormalForm, z: &[Scalar], s: &[Scalar]) -> Result<PointGrading> {
    let f = evaluate_f(lnf, z, s)?;
    let check = is_mhs(&f, &lnf.orbit.w);
    if !check.ok {
        return Err(HodgeError::NotMhs(check.diagnostic.unwrap_or_default()));
    }
    let grading = deligne_grading(&f, &lnf.orbit.w)?;
    let integral = is_integral_grading(grading.op(), lnf.orbit.lattice());
    Ok(PointGrading { grading, integral })
}

/// The limit objects attached to the first branch at a slice `(s₂, …, s_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitData {
    /// `Y_{(e^{iN}·F̂_∞, W)}`.
    pub untwisted: Grading,
    /// `Y(N, Y_{(F_∞, M)})`.
    pub twisted: Grading,
    pub xi: Matrix,
    pub delta: Matrix,
    pub zeta: Matrix,
    pub f_hat: DecreasingFiltration,
    /// `F_∞(s₂, …, s_r) = e^{Γ(0, s₂, …)}·F_∞`.
    pub f_slice: DecreasingFiltration,
    pub m: IncreasingFiltration,
}

fn slice_point(lnf: &LocalNormalForm, slice: &[Scalar]) -> Result<Vec<Scalar>> {
    let r = lnf.orbit.r();
    if r == 0 || slice.len() + 1 != r {
        return Err(HodgeError::Precondition(format!("expected {} slice coordinates", r.saturating_sub(1))));
    }
    let mut s = vec![Scalar::zero()];
    s.extend_from_slice(slice);
    Ok(s)
}

/// Limits along the divisor `s₁ = 0` at the given slice. `N = N₁` and
/// `M = M(N₁, W)`.
pub fn limit_data(lnf: &LocalNormalForm, slice: &[Scalar], allow_nonabelian: bool) -> Result<LimitData> {
    let orbit = &lnf.orbit;
    if !is_type_i(&orbit.w) {
        return Err(HodgeError::Precondition("W is not of type (I)".into()));
    }
    let s = slice_point(lnf, slice)?;
    let n = &orbit.logs[0];
    let m = rwf(n, &orbit.w)?;
    let f_slice = orbit.f_inf.map(&exp_series(&lnf.gamma.eval(&s)));
    let check = is_mhs(&f_slice, &m);
    if !check.ok {
        return Err(HodgeError::NotMhs(check.diagnostic.unwrap_or_default()));
    }
    let split = sl2_splitting(&f_slice, &m, allow_nonabelian)?;
    let zeta = zeta_from(&split.xi, &split.delta)?;
    let dim = orbit.dim();
    let ein = exp_series(&n.scale(&Scalar::i()));
    let untwisted = deligne_grading(&split.f_hat.map(&ein), &orbit.w)?;
    let via_y = deligne_y(n, &deligne_grading(&split.f_hat, &m)?, &orbit.w)?.y;
    if via_y != untwisted {
        return Err(HodgeError::Internal("Y_(e^iN F̂, W) ≠ Y(N, Y_(F̂, M))".into()));
    }
    let y_m = deligne_grading(&f_slice, &m)?;
    let twisted = deligne_y(n, &y_m, &orbit.w)?.y;
    if !Matrix::bracket(twisted.op(), n).is_zero() {
        return Err(HodgeError::Internal("twisted limit is not in ker(ad N)".into()));
    }
    let g = &exp_series(&split.delta.scale(&Scalar::i())) * &exp_series(&-&zeta);
    let g_inv = g.inverse()?;
    if untwisted.op().conjugate_by(&g, &g_inv) != *twisted.op() {
        return Err(HodgeError::Internal("twisted ≠ e^{iδ}e^{-ζ}·untwisted".into()));
    }
    debug_assert_eq!(twisted.dim(), dim);
    Ok(LimitData { untwisted, twisted, xi: split.xi, delta: split.delta, zeta, f_hat: split.f_hat, f_slice, m })
}

pub fn limit_grading_untwisted(lnf: &LocalNormalForm, slice: &[Scalar]) -> Result<Grading> {
    Ok(limit_data(lnf, slice, false)?.untwisted)
}

/// The twisted limit, re-derived after the coordinate change `s₁ ↦ c·s₁`,
/// which replaces `F_∞` by `e^{uN}·F_∞` for `u = log(c)/2πi`; `u` is passed
/// directly since only its effect on `F_∞` matters.
pub fn limit_grading_twisted(lnf: &LocalNormalForm, slice: &[Scalar], rescale: &Scalar) -> Result<Grading> {
    let data = limit_data(lnf, slice, false)?;
    let n = &lnf.orbit.logs[0];
    let moved = data.f_slice.map(&exp_series(&n.scale(rescale)));
    let y_m = deligne_grading(&moved, &data.m)?;
    let again = deligne_y(n, &y_m, &lnf.orbit.w)?.y;
    if again != data.twisted {
        return Err(HodgeError::Internal("twisted limit depends on the local coordinate".into()));
    }
    Ok(data.twisted)
}

/// `Y_∞` together with the lift `e₀ ∈ E₀(Ŷ)` of `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantGrading {
    pub y_inf: Grading,
    /// `Ŷ = Y_{(e^{iN}·F̂, W)}`, `N = Σ N_j`.
    pub y_hat: Grading,
    pub e0: Vector,
}

pub fn invariant_grading(orbit: &NilpotentOrbitData) -> Result<InvariantGrading> {
    if orbit.r() == 0 {
        return Err(HodgeError::Precondition("no logarithms".into()));
    }
    if !is_type_i(&orbit.w) {
        return Err(HodgeError::Precondition("W is not of type (I)".into()));
    }
    let anf = orbit.extension()?;
    if !sing_class(&anf)?.is_zero {
        return Err(HodgeError::SingularityNonzero);
    }
    let n = orbit.cone_element();
    let m = orbit.m()?;
    let split = sl2_splitting(&orbit.f_inf, &m, false)?;
    let y_hat = deligne_grading(&split.f_hat.map(&exp_series(&n.scale(&Scalar::i()))), &orbit.w)?;
    let g = exp_series(&split.delta.scale(&Scalar::i()));
    let g_inv = exp_series(&split.delta.scale(&-Scalar::i()));
    let y_inf = crate::filtration::conjugate_grading(&g, &y_hat)?;
    let direct = deligne_y(&n, &deligne_grading(&orbit.f_inf, &m)?, &orbit.w)?.y;
    if direct != y_inf {
        return Err(HodgeError::Internal("e^{iδ}·Ŷ ≠ Y(N, Y_M)".into()));
    }
    if let Some(j) = orbit.logs.iter().position(|nj| !Matrix::bracket(y_inf.op(), nj).is_zero()) {
        return Err(HodgeError::Internal(format!("[Y_inf, N_{}] ≠ 0", j + 1)));
    }
    let e = y_hat.eigenspace(0);
    let v = e.basis().first().cloned().ok_or_else(|| HodgeError::Internal("E_0(Ŷ) is zero".into()))?;
    let e0 = vec_scale(&v, &anf.beta(&v).inv().expect("E_0 projects onto Gr_0"));
    if orbit.logs.iter().any(|nj| !crate::linalg::matrix::is_zero_vec(&nj.mul_vec(&e0))) {
        return Err(HodgeError::Internal("e₀ ∉ ∩ ker N_j".into()));
    }
    debug_assert_eq!(&g * &g_inv, Matrix::identity(orbit.dim()));
    Ok(InvariantGrading { y_inf, y_hat, e0 })
}

/// Deviations of sampled gradings from a predicted limit.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeTable {
    pub predicted: Grading,
    /// `(sample, max-norm deviation)` in sample order.
    pub rows: Vec<(Vec<Scalar>, f64)>,
}

impl ProbeTable {
    pub fn deviations(&self) -> Vec<f64> {
        self.rows.iter().map(|(_, d)| *d).collect()
    }

    /// Nonincreasing from the `from`-th sample on.
    pub fn monotone_from(&self, from: usize) -> bool {
        self.deviations()[from.min(self.rows.len())..].windows(2).all(|w| w[1] <= w[0])
    }

    /// Ratios `d_k / d_{k+1}` of consecutive deviations.
    pub fn ratios(&self) -> Vec<f64> {
        self.deviations().windows(2).map(|w| w[0] / w[1]).collect()
    }
}

fn deviation(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).max_norm()
}

/// Samples `Y_{(F(iy, (0, slice)), W)}` against the untwisted limit.
pub fn limit_probe(lnf: &LocalNormalForm, slice: &[Scalar], ys: &[Scalar]) -> Result<ProbeTable> {
    let predicted = limit_grading_untwisted(lnf, slice)?;
    let s = slice_point(lnf, slice)?;
    let r = lnf.orbit.r();
    let mut rows = Vec::new();
    for y in ys {
        let mut z = vec![Scalar::i(); r];
        z[0] = y * &Scalar::i();
        let g = grading_at(lnf, &z, &s)?;
        rows.push((vec![y.clone()], deviation(g.grading.op(), predicted.op())));
    }
    Ok(ProbeTable { predicted, rows })
}

/// Samples `Y_{(e^{Σ i y_j N_j}·F_∞, W)}` along the given tuples `y(m)`
/// against `Y(Σ N_j, Y_{(F̂_∞, M)})`.
pub fn multivariable_limit_probe(orbit: &NilpotentOrbitData, pattern: &[Vec<Scalar>]) -> Result<ProbeTable> {
    if !is_type_i(&orbit.w) {
        return Err(HodgeError::Precondition("W is not of type (I)".into()));
    }
    if !sing_class(&orbit.extension()?)?.is_zero {
        return Err(HodgeError::SingularityNonzero);
    }
    let n = orbit.cone_element();
    let m = orbit.m()?;
    let split = sl2_splitting(&orbit.f_inf, &m, false)?;
    let predicted = deligne_y(&n, &deligne_grading(&split.f_hat, &m)?, &orbit.w)?.y;
    let lnf = LocalNormalForm::untwisted(orbit.clone());
    let zero = vec![Scalar::zero(); orbit.r()];
    let mut rows = Vec::new();
    for y in pattern {
        if y.len() != orbit.r() {
            return Err(HodgeError::DimensionMismatch { expected: orbit.r(), found: y.len() });
        }
        let z: Vec<Scalar> = y.iter().map(|t| t * &Scalar::i()).collect();
        let g = grading_at(&lnf, &z, &zero)?;
        rows.push((y.clone(), deviation(g.grading.op(), predicted.op())));
    }
    Ok(ProbeTable { predicted, rows })
}

/// `(Y(p) − Y_ℤ)(e₀)` for a limit grading and an integral grading of `W`.
pub fn nf_difference(y_limit: &Grading, y_z: &Grading, e0: &[Scalar]) -> Vector {
    (y_limit.op() - y_z.op()).mul_vec(e0)
}

/// A representative of the limit value of the normal function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfValue {
    pub representative: Vector,
    /// Basis of `K = ker N ∩ W₋₁`.
    pub k_basis: Vec<Vector>,
    /// `F⁰ ∩ K` for the limit Hodge filtration.
    pub k_f0: Subspace,
    /// Whether the representative lies in `F⁰K + K_ℤ`; `None` when the
    /// real decomposition is not unique.
    pub trivial: Option<bool>,
}

pub fn limit_nf_value(orbit: &NilpotentOrbitData, y_z: &Grading) -> Result<NfValue> {
    let lattice = orbit.lattice().ok_or_else(|| HodgeError::Precondition("no lattice".into()))?;
    if orbit.r() != 1 {
        return Err(HodgeError::Unsupported("limit values are computed for one log".into()));
    }
    if !is_grading_of(y_z, &orbit.w) || !is_integral_grading(y_z.op(), Some(lattice)) {
        return Err(HodgeError::Precondition("Y_Z is not an integral grading of W".into()));
    }
    let n = &orbit.logs[0];
    let t = exp_series(n);
    if !Matrix::bracket(y_z.op(), &t).is_zero() {
        return Err(HodgeError::Precondition("Y_Z does not commute with T".into()));
    }
    let lnf = LocalNormalForm::untwisted(orbit.clone());
    let data = limit_data(&lnf, &[], false)?;
    let anf = orbit.extension()?;
    let e0 = anf.e0().clone();
    let representative = nf_difference(&data.twisted, y_z, &e0);
    let k = anf.h().intersect(&crate::linalg::kernel(n))?;
    let k_f0 = data.f_slice.get(0).intersect(&k)?;
    let trivial = reduce_mod(&representative, &k_f0, &lattice.intersect_subspace(&k));
    Ok(NfValue { representative, k_basis: k.basis().to_vec(), k_f0, trivial })
}

/// Decides `v ∈ F + L` with `F` complex and `L` a lattice, through the
/// real system `v = Σ c_i l_i + f`, `c` real.
fn reduce_mod(v: &[Scalar], f: &Subspace, l: &IntegerLattice) -> Option<bool> {
    let n = v.len();
    let split = |x: &[Scalar]| -> Vector {
        let mut out: Vector = x.iter().map(|c| c.parts().0).collect();
        out.extend(x.iter().map(|c| c.parts().1));
        out
    };
    let mut cols: Vec<Vector> = (0..l.rank()).map(|k| split(&l.basis().column(k))).collect();
    let lattice_cols = cols.len();
    for b in f.basis() {
        cols.push(split(b));
        let ib: Vector = b.iter().map(|c| c * &Scalar::i()).collect();
        cols.push(split(&ib));
    }
    let target = split(v);
    if cols.is_empty() {
        return Some(crate::linalg::matrix::is_zero_vec(v));
    }
    let a = Matrix::from_columns(2 * n, &cols);
    let sol = match a.solve(&target) {
        Some(s) => s,
        None => return Some(false),
    };
    let ker = crate::linalg::kernel(&a);
    if ker.basis().iter().any(|kv| kv[..lattice_cols].iter().any(|x| !x.is_zero())) {
        return None;
    }
    Some(sol[..lattice_cols].iter().all(Scalar::is_integral))
}


#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn fix3(a: i64) -> NilpotentOrbitData {
        let mut n = Matrix::zeros(3, 3);
        n[(2, 0)] = Scalar::from(a);
        n[(2, 1)] = Scalar::one();
        let w = IncreasingFiltration::two_step(3, -1, Subspace::coordinate(3, &[1, 2]), 0).unwrap();
        let mut steps = BTreeMap::new();
        steps.insert(-1, Subspace::full(3));
        steps.insert(0, Subspace::coordinate(3, &[0, 1]));
        let f = DecreasingFiltration::from_steps(3, steps).unwrap();
        NilpotentOrbitData::new(w, vec![n], f, Some(IntegerLattice::standard(3))).unwrap()
    }

    #[test]
    fn fix3_admissible_and_eval() {
        assert!(admissibility_check(&fix3(2)).ok);
        let lnf = LocalNormalForm::untwisted(fix3(2));
        let f = evaluate_f(&lnf, &[Scalar::i()], &[Scalar::zero()]).unwrap();
        let expect = Subspace::span(3, &[vec![Scalar::one(), Scalar::zero(), Scalar::gauss(0, 2)], vec![Scalar::zero(), Scalar::one(), Scalar::i()]]);
        assert_eq!(f.get(0), expect);
        assert!(horizontality_check(&lnf).unwrap().ok);
    }

    #[test]
    fn fix3_limits() {
        for a in [-2, 0, 1, 5] {
            let lnf = LocalNormalForm::untwisted(fix3(a));
            let y = limit_grading_untwisted(&lnf, &[]).unwrap();
            let e0 = vec![Scalar::one(), Scalar::from(-a), Scalar::zero()];
            assert_eq!(y.eigenspace(0), Subspace::span(3, &[e0]));
            assert_eq!(limit_grading_twisted(&lnf, &[], &Scalar::gauss(3, 1)).unwrap(), y);
            let g = grading_at(&lnf, &[Scalar::gauss(1, 2)], &[Scalar::zero()]).unwrap();
            assert_eq!(g.grading, y);
            assert!(g.integral);
            let inv = invariant_grading(&fix3(a)).unwrap();
            assert_eq!(inv.y_inf, y);
        }
    }

    #[test]
    fn twisted_fix3_probe() {
        let orbit = fix3(1);
        let lam = Matrix::unit(3, 2, 0).scale(&Scalar::i());
        let orbit = orbit.with_f_inf(orbit.f_inf().map(&exp_series(&lam)));
        let lnf = LocalNormalForm::untwisted(orbit);
        let data = limit_data(&lnf, &[], false).unwrap();
        assert_eq!(data.delta, Matrix::unit(3, 2, 0));
        assert!(data.zeta.is_zero());
        let ys: Vec<Scalar> = (1..=10).map(|k| Scalar::from(1i64 << k)).collect();
        let table = limit_probe(&lnf, &[], &ys).unwrap();
        assert!(table.monotone_from(1));
        assert!(table.ratios().iter().all(|r| *r >= 1.8), "{:?}", table.ratios());
    }
}

//! Mixed Hodge structures: Deligne's bigrading and grading, the induced
//! bigrading of `gl(V)`, splittings over ℝ.

use std::collections::BTreeMap;

use crate::error::{HodgeError, Result};
use crate::filtration::{graded_piece, rational_grading, DecreasingFiltration, Grading, IncreasingFiltration};
use crate::linalg::matrix::exp_series;
use crate::linalg::subspace::{is_direct_sum, sum_all};
use crate::linalg::{nilpotent_log, Matrix, Scalar, Subspace, Vector};

/// Outcome of [`is_mhs`] with the first failing graded piece, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MhsCheck {
    pub ok: bool,
    pub diagnostic: Option<String>,
}

impl MhsCheck {
    fn pass() -> Self {
        MhsCheck { ok: true, diagnostic: None }
    }

    fn fail(msg: String) -> Self {
        MhsCheck { ok: false, diagnostic: Some(msg) }
    }
}

/// True iff `F` induces a pure Hodge structure of weight `k` on every
/// `Gr^W_k`, i.e. `F^p ⊕ conj(F^{k−p+1})` is the whole graded piece.
pub fn is_mhs(f: &DecreasingFiltration, w: &IncreasingFiltration) -> MhsCheck {
    if f.ambient_dim() != w.ambient_dim() {
        return MhsCheck::fail(format!("F lives in dimension {}, W in {}", f.ambient_dim(), w.ambient_dim()));
    }
    if !w.is_rational() {
        return MhsCheck::fail("W is not defined over ℚ".into());
    }
    let (flo, fhi) = f.range();
    for k in w.weights() {
        let q = graded_piece(w, k);
        let wk = w.get(k);
        let induced = |p: i32| q.project(&f.get(p).intersect(&wk).expect("same ambient"));
        for p in flo.min(k - fhi) - 1..=fhi.max(k - flo) + 2 {
            let a = induced(p);
            let b = induced(k - p + 1).conj();
            if a.dim() + b.dim() != q.dim() || !a.sum(&b).expect("same ambient").is_full() {
                return MhsCheck::fail(format!(
                    "Gr^W_{k}: F^{p} (dim {}) and conj F^{} (dim {}) do not split the piece of dim {}",
                    a.dim(),
                    k - p + 1,
                    b.dim(),
                    q.dim()
                ));
            }
        }
    }
    MhsCheck::pass()
}

fn require_mhs(f: &DecreasingFiltration, w: &IncreasingFiltration) -> Result<()> {
    let c = is_mhs(f, w);
    if c.ok {
        Ok(())
    } else {
        Err(HodgeError::NotMhs(c.diagnostic.unwrap_or_default()))
    }
}

/// Deligne's bigrading `V_ℂ = ⊕ I^{p,q}`; only nonzero pieces are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigrading {
    dim: usize,
    pieces: BTreeMap<(i32, i32), Subspace>,
}

impl Bigrading {
    pub fn pieces(&self) -> &BTreeMap<(i32, i32), Subspace> {
        &self.pieces
    }

    pub fn piece(&self, p: i32, q: i32) -> Subspace {
        self.pieces.get(&(p, q)).cloned().unwrap_or_else(|| Subspace::zero(self.dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Hodge numbers `h^{p,q} = dim I^{p,q}`.
    pub fn hodge_numbers(&self) -> BTreeMap<(i32, i32), usize> {
        self.pieces.iter().map(|(k, s)| (*k, s.dim())).collect()
    }

    /// A basis adapted to the bigrading together with the type of each vector.
    pub fn adapted_basis(&self) -> (Matrix, Vec<(i32, i32)>) {
        let mut cols = Vec::new();
        let mut types = Vec::new();
        for (t, s) in &self.pieces {
            for v in s.basis() {
                cols.push(v.clone());
                types.push(*t);
            }
        }
        (Matrix::from_columns(self.dim, &cols), types)
    }

    /// `e^λ` (or any automorphism) applied piecewise.
    pub fn map(&self, g: &Matrix) -> Bigrading {
        Bigrading { dim: self.dim, pieces: self.pieces.iter().map(|(k, s)| (*k, s.map(g))).collect() }
    }

    fn sum_where(&self, pred: impl Fn(i32, i32) -> bool) -> Subspace {
        let parts: Vec<&Subspace> = self.pieces.iter().filter(|((p, q), _)| pred(*p, *q)).map(|(_, s)| s).collect();
        sum_all(self.dim, &parts)
    }

    /// The grading acting by `p + q` on `I^{p,q}`.
    pub fn grading(&self) -> Grading {
        let parts: Vec<(i32, Subspace)> = self.pieces.iter().map(|((p, q), s)| (p + q, s.clone())).collect();
        Grading::from_eigenspaces(self.dim, &parts).expect("bigrading pieces decompose the space")
    }

    /// Checks properties (a), (b), (c) and directness as subspace identities.
    pub fn check_axioms(&self, f: &DecreasingFiltration, w: &IncreasingFiltration) -> std::result::Result<(), String> {
        let refs: Vec<&Subspace> = self.pieces.values().collect();
        if !is_direct_sum(&refs) || refs.iter().map(|s| s.dim()).sum::<usize>() != self.dim {
            return Err("pieces do not form a direct sum decomposition".into());
        }
        let (flo, fhi) = f.range();
        for p in flo - 1..=fhi + 1 {
            if self.sum_where(|r, _| r >= p) != f.get(p) {
                return Err(format!("(a) fails at F^{p}"));
            }
        }
        let (wlo, whi) = w.range().unwrap_or((0, 0));
        for k in wlo - 1..=whi {
            if self.sum_where(|r, s| r + s <= k) != w.get(k) {
                return Err(format!("(b) fails at W_{k}"));
            }
        }
        for (&(p, q), s) in &self.pieces {
            let allowed = self.piece(q, p).sum(&self.sum_where(|r, t| r < q && t < p)).expect("same ambient");
            if !allowed.contains(&s.conj()) {
                return Err(format!("(c) fails at I^{{{p},{q}}}"));
            }
        }
        Ok(())
    }

    /// `conj(I^{p,q}) = I^{q,p}` for all `p, q`.
    pub fn is_split_r(&self) -> bool {
        self.pieces.iter().all(|(&(p, q), s)| s.conj() == self.piece(q, p))
    }
}

/// Deligne's bigrading of a mixed Hodge structure, via
/// `I^{p,q} = F^p ∩ W_{p+q} ∩ (conj F^q ∩ W_{p+q} + Σ_{j≥1} conj F^{q−j} ∩ W_{p+q−j−1})`,
/// with the axioms verified before returning.
pub fn deligne_bigrading(f: &DecreasingFiltration, w: &IncreasingFiltration) -> Result<Bigrading> {
    require_mhs(f, w)?;
    let dim = f.ambient_dim();
    let fbar = f.conj();
    let (flo, fhi) = f.range();
    let (wlo, _) = w.range().unwrap_or((0, 0));
    let mut pieces = BTreeMap::new();
    for p in flo..=fhi {
        let fp = f.get(p);
        for q in flo..=fhi {
            let wk = w.get(p + q);
            let head = fp.intersect(&wk)?;
            if head.is_zero() {
                continue;
            }
            let mut tail = fbar.get(q).intersect(&wk)?;
            let mut j = 1;
            while p + q - j > wlo {
                tail = tail.sum(&fbar.get(q - j).intersect(&w.get(p + q - j - 1))?)?;
                j += 1;
            }
            let piece = head.intersect(&tail)?;
            if !piece.is_zero() {
                pieces.insert((p, q), piece);
            }
        }
    }
    let b = Bigrading { dim, pieces };
    b.check_axioms(f, w).map_err(|e| HodgeError::Internal(format!("bigrading postcondition: {e}")))?;
    Ok(b)
}

/// `Y_{(F,W)}`: multiplication by `p + q` on `I^{p,q}`.
pub fn deligne_grading(f: &DecreasingFiltration, w: &IncreasingFiltration) -> Result<Grading> {
    let y = deligne_bigrading(f, w)?.grading();
    if !f.is_preserved_by(y.op()) {
        return Err(HodgeError::Internal("Deligne grading does not preserve F".into()));
    }
    Ok(y)
}

/// The bigrading of `gl(V_ℂ)` induced by a bigrading of `V_ℂ`: with `B` an
/// adapted basis, the elementary matrix `E_ij` has type `type_i − type_j`.
#[derive(Clone, Debug)]
pub struct GlBigrading {
    basis: Matrix,
    basis_inv: Matrix,
    types: Vec<(i32, i32)>,
}

impl GlBigrading {
    pub fn new(b: &Bigrading) -> Self {
        let (basis, types) = b.adapted_basis();
        let basis_inv = basis.inverse().expect("adapted basis is invertible");
        GlBigrading { basis, basis_inv, types }
    }

    pub fn dim(&self) -> usize {
        self.types.len()
    }

    fn entry_type(&self, i: usize, j: usize) -> (i32, i32) {
        (self.types[i].0 - self.types[j].0, self.types[i].1 - self.types[j].1)
    }

    /// Sum of the components of `x` whose type satisfies `pred`.
    pub fn component(&self, x: &Matrix, pred: impl Fn(i32, i32) -> bool) -> Matrix {
        let n = self.dim();
        let mut local = &(&self.basis_inv * x) * &self.basis;
        for i in 0..n {
            for j in 0..n {
                let (a, b) = self.entry_type(i, j);
                if !pred(a, b) {
                    local[(i, j)] = Scalar::zero();
                }
            }
        }
        &(&self.basis * &local) * &self.basis_inv
    }

    pub fn contains(&self, x: &Matrix, pred: impl Fn(i32, i32) -> bool) -> bool {
        let local = &(&self.basis_inv * x) * &self.basis;
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (a, b) = self.entry_type(i, j);
                pred(a, b) || local[(i, j)].is_zero()
            })
        })
    }

    /// Component of ad-`Y` weight `k`, i.e. of types with `a + b = k`.
    pub fn weight_component(&self, x: &Matrix, k: i32) -> Matrix {
        self.component(x, |a, b| a + b == k)
    }

    /// Membership in `Λ^{−1,−1} = ⊕_{a,b<0} gl^{a,b}`.
    pub fn in_lambda(&self, x: &Matrix) -> bool {
        self.contains(x, |a, b| a < 0 && b < 0)
    }

    /// Membership in `℘_a = ⊕_b gl^{a,b}` for `a ≤ top`.
    pub fn in_p_below(&self, x: &Matrix, top: i32) -> bool {
        self.contains(x, |a, _| a <= top)
    }

    fn basis_where(&self, pred: impl Fn(i32, i32) -> bool) -> Vec<Matrix> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = self.entry_type(i, j);
                if pred(a, b) {
                    let e = Matrix::unit(n, i, j);
                    out.push(&(&self.basis * &e) * &self.basis_inv);
                }
            }
        }
        out
    }

    pub fn piece_basis(&self, a: i32, b: i32) -> Vec<Matrix> {
        self.basis_where(|x, y| x == a && y == b)
    }

    /// `gl^{a,b}` as a subspace of the flattened `n²`-dimensional space.
    pub fn piece(&self, a: i32, b: i32) -> Subspace {
        let n = self.dim();
        Subspace::span(n * n, &self.piece_basis(a, b).iter().map(Matrix::flatten).collect::<Vec<_>>())
    }

    pub fn piece_dims(&self) -> BTreeMap<(i32, i32), usize> {
        let n = self.dim();
        let mut out = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                *out.entry(self.entry_type(i, j)).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn lambda_basis(&self) -> Vec<Matrix> {
        self.basis_where(|a, b| a < 0 && b < 0)
    }

    /// Λ^{−1,−1} is abelian iff all brackets of basis elements vanish.
    pub fn lambda_is_abelian(&self) -> bool {
        let basis = self.lambda_basis();
        basis.iter().enumerate().all(|(k, x)| basis[k + 1..].iter().all(|y| Matrix::bracket(x, y).is_zero()))
    }

    /// ad-`Y` weights occurring in Λ^{−1,−1}, decreasing from −2.
    fn lambda_weights(&self) -> Vec<i32> {
        let mut ks: Vec<i32> = self.piece_dims().keys().filter(|(a, b)| *a < 0 && *b < 0).map(|(a, b)| a + b).collect();
        ks.sort_unstable_by(|a, b| b.cmp(a));
        ks.dedup();
        ks
    }
}

pub fn gl_bigrading(f: &DecreasingFiltration, w: &IncreasingFiltration) -> Result<GlBigrading> {
    Ok(GlBigrading::new(&deligne_bigrading(f, w)?))
}

/// `Λ^{−1,−1}` as a subspace of the flattened endomorphism space.
pub fn lambda11(f: &DecreasingFiltration, w: &IncreasingFiltration) -> Result<Subspace> {
    let g = gl_bigrading(f, w)?;
    let n = g.dim();
    Ok(Subspace::span(n * n, &g.lambda_basis().iter().map(Matrix::flatten).collect::<Vec<_>>()))
}

/// Weights carried by at most two adjacent graded pieces.
pub fn is_type_i(w: &IncreasingFiltration) -> bool {
    match w.weights().as_slice() {
        [] | [_] => true,
        [a, b] => b - a == 1,
        _ => false,
    }
}

/// The three equivalent conditions for splitting over ℝ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    /// `conj(I^{p,q}) = I^{q,p}`.
    pub conjugate_symmetric: bool,
    /// `I^{p,q} = F^p ∩ conj F^q ∩ W_{p+q}`.
    pub intersection_formula: bool,
    /// Some real grading of `W` preserves `F`.
    pub real_grading: Option<Matrix>,
}

impl SplitReport {
    pub fn agree(&self) -> bool {
        self.conjugate_symmetric == self.intersection_formula && self.conjugate_symmetric == self.real_grading.is_some()
    }
}

pub fn split_equiv_report(f: &DecreasingFiltration, w: &IncreasingFiltration) -> Result<SplitReport> {
    let b = deligne_bigrading(f, w)?;
    let fbar = f.conj();
    let intersection_formula = b.pieces.iter().all(|(&(p, q), s)| {
        let x = f.get(p).intersect(&fbar.get(q)).and_then(|x| x.intersect(&w.get(p + q)));
        x.as_ref() == Ok(s)
    }) && {
        // Pieces absent from the bigrading must also have empty intersections.
        let (flo, fhi) = f.range();
        (flo..=fhi).all(|p| {
            (flo..=fhi).all(|q| {
                b.pieces.contains_key(&(p, q))
                    || f.get(p).intersect(&fbar.get(q)).and_then(|x| x.intersect(&w.get(p + q))).is_ok_and(|x| x.is_zero())
            })
        })
    };
    Ok(SplitReport { conjugate_symmetric: b.is_split_r(), intersection_formula, real_grading: real_grading_preserving(f, w) })
}

pub fn is_split_r(f: &DecreasingFiltration, w: &IncreasingFiltration) -> Result<bool> {
    let r = split_equiv_report(f, w)?;
    if !r.agree() {
        return Err(HodgeError::Internal(format!("split criteria disagree: {r:?}")));
    }
    Ok(r.conjugate_symmetric)
}

/// A real grading `Y₀ + Z` of `W` preserving `F`, where `Y₀` is a rational
/// grading and `Z` ranges over real maps with `Z·W_k ⊆ W_{k−1}`.
pub fn real_grading_preserving(f: &DecreasingFiltration, w: &IncreasingFiltration) -> Option<Matrix> {
    let n = f.ambient_dim();
    let y0 = rational_grading(w);
    // Basis adapted to Y₀ with the weight of each vector.
    let mut cols = Vec::new();
    let mut wts = Vec::new();
    for (k, e) in y0.eigen_pairs() {
        for v in e.basis() {
            cols.push(v.clone());
            wts.push(*k);
        }
    }
    let b = Matrix::from_columns(n, &cols);
    let b_inv = b.inverse().ok()?;
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| wts[i] < wts[j]).collect();
    let gens: Vec<Matrix> = slots.iter().map(|&(i, j)| &(&b * &Matrix::unit(n, i, j)) * &b_inv).collect();
    // For each F^p: ann(F^p)·(Y₀ + Σ z_s G_s)·f = 0, split into real and imaginary parts.
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    let (flo, fhi) = f.range();
    for p in flo + 1..=fhi {
        let fp = f.get(p);
        let ann = fp.annihilator();
        for v in fp.basis() {
            let y0v = y0.op().mul_vec(v);
            let gv: Vec<Vector> = gens.iter().map(|g| g.mul_vec(v)).collect();
            for a in &ann {
                let dot = |x: &[Scalar]| a.iter().zip(x).fold(Scalar::zero(), |acc, (p, q)| acc + p * q);
                let coeffs: Vec<Scalar> = gv.iter().map(|x| dot(x)).collect();
                let c = -dot(&y0v);
                let (cre, cim) = c.parts();
                rows.push(coeffs.iter().map(|x| x.parts().0).collect());
                rhs.push(cre);
                rows.push(coeffs.iter().map(|x| x.parts().1).collect());
                rhs.push(cim);
            }
        }
    }
    let z = if gens.is_empty() || rows.is_empty() {
        if rhs.iter().all(Scalar::is_zero) {
            vec![Scalar::zero(); gens.len()]
        } else {
            return None;
        }
    } else {
        Matrix::from_rows(rows).solve(&rhs)?
    };
    let mut y = y0.op().clone();
    for (c, g) in z.iter().zip(&gens) {
        if !c.is_zero() {
            y = &y + &g.scale(c);
        }
    }
    Some(y)
}

/// Result of [`delta_splitting`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSplitting {
    pub delta: Matrix,
    pub f_tilde: DecreasingFiltration,
}

/// The unique real `δ ∈ Λ^{−1,−1}` with `conj(Y) = e^{−2iδ}·Y`, and the split
/// filtration `e^{−iδ}·F`.
///
/// Writing `δ = Σ_{k≤−2} δ_k` by ad-`Y` weight, the weight-`k` part of the
/// defining equation reads `2ik·δ_k = (conj Y − e^{−2i ad δ_{>k}} Y)_k`.
pub fn delta_splitting(f: &DecreasingFiltration, w: &IncreasingFiltration) -> Result<DeltaSplitting> {
    let b = deligne_bigrading(f, w)?;
    let gl = GlBigrading::new(&b);
    let y = b.grading().into_op();
    let ybar = y.conj();
    let two_i = Scalar::gauss(0, 2);
    let mut delta = Matrix::zeros(y.rows(), y.cols());
    for k in gl.lambda_weights() {
        let g = exp_series(&delta.scale(&-two_i.clone()));
        let g_inv = exp_series(&delta.scale(&two_i));
        let residual = &ybar - &y.conjugate_by(&g, &g_inv);
        let rk = gl.weight_component(&residual, k);
        let dk = rk.scale(&(&two_i * &Scalar::from(k as i64)).inv().expect("k ≠ 0"));
        delta = &delta + &dk;
    }
    if !delta.is_real() {
        return Err(HodgeError::Internal("δ is not real".into()));
    }
    if !gl.in_lambda(&delta) {
        return Err(HodgeError::Internal("δ is not in Λ^{-1,-1}".into()));
    }
    let g = exp_series(&delta.scale(&-two_i.clone()));
    let g_inv = exp_series(&delta.scale(&two_i));
    if y.conjugate_by(&g, &g_inv) != ybar {
        return Err(HodgeError::Internal("conj(Y) ≠ e^{-2iδ}·Y".into()));
    }
    let f_tilde = f.map(&exp_series(&delta.scale(&-Scalar::i())));
    if !deligne_bigrading(&f_tilde, w)?.is_split_r() {
        return Err(HodgeError::Internal("e^{-iδ}·F is not split over ℝ".into()));
    }
    Ok(DeltaSplitting { delta, f_tilde })
}

/// `H(α, β) = log(e^α e^β)` for nilpotent `α, β` whose product is unipotent.
pub fn cbh(alpha: &Matrix, beta: &Matrix) -> Result<Matrix> {
    nilpotent_log(&(&exp_series(alpha) * &exp_series(beta)))
}

/// Result of [`sl2_splitting`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Splitting {
    pub xi: Matrix,
    pub delta: Matrix,
    pub f_hat: DecreasingFiltration,
    pub lambda_abelian: bool,
}

/// The sl₂-splitting `F̂ = e^{−ξ}·F`.
///
/// When `Λ^{−1,−1}` is abelian, `ξ = iδ`. Otherwise the call fails with
/// [`HodgeError::Unsupported`] unless `allow_nonabelian` is set, in which
/// case the same normalization is returned after checking that `e^{−ξ}·F` is
/// split over ℝ and `δ = H(ξ, −conj ξ)/2i`.
pub fn sl2_splitting(f: &DecreasingFiltration, m: &IncreasingFiltration, allow_nonabelian: bool) -> Result<Sl2Splitting> {
    let gl = gl_bigrading(f, m)?;
    let lambda_abelian = gl.lambda_is_abelian();
    if !lambda_abelian && !allow_nonabelian {
        return Err(HodgeError::Unsupported("Λ^{-1,-1} is not abelian; ξ is not determined".into()));
    }
    let DeltaSplitting { delta, f_tilde } = delta_splitting(f, m)?;
    let xi = delta.scale(&Scalar::i());
    let f_hat = f.map(&exp_series(&-&xi));
    debug_assert_eq!(f_hat, f_tilde);
    if !deligne_bigrading(&f_hat, m)?.is_split_r() {
        return Err(HodgeError::Internal("e^{-ξ}·F is not split over ℝ".into()));
    }
    let h = cbh(&xi, &-&xi.conj())?;
    if h.scale(&Scalar::gauss(0, 2).inv().expect("nonzero")) != delta {
        return Err(HodgeError::Internal("δ ≠ H(ξ, -conj ξ)/2i".into()));
    }
    Ok(Sl2Splitting { xi, delta, f_hat, lambda_abelian })
}

/// `ζ = log(e^{−ξ} e^{iδ})`.
pub fn zeta_from(xi: &Matrix, delta: &Matrix) -> Result<Matrix> {
    if !xi.is_nilpotent() || !delta.is_nilpotent() {
        return Err(HodgeError::NotNilpotent);
    }
    cbh(&-xi, &delta.scale(&Scalar::i()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fix1() -> (DecreasingFiltration, IncreasingFiltration) {
        let w = IncreasingFiltration::two_step(2, -2, Subspace::coordinate(2, &[1]), 0).unwrap();
        let f0 = Subspace::span(2, &[vec![Scalar::one(), Scalar::i()]]);
        let f = DecreasingFiltration::from_steps(2, BTreeMap::from([(-1, Subspace::full(2)), (0, f0)])).unwrap();
        (f, w)
    }

    #[test]
    fn fix1_bigrading_and_grading() {
        let (f, w) = fix1();
        assert!(is_mhs(&f, &w).ok);
        let b = deligne_bigrading(&f, &w).unwrap();
        assert_eq!(b.piece(0, 0), Subspace::span(2, &[vec![Scalar::one(), Scalar::i()]]));
        assert_eq!(b.piece(-1, -1), Subspace::coordinate(2, &[1]));
        let mut y = Matrix::diag_ints(&[0, -2]);
        y[(1, 0)] = Scalar::gauss(0, 2);
        assert_eq!(deligne_grading(&f, &w).unwrap().op(), &y);
        assert!(!is_split_r(&f, &w).unwrap());
    }

    #[test]
    fn fix1_delta_and_xi() {
        let (f, w) = fix1();
        let d = delta_splitting(&f, &w).unwrap();
        assert_eq!(d.delta, Matrix::unit(2, 1, 0));
        assert_eq!(d.f_tilde.get(0), Subspace::coordinate(2, &[0]));
        let s = sl2_splitting(&f, &w, false).unwrap();
        assert_eq!(s.xi, Matrix::unit(2, 1, 0).scale(&Scalar::i()));
        assert!(zeta_from(&s.xi, &s.delta).unwrap().is_zero());
        let lam = lambda11(&f, &w).unwrap();
        assert_eq!(lam.dim(), 1);
    }

    #[test]
    fn not_mhs_example() {
        let (_, w) = fix1();
        let f = DecreasingFiltration::from_steps(2, BTreeMap::from([(-1, Subspace::full(2)), (0, Subspace::coordinate(2, &[1]))])).unwrap();
        assert!(!is_mhs(&f, &w).ok);
        assert!(matches!(deligne_bigrading(&f, &w), Err(HodgeError::NotMhs(_))));
    }

    #[test]
    fn elliptic_pure_piece() {
        let w = IncreasingFiltration::pure(2, -1);
        let f = DecreasingFiltration::from_steps(2, BTreeMap::from([(-1, Subspace::full(2)), (0, Subspace::span(2, &[vec![Scalar::one(), Scalar::i()]]))])).unwrap();
        let b = deligne_bigrading(&f, &w).unwrap();
        assert_eq!(b.piece(0, -1), Subspace::span(2, &[vec![Scalar::one(), Scalar::i()]]));
        assert_eq!(b.piece(-1, 0), Subspace::span(2, &[vec![Scalar::one(), -Scalar::i()]]));
        assert!(lambda11(&f, &w).unwrap().is_zero());
        assert!(is_split_r(&f, &w).unwrap());
    }

    #[test]
    fn type_i_examples() {
        let (_, w1) = fix1();
        assert!(!is_type_i(&w1));
        assert!(is_type_i(&IncreasingFiltration::pure(3, 4)));
        let w3 = IncreasingFiltration::two_step(3, -1, Subspace::coordinate(3, &[1, 2]), 0).unwrap();
        assert!(is_type_i(&w3));
    }
}

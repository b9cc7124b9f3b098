//! sl₂-pairs and triples, ad-decompositions and Deligne's grading `Y(N, Y_M)`.

use std::collections::BTreeMap;

use crate::error::{HodgeError, Result};
use crate::filtration::{is_grading_of, relative_weight_filtration, DecreasingFiltration, Grading, IncreasingFiltration};
use crate::linalg::matrix::exp_series;
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::mhs::{deligne_grading, is_split_r, is_type_i};

/// `(N₀, H, N₀⁺)` with `[H, N₀] = −2N₀`, `[H, N₀⁺] = 2N₀⁺`, `[N₀⁺, N₀] = H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub lowering: Matrix,
    pub neutral: Matrix,
    pub raising: Matrix,
}

impl Sl2Triple {
    pub fn check(&self) -> bool {
        let (n, h, p) = (&self.lowering, &self.neutral, &self.raising);
        Matrix::bracket(h, n) == n.scale(&Scalar::from(-2))
            && Matrix::bracket(h, p) == p.scale(&Scalar::from(2))
            && &Matrix::bracket(p, n) == h
    }
}

/// Basis of joint eigenvectors of a grading together with the eigenvalues.
fn eigenbasis(y: &Grading) -> (Matrix, Matrix, Vec<i32>) {
    let mut cols = Vec::new();
    let mut wts = Vec::new();
    for (k, e) in y.eigen_pairs() {
        for v in e.basis() {
            cols.push(v.clone());
            wts.push(*k);
        }
    }
    let b = Matrix::from_columns(y.dim(), &cols);
    let b_inv = b.inverse().expect("eigenbasis");
    (b, b_inv, wts)
}

/// `N = Σ_j N_j` with `[Y, N_j] = j·N_j`, keyed by `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdDecomposition {
    components: BTreeMap<i32, Matrix>,
    dim: usize,
}

impl AdDecomposition {
    /// Component of ad-weight `j` (zero if absent).
    pub fn component(&self, j: i32) -> Matrix {
        self.components.get(&j).cloned().unwrap_or_else(|| Matrix::zeros(self.dim, self.dim))
    }

    pub fn components(&self) -> &BTreeMap<i32, Matrix> {
        &self.components
    }

    pub fn reassemble(&self) -> Matrix {
        self.components.values().fold(Matrix::zeros(self.dim, self.dim), |acc, m| &acc + m)
    }
}

/// Eigen-decomposition of `ad Y` applied to `x`, without sign restrictions.
pub fn ad_weight_components(x: &Matrix, y: &Grading) -> AdDecomposition {
    let (b, b_inv, wts) = eigenbasis(y);
    let n = y.dim();
    let local = &(&b_inv * x) * &b;
    let mut parts: BTreeMap<i32, Matrix> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if local[(i, j)].is_zero() {
                continue;
            }
            let m = parts.entry(wts[i] - wts[j]).or_insert_with(|| Matrix::zeros(n, n));
            m[(i, j)] = local[(i, j)].clone();
        }
    }
    let components = parts.into_iter().map(|(k, m)| (k, &(&b * &m) * &b_inv)).collect();
    AdDecomposition { components, dim: n }
}

/// `N = N₀ + N₋₁ + ⋯` with respect to `ad Y`; positive weights are an error.
pub fn ad_decompose(n: &Matrix, y: &Grading) -> Result<AdDecomposition> {
    let d = ad_weight_components(n, y);
    if let Some((k, _)) = d.components.iter().find(|(k, _)| **k > 0) {
        return Err(HodgeError::Precondition(format!("component of positive ad-weight {k}")));
    }
    Ok(d)
}

/// Completes `(n0, h)` to an sl₂-triple by solving for `N₀⁺` among the
/// `ad h`-weight-2 endomorphisms.
pub fn sl2_complete(n0: &Matrix, h: &Matrix) -> Result<Matrix> {
    if Matrix::bracket(h, n0) != n0.scale(&Scalar::from(-2)) {
        return Err(HodgeError::NotSl2Pair("[H, N₀] ≠ −2N₀".into()));
    }
    let hg = Grading::new(h.clone()).map_err(|_| HodgeError::NotSl2Pair("H is not semisimple with integer spectrum".into()))?;
    let (b, b_inv, wts) = eigenbasis(&hg);
    let n = h.rows();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| wts[i] - wts[j] == 2).collect();
    let gens: Vec<Matrix> = slots.iter().map(|&(i, j)| &(&b * &Matrix::unit(n, i, j)) * &b_inv).collect();
    let x = solve_in_span(&gens, |g| Matrix::bracket(g, n0), h)
        .ok_or_else(|| HodgeError::NotSl2Pair("H is not the neutral element of N₀".into()))?;
    let t = Sl2Triple { lowering: n0.clone(), neutral: h.clone(), raising: x.clone() };
    if !t.check() {
        return Err(HodgeError::Internal("completed triple fails the bracket relations".into()));
    }
    Ok(x)
}

/// Finds `X = Σ c_k g_k` with `op(X) = target`, `op` linear.
fn solve_in_span(gens: &[Matrix], op: impl Fn(&Matrix) -> Matrix, target: &Matrix) -> Option<Matrix> {
    let n = target.rows();
    if gens.is_empty() {
        return target.is_zero().then(|| Matrix::zeros(n, n));
    }
    let cols: Vec<_> = gens.iter().map(|g| op(g).flatten()).collect();
    let a = Matrix::from_columns(n * n, &cols);
    let c = a.solve(&target.flatten())?;
    Some(gens.iter().zip(&c).filter(|(_, x)| !x.is_zero()).fold(Matrix::zeros(n, n), |acc, (g, x)| &acc + &g.scale(x)))
}

/// Output of [`deligne_y`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneY {
    pub y: Grading,
    pub triple: Sl2Triple,
    pub decomposition: AdDecomposition,
}

/// The grading of `W` adapted to `Y_M`: complements of `W_{k−1}` in `W_k`
/// taken inside each eigenspace of `Y_M`.
pub fn adapted_grading(y_m: &Grading, w: &IncreasingFiltration) -> Result<Grading> {
    let mut parts = Vec::new();
    for (_, e) in y_m.eigen_pairs() {
        for k in w.weights() {
            let top = w.get(k).intersect(e)?;
            let below = w.get(k - 1).intersect(e)?;
            let comp = below.complement_in(&top);
            if !comp.is_empty() {
                parts.push((k, Subspace::span(w.ambient_dim(), &comp)));
            }
        }
    }
    Grading::from_eigenspaces(w.ambient_dim(), &parts)
}

/// Deligne's grading `Y(N, Y_M)` of `W`.
///
/// Start from the `Y_M`-adapted grading `Y₀`, fix `N₀` and its triple, then
/// conjugate by `e^X` with `X = Σ_{j≥1} X_{−j}` commuting with `Y_M`,
/// solving `ad N₀⁺ ad N₀ X_{−j} = −ad N₀⁺ R_j` weight by weight so that the
/// transported `N − N₀` commutes with `N₀⁺`.
pub fn deligne_y(n: &Matrix, y_m: &Grading, w: &IncreasingFiltration) -> Result<DeligneY> {
    let dim = w.ambient_dim();
    if n.rows() != dim || y_m.dim() != dim {
        return Err(HodgeError::DimensionMismatch { expected: dim, found: n.rows() });
    }
    if Matrix::bracket(y_m.op(), n) != n.scale(&Scalar::from(-2)) {
        return Err(HodgeError::Precondition("[Y_M, N] ≠ −2N".into()));
    }
    if !w.is_preserved_by(n) {
        return Err(HodgeError::NotFiltrationPreserving);
    }
    if !w.is_preserved_by(y_m.op()) {
        return Err(HodgeError::Precondition("Y_M does not preserve W".into()));
    }
    let m = relative_weight_filtration(n, w)?.map_err(|o| HodgeError::NoRelativeFiltration(format!("obstruction at weight {}", o.weight)))?;
    if !is_grading_of(y_m, &m) {
        return Err(HodgeError::Precondition("Y_M does not grade M(N, W)".into()));
    }

    let y0 = adapted_grading(y_m, w)?;
    let n0 = ad_weight_components(n, &y0).component(0);
    let h0 = y_m.op() - y0.op();
    let n0p = sl2_complete(&n0, &h0)?;

    // Joint eigenbasis of Y₀ and Y_M.
    let mut cols = Vec::new();
    let mut y0w = Vec::new();
    let mut ymw = Vec::new();
    for (k, e) in y0.eigen_pairs() {
        for (l, f) in y_m.eigen_pairs() {
            for v in e.intersect(f)?.basis() {
                cols.push(v.clone());
                y0w.push(*k);
                ymw.push(*l);
            }
        }
    }
    if cols.len() != dim {
        return Err(HodgeError::Internal("Y₀ and Y_M are not simultaneously diagonal".into()));
    }
    let b = Matrix::from_columns(dim, &cols);
    let b_inv = b.inverse()?;
    let spread = w.weights().last().copied().unwrap_or(0) - w.weights().first().copied().unwrap_or(0);
    let mut x = Matrix::zeros(dim, dim);
    for j in 1..=spread {
        let gens: Vec<Matrix> = (0..dim)
            .flat_map(|r| (0..dim).map(move |c| (r, c)))
            .filter(|&(r, c)| y0w[r] - y0w[c] == -j && ymw[r] == ymw[c])
            .map(|(r, c)| &(&b * &Matrix::unit(dim, r, c)) * &b_inv)
            .collect();
        if gens.is_empty() {
            continue;
        }
        let transported = n.conjugate_by(&exp_series(&-&x), &exp_series(&x));
        let rj = ad_weight_components(&transported, &y0).component(-j);
        let target = -&Matrix::bracket(&n0p, &rj);
        let xj = solve_in_span(&gens, |g| Matrix::bracket(&n0p, &Matrix::bracket(&n0, g)), &target)
            .ok_or_else(|| HodgeError::Internal(format!("no correction at weight -{j}")))?;
        x = &x + &xj;
    }
    let y = crate::filtration::conjugate_grading(&exp_series(&x), &y0)?;
    let out = verify_deligne_y(n, y_m, w, y)?;
    Ok(out)
}

/// Checks the defining properties of `Y(N, Y_M)` and returns the triple.
pub fn verify_deligne_y(n: &Matrix, y_m: &Grading, w: &IncreasingFiltration, y: Grading) -> Result<DeligneY> {
    if !is_grading_of(&y, w) {
        return Err(HodgeError::Internal("Y does not grade W".into()));
    }
    if !Matrix::bracket(y.op(), y_m.op()).is_zero() {
        return Err(HodgeError::Internal("[Y, Y_M] ≠ 0".into()));
    }
    let decomposition = ad_weight_components(n, &y);
    if decomposition.components.keys().any(|k| *k > 0) {
        return Err(HodgeError::Internal("N has positive ad-weight components".into()));
    }
    let n0 = decomposition.component(0);
    let h = y_m.op() - y.op();
    let raising = sl2_complete(&n0, &h).map_err(|e| HodgeError::Internal(format!("(a) fails: {e}")))?;
    let rest = n - &n0;
    if !Matrix::bracket(&rest, &raising).is_zero() {
        return Err(HodgeError::Internal("(b) fails: [N − N₀, N₀⁺] ≠ 0".into()));
    }
    if is_type_i(w) && !Matrix::bracket(y.op(), n).is_zero() {
        return Err(HodgeError::Internal("type (I) but [Y, N] ≠ 0".into()));
    }
    Ok(DeligneY { y, triple: Sl2Triple { lowering: n0, neutral: h, raising }, decomposition })
}

/// Witness of a failed [`highest_weight_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeightReport {
    pub ok: bool,
    pub witness: Option<String>,
}

/// For `k > 0`: `[N₀⁺, N₋ₖ] = 0`, `[H, N₋ₖ] = (k−2)N₋ₖ`, and `N₋₁ = 0`.
pub fn highest_weight_check(dec: &AdDecomposition, triple: &Sl2Triple) -> HighestWeightReport {
    for (&j, nk) in &dec.components {
        if j >= 0 {
            continue;
        }
        let k = -j;
        if k == 1 && !nk.is_zero() {
            return HighestWeightReport { ok: false, witness: Some("N₋₁ ≠ 0".into()) };
        }
        if !Matrix::bracket(&triple.raising, nk).is_zero() {
            return HighestWeightReport { ok: false, witness: Some(format!("[N₀⁺, N₋{k}] ≠ 0")) };
        }
        if Matrix::bracket(&triple.neutral, nk) != nk.scale(&Scalar::from((k - 2) as i64)) {
            return HighestWeightReport { ok: false, witness: Some(format!("N₋{k} has the wrong H-weight")) };
        }
    }
    HighestWeightReport { ok: true, witness: None }
}

/// Sample points with positive imaginary part used to confirm orbit constancy.
pub fn sample_points() -> Vec<Scalar> {
    vec![Scalar::gauss(0, 1), Scalar::gauss(0, 2), Scalar::gauss(1, 1)]
}

/// `Y(N, Y_M)` for a split type (I) nilpotent orbit, checked against
/// `Y_{(e^{zN}·F̂, W)}` at [`sample_points`].
pub fn orbit_grading_split(f_hat: &DecreasingFiltration, w: &IncreasingFiltration, n: &Matrix) -> Result<Grading> {
    if !is_type_i(w) {
        return Err(HodgeError::Precondition("W is not of type (I)".into()));
    }
    let m = relative_weight_filtration(n, w)?.map_err(|o| HodgeError::NoRelativeFiltration(format!("obstruction at weight {}", o.weight)))?;
    if !is_split_r(f_hat, &m)? {
        return Err(HodgeError::Precondition("(F, M) is not split over ℝ".into()));
    }
    let y_m = deligne_grading(f_hat, &m)?;
    let y = deligne_y(n, &y_m, w)?.y;
    for z in sample_points() {
        let fz = f_hat.map(&exp_series(&n.scale(&z)));
        let yz = deligne_grading(&fz, w)?;
        if yz.op() != y.op() {
            return Err(HodgeError::Internal(format!("Y_(e^zN F, W) differs from Y(N, Y_M) at z = {z}")));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fix3_n(a: i64) -> Matrix {
        let mut n = Matrix::zeros(3, 3);
        n[(2, 0)] = Scalar::from(a);
        n[(2, 1)] = Scalar::one();
        n
    }

    fn fix3_w() -> IncreasingFiltration {
        IncreasingFiltration::two_step(3, -1, Subspace::coordinate(3, &[1, 2]), 0).unwrap()
    }

    #[test]
    fn complete_examples() {
        let n0 = Matrix::unit(2, 1, 0);
        assert_eq!(sl2_complete(&n0, &Matrix::diag_ints(&[1, -1])).unwrap(), Matrix::unit(2, 0, 1));
        assert!(sl2_complete(&Matrix::zeros(2, 2), &Matrix::zeros(2, 2)).unwrap().is_zero());
        assert!(sl2_complete(&Matrix::zeros(2, 2), &Matrix::diag_ints(&[1, -1])).is_err());
    }

    #[test]
    fn ad_decompose_fix3() {
        let y = Grading::new(Matrix::diag_ints(&[0, -1, -1])).unwrap();
        let d = ad_decompose(&fix3_n(1), &y).unwrap();
        assert_eq!(d.component(0), Matrix::unit(3, 2, 1));
        assert_eq!(d.component(-1), Matrix::unit(3, 2, 0));
        assert_eq!(d.reassemble(), fix3_n(1));
    }

    #[test]
    fn deligne_y_pure_and_fix3() {
        let w = IncreasingFiltration::pure(2, -1);
        let ym = Grading::new(Matrix::diag_ints(&[0, -2])).unwrap();
        let out = deligne_y(&Matrix::unit(2, 1, 0), &ym, &w).unwrap();
        assert_eq!(out.y.op(), &Matrix::scalar_identity(2, &Scalar::from(-1)));

        for a in [-2, 0, 1, 5] {
            let ym = Grading::new(Matrix::diag_ints(&[0, 0, -2])).unwrap();
            let out = deligne_y(&fix3_n(a), &ym, &fix3_w()).unwrap();
            let mut e0 = vec![Scalar::zero(); 3];
            e0[0] = Scalar::one();
            e0[1] = Scalar::from(-a);
            assert_eq!(out.y.eigenspace(0), Subspace::span(3, &[e0]));
            assert_eq!(out.y.eigenspace(-1), Subspace::coordinate(3, &[1, 2]));
            assert!(highest_weight_check(&out.decomposition, &out.triple).ok);
            assert!(out.decomposition.component(-1).is_zero());
        }
    }
}

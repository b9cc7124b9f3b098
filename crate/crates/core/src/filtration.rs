//! Filtrations, gradings, graded pieces and the monodromy / relative weight
//! filtrations of a nilpotent operator.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::error::{HodgeError, Result};
use crate::linalg::matrix::{combine, unit_vector};
use crate::linalg::subspace::{image, is_direct_sum, kernel, sum_all};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

/// An increasing filtration `0 = L_a ⊆ … ⊆ L_b = V`.
///
/// Stored densely from the first nonzero step to the first full step, so two
/// equal filtrations have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IncreasingFiltration {
    ambient: usize,
    lo: i32,
    steps: Vec<Subspace>,
}

impl IncreasingFiltration {
    /// Builds a filtration from recorded steps. Unrecorded indices take the
    /// value of the nearest recorded index below (zero below the lowest);
    /// the highest recorded step must be the whole space.
    pub fn from_steps(ambient: usize, recorded: BTreeMap<i32, Subspace>) -> Result<Self> {
        if recorded.values().any(|s| s.ambient_dim() != ambient) {
            return Err(HodgeError::InvalidFiltration("step has the wrong ambient dimension".into()));
        }
        let Some((&top, last)) = recorded.iter().next_back() else {
            if ambient == 0 {
                return Ok(IncreasingFiltration { ambient, lo: 0, steps: Vec::new() });
            }
            return Err(HodgeError::InvalidFiltration("no steps recorded".into()));
        };
        if !last.is_full() {
            return Err(HodgeError::InvalidFiltration(format!("top step {top} is not the whole space")));
        }
        let mut prev: Option<&Subspace> = None;
        for (k, s) in &recorded {
            if let Some(p) = prev {
                if !s.contains(p) {
                    return Err(HodgeError::InvalidFiltration(format!("step {k} does not contain the step below")));
                }
            }
            prev = Some(s);
        }
        let lookup = |k: i32| recorded.range(..=k).next_back().map(|(_, s)| s.clone());
        let lo = recorded.iter().find(|(_, s)| !s.is_zero()).map(|(&k, _)| k).unwrap_or(top);
        let hi = recorded.iter().find(|(_, s)| s.is_full()).map(|(&k, _)| k).unwrap_or(top);
        let steps = (lo..=hi).map(|k| lookup(k).expect("recorded below")).collect();
        Ok(IncreasingFiltration { ambient, lo, steps })
    }

    /// Single weight `k`: `W_{k−1} = 0`, `W_k = V`.
    pub fn pure(ambient: usize, k: i32) -> Self {
        IncreasingFiltration::from_steps(ambient, BTreeMap::from([(k, Subspace::full(ambient))])).expect("pure filtration")
    }

    /// Two-step filtration `0 ⊆ W_{k−1} = h ⊆ W_k = V` (with gaps allowed via `lower`).
    pub fn two_step(ambient: usize, lower: i32, sub: Subspace, upper: i32) -> Result<Self> {
        IncreasingFiltration::from_steps(ambient, BTreeMap::from([(lower, sub), (upper, Subspace::full(ambient))]))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn get(&self, k: i32) -> Subspace {
        if k < self.lo {
            Subspace::zero(self.ambient)
        } else if (k - self.lo) as usize >= self.steps.len() {
            Subspace::full(self.ambient)
        } else {
            self.steps[(k - self.lo) as usize].clone()
        }
    }

    /// `(lowest nonzero index, lowest full index)`; `None` for `V = 0`.
    pub fn range(&self) -> Option<(i32, i32)> {
        if self.steps.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.steps.len() as i32 - 1))
        }
    }

    /// Indices `k` with `Gr_k ≠ 0`, increasing.
    pub fn weights(&self) -> Vec<i32> {
        let Some((lo, hi)) = self.range() else { return Vec::new() };
        (lo..=hi).filter(|&k| self.get(k).dim() > self.get(k - 1).dim()).collect()
    }

    pub fn graded_dim(&self, k: i32) -> usize {
        self.get(k).dim() - self.get(k - 1).dim()
    }

    /// Recorded steps (dense range).
    pub fn steps(&self) -> BTreeMap<i32, Subspace> {
        self.steps.iter().enumerate().map(|(k, s)| (self.lo + k as i32, s.clone())).collect()
    }

    pub fn map(&self, g: &Matrix) -> IncreasingFiltration {
        IncreasingFiltration { ambient: self.ambient, lo: self.lo, steps: self.steps.iter().map(|s| s.map(g)).collect() }
    }

    /// `W[m]_k = W_{k+m}`.
    pub fn shift(&self, m: i32) -> IncreasingFiltration {
        IncreasingFiltration { ambient: self.ambient, lo: self.lo - m, steps: self.steps.clone() }
    }

    pub fn is_rational(&self) -> bool {
        self.steps.iter().all(Subspace::is_real)
    }

    /// `op·L_k ⊆ L_{k+shift}` for all `k`.
    pub fn is_shifted_by(&self, op: &Matrix, shift: i32) -> bool {
        let Some((lo, hi)) = self.range() else { return true };
        (lo - 1 - shift.abs()..=hi + shift.abs()).all(|k| self.get(k).maps_into(op, &self.get(k + shift)))
    }

    pub fn is_preserved_by(&self, op: &Matrix) -> bool {
        self.is_shifted_by(op, 0)
    }

    /// Restriction to an invariant subspace, as subspaces of the ambient space.
    pub fn intersect(&self, u: &Subspace) -> BTreeMap<i32, Subspace> {
        self.steps().into_iter().map(|(k, s)| (k, s.intersect(u).expect("same ambient"))).collect()
    }
}

/// A decreasing filtration `V = F^a ⊇ … ⊇ F^b ⊇ 0`, stored densely from the
/// last full step to the last nonzero step.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DecreasingFiltration {
    ambient: usize,
    lo: i32,
    steps: Vec<Subspace>,
}

impl DecreasingFiltration {
    /// Unrecorded indices take the value of the nearest recorded index above
    /// (zero above the highest); the lowest recorded step must be `V`.
    pub fn from_steps(ambient: usize, recorded: BTreeMap<i32, Subspace>) -> Result<Self> {
        if recorded.values().any(|s| s.ambient_dim() != ambient) {
            return Err(HodgeError::InvalidFiltration("step has the wrong ambient dimension".into()));
        }
        let Some((&bottom, first)) = recorded.iter().next() else {
            if ambient == 0 {
                return Ok(DecreasingFiltration { ambient, lo: 0, steps: Vec::new() });
            }
            return Err(HodgeError::InvalidFiltration("no steps recorded".into()));
        };
        if !first.is_full() {
            return Err(HodgeError::InvalidFiltration(format!("lowest step {bottom} is not the whole space")));
        }
        let mut prev: Option<&Subspace> = None;
        for (k, s) in &recorded {
            if let Some(p) = prev {
                if !p.contains(s) {
                    return Err(HodgeError::InvalidFiltration(format!("step {k} is not contained in the step below")));
                }
            }
            prev = Some(s);
        }
        let lookup = |k: i32| recorded.range(k..).next().map(|(_, s)| s.clone()).unwrap_or_else(|| Subspace::zero(ambient));
        let lo = recorded.iter().filter(|(_, s)| s.is_full()).map(|(&k, _)| k).next_back().unwrap_or(bottom);
        let Some(hi) = recorded.iter().filter(|(_, s)| !s.is_zero()).map(|(&k, _)| k).next_back() else {
            return Ok(DecreasingFiltration { ambient, lo, steps: Vec::new() });
        };
        let steps = (lo..=hi).map(lookup).collect();
        Ok(DecreasingFiltration { ambient, lo, steps })
    }

    /// Filtration with a single jump: `F^p = V` for `p ≤ k`, `0` above.
    pub fn pure(ambient: usize, k: i32) -> Self {
        DecreasingFiltration::from_steps(ambient, BTreeMap::from([(k, Subspace::full(ambient))])).expect("pure filtration")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn get(&self, p: i32) -> Subspace {
        if p <= self.lo {
            Subspace::full(self.ambient)
        } else if (p - self.lo) as usize >= self.steps.len() {
            Subspace::zero(self.ambient)
        } else {
            self.steps[(p - self.lo) as usize].clone()
        }
    }

    /// `(last full index, last nonzero index)`.
    pub fn range(&self) -> (i32, i32) {
        (self.lo, self.lo + self.steps.len() as i32 - 1)
    }

    pub fn steps(&self) -> BTreeMap<i32, Subspace> {
        self.steps.iter().enumerate().map(|(k, s)| (self.lo + k as i32, s.clone())).collect()
    }

    pub fn map(&self, g: &Matrix) -> DecreasingFiltration {
        let recorded = self.steps().into_iter().map(|(k, s)| (k, s.map(g))).collect();
        DecreasingFiltration::from_steps(self.ambient, recorded).expect("image of a filtration under an automorphism")
    }

    pub fn conj(&self) -> DecreasingFiltration {
        DecreasingFiltration { ambient: self.ambient, lo: self.lo, steps: self.steps.iter().map(Subspace::conj).collect() }
    }

    pub fn is_preserved_by(&self, op: &Matrix) -> bool {
        self.steps.iter().all(|s| s.maps_into(op, s))
    }

    /// `op·F^p ⊆ F^{p+shift}` for all `p`.
    pub fn is_shifted_by(&self, op: &Matrix, shift: i32) -> bool {
        let (lo, hi) = self.range();
        (lo - shift.abs()..=hi + 1).all(|p| self.get(p).maps_into(op, &self.get(p + shift)))
    }
}

/// A semisimple operator with integer eigenvalues, with its eigenspaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grading {
    op: Matrix,
    eigen: Vec<(i32, Subspace)>,
}

impl Grading {
    /// Accepts `y` iff it is semisimple with integer spectrum.
    pub fn new(y: Matrix) -> Result<Self> {
        if !y.is_square() {
            return Err(HodgeError::NotAGrading("operator is not square".into()));
        }
        let n = y.rows();
        // Σ λ² = tr(Y²) bounds every integer eigenvalue.
        let t = (&y * &y).trace();
        let Some(t) = t.to_integer().filter(|t| !t.is_negative()) else {
            return Err(HodgeError::NotAGrading(format!("tr(Y²) = {t} is not a nonnegative integer")));
        };
        let bound: i64 = t.sqrt().try_into().map_err(|_| HodgeError::NotAGrading("spectrum too large".into()))?;
        let mut eigen = Vec::new();
        let mut total = 0;
        for k in -bound..=bound {
            let e = kernel(&(&y - &Matrix::scalar_identity(n, &Scalar::from(k))));
            if !e.is_zero() {
                total += e.dim();
                eigen.push((k as i32, e));
            }
        }
        if total != n {
            return Err(HodgeError::NotAGrading("not semisimple with integer eigenvalues".into()));
        }
        Ok(Grading { op: y, eigen })
    }

    /// The operator acting by `k` on each given subspace; the subspaces must
    /// form a direct sum decomposition.
    pub fn from_eigenspaces(ambient: usize, parts: &[(i32, Subspace)]) -> Result<Self> {
        let mut merged: BTreeMap<i32, Subspace> = BTreeMap::new();
        for (k, s) in parts {
            let e = merged.entry(*k).or_insert_with(|| Subspace::zero(ambient));
            *e = e.sum(s)?;
        }
        let refs: Vec<&Subspace> = merged.values().collect();
        if !is_direct_sum(&refs) || refs.iter().map(|s| s.dim()).sum::<usize>() != ambient {
            return Err(HodgeError::NotAGrading("eigenspaces do not decompose the space".into()));
        }
        let mut basis = Vec::new();
        let mut diag = Vec::new();
        for (k, s) in &merged {
            for v in s.basis() {
                basis.push(v.clone());
                diag.push(Scalar::from(*k as i64));
            }
        }
        let b = Matrix::from_columns(ambient, &basis);
        let op = &(&b * &Matrix::diag(&diag)) * &b.inverse()?;
        let eigen = merged.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        Ok(Grading { op, eigen })
    }

    pub fn op(&self) -> &Matrix {
        &self.op
    }

    pub fn into_op(self) -> Matrix {
        self.op
    }

    pub fn dim(&self) -> usize {
        self.op.rows()
    }

    /// `(eigenvalue, eigenspace)` pairs with increasing eigenvalue.
    pub fn eigen_pairs(&self) -> &[(i32, Subspace)] {
        &self.eigen
    }

    pub fn eigenspace(&self, k: i32) -> Subspace {
        self.eigen.iter().find(|(j, _)| *j == k).map(|(_, s)| s.clone()).unwrap_or_else(|| Subspace::zero(self.dim()))
    }

    pub fn spectrum(&self) -> Vec<i32> {
        self.eigen.iter().map(|(k, _)| *k).collect()
    }

    pub fn is_real(&self) -> bool {
        self.op.is_real()
    }

    pub fn is_integral(&self) -> bool {
        self.op.is_integral()
    }

    /// The increasing filtration `⊕_{i≤k} E_i`.
    pub fn filtration(&self) -> IncreasingFiltration {
        let n = self.dim();
        let mut acc = Subspace::zero(n);
        let mut steps = BTreeMap::new();
        for (k, e) in &self.eigen {
            acc = acc.sum(e).expect("same ambient");
            steps.insert(*k, acc.clone());
        }
        IncreasingFiltration::from_steps(n, steps).expect("grading filtration")
    }
}

/// Eigenspaces of `y` in the order of `expected`, skipping zero eigenspaces.
pub fn eigen_decompose(y: &Matrix, expected: &[i32]) -> Result<Vec<(i32, Subspace)>> {
    let g = Grading::new(y.clone())?;
    if let Some(k) = g.spectrum().into_iter().find(|k| !expected.contains(k)) {
        return Err(HodgeError::NotAGrading(format!("unexpected eigenvalue {k}")));
    }
    Ok(expected.iter().filter_map(|&k| {
        let e = g.eigenspace(k);
        (!e.is_zero()).then_some((k, e))
    }).collect())
}

/// `L_i = E_i(Y) ⊕ L_{i−1}` for every `i`.
pub fn is_grading_of(y: &Grading, w: &IncreasingFiltration) -> bool {
    if y.dim() != w.ambient_dim() {
        return false;
    }
    let n = y.dim();
    let (wlo, whi) = w.range().unwrap_or((0, 0));
    let lo = y.spectrum().first().copied().unwrap_or(0).min(wlo) - 1;
    let hi = y.spectrum().last().copied().unwrap_or(0).max(whi);
    let mut acc = Subspace::zero(n);
    for k in lo..=hi {
        acc = acc.sum(&y.eigenspace(k)).expect("same ambient");
        if acc != w.get(k) {
            return false;
        }
    }
    true
}

/// `g·Y = g Y g⁻¹`.
pub fn conjugate_grading(g: &Matrix, y: &Grading) -> Result<Grading> {
    let g_inv = g.inverse()?;
    let op = y.op().conjugate_by(g, &g_inv);
    let eigen = y.eigen.iter().map(|(k, e)| (*k, e.map(g))).collect();
    Ok(Grading { op, eigen })
}

/// The quotient `sup / sub` with a fixed complement of `sub` in `sup`.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    complement: Vec<Vector>,
    basis: Matrix,
}

impl Quotient {
    pub fn new(sup: &Subspace, sub: &Subspace) -> Self {
        assert!(sup.contains(sub), "quotient needs sub ⊆ sup");
        let complement = sub.complement_in(sup);
        let mut cols = complement.clone();
        cols.extend(sub.basis().iter().cloned());
        let basis = Matrix::from_columns(sup.ambient_dim(), &cols);
        Quotient { sub: sub.clone(), complement, basis }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn complement(&self) -> &[Vector] {
        &self.complement
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// Coordinates of the class of `v ∈ sup`.
    pub fn coords(&self, v: &[Scalar]) -> Vector {
        let c = self.basis.solve(v).expect("vector lies in the numerator");
        c[..self.dim()].to_vec()
    }

    /// A representative of the class with the given coordinates.
    pub fn lift(&self, c: &[Scalar]) -> Vector {
        combine(self.basis.rows(), c, &self.complement)
    }

    /// Image of a subspace of `sup` in the quotient.
    pub fn project(&self, s: &Subspace) -> Subspace {
        Subspace::span(self.dim(), &s.basis().iter().map(|v| self.coords(v)).collect::<Vec<_>>())
    }

    /// Matrix of the map induced by an operator preserving `sub` and `sup`.
    pub fn induced(&self, op: &Matrix) -> Matrix {
        let cols: Vec<Vector> = self.complement.iter().map(|v| self.coords(&op.mul_vec(v))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }
}

/// `Gr^W_k = W_k / W_{k−1}`.
pub fn graded_piece(w: &IncreasingFiltration, k: i32) -> Quotient {
    Quotient::new(&w.get(k), &w.get(k - 1))
}

/// Jordan strings `[v, Nv, …, N^{ℓ−1}v]` of a nilpotent operator, longest
/// first. Heads are chosen greedily from canonical kernel bases.
pub fn jordan_strings(n: &Matrix) -> Result<Vec<Vec<Vector>>> {
    let order = n.nilpotency_order().ok_or(HodgeError::NotNilpotent)? as usize;
    let dim = n.rows();
    let mut kernels = vec![Subspace::zero(dim)];
    let mut p = Matrix::identity(dim);
    for _ in 0..order {
        p = &p * n;
        kernels.push(kernel(&p));
    }
    let mut strings: Vec<Vec<Vector>> = Vec::new();
    for len in (1..=order).rev() {
        // Vectors already accounted for at depth `len`.
        let mut taken: Vec<Vector> = kernels[len - 1].basis().to_vec();
        for s in &strings {
            taken.push(s[s.len() - len].clone());
        }
        let covered = Subspace::span(dim, &taken);
        for head in covered.complement_in(&kernels[len]) {
            let mut s = vec![head];
            for _ in 1..len {
                let next = n.mul_vec(s.last().expect("nonempty"));
                s.push(next);
            }
            strings.push(s);
        }
    }
    Ok(strings)
}

fn filtration_from_weighted(dim: usize, vectors: &[(i32, Vector)], base: &BTreeMap<i32, Subspace>) -> BTreeMap<i32, Subspace> {
    let mut ks: Vec<i32> = vectors.iter().map(|(k, _)| *k).chain(base.keys().copied()).collect();
    ks.sort_unstable();
    ks.dedup();
    let base_at = |k: i32| -> Subspace {
        match base.range(..=k).next_back() {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(dim),
        }
    };
    ks.into_iter()
        .map(|k| {
            let mut vs: Vec<Vector> = base_at(k).basis().to_vec();
            vs.extend(vectors.iter().filter(|(w, _)| *w <= k).map(|(_, v)| v.clone()));
            (k, Subspace::span(dim, &vs))
        })
        .collect()
}

/// The monodromy weight filtration of `n` centred at `center`.
pub fn monodromy_weight_filtration(n: &Matrix, center: i32) -> Result<IncreasingFiltration> {
    let dim = n.rows();
    let mut weighted = Vec::new();
    for s in jordan_strings(n)? {
        let l = s.len() as i32;
        for (t, v) in s.into_iter().enumerate() {
            weighted.push((center + l - 1 - 2 * t as i32, v));
        }
    }
    if weighted.is_empty() {
        return Ok(IncreasingFiltration::pure(dim, center));
    }
    IncreasingFiltration::from_steps(dim, filtration_from_weighted(dim, &weighted, &BTreeMap::new()))
}

/// Witness that a relative weight filtration cannot exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    /// Weight of the graded piece where lifting failed.
    pub weight: i32,
    /// A representative of the offending string head.
    pub head: Vector,
    /// Length of its Jordan string on the graded piece.
    pub length: usize,
}

/// The relative weight filtration `M(N, W)`, or the obstruction to its existence.
///
/// Built weight by weight from the bottom of `W`: once `M` is known on
/// `U = W_{b−1}`, each string head `c` of length `ℓ` on `Gr^W_b` must be
/// corrected by some `u ∈ U` with `N^ℓ(c + u) ∈ M_{b−ℓ−1}`. This is a linear
/// condition, and its solvability for every head is equivalent to existence.
pub fn relative_weight_filtration(n: &Matrix, w: &IncreasingFiltration) -> Result<std::result::Result<IncreasingFiltration, Obstruction>> {
    let dim = w.ambient_dim();
    if n.rows() != dim || !n.is_square() {
        return Err(HodgeError::DimensionMismatch { expected: dim, found: n.rows() });
    }
    if !n.is_nilpotent() {
        return Err(HodgeError::NotNilpotent);
    }
    if !w.is_preserved_by(n) {
        return Err(HodgeError::NotFiltrationPreserving);
    }
    let Some((lo, hi)) = w.range() else {
        return Ok(Ok(w.clone()));
    };
    // M on the current W_top, as recorded steps (zero below, W_top above).
    let mut m: BTreeMap<i32, Subspace> = BTreeMap::new();
    for top in lo..=hi {
        let q = graded_piece(w, top);
        if q.dim() == 0 {
            continue;
        }
        let nbar = q.induced(n);
        let mut weighted: Vec<(i32, Vector)> = Vec::new();
        for s in jordan_strings(&nbar)? {
            let len = s.len();
            let c = q.lift(&s[0]);
            let target_weight = top - len as i32 - 1;
            let target = lookup_step(&m, target_weight, dim);
            let nl = n.pow(len as u32);
            let nlc = nl.mul_vec(&c);
            let u_space = w.get(top - 1);
            let Some(u) = correction(&nl, &nlc, &u_space, &target) else {
                return Ok(Err(Obstruction { weight: top, head: c, length: len }));
            };
            let mut v = crate::linalg::matrix::vec_add(&c, &u);
            for t in 0..len {
                weighted.push((top + len as i32 - 1 - 2 * t as i32, v.clone()));
                v = n.mul_vec(&v);
            }
        }
        m = filtration_from_weighted(dim, &weighted, &m);
    }
    let f = IncreasingFiltration::from_steps(dim, m)?;
    Ok(Ok(f))
}

fn lookup_step(m: &BTreeMap<i32, Subspace>, k: i32, dim: usize) -> Subspace {
    m.range(..=k).next_back().map(|(_, s)| s.clone()).unwrap_or_else(|| Subspace::zero(dim))
}

/// Some `u ∈ U` with `nlc + nl·u ∈ target`.
fn correction(nl: &Matrix, nlc: &[Scalar], u_space: &Subspace, target: &Subspace) -> Option<Vector> {
    let dim = nlc.len();
    let ub = u_space.basis();
    let tb = target.basis();
    let mut cols: Vec<Vector> = ub.iter().map(|u| nl.mul_vec(u)).collect();
    cols.extend(tb.iter().map(|t| t.iter().map(|x| -x).collect::<Vector>()));
    let rhs: Vector = nlc.iter().map(|x| -x).collect();
    if cols.is_empty() {
        return crate::linalg::matrix::is_zero_vec(nlc).then(|| vec![Scalar::zero(); dim]);
    }
    let x = Matrix::from_columns(dim, &cols).solve(&rhs)?;
    Some(combine(dim, &x[..ub.len()], ub))
}

/// Checks that `m` is the monodromy filtration of `n` centred at `center`:
/// `n·M_k ⊆ M_{k−2}` and `n^ℓ` maps `Gr_{center+ℓ}` isomorphically onto
/// `Gr_{center−ℓ}`. Works on subspace lists so it can run on quotients.
pub fn check_monodromy_axioms(n: &Matrix, m: &IncreasingFiltration, center: i32) -> std::result::Result<(), String> {
    let Some((lo, hi)) = m.range() else { return Ok(()) };
    for k in lo - 2..=hi + 2 {
        if !m.get(k).maps_into(n, &m.get(k - 2)) {
            return Err(format!("N·M_{k} ⊄ M_{}", k - 2));
        }
    }
    let spread = (hi - center).max(center - lo).max(0);
    for l in 0..=spread + 1 {
        let up = center + l;
        let down = center - l;
        if m.graded_dim(up) != m.graded_dim(down) {
            return Err(format!("dim Gr_{up} ≠ dim Gr_{down}"));
        }
        let nl = n.pow(l as u32);
        let img = m.get(up).map(&nl).sum(&m.get(down - 1)).expect("same ambient");
        if img != m.get(down) {
            return Err(format!("N^{l} is not onto Gr_{down}"));
        }
    }
    Ok(())
}

/// Independent verification of the two defining axioms of `M(N, W)`.
pub fn check_relative_axioms(n: &Matrix, w: &IncreasingFiltration, m: &IncreasingFiltration) -> std::result::Result<(), String> {
    let (mlo, mhi) = m.range().unwrap_or((0, 0));
    for k in mlo - 2..=mhi + 2 {
        if !m.get(k).maps_into(n, &m.get(k - 2)) {
            return Err(format!("N·M_{k} ⊄ M_{}", k - 2));
        }
    }
    for k in w.weights() {
        let q = graded_piece(w, k);
        let nbar = q.induced(n);
        let wk = w.get(k);
        let mut steps = BTreeMap::new();
        for j in mlo - 1..=mhi {
            steps.insert(j, q.project(&m.get(j).intersect(&wk).expect("same ambient")));
        }
        steps.insert(mhi.max(k) + 1, Subspace::full(q.dim()));
        let induced = IncreasingFiltration::from_steps(q.dim(), steps).map_err(|e| e.to_string())?;
        check_monodromy_axioms(&nbar, &induced, k).map_err(|e| format!("on Gr^W_{k}: {e}"))?;
    }
    Ok(())
}

/// Coordinate grading by `Gr^W`: each coordinate vector `e_j` placed at the
/// lowest `k` with `e_j ∈ W_k`, if those vectors decompose `W`.
pub fn coordinate_grading(w: &IncreasingFiltration) -> Option<Grading> {
    let n = w.ambient_dim();
    let parts: Vec<(i32, Subspace)> = (0..n)
        .map(|j| {
            let e = unit_vector(n, j);
            let k = w.weights().into_iter().find(|&k| w.get(k).contains_vector(&e))?;
            Some((k, Subspace::span(n, &[e])))
        })
        .collect::<Option<_>>()?;
    let g = Grading::from_eigenspaces(n, &parts).ok()?;
    is_grading_of(&g, w).then_some(g)
}

/// A rational grading of a rational filtration, from complements of
/// consecutive steps.
pub fn rational_grading(w: &IncreasingFiltration) -> Grading {
    let n = w.ambient_dim();
    let parts: Vec<(i32, Subspace)> = w
        .weights()
        .into_iter()
        .map(|k| {
            let q = graded_piece(w, k);
            (k, Subspace::span(n, q.complement()))
        })
        .collect();
    Grading::from_eigenspaces(n, &parts).expect("complements decompose the space")
}

/// Union of images and kernels helper used by tests and diagnostics.
pub fn image_of_power(n: &Matrix, k: u32) -> Subspace {
    image(&n.pow(k))
}

/// Sum of the eigenspaces `E_i(Y)` for `i ≤ k`.
pub fn eigen_partial_sum(y: &Grading, k: i32) -> Subspace {
    let parts: Vec<&Subspace> = y.eigen.iter().filter(|(i, _)| *i <= k).map(|(_, s)| s).collect();
    sum_all(y.dim(), &parts)
}

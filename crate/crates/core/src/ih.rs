//! The B•-complex computing local intersection cohomology of a unipotent
//! local system on a product of punctured disks, the long exact sequence
//! of an extension of ℚ(0), singularity classes and the torsion group G.

use num_bigint::BigInt;

use crate::error::{HodgeError, Result};
use crate::filtration::{relative_weight_filtration, IncreasingFiltration};
use crate::linalg::lattice::CokernelTorsion;
use crate::linalg::matrix::{exp_series, vec_add, vec_scale, vec_sub};
use crate::linalg::subspace::kernel;
use crate::linalg::{IntegerLattice, Matrix, Scalar, Subspace, Vector};

/// Index tuples `j₁ < ⋯ < j_p` in lexicographic order.
pub fn subsets(r: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for j in start..r {
            cur.push(j);
            go(j + 1, r, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, p, &mut Vec::new(), &mut out);
    out
}

/// Commuting nilpotent logarithms on a rational space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystemData {
    dim: usize,
    logs: Vec<Matrix>,
    lattice: Option<IntegerLattice>,
}

impl LocalSystemData {
    pub fn new(dim: usize, logs: Vec<Matrix>, lattice: Option<IntegerLattice>) -> Result<Self> {
        check_logs(dim, &logs)?;
        if let Some(l) = &lattice {
            for n in &logs {
                l.operator_coordinates(n)?;
            }
        }
        Ok(LocalSystemData { dim, logs, lattice })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn logs(&self) -> &[Matrix] {
        &self.logs
    }

    pub fn lattice(&self) -> Option<&IntegerLattice> {
        self.lattice.as_ref()
    }
}

fn check_logs(dim: usize, logs: &[Matrix]) -> Result<()> {
    for n in logs {
        if n.rows() != dim || n.cols() != dim {
            return Err(HodgeError::DimensionMismatch { expected: dim, found: n.rows() });
        }
        if !n.is_nilpotent() {
            return Err(HodgeError::NotNilpotent);
        }
    }
    for i in 0..logs.len() {
        for j in i + 1..logs.len() {
            if !Matrix::bracket(&logs[i], &logs[j]).is_zero() {
                return Err(HodgeError::NonCommuting(i, j));
            }
        }
    }
    Ok(())
}

/// `B^p = ⊕_J N_J(A)`, each term embedded in `A^{C(r,p)}` so that the
/// differential is a single block matrix with blocks `(−1)^{q−1} N_{j_q}`.
#[derive(Clone, Debug)]
pub struct BComplex {
    dim: usize,
    r: usize,
    summands: Vec<Vec<(Vec<usize>, Subspace)>>,
    terms: Vec<Subspace>,
    diffs: Vec<Matrix>,
}

/// Cohomology of a complex in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    /// Representatives of a basis of the quotient.
    pub representatives: Vec<Vector>,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Whether a cocycle is cohomologous to zero.
    pub fn is_trivial(&self, z: &[Scalar]) -> bool {
        self.coboundaries.contains_vector(z)
    }
}

impl BComplex {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// `B^p` inside `A^{C(r,p)}`; zero outside `0..=r`.
    pub fn term(&self, p: usize) -> &Subspace {
        &self.terms[p]
    }

    pub fn summands(&self, p: usize) -> &[(Vec<usize>, Subspace)] {
        &self.summands[p]
    }

    /// `d: A^{C(r,p)} → A^{C(r,p+1)}`.
    pub fn differential(&self, p: usize) -> &Matrix {
        &self.diffs[p]
    }

    pub fn cohomology(&self, p: usize) -> Cohomology {
        let cocycles = if p < self.r {
            self.terms[p].intersect(&kernel(&self.diffs[p])).expect("same ambient")
        } else {
            self.terms[p].clone()
        };
        let coboundaries = if p == 0 {
            Subspace::zero(self.terms[0].ambient_dim())
        } else {
            self.terms[p - 1].map(&self.diffs[p - 1])
        };
        let representatives = coboundaries.complement_in(&cocycles);
        Cohomology { cocycles, coboundaries, representatives }
    }

    /// Σ (−1)^p dim B^p.
    pub fn euler_characteristic(&self) -> i64 {
        self.terms.iter().enumerate().map(|(p, t)| if p % 2 == 0 { t.dim() as i64 } else { -(t.dim() as i64) }).sum()
    }
}

/// `B•` for the local system restricted to an invariant subspace `base`.
pub fn build_b_complex_on(logs: &[Matrix], base: &Subspace) -> Result<BComplex> {
    let dim = base.ambient_dim();
    check_logs(dim, logs)?;
    if logs.iter().any(|n| !base.maps_into(n, base)) {
        return Err(HodgeError::Precondition("base subspace is not invariant".into()));
    }
    let r = logs.len();
    let mut summands = Vec::new();
    let mut terms = Vec::new();
    for p in 0..=r {
        let subs = subsets(r, p);
        let mut parts = Vec::new();
        let mut gens: Vec<Vector> = Vec::new();
        for (k, j) in subs.iter().enumerate() {
            let nj = j.iter().fold(Matrix::identity(dim), |acc, &i| &acc * &logs[i]);
            let s = base.map(&nj);
            for v in s.basis() {
                let mut big = vec![Scalar::zero(); dim * subs.len()];
                big[k * dim..(k + 1) * dim].clone_from_slice(v);
                gens.push(big);
            }
            parts.push((j.clone(), s));
        }
        summands.push(parts);
        terms.push(Subspace::span(dim * subs.len(), &gens));
    }
    let mut diffs = Vec::new();
    for p in 0..r {
        let from = subsets(r, p);
        let to = subsets(r, p + 1);
        let mut d = Matrix::zeros(dim * to.len(), dim * from.len());
        for (a, j) in from.iter().enumerate() {
            for extra in (0..r).filter(|x| !j.contains(x)) {
                let mut jj = j.clone();
                jj.push(extra);
                jj.sort_unstable();
                let q = jj.iter().position(|&x| x == extra).expect("inserted");
                let b = to.iter().position(|t| *t == jj).expect("subset");
                let sign = if q % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                for row in 0..dim {
                    for col in 0..dim {
                        let x = &logs[extra][(row, col)];
                        if !x.is_zero() {
                            d[(b * dim + row, a * dim + col)] = x * &sign;
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    for p in 0..r.saturating_sub(1) {
        if !(&diffs[p + 1] * &diffs[p]).is_zero() {
            return Err(HodgeError::Internal("d² ≠ 0".into()));
        }
    }
    Ok(BComplex { dim, r, summands, terms, diffs })
}

pub fn build_b_complex(ls: &LocalSystemData) -> Result<BComplex> {
    build_b_complex_on(&ls.logs, &Subspace::full(ls.dim))
}

/// `dim IH^p` together with representative cocycles.
pub fn ih_dim(b: &BComplex, p: usize) -> (usize, Vec<Vector>) {
    if p > b.r {
        return (0, Vec::new());
    }
    let h = b.cohomology(p);
    (h.dim(), h.representatives)
}

/// An extension `0 → H → V → ℚ(0) → 0` with commuting logs `N_j`,
/// `W₋₁ = H`, and a distinguished lift `e₀` of `1 ∈ Gr^W_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnfData {
    dim: usize,
    h: Subspace,
    e0: Vector,
    logs: Vec<Matrix>,
    lattice: Option<IntegerLattice>,
}

impl AnfData {
    pub fn new(h: Subspace, e0: Vector, logs: Vec<Matrix>, lattice: Option<IntegerLattice>) -> Result<Self> {
        let dim = h.ambient_dim();
        if h.dim() + 1 != dim {
            return Err(HodgeError::Precondition("Gr^W_0 must have rank one".into()));
        }
        if !h.is_real() || !e0.iter().all(Scalar::is_real) {
            return Err(HodgeError::Precondition("H and e₀ must be rational".into()));
        }
        if h.contains_vector(&e0) {
            return Err(HodgeError::Precondition("e₀ lies in H".into()));
        }
        check_logs(dim, &logs)?;
        for (j, n) in logs.iter().enumerate() {
            if !Subspace::full(dim).maps_into(n, &h) {
                return Err(HodgeError::Precondition(format!("N_{} does not map V into W_-1", j + 1)));
            }
        }
        if let Some(l) = &lattice {
            if l.rank() != dim {
                return Err(HodgeError::Precondition("lattice must have full rank".into()));
            }
            for n in &logs {
                l.operator_coordinates(&exp_series(n))?;
            }
        }
        Ok(AnfData { dim, h, e0, logs, lattice })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn e0(&self) -> &Vector {
        &self.e0
    }

    pub fn logs(&self) -> &[Matrix] {
        &self.logs
    }

    pub fn lattice(&self) -> Option<&IntegerLattice> {
        self.lattice.as_ref()
    }

    pub fn weight_filtration(&self) -> IncreasingFiltration {
        IncreasingFiltration::two_step(self.dim, -1, self.h.clone(), 0).expect("two-step W")
    }

    /// `β: V → ℚ(0)`, the coefficient of `e₀` modulo `H`.
    pub fn beta(&self, v: &[Scalar]) -> Scalar {
        let mut cols = vec![self.e0.clone()];
        cols.extend(self.h.basis().iter().cloned());
        let c = Matrix::from_columns(self.dim, &cols).solve(v).expect("e₀ and H span V");
        c[0].clone()
    }

    /// Existence of each `M(N_j, W)`; returns the first failing index.
    pub fn first_without_relative_filtration(&self) -> Result<Option<usize>> {
        let w = self.weight_filtration();
        for (j, n) in self.logs.iter().enumerate() {
            if relative_weight_filtration(n, &w)?.is_err() {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }
}

/// A class in `IH¹(H)` represented by the cocycle `(N₁v, …, N_rv)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IhClass {
    pub cocycle: Vector,
    pub is_zero: bool,
    /// Coordinates against the representatives of `IH¹(H)`.
    pub coordinates: Vector,
}

fn tuple(logs: &[Matrix], v: &[Scalar]) -> Vector {
    logs.iter().flat_map(|n| n.mul_vec(v)).collect()
}

fn class_in(h1: &Cohomology, z: &[Scalar]) -> Result<IhClass> {
    if !h1.cocycles.contains_vector(z) {
        return Err(HodgeError::Internal("connecting map produced a non-cocycle".into()));
    }
    let n = z.len();
    let mut cols = h1.representatives.clone();
    cols.extend(h1.coboundaries.basis().iter().cloned());
    let coords = if cols.is_empty() {
        Vec::new()
    } else {
        let c = Matrix::from_columns(n, &cols).solve(z).ok_or_else(|| HodgeError::Internal("class coordinates".into()))?;
        c[..h1.representatives.len()].to_vec()
    };
    Ok(IhClass { cocycle: z.to_vec(), is_zero: h1.is_trivial(z), coordinates: coords })
}

/// `∂[c] = (N₁v, …, N_rv) mod dB⁰(H)` for any lift `v` of `c ∈ ℚ(0)`;
/// checked against a second lift.
pub fn connecting(anf: &AnfData, c: &Scalar) -> Result<IhClass> {
    let bh = build_b_complex_on(&anf.logs, &anf.h)?;
    if anf.logs.is_empty() {
        return Ok(IhClass { cocycle: Vec::new(), is_zero: true, coordinates: Vec::new() });
    }
    let h1 = bh.cohomology(1);
    let v = vec_scale(&anf.e0, c);
    let class = class_in(&h1, &tuple(&anf.logs, &v))?;
    if let Some(h) = anf.h.basis().first() {
        let other = class_in(&h1, &tuple(&anf.logs, &vec_add(&v, h)))?;
        if other.coordinates != class.coordinates {
            return Err(HodgeError::Internal("connecting map depends on the lift".into()));
        }
    }
    Ok(class)
}

/// `sing(ν) = ∂[1]`.
pub fn sing_class(anf: &AnfData) -> Result<IhClass> {
    connecting(anf, &Scalar::one())
}

/// Some `h ∈ H` with `N_j(e₀) = N_j(h)` for every `j`; exists iff `sing = 0`.
pub fn sing_lift(anf: &AnfData) -> Option<Vector> {
    let n = anf.dim;
    if anf.logs.is_empty() {
        return Some(vec![Scalar::zero(); n]);
    }
    let hb = anf.h.basis();
    let cols: Vec<Vector> = hb.iter().map(|h| tuple(&anf.logs, h)).collect();
    let target = tuple(&anf.logs, &anf.e0);
    let x = if cols.is_empty() {
        return crate::linalg::matrix::is_zero_vec(&target).then(|| vec![Scalar::zero(); n]);
    } else {
        Matrix::from_columns(target.len(), &cols).solve(&target)?
    };
    Some(crate::linalg::matrix::combine(n, &x, hb))
}

/// Invariant factors of `G = (L ∩ (T−1)L_ℚ) / (T−1)L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionGroup {
    pub invariant_factors: Vec<BigInt>,
}

impl TorsionGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

pub fn torsion_group(t_minus_1: &Matrix, lattice: &IntegerLattice) -> Result<TorsionGroup> {
    let a = lattice.operator_coordinates(t_minus_1)?;
    let g = CokernelTorsion::new(&a, lattice.rank());
    Ok(TorsionGroup { invariant_factors: g.invariant_factors().to_vec() })
}

/// The class `σ` of `(T−1)e₀` in `G`, for one log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTorsion {
    pub group: TorsionGroup,
    pub class: Vec<BigInt>,
    pub nonzero: bool,
    /// `(T−1)e₀` in ambient coordinates.
    pub image: Vector,
}

pub fn sigma_torsion(anf: &AnfData) -> Result<SigmaTorsion> {
    if anf.logs.len() != 1 {
        return Err(HodgeError::Unsupported("σ is only computed for a single log".into()));
    }
    let lattice = anf.lattice.as_ref().ok_or_else(|| HodgeError::Precondition("no lattice".into()))?;
    if !lattice.contains(&anf.e0) {
        return Err(HodgeError::Precondition("e₀ is not an integral lift".into()));
    }
    let hz = lattice.intersect_subspace(&anf.h);
    let t1 = &exp_series(&anf.logs[0]) - &Matrix::identity(anf.dim);
    let a = hz.operator_coordinates(&t1)?;
    let g = CokernelTorsion::new(&a, hz.rank());
    let class_at = |lift: &[Scalar]| -> Result<Vec<BigInt>> {
        let x = t1.mul_vec(lift);
        let coords = hz.integer_coordinates(&x).ok_or_else(|| HodgeError::Internal("(T−1)e₀ ∉ H_ℤ".into()))?;
        g.class_of(&coords)
    };
    let class = class_at(&anf.e0)?;
    if hz.rank() > 0 {
        let h1 = hz.basis().column(0);
        if class_at(&vec_add(&anf.e0, &h1))? != class {
            return Err(HodgeError::Internal("σ depends on the integral lift".into()));
        }
    }
    let nonzero = class.iter().any(|c| c != &BigInt::from(0));
    Ok(SigmaTorsion {
        group: TorsionGroup { invariant_factors: g.invariant_factors().to_vec() },
        class,
        nonzero,
        image: t1.mul_vec(&anf.e0),
    })
}

/// Exactness report for the long exact sequence of `0 → H → V → ℚ(0) → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesReport {
    pub ih_h: Vec<usize>,
    pub ih_v: Vec<usize>,
    pub ih_q: Vec<usize>,
    /// `(node, exact)` in sequence order.
    pub nodes: Vec<(String, bool)>,
    pub b_agree: bool,
    pub sing_zero: bool,
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|(_, ok)| *ok)
    }
}

pub fn les_verify(anf: &AnfData) -> Result<LesReport> {
    if let Some(j) = anf.first_without_relative_filtration()? {
        return Err(HodgeError::NoRelativeFiltration(format!("N_{} has no relative weight filtration", j + 1)));
    }
    let r = anf.logs.len();
    let n = anf.dim;
    let bh = build_b_complex_on(&anf.logs, &anf.h)?;
    let bv = build_b_complex_on(&anf.logs, &Subspace::full(n))?;
    let zero_logs = vec![Matrix::zeros(1, 1); r];
    let bq = build_b_complex_on(&zero_logs, &Subspace::full(1))?;
    let ch: Vec<Cohomology> = (0..=r).map(|p| bh.cohomology(p)).collect();
    let cv: Vec<Cohomology> = (0..=r).map(|p| bv.cohomology(p)).collect();
    let cq: Vec<Cohomology> = (0..=r).map(|p| bq.cohomology(p)).collect();

    let b_agree = (1..=r).all(|p| bh.term(p) == bv.term(p));
    let mut nodes = Vec::new();
    let q0_ok = cq[0].dim() == 1 && cq[1..].iter().all(|c| c.dim() == 0);
    nodes.push(("IH(Q(0)) = Q in degree 0 only".to_string(), q0_ok));

    // ∂ on IH⁰(ℚ) = ℚ, as the image of 1.
    let del = if r > 0 { Some(tuple(&anf.logs, &anf.e0)) } else { None };
    for p in 0..=r {
        // At IH^p(H): ker α* = im ∂ (+ coboundaries).
        let ker_alpha = ch[p].cocycles.intersect(&cv[p].coboundaries)?;
        let mut im_del = ch[p].coboundaries.clone();
        if p == 1 {
            if let Some(d) = &del {
                im_del = im_del.sum(&Subspace::span(d.len(), std::slice::from_ref(d)))?;
            }
        }
        nodes.push((format!("IH^{p}(H)"), ker_alpha == im_del));
        // At IH^p(V): ker β* = im α*.
        let ker_beta = if p == 0 {
            cv[0].cocycles.intersect(&anf.h)?
        } else {
            cv[p].cocycles.clone()
        };
        let im_alpha = ch[p].cocycles.sum(&cv[p].coboundaries)?;
        nodes.push((format!("IH^{p}(V)"), ker_beta == im_alpha));
        // At IH^p(ℚ): ker ∂ = im β*.
        if p == 0 {
            let im_beta = cv[0].cocycles.basis().iter().any(|v| !anf.beta(v).is_zero());
            let ker_del = match &del {
                None => true,
                Some(d) => ch[1].is_trivial(d),
            };
            nodes.push(("IH^0(Q(0))".to_string(), im_beta == ker_del));
        } else {
            nodes.push((format!("IH^{p}(Q(0))"), cq[p].dim() == 0));
        }
    }
    let sing_zero = match &del {
        None => true,
        Some(d) => ch[1].is_trivial(d),
    };
    Ok(LesReport {
        ih_h: ch.iter().map(Cohomology::dim).collect(),
        ih_v: cv.iter().map(Cohomology::dim).collect(),
        ih_q: cq.iter().map(Cohomology::dim).collect(),
        nodes,
        b_agree,
        sing_zero,
    })
}

/// The difference `v − h` used to lift `[1]` to `IH⁰(V)` when `sing = 0`.
pub fn invariant_lift(anf: &AnfData) -> Option<Vector> {
    sing_lift(anf).map(|h| vec_sub(&anf.e0, &h))
}

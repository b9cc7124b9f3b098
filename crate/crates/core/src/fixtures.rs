//! Small worked examples used throughout the tests, the CLI corpus and the
//! documentation. Basis vectors are `e₀, e₁, …`.

use std::collections::BTreeMap;

use crate::filtration::{DecreasingFiltration, IncreasingFiltration};
use crate::ih::{AnfData, LocalSystemData};
use crate::linalg::{IntegerLattice, MatPoly, Matrix, Scalar, Subspace, Vector};
use crate::orbits::{LocalNormalForm, NilpotentOrbitData};

fn v(entries: &[Scalar]) -> Vector {
    entries.to_vec()
}

fn ints(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Scalar::from(x)).collect()
}

fn decreasing(dim: usize, steps: Vec<(i32, Vec<Vector>)>) -> DecreasingFiltration {
    let map: BTreeMap<i32, Subspace> = steps.into_iter().map(|(p, b)| (p, Subspace::span(dim, &b))).collect();
    DecreasingFiltration::from_steps(dim, map).expect("fixture filtration")
}

/// `W₋₁ = span{e₁, …}`, `W₀ = V`.
pub fn extension_w(dim: usize) -> IncreasingFiltration {
    IncreasingFiltration::two_step(dim, -1, Subspace::coordinate(dim, &(1..dim).collect::<Vec<_>>()), 0).expect("two-step")
}

/// `V = ℚ²` with `u = e₀`, `v = e₁`: `W₋₂ = span v`, `F⁰ = span(u + iv)`.
pub fn fix1() -> (DecreasingFiltration, IncreasingFiltration) {
    let w = IncreasingFiltration::two_step(2, -2, Subspace::coordinate(2, &[1]), 0).expect("two-step");
    let f = decreasing(2, vec![(-1, vec![ints(&[1, 0]), ints(&[0, 1])]), (0, vec![v(&[Scalar::one(), Scalar::i()])])]);
    (f, w)
}

/// Pure weight `−1` on `ℚ²` with `N: e₀ ↦ e₁` and `F⁰ = span e₀`; `F` is a
/// Hodge filtration for `M(N, W)`, not for `W`.
pub fn fix2() -> (DecreasingFiltration, IncreasingFiltration, Matrix) {
    let f = decreasing(2, vec![(-1, vec![ints(&[1, 0]), ints(&[0, 1])]), (0, vec![ints(&[1, 0])])]);
    (f, IncreasingFiltration::pure(2, -1), Matrix::unit(2, 1, 0))
}

/// `N: e₀ ↦ a·e₂, e₁ ↦ e₂`.
pub fn fix3_n(a: &Scalar) -> Matrix {
    let mut n = Matrix::zeros(3, 3);
    n[(2, 0)] = a.clone();
    n[(2, 1)] = Scalar::one();
    n
}

/// `F⁰ = span{e₀, e₁}`, `F⁻¹ = V`.
pub fn fix3_f() -> DecreasingFiltration {
    decreasing(3, vec![(-1, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]), (0, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])])])
}

/// `Y_M = diag(0, 0, −2)`.
pub fn fix3_y_m() -> Matrix {
    Matrix::diag_ints(&[0, 0, -2])
}

/// A lattice preserved by `e^N` for FIX3 with parameter `a`: `ℤ³` when `a`
/// is an integer, otherwise `span{e₀, e₁, e₂/q}` with `q` the denominator.
pub fn fix3_lattice(a: &Scalar) -> IntegerLattice {
    if a.is_integral() {
        return IntegerLattice::standard(3);
    }
    let mut d = Scalar::one();
    while !(a * &d).is_integral() {
        d = &d + &Scalar::one();
    }
    let mut b = Matrix::identity(3);
    b[(2, 2)] = d.inv().expect("nonzero");
    IntegerLattice::new(b).expect("full rank")
}

pub fn fix3_orbit(a: &Scalar) -> NilpotentOrbitData {
    NilpotentOrbitData::new(extension_w(3), vec![fix3_n(a)], fix3_f(), Some(fix3_lattice(a))).expect("FIX3")
}

pub fn fix3_lnf(a: &Scalar) -> LocalNormalForm {
    LocalNormalForm::untwisted(fix3_orbit(a))
}

/// `Λ: e₀ ↦ e₂`, which lies in `Λ^{−1,−1}` of FIX3's limit.
pub fn fix3_lambda() -> Matrix {
    Matrix::unit(3, 2, 0)
}

/// FIX3 with `F_∞` replaced by `e^{i t Λ}·F_∞`, a non-split limit with
/// `δ = tΛ`.
pub fn fix3_twisted(a: &Scalar, t: &Scalar) -> NilpotentOrbitData {
    let o = fix3_orbit(a);
    let g = crate::linalg::nilpotent_exp(&fix3_lambda().scale(&(t * &Scalar::i()))).expect("nilpotent");
    o.with_f_inf(o.f_inf().map(&g))
}

pub fn fix3_anf(a: &Scalar) -> AnfData {
    AnfData::new(Subspace::coordinate(3, &[1, 2]), ints(&[1, 0, 0]), vec![fix3_n(a)], Some(fix3_lattice(a))).expect("FIX3 extension")
}

/// `N: e₀ ↦ e₂, e₁ ↦ 2e₂` on `ℤ³`.
pub fn fix4_n() -> Matrix {
    Matrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[1, 2, 0]])
}

pub fn fix4_anf() -> AnfData {
    AnfData::new(Subspace::coordinate(3, &[1, 2]), ints(&[1, 0, 0]), vec![fix4_n()], Some(IntegerLattice::standard(3))).expect("FIX4")
}

pub fn fix4_orbit() -> NilpotentOrbitData {
    NilpotentOrbitData::new(extension_w(3), vec![fix4_n()], fix3_f(), Some(IntegerLattice::standard(3))).expect("FIX4")
}

/// `N₂: e₀ ↦ e₂`, which has no relative weight filtration.
pub fn fix5_n2() -> Matrix {
    Matrix::unit(3, 2, 0)
}

/// FIX3 (`a = 1`) together with the second log `N₂`.
pub fn fix5_orbit() -> NilpotentOrbitData {
    NilpotentOrbitData::new(extension_w(3), vec![fix3_n(&Scalar::one()), fix5_n2()], fix3_f(), None).expect("FIX5")
}

pub fn fix5_anf() -> AnfData {
    AnfData::new(Subspace::coordinate(3, &[1, 2]), ints(&[1, 0, 0]), vec![fix3_n(&Scalar::one()), fix5_n2()], None).expect("FIX5")
}

/// `A = ℚ²`, `N₁ = N₂ = E: e₀ ↦ e₁`.
pub fn fix6() -> LocalSystemData {
    let e = Matrix::unit(2, 1, 0);
    LocalSystemData::new(2, vec![e.clone(), e], None).expect("FIX6")
}

/// FIX3 with `a = 0`, a second log `N₂ = 0`, and `Γ = s₂Λ`.
pub fn fix7() -> LocalNormalForm {
    let orbit = NilpotentOrbitData::new(extension_w(3), vec![fix3_n(&Scalar::zero()), Matrix::zeros(3, 3)], fix3_f(), Some(IntegerLattice::standard(3))).expect("FIX7");
    LocalNormalForm::new(orbit, MatPoly::linear(fix3_lambda(), 2, 1)).expect("FIX7 normal form")
}

/// Two equal logs `e₁ ↦ e₂, e₀ ↦ e₂`; the invariant lift is `e₀ − e₁`.
pub fn r2_extension() -> NilpotentOrbitData {
    let n = fix3_n(&Scalar::one());
    NilpotentOrbitData::new(extension_w(3), vec![n.clone(), n], fix3_f(), Some(IntegerLattice::standard(3))).expect("r = 2 extension")
}

/// `H = span{a, b, c, d} = span{e₁, …, e₄}` with `N₁: a ↦ b, e₀ ↦ b` and
/// `N₂: a ↦ d`; `(N₁e₀, N₂e₀) = (b, 0)` is not a coboundary.
pub fn sing_nonzero_orbit() -> NilpotentOrbitData {
    let mut n1 = Matrix::unit(5, 2, 1);
    n1[(2, 0)] = Scalar::one();
    let n2 = Matrix::unit(5, 4, 1);
    let f = decreasing(5, vec![(-1, (0..5).map(|k| unit(5, k)).collect()), (0, vec![unit(5, 0), unit(5, 1), unit(5, 3)])]);
    NilpotentOrbitData::new(extension_w(5), vec![n1, n2], f, None).expect("sing fixture")
}

pub fn sing_nonzero_anf() -> AnfData {
    let o = sing_nonzero_orbit();
    AnfData::new(Subspace::coordinate(5, &[1, 2, 3, 4]), unit(5, 0), o.logs().to_vec(), None).expect("sing fixture")
}

fn unit(n: usize, k: usize) -> Vector {
    crate::linalg::matrix::unit_vector(n, k)
}

/// A limit with types `e₃: (2,2)`, `e₀: (1,1)`, `e₁: (0,0)`, `e₂: (−1,−1)`,
/// `N: e₀ ↦ e₁ ↦ e₂`, and `Γ = s₁Λ′` with `Λ′: e₃ ↦ e₁` of type `(−2,−2)`.
/// Horizontality fails.
pub fn non_horizontal() -> LocalNormalForm {
    let w = IncreasingFiltration::two_step(4, 0, Subspace::coordinate(4, &[0, 1, 2]), 4).expect("two-step");
    let mut n = Matrix::zeros(4, 4);
    n[(1, 0)] = Scalar::one();
    n[(2, 1)] = Scalar::one();
    let f = decreasing(
        4,
        vec![
            (-1, (0..4).map(|k| unit(4, k)).collect()),
            (0, vec![unit(4, 0), unit(4, 1), unit(4, 3)]),
            (1, vec![unit(4, 0), unit(4, 3)]),
            (2, vec![unit(4, 3)]),
        ],
    );
    let orbit = NilpotentOrbitData::new(w, vec![n], f, None).expect("orbit");
    LocalNormalForm::new(orbit, MatPoly::linear(Matrix::unit(4, 1, 3), 1, 0)).expect("normal form")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let (f, w) = fix1();
        assert!(crate::mhs::is_mhs(&f, &w).ok);
        let _ = fix2();
        let half = Scalar::ratio(1, 2);
        assert!(crate::orbits::admissibility_check(&fix3_orbit(&half)).ok);
        assert!(crate::orbits::admissibility_check(&fix4_orbit()).ok);
        let rep = crate::orbits::admissibility_check(&fix5_orbit());
        assert!(!rep.ok);
        assert!(rep.witness.unwrap().contains("N_2"));
        let _ = (fix6(), fix7(), r2_extension(), sing_nonzero_anf(), non_horizontal(), fix4_anf(), fix5_anf(), fix3_anf(&half));
        assert_eq!(fix3_lattice(&half).basis()[(2, 2)], half);
    }
}

//! Worked examples across the public API, mostly on the bundled fixtures.

use hodgekit::filtration::{coordinate_grading, Grading, IncreasingFiltration};
use hodgekit::fixtures::*;
use hodgekit::ih::{
    build_b_complex, connecting, ih_dim, invariant_lift, les_verify, sigma_torsion, sing_class, sing_lift, torsion_group, AnfData,
    LocalSystemData,
};
use hodgekit::linalg::matrix::unit_vector;
use hodgekit::linalg::nilpotent_exp;
use hodgekit::linalg::{IntegerLattice, MatPoly, Matrix, Scalar, Subspace, Vector};
use hodgekit::mhs::{deligne_bigrading, deligne_grading, delta_splitting, gl_bigrading, is_mhs, is_split_r, sl2_splitting, zeta_from};
use hodgekit::orbits::*;
use hodgekit::sl2::{deligne_y, highest_weight_check};
use hodgekit::zerolocus::*;
use hodgekit::HodgeError;
use num_bigint::BigInt;

fn s(x: i64) -> Scalar {
    Scalar::from(x)
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

fn e0_line(dim: usize, e0: Vector) -> Subspace {
    Subspace::span(dim, &[e0])
}

#[test]
fn fix1_delta_and_splitting() {
    let (f, w) = fix1();
    assert!(is_mhs(&f, &w).ok);
    assert!(!is_split_r(&f, &w).unwrap());
    let y = deligne_grading(&f, &w).unwrap();
    let mut expect = Matrix::diag_ints(&[0, -2]);
    expect[(1, 0)] = Scalar::gauss(0, 2);
    assert_eq!(y.op(), &expect);
    let d = delta_splitting(&f, &w).unwrap();
    assert_eq!(d.delta, Matrix::unit(2, 1, 0));
    assert_eq!(d.f_tilde.get(0), Subspace::coordinate(2, &[0]));
    let sl = sl2_splitting(&f, &w, false).unwrap();
    assert_eq!(sl.xi, Matrix::unit(2, 1, 0).scale(&Scalar::i()));
    assert!(zeta_from(&sl.xi, &sl.delta).unwrap().is_zero());
    let gl = gl_bigrading(&f, &w).unwrap();
    assert_eq!(gl.lambda_basis().len(), 1);
}

#[test]
fn fix2_pure_deligne_y() {
    let (f, w, n) = fix2();
    let y_m = Grading::new(Matrix::diag_ints(&[0, -2])).unwrap();
    assert!(is_mhs(&f, &y_m.filtration()).ok);
    let out = deligne_y(&n, &y_m, &w).unwrap();
    assert_eq!(out.y.op(), &Matrix::scalar_identity(2, &s(-1)));
    assert_eq!(out.triple.neutral, Matrix::diag_ints(&[1, -1]));
    assert!(out.triple.check());
    assert!(highest_weight_check(&out.decomposition, &out.triple).ok);
}

#[test]
fn fix3_deligne_y_and_limits() {
    for a in [-2, 0, 1, 5] {
        let a = s(a);
        let orbit = fix3_orbit(&a);
        let m = orbit.m().unwrap();
        assert_eq!(m.get(-1), Subspace::coordinate(3, &[2]));
        assert_eq!(m.get(-2), Subspace::coordinate(3, &[2]));
        let y_m = Grading::new(fix3_y_m()).unwrap();
        let out = deligne_y(&fix3_n(&a), &y_m, orbit.w()).unwrap();
        let e0 = vec![s(1), -&a, s(0)];
        assert_eq!(out.y.eigenspace(0), e0_line(3, e0.clone()));
        assert!(out.decomposition.component(-1).is_zero());
        assert!(out.y.op().is_real());
        assert!(orbit.f_inf().is_preserved_by(out.y.op()));

        let lnf = fix3_lnf(&a);
        let u = limit_grading_untwisted(&lnf, &[]).unwrap();
        assert_eq!(u, out.y);
        assert_eq!(limit_grading_twisted(&lnf, &[], &s(2)).unwrap(), out.y);
        let inv = invariant_grading(&orbit).unwrap();
        assert_eq!(inv.y_inf, out.y);
        assert!(fix3_n(&a).mul_vec(&inv.e0).iter().all(Scalar::is_zero));
    }
    let zero = limit_grading_untwisted(&fix3_lnf(&s(0)), &[]).unwrap();
    assert_eq!(zero.op(), &Matrix::diag_ints(&[0, -1, -1]));
}

#[test]
fn evaluate_f_examples() {
    let lnf = fix3_lnf(&s(3));
    assert_eq!(evaluate_f(&lnf, &[s(0)], &[s(0)]).unwrap(), *lnf.orbit().f_inf());
    let f = evaluate_f(&lnf, &[Scalar::i()], &[s(0)]).unwrap();
    let expect = Subspace::span(3, &[vec![s(1), s(0), Scalar::gauss(0, 3)], vec![s(0), s(1), Scalar::i()]]);
    assert_eq!(f.get(0), expect);

    let f7 = evaluate_f(&fix7(), &[Scalar::i(), s(0)], &[s(0), half()]).unwrap();
    let expect = Subspace::span(3, &[vec![s(1), s(0), half()], vec![s(0), s(1), Scalar::i()]]);
    assert_eq!(f7.get(0), expect);
}

#[test]
fn horizontality_examples() {
    assert!(horizontality_check(&fix3_lnf(&s(1))).unwrap().ok);
    assert!(horizontality_check(&fix7()).unwrap().ok);
    let bad = horizontality_check(&non_horizontal()).unwrap();
    assert!(!bad.ok);
    assert!(bad.witness.is_some());
}

#[test]
fn grading_at_examples() {
    let g = grading_at(&fix3_lnf(&s(2)), &[Scalar::gauss(-3, 5)], &[s(0)]).unwrap();
    assert!(g.integral);
    assert_eq!(g.grading.eigenspace(0), e0_line(3, vec![s(1), s(-2), s(0)]));

    let f7 = fix7();
    let at0 = grading_at(&f7, &[Scalar::i(), Scalar::i()], &[s(0), s(0)]).unwrap();
    assert!(at0.integral);
    assert_eq!(at0.grading.eigenspace(0), Subspace::coordinate(3, &[0]));
    let at_half = grading_at(&f7, &[Scalar::i(), Scalar::i()], &[s(0), half()]).unwrap();
    assert!(!at_half.integral);
    assert_eq!(at_half.grading.eigenspace(0), e0_line(3, vec![s(1), s(0), half()]));
}

#[test]
fn grading_at_outside_domain() {
    // At z = 0 the FIX1-type data is fine, but a degenerate F is not an MHS.
    let orbit = fix3_orbit(&s(1));
    let f = orbit.f_inf().map(&Matrix::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
    let lnf = LocalNormalForm::untwisted(orbit.with_f_inf(f));
    assert!(matches!(grading_at(&lnf, &[s(0)], &[s(0)]), Err(HodgeError::NotMhs(_))));
}

#[test]
fn twisted_limit_of_fix3() {
    let orbit = fix3_twisted(&s(1), &s(1));
    let lnf = LocalNormalForm::untwisted(orbit);
    let data = limit_data(&lnf, &[], false).unwrap();
    assert_eq!(data.delta, fix3_lambda());
    assert!(data.zeta.is_zero());
    let g = nilpotent_exp(&data.delta.scale(&Scalar::i())).unwrap();
    let g_inv = g.inverse().unwrap();
    assert_eq!(data.twisted.op(), &data.untwisted.op().conjugate_by(&g, &g_inv));
    assert!(Matrix::bracket(data.twisted.op(), &fix3_n(&s(1))).is_zero());
    for c in [s(1), s(-3), half()] {
        assert_eq!(limit_grading_twisted(&lnf, &[], &c).unwrap(), data.twisted);
    }
}

#[test]
fn limit_probe_decays() {
    let lnf = LocalNormalForm::untwisted(fix3_twisted(&s(2), &s(1)));
    let ys: Vec<Scalar> = (1..=10).map(|k| s(1 << k)).collect();
    let t = limit_probe(&lnf, &[], &ys).unwrap();
    assert!(t.monotone_from(1));
    assert!(t.ratios().iter().all(|r| *r >= 1.8));
    assert!(t.deviations().last().unwrap() < &1e-2);
}

#[test]
fn multivariable_probe_split_is_exact() {
    let t = multivariable_limit_probe(&r2_extension(), &[vec![s(1), s(2)], vec![s(5), s(1)], vec![s(3), s(9)]]).unwrap();
    assert!(t.deviations().iter().all(|d| *d == 0.0));
}

#[test]
fn multivariable_probe_twisted_patterns() {
    let o = r2_extension();
    let twist = nilpotent_exp(&fix3_lambda().scale(&Scalar::i())).unwrap();
    let o = o.with_f_inf(o.f_inf().map(&twist));
    let linear: Vec<Vec<Scalar>> = (1..=8).map(|k| vec![s(1 << k), s(2 << k)]).collect();
    let t = multivariable_limit_probe(&o, &linear).unwrap();
    assert!(t.monotone_from(0));
    assert!(t.ratios().iter().all(|r| *r >= 1.8), "{:?}", t.ratios());
    let quad: Vec<Vec<Scalar>> = (1..=6).map(|k| vec![s(1 << (2 * k)), s(1 << k)]).collect();
    let q = multivariable_limit_probe(&o, &quad).unwrap();
    assert_eq!(q.predicted, t.predicted);
    assert!(q.monotone_from(0));
    assert!(*q.deviations().last().unwrap() < 1e-2);
}

#[test]
fn invariant_grading_r2_and_refusal() {
    let inv = invariant_grading(&r2_extension()).unwrap();
    assert_eq!(inv.y_inf.eigenspace(0), e0_line(3, vec![s(1), s(-1), s(0)]));
    assert!(matches!(invariant_grading(&sing_nonzero_orbit()), Err(HodgeError::SingularityNonzero)));
    assert!(matches!(multivariable_limit_probe(&sing_nonzero_orbit(), &[vec![s(1), s(1)]]), Err(HodgeError::SingularityNonzero)));
}

#[test]
fn gamma_deviation_is_linear_in_s() {
    let lnf = LocalNormalForm::new(fix3_orbit(&s(1)), MatPoly::linear(fix3_lambda(), 1, 0)).unwrap();
    assert!(horizontality_check(&lnf).unwrap().ok);
    let z = [Scalar::gauss(0, 4)];
    let base = grading_at(&lnf, &z, &[s(0)]).unwrap().grading;
    let mut prev: Option<f64> = None;
    for k in 0..6 {
        let s1 = Scalar::ratio(1, 1 << k);
        let y = grading_at(&lnf, &z, &[s1]).unwrap().grading;
        let d = (y.op() - base.op()).max_norm();
        if let Some(p) = prev {
            assert!(d <= p / 2.0 + 1e-12);
        }
        prev = Some(d);
    }
}

#[test]
fn limit_nf_values() {
    let orbit = fix3_orbit(&s(3));
    let y = limit_grading_untwisted(&LocalNormalForm::untwisted(orbit.clone()), &[]).unwrap();
    let v = limit_nf_value(&orbit, &y).unwrap();
    assert!(v.representative.iter().all(Scalar::is_zero));
    assert_eq!(v.trivial, Some(true));

    let o = fix3_orbit(&half());
    let coord = coordinate_grading(o.w()).unwrap();
    assert!(matches!(limit_nf_value(&o, &coord), Err(HodgeError::Precondition(_))));
    let lim = limit_grading_untwisted(&LocalNormalForm::untwisted(o.clone()), &[]).unwrap();
    assert_eq!(nf_difference(&lim, &coord, &unit_vector(3, 0)), vec![s(0), -half(), s(0)]);

    let f4 = fix4_orbit();
    assert!(matches!(limit_nf_value(&f4, &coordinate_grading(f4.w()).unwrap()), Err(HodgeError::Precondition(_))));
}

#[test]
fn admissibility_examples() {
    assert!(admissibility_check(&fix3_orbit(&s(-2))).ok);
    let rep = admissibility_check(&fix5_orbit());
    assert!(!rep.ok);
    let (f, _) = fix1();
    let w = IncreasingFiltration::two_step(2, -2, Subspace::coordinate(2, &[1]), 0).unwrap();
    let zero = NilpotentOrbitData::new(w.clone(), vec![Matrix::zeros(2, 2)], f, None).unwrap();
    assert!(admissibility_check(&zero).ok);
    let bad_f = hodgekit::filtration::DecreasingFiltration::from_steps(2, [(-1, Subspace::full(2)), (0, Subspace::coordinate(2, &[1]))].into_iter().collect()).unwrap();
    assert!(!is_mhs(&bad_f, &w).ok);
    let not_mhs = NilpotentOrbitData::new(w, vec![Matrix::zeros(2, 2)], bad_f, None).unwrap();
    assert!(!admissibility_check(&not_mhs).ok);
}

#[test]
fn b_complex_examples() {
    let e = Matrix::unit(2, 1, 0);
    let one = build_b_complex(&LocalSystemData::new(2, vec![e.clone()], None).unwrap()).unwrap();
    assert_eq!(one.term(0).dim(), 2);
    assert_eq!(*one.term(1), Subspace::coordinate(2, &[1]));
    assert_eq!(one.differential(0), &e);

    let b6 = build_b_complex(&fix6()).unwrap();
    assert_eq!(b6.term(1).dim(), 2);
    assert_eq!(b6.term(2).dim(), 0);
    let dims: Vec<usize> = (0..=2).map(|p| ih_dim(&b6, p).0).collect();
    assert_eq!(dims, vec![1, 1, 0]);
    let (_, reps0) = ih_dim(&b6, 0);
    assert_eq!(Subspace::span(2, &reps0), Subspace::coordinate(2, &[1]));

    let with_zero = build_b_complex(&LocalSystemData::new(2, vec![e, Matrix::zeros(2, 2)], None).unwrap()).unwrap();
    assert_eq!(with_zero.term(1).dim(), 1);
    assert_eq!(with_zero.term(2).dim(), 0);

    let trivial = build_b_complex(&LocalSystemData::new(3, vec![Matrix::zeros(3, 3); 2], None).unwrap()).unwrap();
    let dims: Vec<usize> = (0..=2).map(|p| ih_dim(&trivial, p).0).collect();
    assert_eq!(dims, vec![3, 0, 0]);
}

#[test]
fn connecting_examples() {
    assert!(sing_class(&fix3_anf(&s(4))).unwrap().is_zero);
    assert!(sing_class(&fix4_anf()).unwrap().is_zero);
    let r2 = r2_extension().extension().unwrap();
    assert!(sing_class(&r2).unwrap().is_zero);
    assert_eq!(invariant_lift(&r2).map(|v| Subspace::span(3, &[v])), Some(e0_line(3, vec![s(1), s(-1), s(0)])));
    let bad = sing_nonzero_anf();
    let c = sing_class(&bad).unwrap();
    assert!(!c.is_zero);
    assert!(sing_lift(&bad).is_none());
    // ∂ is linear in the class of ℚ(0).
    let twice = connecting(&bad, &s(2)).unwrap();
    assert_eq!(twice.coordinates, c.coordinates.iter().map(|x| x * &s(2)).collect::<Vec<_>>());
}

#[test]
fn torsion_examples() {
    let z2 = IntegerLattice::standard(2);
    assert_eq!(torsion_group(&Matrix::from_ints(&[&[0, 0], &[2, 0]]), &z2).unwrap().invariant_factors, vec![BigInt::from(2)]);
    assert!(torsion_group(&Matrix::from_ints(&[&[0, 0], &[1, 0]]), &z2).unwrap().is_trivial());
    assert!(torsion_group(&Matrix::zeros(2, 2), &z2).unwrap().is_trivial());

    let f4 = sigma_torsion(&fix4_anf()).unwrap();
    assert_eq!(f4.group.invariant_factors, vec![BigInt::from(2)]);
    assert!(f4.nonzero);
    assert!(!sigma_torsion(&fix3_anf(&s(3))).unwrap().nonzero);
    let killed = AnfData::new(Subspace::coordinate(3, &[1, 2]), unit_vector(3, 0), vec![Matrix::unit(3, 2, 1)], Some(IntegerLattice::standard(3))).unwrap();
    assert!(!sigma_torsion(&killed).unwrap().nonzero);
    assert!(matches!(sigma_torsion(&fix5_anf()), Err(HodgeError::Unsupported(_))));
}

#[test]
fn les_examples() {
    let rep = les_verify(&fix3_anf(&s(2))).unwrap();
    assert!(rep.exact() && rep.b_agree && rep.sing_zero);
    let alt = rep.ih_h[0] as i64 - rep.ih_v[0] as i64 + 1 - rep.ih_h[1] as i64 + rep.ih_v[1] as i64;
    assert_eq!(alt, 0);
    match les_verify(&fix5_anf()) {
        Err(HodgeError::NoRelativeFiltration(msg)) => assert!(msg.contains("N_2")),
        other => panic!("{other:?}"),
    }
    let zero = AnfData::new(Subspace::coordinate(3, &[1, 2]), unit_vector(3, 0), vec![Matrix::zeros(3, 3)], None).unwrap();
    let rep = les_verify(&zero).unwrap();
    assert!(rep.exact());
    assert_eq!((rep.ih_h[0], rep.ih_v[0]), (2, 3));
    let bad = les_verify(&sing_nonzero_anf()).unwrap();
    assert!(bad.exact() && !bad.sing_zero);
}

#[test]
fn zero_test_examples() {
    let f7 = fix7();
    for z in [Scalar::i(), Scalar::gauss(3, 2)] {
        assert!(zero_test(&f7, &[z.clone(), Scalar::i()], &[s(0), s(0)]).unwrap().in_locus);
        assert!(!zero_test(&f7, &[z, Scalar::i()], &[s(0), half()]).unwrap().in_locus);
    }
    let f3 = fix3_lnf(&s(1));
    for z in [Scalar::i(), Scalar::gauss(1, 1), Scalar::gauss(-2, 7)] {
        assert!(zero_test(&f3, &[z], &[s(0)]).unwrap().in_locus);
    }
    let no_lattice = LocalNormalForm::untwisted(fix5_orbit());
    assert!(matches!(zero_test(&no_lattice, &[Scalar::i(), Scalar::i()], &[s(0), s(0)]), Err(HodgeError::Precondition(_))));
}

#[test]
fn limit_integrality_examples() {
    let samples = vec![(vec![Scalar::i()], vec![s(0)]), (vec![Scalar::gauss(1, 4)], vec![s(0)])];
    let c = limit_integrality(&fix3_lnf(&s(2)), &[], &samples).unwrap();
    assert!(c.integral && c.commutes_with_n && c.preserves_f_hat && c.xi_ok);
    assert!(c.samples.iter().all(|b| *b));

    let h = limit_integrality(&fix3_lnf(&half()), &[], &samples).unwrap();
    assert!(!h.integral);
    assert_eq!(h.limit.eigenspace(0), e0_line(3, vec![s(1), -half(), s(0)]));
    assert!(h.samples.iter().all(|b| !*b));

    let f7 = limit_integrality(&fix7(), &[s(0)], &[(vec![Scalar::i(), Scalar::i()], vec![s(0), s(0)])]).unwrap();
    assert!(f7.integral);
}

#[test]
fn defining_equation_examples() {
    let f7 = fix7();
    let y_inf = invariant_grading(f7.orbit()).unwrap().y_inf;
    let sys = defining_equation(&f7, &y_inf).unwrap();
    assert_eq!(sys.equations.len(), 1);
    let (_, _, p) = &sys.equations[0];
    assert_eq!(p.support_vars(), vec![1]);
    assert!(p.constant().is_zero());
    assert!(sys.lambda.is_zero() && sys.integral_limit);

    let plain = defining_equation(&fix3_lnf(&s(2)), &invariant_grading(&fix3_orbit(&s(2))).unwrap().y_inf).unwrap();
    assert!(plain.is_trivial());

    // A Γ commuting with Y_∞ leaves the locus unconstrained.
    let orbit = fix3_orbit(&s(0));
    let mu = Matrix::unit(3, 2, 1);
    let lnf = LocalNormalForm::new(orbit.clone(), MatPoly::linear(mu, 1, 0)).unwrap();
    let y = invariant_grading(&orbit).unwrap().y_inf;
    assert!(defining_equation(&lnf, &y).unwrap().is_trivial());

    let wrong = Grading::new(Matrix::diag_ints(&[-1, 0, -1])).unwrap();
    assert!(matches!(defining_equation(&f7, &wrong), Err(HodgeError::Precondition(_))));
}

#[test]
fn isotropy_defect_on_fix7() {
    let f7 = fix7();
    let y_inf = invariant_grading(f7.orbit()).unwrap().y_inf;
    for (z, s2) in [(Scalar::i(), s(0)), (Scalar::gauss(1, 2), half()), (Scalar::gauss(0, 3), Scalar::ratio(-1, 3))] {
        let (_, ok) = isotropy_defect(&f7, &y_inf, &[z, Scalar::i()], &[s(0), s2]).unwrap();
        assert!(ok);
    }
}

#[test]
fn accumulation_examples() {
    match accumulation_verdict(&fix4_anf()).unwrap() {
        AccumulationVerdict::Excluded { sigma, rational_h } => {
            assert!(sigma.nonzero);
            assert_eq!(rational_h, vec![s(0), -half(), s(0)]);
        }
        other => panic!("{other:?}"),
    }
    match accumulation_verdict(&fix3_anf(&s(3))).unwrap() {
        AccumulationVerdict::Candidate { grading, h, .. } => {
            assert_eq!(h, vec![s(0), s(-3), s(0)]);
            assert_eq!(grading.eigenspace(0), e0_line(3, vec![s(1), s(-3), s(0)]));
        }
        other => panic!("{other:?}"),
    }
    let lnf = LocalNormalForm::untwisted(fix4_orbit());
    for k in 1..=6 {
        assert!(!zero_test(&lnf, &[Scalar::gauss(k, 1 << k)], &[s(0)]).unwrap().in_locus);
    }
}

#[test]
fn bigrading_of_fix3_limit_is_complete() {
    let o = fix3_orbit(&s(1));
    let m = o.m().unwrap();
    let gl = gl_bigrading(o.f_inf(), &m).unwrap();
    assert_eq!(gl.piece_dims().values().sum::<usize>(), 9);
    let b = deligne_bigrading(o.f_inf(), &m).unwrap();
    assert!(gl.contains(&fix3_n(&s(1)), |a, b| a == -1 && b == -1));
    assert_eq!(b.dim(), 3);
}

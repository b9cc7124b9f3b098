mod common;

use std::time::Instant;

use hodgekit::ih::{build_b_complex_on, les_verify};
use hodgekit::mhs::{deligne_bigrading, is_mhs};
use hodgekit::orbits::admissibility_check;

#[test]
fn random_mhs_are_mhs() {
    let t = Instant::now();
    for seed in 0..40 {
        let m = common::random_mhs(seed, 8, true);
        assert!(is_mhs(&m.f, &m.w).ok, "seed {seed}");
        let b = deligne_bigrading(&m.f, &m.w).unwrap();
        b.check_axioms(&m.f, &m.w).unwrap();
    }
    eprintln!("mhs: {:?}", t.elapsed());
}

#[test]
fn random_type_i_orbits_are_admissible() {
    let t = Instant::now();
    for seed in 0..20 {
        let o = common::random_split_type_i(seed);
        assert!(admissibility_check(&o).ok);
    }
    eprintln!("type I: {:?}", t.elapsed());
}

#[test]
fn random_extensions_satisfy_les() {
    let t = Instant::now();
    for seed in 0..20 {
        let a = common::random_anf(seed);
        let rep = les_verify(&a).unwrap();
        assert!(rep.exact(), "seed {seed}: {rep:?}");
        let _ = build_b_complex_on(a.logs(), a.h()).unwrap();
    }
    eprintln!("anf: {:?}", t.elapsed());
}


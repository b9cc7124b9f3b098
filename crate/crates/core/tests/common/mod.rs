#![allow(dead_code)]
//! Seeded generators for random test inputs.

pub mod oracles;

use std::collections::BTreeMap;

use hodgekit::filtration::{relative_weight_filtration, DecreasingFiltration, IncreasingFiltration};
use hodgekit::ih::AnfData;
use hodgekit::linalg::matrix::{combine, unit_vector};
use hodgekit::linalg::{kernel, Matrix, Scalar, Subspace, Vector};
use hodgekit::mhs::{gl_bigrading, is_split_r};
use hodgekit::orbits::{admissibility_check, NilpotentOrbitData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut ChaCha8Rng, bound: i64) -> Scalar {
    Scalar::from(rng.gen_range(-bound..=bound))
}

pub fn small_gauss(rng: &mut ChaCha8Rng, bound: i64) -> Scalar {
    Scalar::gauss(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// Product of a few elementary integer matrices.
pub fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut g = Matrix::identity(n);
    if n < 2 {
        return g;
    }
    for _ in 0..n + 1 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut e = Matrix::identity(n);
        e[(i, j)] = small_int(rng, 2);
        g = &e * &g;
    }
    g
}

/// A real-split bigrading: real vectors of type `(p, p)` and conjugate
/// pairs `x ± iy` of types `(p, q)`, `(q, p)`.
#[derive(Clone, Debug)]
pub struct SplitModel {
    pub dim: usize,
    /// Complex basis vectors and their types, in model coordinates.
    pub vectors: Vec<(Vector, (i32, i32))>,
    /// Real coordinate slots `(start, is_pair, type)`.
    pub slots: Vec<(usize, bool, (i32, i32))>,
}

impl SplitModel {
    pub fn new(types: &[(i32, i32)]) -> Self {
        let dim: usize = types.iter().map(|(p, q)| if p == q { 1 } else { 2 }).sum();
        let mut vectors = Vec::new();
        let mut slots = Vec::new();
        let mut k = 0;
        for &(p, q) in types {
            if p == q {
                vectors.push((unit_vector(dim, k), (p, p)));
                slots.push((k, false, (p, p)));
                k += 1;
            } else {
                let mut plus = unit_vector(dim, k);
                plus[k + 1] = Scalar::i();
                let mut minus = unit_vector(dim, k);
                minus[k + 1] = -Scalar::i();
                vectors.push((plus, (p, q)));
                vectors.push((minus, (q, p)));
                slots.push((k, true, (p, q)));
                k += 2;
            }
        }
        SplitModel { dim, vectors, slots }
    }

    pub fn hodge(&self, g: &Matrix) -> DecreasingFiltration {
        let ps: Vec<i32> = self.vectors.iter().map(|(_, t)| t.0).collect();
        let (lo, hi) = (*ps.iter().min().unwrap(), *ps.iter().max().unwrap());
        let mut steps = BTreeMap::new();
        for p in lo..=hi {
            let vs: Vec<Vector> = self.vectors.iter().filter(|(_, t)| t.0 >= p).map(|(v, _)| g.mul_vec(v)).collect();
            steps.insert(p, Subspace::span(self.dim, &vs));
        }
        DecreasingFiltration::from_steps(self.dim, steps).unwrap()
    }

    /// The increasing filtration by `p + q`.
    pub fn weight(&self, g: &Matrix) -> IncreasingFiltration {
        self.filtration_by(g, |t| t.0 + t.1)
    }

    pub fn filtration_by(&self, g: &Matrix, key: impl Fn((i32, i32)) -> i32) -> IncreasingFiltration {
        let ks: Vec<i32> = self.vectors.iter().map(|(_, t)| key(*t)).collect();
        let (lo, hi) = (*ks.iter().min().unwrap(), *ks.iter().max().unwrap());
        let mut steps = BTreeMap::new();
        for k in lo..=hi {
            let vs: Vec<Vector> = self.vectors.iter().filter(|(_, t)| key(*t) <= k).map(|(v, _)| g.mul_vec(v)).collect();
            steps.insert(k, Subspace::span(self.dim, &vs));
        }
        IncreasingFiltration::from_steps(self.dim, steps).unwrap()
    }
}

fn random_types(rng: &mut ChaCha8Rng, max_dim: usize) -> Vec<(i32, i32)> {
    let target = rng.gen_range(2..=max_dim);
    let mut types = Vec::new();
    let mut dim = 0;
    while dim < target {
        let p = rng.gen_range(-2..=1);
        let q = rng.gen_range(-2..=1);
        let cost = if p == q { 1 } else { 2 };
        if dim + cost > target {
            types.push((p, p));
            dim += 1;
        } else {
            types.push((p.max(q), p.min(q)));
            dim += cost;
        }
    }
    types
}

/// A random MHS `(F, W)` together with its (split) bigrading data and the
/// change of basis; optionally twisted by a random `λ ∈ Λ^{−1,−1}`.
pub struct RandomMhs {
    pub f: DecreasingFiltration,
    pub w: IncreasingFiltration,
    /// Split form before the twist.
    pub f_split: DecreasingFiltration,
    pub lambda: Matrix,
    pub model: SplitModel,
    pub g: Matrix,
}

pub fn random_mhs(seed: u64, max_dim: usize, twist: bool) -> RandomMhs {
    let mut r = rng(seed);
    let types = random_types(&mut r, max_dim);
    let model = SplitModel::new(&types);
    let g = unimodular(&mut r, model.dim);
    let f_split = model.hodge(&g);
    let w = model.weight(&g);
    let lambda = if twist { random_lambda(&mut r, &f_split, &w) } else { Matrix::zeros(model.dim, model.dim) };
    let f = f_split.map(&hodgekit::linalg::nilpotent_exp(&lambda).unwrap());
    RandomMhs { f, w, f_split, lambda, model, g }
}

pub fn random_lambda(r: &mut ChaCha8Rng, f: &DecreasingFiltration, w: &IncreasingFiltration) -> Matrix {
    let gl = gl_bigrading(f, w).unwrap();
    let n = f.ambient_dim();
    gl.lambda_basis().iter().fold(Matrix::zeros(n, n), |acc, b| {
        let c = if r.gen_bool(0.6) { small_gauss(r, 2) } else { Scalar::zero() };
        &acc + &b.scale(&c)
    })
}

/// A split type (I) orbit `(W, N, F)` with weights `−1, 0`, built from
/// Jordan strings of `N` and random cross terms `Gr_0 → W₋₁`.
pub fn random_split_type_i(seed: u64) -> NilpotentOrbitData {
    for attempt in 0.. {
        let mut r = rng(seed.wrapping_mul(1_000_003).wrapping_add(attempt));
        if let Some(o) = try_type_i(&mut r) {
            return o;
        }
    }
    unreachable!()
}

#[derive(Clone, Copy)]
enum Block {
    /// `(top type, W-weight, length)`.
    Str((i32, i32), i32, usize),
}

fn try_type_i(r: &mut ChaCha8Rng) -> Option<NilpotentOrbitData> {
    let menu = [
        Block::Str((0, 0), -1, 2),
        Block::Str((1, -1), -1, 2),
        Block::Str((0, -1), -1, 1),
        Block::Str((0, 0), 0, 1),
        Block::Str((1, -1), 0, 1),
        Block::Str((1, 0), 0, 2),
    ];
    let mut blocks = vec![menu[r.gen_range(0..3)], menu[r.gen_range(3..6)]];
    let extra = r.gen_range(0..3);
    for _ in 0..extra {
        blocks.push(menu[r.gen_range(0..6)]);
    }
    // Expand into typed elements: (type, W-weight, string id, position).
    let mut types = Vec::new();
    let mut meta = Vec::new();
    for (id, b) in blocks.iter().enumerate() {
        let Block::Str(t, wt, len) = *b;
        for pos in 0..len {
            let tt = (t.0 - pos as i32, t.1 - pos as i32);
            types.push((tt.0.max(tt.1), tt.0.min(tt.1)));
            meta.push((tt.0.max(tt.1), tt.0.min(tt.1), wt, id, pos));
        }
    }
    let model = SplitModel::new(&types);
    if model.dim > 8 {
        return None;
    }
    let n_dim = model.dim;
    let mut n = Matrix::zeros(n_dim, n_dim);
    let map_slot = |n: &mut Matrix, from: usize, to: usize, pair: bool, c: &Scalar| {
        n[(to, from)] = c.clone();
        if pair {
            n[(to + 1, from + 1)] = c.clone();
        }
    };
    for a in 0..meta.len() {
        for b in 0..meta.len() {
            let (pa, qa, wa, ida, posa) = meta[a];
            let (pb, qb, wb, idb, posb) = meta[b];
            let (sa, pair_a, _) = model.slots[a];
            let (sb, pair_b, _) = model.slots[b];
            if pair_a != pair_b || pb != pa - 1 || qb != qa - 1 {
                continue;
            }
            if ida == idb && posb == posa + 1 {
                map_slot(&mut n, sa, sb, pair_a, &Scalar::one());
            } else if wa == 0 && wb == -1 && r.gen_bool(0.7) {
                map_slot(&mut n, sa, sb, pair_a, &small_int(r, 3));
            }
        }
    }
    let g = unimodular(r, n_dim);
    let g_inv = g.inverse().ok()?;
    let n = n.conjugate_by(&g, &g_inv);
    let f = model.hodge(&g);
    let w_of: Vec<i32> = meta.iter().map(|m| m.2).collect();
    let w = {
        let mut steps = BTreeMap::new();
        let mut low = Vec::new();
        for (slot, &wt) in model.slots.iter().zip(&w_of) {
            if wt == -1 {
                low.push(g.mul_vec(&unit_vector(n_dim, slot.0)));
                if slot.1 {
                    low.push(g.mul_vec(&unit_vector(n_dim, slot.0 + 1)));
                }
            }
        }
        steps.insert(-1, Subspace::span(n_dim, &low));
        steps.insert(0, Subspace::full(n_dim));
        IncreasingFiltration::from_steps(n_dim, steps).ok()?
    };
    let m_expected = model.weight(&g);
    let m = relative_weight_filtration(&n, &w).ok()?.ok()?;
    if m != m_expected {
        return None;
    }
    let orbit = NilpotentOrbitData::new(w, vec![n], f.clone(), None).ok()?;
    if !admissibility_check(&orbit).ok || !is_split_r(&f, &m).ok()? {
        return None;
    }
    Some(orbit)
}

/// Random admissible extension data with `r ≤ 3` commuting logs and
/// `dim V ≤ 8`: `N_j e₀ = N_j(h₀ + k_j)` with `k_j` killed by each
/// `N_i N_j`.
pub fn random_anf(seed: u64) -> AnfData {
    for attempt in 0.. {
        let mut r = rng(seed.wrapping_mul(7_919).wrapping_add(attempt));
        if let Some(a) = try_anf(&mut r) {
            return a;
        }
    }
    unreachable!()
}

fn try_anf(r: &mut ChaCha8Rng) -> Option<AnfData> {
    let hdim = r.gen_range(1..=7);
    let rr = r.gen_range(1..=3);
    let mut sizes = Vec::new();
    let mut left = hdim;
    while left > 0 {
        let s = r.gen_range(1..=left.min(4));
        sizes.push(s);
        left -= s;
    }
    let mut logs_h = vec![Matrix::zeros(hdim, hdim); rr];
    let mut off = 0;
    for &s in &sizes {
        for log in logs_h.iter_mut() {
            for k in 1..s {
                let c = small_int(r, 2);
                if c.is_zero() {
                    continue;
                }
                for i in 0..s - k {
                    log[(off + i + k, off + i)] = &log[(off + i + k, off + i)] + &c;
                }
            }
        }
        off += s;
    }
    let g = unimodular(r, hdim);
    let g_inv = g.inverse().ok()?;
    let logs_h: Vec<Matrix> = logs_h.iter().map(|n| n.conjugate_by(&g, &g_inv)).collect();
    let dim = hdim + 1;
    let embed = |v: &[Scalar]| -> Vector {
        let mut out = vec![Scalar::zero()];
        out.extend_from_slice(v);
        out
    };
    let h0: Vector = (0..hdim).map(|_| small_int(r, 2)).collect();
    let mut logs = Vec::new();
    for j in 0..rr {
        let mut kill = Subspace::full(hdim);
        for i in 0..rr {
            if i != j {
                kill = kill.intersect(&kernel(&(&logs_h[i] * &logs_h[j]))).ok()?;
            }
        }
        let coeffs: Vec<Scalar> = kill.basis().iter().map(|_| small_int(r, 1)).collect();
        let kj = if kill.dim() == 0 { vec![Scalar::zero(); hdim] } else { combine(hdim, &coeffs, kill.basis()) };
        let lift: Vector = h0.iter().zip(&kj).map(|(a, b)| a + b).collect();
        let image = logs_h[j].mul_vec(&lift);
        let mut n = Matrix::zeros(dim, dim);
        for a in 0..hdim {
            for b in 0..hdim {
                n[(a + 1, b + 1)] = logs_h[j][(a, b)].clone();
            }
            n[(a + 1, 0)] = image[a].clone();
        }
        logs.push(n);
    }
    let h = Subspace::span(dim, &(0..hdim).map(|k| embed(&unit_vector(hdim, k))).collect::<Vec<_>>());
    AnfData::new(h, unit_vector(dim, 0), logs, None).ok()
}

//! Independent reference computations used to cross-check the library.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use hodgekit::filtration::{coordinate_grading, rational_grading, DecreasingFiltration, Grading, IncreasingFiltration};
use hodgekit::linalg::{nilpotent_log, Matrix, Scalar, Vector};
use hodgekit::mhs::{deligne_bigrading, GlBigrading};

/// `δ` from one dense linear solve: with `G = e^{−2iδ} = 1 + L`, the
/// relation `conj(Y)·G = G·Y` is linear in `L ∈ Λ^{−1,−1}`; then
/// `δ = (i/2) log G`. Returns `None` if the solution is not unique.
pub fn delta_dense(f: &DecreasingFiltration, w: &IncreasingFiltration) -> Option<Matrix> {
    let b = deligne_bigrading(f, w).ok()?;
    let gl = GlBigrading::new(&b);
    let y = b.grading().into_op();
    let ybar = y.conj();
    let n = y.rows();
    let basis = gl.lambda_basis();
    if basis.is_empty() {
        return Some(Matrix::zeros(n, n));
    }
    let cols: Vec<Vector> = basis.iter().map(|l| (&(&ybar * l) - &(l * &y)).flatten()).collect();
    let a = Matrix::from_columns(n * n, &cols);
    if a.rank() != basis.len() {
        return None;
    }
    let c = a.solve(&(&y - &ybar).flatten())?;
    let l = basis.iter().zip(&c).fold(Matrix::zeros(n, n), |acc, (m, x)| &acc + &m.scale(x));
    let log = nilpotent_log(&(&Matrix::identity(n) + &l)).ok()?;
    Some(log.scale(&(&Scalar::ratio(1, 2) * &Scalar::i())))
}

/// All gradings `Y ∈ Y₀ + W₋₁gl` with `[Y, N] = 0` and `[Y, Y_M] = 0`, as
/// `(particular solution, dimension of the solution space)`.
pub fn type_i_gradings(n: &Matrix, y_m: &Matrix, w: &IncreasingFiltration) -> Option<(Matrix, usize)> {
    let dim = n.rows();
    let y0 = coordinate_grading(w).unwrap_or_else(|| rational_grading(w)).into_op();
    // W₋₁gl for two adjacent weights k−1, k: maps from V into W_{k−1} that vanish on W_{k−1}.
    let ws = w.weights();
    let gens: Vec<Matrix> = if ws.len() < 2 {
        Vec::new()
    } else {
        let low = w.get(ws[0]);
        let comp = low.complement_in(&w.get(ws[1]));
        let mut frame = comp.clone();
        frame.extend(low.basis().iter().cloned());
        let p = Matrix::from_columns(dim, &frame);
        let p_inv = p.inverse().ok()?;
        let mut out = Vec::new();
        for (k, _) in low.basis().iter().enumerate() {
            for (j, _) in comp.iter().enumerate() {
                let e = Matrix::unit(dim, comp.len() + k, j);
                out.push(&(&p * &e) * &p_inv);
            }
        }
        out
    };
    let residual = |x: &Matrix| -> Vector {
        let mut v = Matrix::bracket(x, n).flatten();
        v.extend(Matrix::bracket(x, y_m).flatten());
        v
    };
    let target: Vector = residual(&y0).iter().map(|c| -c).collect();
    if gens.is_empty() {
        return target.iter().all(Scalar::is_zero).then_some((y0, 0));
    }
    let cols: Vec<Vector> = gens.iter().map(residual).collect();
    let a = Matrix::from_columns(2 * dim * dim, &cols);
    let c = a.solve(&target)?;
    let y = gens.iter().zip(&c).fold(y0, |acc, (g, x)| &acc + &g.scale(x));
    Some((y, gens.len() - a.rank()))
}

fn minors(a: &[Vec<BigInt>], k: usize) -> BigInt {
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut g = BigInt::zero();
    let rsets = subsets(rows, k);
    let csets = subsets(cols, k);
    for rs in &rsets {
        for cs in &csets {
            let m: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect()).collect();
            g = g.gcd(&det(&m));
        }
    }
    g
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Cofactor expansion.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Invariant factors `> 1` of the torsion of `ℤ^n / Aℤ^k` from the
/// determinantal divisors `D_j = gcd of j×j minors`.
pub fn torsion_by_minors(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    let max = a.len().min(a.first().map_or(0, Vec::len));
    for k in 1..=max {
        let d = minors(a, k);
        if d.is_zero() {
            break;
        }
        let f = (&d / &prev).abs();
        if f > BigInt::from(1) {
            out.push(f);
        }
        prev = d;
    }
    out
}

pub fn is_grading(y: &Grading, w: &IncreasingFiltration) -> bool {
    hodgekit::filtration::is_grading_of(y, w)
}

/// Echelon basis of the column lattice of `a` by integer column operations:
/// each basis vector has a positive pivot and zeros above it.
pub fn column_echelon(a: &[Vec<BigInt>]) -> Vec<(usize, Vec<BigInt>)> {
    let n = a.len();
    let mut cols: Vec<Vec<BigInt>> = (0..a.first().map_or(0, Vec::len)).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect();
    cols.retain(|c| c.iter().any(|x| !x.is_zero()));
    let mut basis = Vec::new();
    for row in 0..n {
        loop {
            let mut live: Vec<usize> = (0..cols.len()).filter(|&k| !cols[k][row].is_zero()).collect();
            if live.len() <= 1 {
                break;
            }
            live.sort_by_key(|&k| cols[k][row].abs());
            let (p, q) = (live[0], live[1]);
            let f = cols[q][row].div_floor(&cols[p][row]);
            let pc = cols[p].clone();
            for (x, y) in cols[q].iter_mut().zip(&pc) {
                *x -= &f * y;
            }
            cols.retain(|c| c.iter().any(|x| !x.is_zero()));
        }
        if let Some(k) = (0..cols.len()).find(|&k| !cols[k][row].is_zero()) {
            let mut c = cols.remove(k);
            if c[row].is_negative() {
                c.iter_mut().for_each(|x| *x = -x.clone());
            }
            basis.push((row, c));
        }
    }
    basis
}

/// Canonical representative of `x` modulo the lattice with the given
/// echelon basis.
pub fn reduce(basis: &[(usize, Vec<BigInt>)], x: &[BigInt]) -> Vec<BigInt> {
    let mut x = x.to_vec();
    for (p, b) in basis {
        let q = x[*p].div_floor(&b[*p]);
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi -= &q * bi;
        }
    }
    x
}

/// Order of the group generated by `gens` modulo the column lattice of
/// `a`, by breadth-first closure over canonical representatives. Gives up
/// (returns `None`) beyond `cap` elements.
pub fn coset_closure(a: &[Vec<BigInt>], gens: &[Vec<BigInt>], cap: usize) -> Option<Vec<Vec<BigInt>>> {
    use std::collections::BTreeSet;
    let basis = column_echelon(a);
    let zero = vec![BigInt::zero(); a.len()];
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<BigInt> = x.iter().zip(g).map(|(a, b)| a + b).collect();
            let y = reduce(&basis, &y);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(seen.into_iter().collect())
}

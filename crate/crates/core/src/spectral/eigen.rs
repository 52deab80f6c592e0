//! Leading eigenpairs (by absolute eigenvalue) of sparse symmetric matrices.
//!
//! Small matrices go through a dense symmetric decomposition; larger ones use
//! Lanczos with full reorthogonalization from a fixed-seed start vector, so
//! the result is a deterministic function of the matrix.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SymMatrix;
use crate::error::{Error, Result};

/// Matrices up to this order are decomposed densely under [`Solver::Auto`].
pub const DENSE_LIMIT: usize = 512;

/// Relative Ritz residual at which Lanczos stops.
pub const LANCZOS_TOL: f64 = 1e-10;

const START_SEED: u64 = 0x5c0e_2018;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    #[default]
    Auto,
    Dense,
    Lanczos,
}

/// Eigenpairs ordered by decreasing `|lambda|`; positive before negative on
/// ties. Each vector has unit norm and its largest-magnitude entry (lowest
/// index on ties) is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBasis {
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl EigenBasis {
    /// Assemble from arbitrary pairs: orders them and fixes signs.
    pub fn from_pairs(pairs: Vec<(f64, Vec<f64>)>) -> Self {
        let scale = pairs.iter().map(|p| p.0.abs()).fold(1.0, f64::max);
        let ordered = order_by_magnitude(pairs, 1e-10 * scale);
        let (values, vectors) = ordered
            .into_iter()
            .map(|(v, mut x)| {
                normalize_sign(&mut x);
                (v, x)
            })
            .unzip();
        EigenBasis { values, vectors }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Keep the first `m` pairs.
    pub fn truncate(&mut self, m: usize) {
        self.values.truncate(m);
        self.vectors.truncate(m);
    }

    /// Flip the sign of vector `k`. Breaks the sign convention; meant for
    /// invariance checks.
    pub fn negate(&mut self, k: usize) {
        for x in &mut self.vectors[k] {
            *x = -*x;
        }
    }

    /// Largest `||M x - lambda x||` over the stored pairs.
    pub fn max_residual(&self, m: &SymMatrix) -> f64 {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&lam, x)| residual(m, lam, x))
            .fold(0.0, f64::max)
    }
}

fn residual(m: &SymMatrix, lam: f64, x: &[f64]) -> f64 {
    let y = m.mul_vec(x);
    y.iter()
        .zip(x)
        .map(|(yi, xi)| (yi - lam * xi).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn order_by_magnitude(mut pairs: Vec<(f64, Vec<f64>)>, tol: f64) -> Vec<(f64, Vec<f64>)> {
    // stable: equal magnitudes keep discovery order
    pairs.sort_by(|a, b| b.0.abs().total_cmp(&a.0.abs()));
    let mut out = Vec::with_capacity(pairs.len());
    let mut rest = pairs.into_iter().peekable();
    while let Some(first) = rest.next() {
        let head = first.0.abs();
        let mut group = vec![first];
        while let Some(next) = rest.peek() {
            if head - next.0.abs() <= tol {
                group.push(rest.next().unwrap());
            } else {
                break;
            }
        }
        // positive first, otherwise discovery order (sort is stable)
        group.sort_by_key(|p| p.0 < 0.0);
        out.extend(group);
    }
    out
}

fn normalize_sign(x: &mut [f64]) {
    let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return;
    }
    let pivot = x
        .iter()
        .position(|v| v.abs() >= max * (1.0 - 1e-12))
        .unwrap_or(0);
    if x[pivot] < 0.0 {
        for v in x.iter_mut() {
            *v = -*v;
        }
    }
}

/// The `count` eigenpairs of largest `|lambda|`.
pub fn top_eigenpairs(m: &SymMatrix, count: usize) -> Result<EigenBasis> {
    top_eigenpairs_with(m, count, Solver::Auto)
}

pub fn top_eigenpairs_with(m: &SymMatrix, count: usize, solver: Solver) -> Result<EigenBasis> {
    let n = m.dim();
    if count == 0 {
        return Err(Error::InvalidArgument("need at least one eigenpair".into()));
    }
    if count > n {
        return Err(Error::TooManyEigenpairs { requested: count, n });
    }
    let dense = match solver {
        Solver::Auto => n <= DENSE_LIMIT,
        Solver::Dense => true,
        Solver::Lanczos => false,
    };
    if dense {
        dense_top(m, count)
    } else {
        lanczos_top(m, count)
    }
}

fn dense_top(m: &SymMatrix, count: usize) -> Result<EigenBasis> {
    let n = m.dim();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for (j, v) in m.row(i) {
            a[(i, j)] = v;
        }
    }
    let eig = SymmetricEigen::new(a);
    let pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|k| {
            (
                eig.eigenvalues[k],
                eig.eigenvectors.column(k).iter().copied().collect(),
            )
        })
        .collect();
    let mut basis = EigenBasis::from_pairs(pairs);
    basis.truncate((count + REFINE_EXTRA).min(n));
    Ok(refine(m, basis, count))
}

/// Extra vectors carried through refinement beyond those requested.
const REFINE_EXTRA: usize = 8;

/// Rayleigh-Ritz over `span{X, M X}`, repeated until the leading `count`
/// residuals are at rounding level. The QR-based dense solver occasionally
/// returns vectors of nearby eigenvalues that are mixed at the 1e-5 level;
/// one pass removes that.
fn refine(m: &SymMatrix, mut basis: EigenBasis, count: usize) -> EigenBasis {
    let n = m.dim();
    let width = basis.len();
    for _ in 0..4 {
        let mut head = basis.clone();
        head.truncate(count);
        if head.max_residual(m) <= 1e-13 * (head.value(0).abs() + 1.0) {
            return head;
        }
        let mut z = DMatrix::<f64>::zeros(n, 2 * width);
        for (j, x) in basis.vectors().iter().enumerate() {
            let mx = m.mul_vec(x);
            for i in 0..n {
                z[(i, j)] = x[i];
                z[(i, width + j)] = mx[i];
            }
        }
        let q = z.qr().q();
        let mut mq = DMatrix::<f64>::zeros(n, q.ncols());
        for j in 0..q.ncols() {
            let col: Vec<f64> = q.column(j).iter().copied().collect();
            for (i, v) in m.mul_vec(&col).into_iter().enumerate() {
                mq[(i, j)] = v;
            }
        }
        let h = q.transpose() * mq;
        let h = (&h + h.transpose()) * 0.5;
        let small = SymmetricEigen::new(h);
        let v = &q * &small.eigenvectors;
        let pairs = (0..v.ncols())
            .map(|k| {
                let mut x: Vec<f64> = v.column(k).iter().copied().collect();
                let nx = norm(&x);
                x.iter_mut().for_each(|e| *e /= nx);
                (small.eigenvalues[k], x)
            })
            .collect();
        basis = EigenBasis::from_pairs(pairs);
        basis.truncate(width);
    }
    basis.truncate(count);
    basis
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Two passes of classical Gram-Schmidt against the whole basis.
fn reorthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for q in basis {
            let c = dot(q, w);
            axpy(-c, q, w);
        }
    }
}

/// A fresh unit vector orthogonal to `basis`, or `None` if none can be found.
fn restart_vector(rng: &mut ChaCha8Rng, n: usize, basis: &[Vec<f64>]) -> Option<Vec<f64>> {
    for _ in 0..8 {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        reorthogonalize(&mut v, basis);
        let nv = norm(&v);
        if nv > 1e-8 {
            v.iter_mut().for_each(|x| *x /= nv);
            return Some(v);
        }
    }
    None
}

struct Ritz {
    values: Vec<f64>,
    /// Column-major eigenvectors of the tridiagonal matrix.
    vectors: DMatrix<f64>,
}

fn tridiagonal_eigen(alpha: &[f64], beta: &[f64]) -> Ritz {
    let k = alpha.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    Ritz {
        values: eig.eigenvalues.iter().copied().collect(),
        vectors: eig.eigenvectors,
    }
}

/// Ritz indices sorted by decreasing magnitude (positive first on ties).
fn magnitude_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        values[b]
            .abs()
            .total_cmp(&values[a].abs())
            .then((values[a] < 0.0).cmp(&(values[b] < 0.0)))
    });
    idx
}

fn lanczos_top(m: &SymMatrix, count: usize) -> Result<EigenBasis> {
    let n = m.dim();
    let max_iter = 10 * n;
    // Ritz values just past the requested ones must settle before the
    // boundary of the top-`count` set can be trusted.
    let guard = (count + 3).min(n);
    let min_dim = (count + 20).min(n);
    let scale = m.max_abs_row_sum().max(f64::MIN_POSITIVE);

    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alpha: Vec<f64> = Vec::new();
    // beta[j] couples basis[j] and basis[j + 1]
    let mut beta: Vec<f64> = Vec::new();

    let mut q = restart_vector(&mut rng, n, &basis).ok_or(Error::EmptyGraph)?;
    let mut w = vec![0.0; n];
    let mut last_residual = f64::INFINITY;

    for iter in 0..max_iter {
        m.mul_vec_into(&q, &mut w);
        let a = dot(&q, &w);
        axpy(-a, &q, &mut w);
        if let (Some(prev), Some(&b)) = (basis.last(), beta.last()) {
            axpy(-b, prev, &mut w);
        }
        basis.push(std::mem::take(&mut q));
        alpha.push(a);
        reorthogonalize(&mut w, &basis);
        let mut b = norm(&w);
        let dim = basis.len();
        let breakdown = b <= 1e-12 * scale;

        let check = dim >= min_dim && (dim.is_multiple_of(5) || breakdown || dim == n);
        if check {
            let ritz = tridiagonal_eigen(&alpha, &beta);
            let order = magnitude_order(&ritz.values);
            let top = ritz.values[order[0]].abs().max(1.0);
            let beta_last = if breakdown { 0.0 } else { b };
            let est = |i: usize| (beta_last * ritz.vectors[(dim - 1, i)]).abs();
            let wanted_ok = order[..count]
                .iter()
                .all(|&i| est(i) <= LANCZOS_TOL * top);
            let guard_ok = order[count..guard.min(order.len())]
                .iter()
                .all(|&i| est(i) <= 1e-5 * top);
            if (wanted_ok && guard_ok) || dim == n {
                let pairs: Vec<(f64, Vec<f64>)> = order[..guard.min(order.len())]
                    .iter()
                    .map(|&i| {
                        let mut x = vec![0.0; n];
                        for (r, qv) in basis.iter().enumerate() {
                            axpy(ritz.vectors[(r, i)], qv, &mut x);
                        }
                        let nx = norm(&x);
                        x.iter_mut().for_each(|v| *v /= nx);
                        (ritz.values[i], x)
                    })
                    .collect();
                let result = refine(m, EigenBasis::from_pairs(pairs), count);
                last_residual = result.max_residual(m);
                if last_residual <= 1e-8 * (result.value(0).abs() + 1.0) {
                    return Ok(result);
                }
                if dim == n {
                    break;
                }
            }
        }
        if dim == n {
            break;
        }
        if breakdown {
            // invariant subspace: continue from a new orthogonal direction
            match restart_vector(&mut rng, n, &basis) {
                Some(v) => {
                    q = v;
                    b = 0.0;
                }
                None => break,
            }
        } else {
            q = w.iter().map(|x| x / b).collect();
        }
        beta.push(b);
        if iter + 1 == max_iter {
            break;
        }
    }
    Err(Error::NoConvergence {
        iterations: basis.len(),
        residual: last_residual,
    })
}

//! Slow, obviously-correct reference implementations used as test oracles.
//! None of this shares code with the library.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All eigenpairs of a dense symmetric matrix by cyclic Jacobi rotations.
/// Returned unsorted; vectors are the columns of the accumulated rotation.
pub fn jacobi_eigen(a: &[Vec<f64>]) -> Vec<(f64, Vec<f64>)> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        let scale: f64 = (0..n).map(|i| m[i][i] * m[i][i]).sum::<f64>() + off;
        if off <= 1e-30 * scale.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    (0..n)
        .map(|j| (m[j][j], (0..n).map(|i| v[i][j]).collect()))
        .collect()
}

/// Eigenvalues sorted by decreasing magnitude.
pub fn eigenvalues_by_magnitude(a: &[Vec<f64>]) -> Vec<f64> {
    let mut vals: Vec<f64> = jacobi_eigen(a).into_iter().map(|p| p.0).collect();
    vals.sort_by(|x, y| y.abs().total_cmp(&x.abs()));
    vals
}

/// Exact k-means optimum by enumerating every assignment of `points` to
/// `k` labels (empty clusters allowed, as they can only cost more).
pub fn kmeans_brute_force(points: &[Vec<f64>], k: usize) -> f64 {
    let n = points.len();
    let mut best = f64::INFINITY;
    let total = k.pow(n as u32);
    let mut assign = vec![0usize; n];
    for code in 0..total {
        let mut c = code;
        for a in assign.iter_mut() {
            *a = c % k;
            c /= k;
        }
        best = best.min(sse(points, &assign, k));
    }
    best
}

pub fn sse(points: &[Vec<f64>], assign: &[usize], k: usize) -> f64 {
    let d = points[0].len();
    let mut cost = 0.0;
    for c in 0..k {
        let members: Vec<&Vec<f64>> = points
            .iter()
            .zip(assign)
            .filter(|(_, &a)| a == c)
            .map(|(p, _)| p)
            .collect();
        if members.is_empty() {
            continue;
        }
        for j in 0..d {
            let mean = members.iter().map(|p| p[j]).sum::<f64>() / members.len() as f64;
            cost += members.iter().map(|p| (p[j] - mean).powi(2)).sum::<f64>();
        }
    }
    cost
}

/// Minimum misclassification count over all relabelings of `est`, by
/// recursive enumeration of permutations of `0..k`.
pub fn error_count_brute_force(est: &[usize], truth: &[usize], k: usize) -> usize {
    fn go(level: usize, used: &mut Vec<bool>, perm: &mut Vec<usize>, est: &[usize], truth: &[usize], best: &mut usize) {
        let k = used.len();
        if level == k {
            let miss = est
                .iter()
                .zip(truth)
                .filter(|(&e, &t)| perm[e - 1] + 1 != t)
                .count();
            *best = (*best).min(miss);
            return;
        }
        for c in 0..k {
            if !used[c] {
                used[c] = true;
                perm.push(c);
                go(level + 1, used, perm, est, truth, best);
                perm.pop();
                used[c] = false;
            }
        }
    }
    let mut best = usize::MAX;
    go(0, &mut vec![false; k], &mut Vec::new(), est, truth, &mut best);
    best
}

/// Erdős–Rényi-ish random simple graph, as an edge list on `0..n`.
pub fn random_edges(n: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn dense_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; n]; n];
    for &(i, j) in edges {
        a[i][j] = 1.0;
        a[j][i] = 1.0;
    }
    a
}

/// `(D + tau I)^{-1/2} A (D + tau I)^{-1/2}` computed densely from scratch.
pub fn dense_laplacian(a: &[Vec<f64>], delta: f64) -> Vec<Vec<f64>> {
    let n = a.len();
    let d: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let tau = delta * d.iter().cloned().fold(0.0, f64::max);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| a[i][j] / ((d[i] + tau) * (d[j] + tau)).sqrt())
                .collect()
        })
        .collect()
}

//! Seeded k-means with k-means++ initialization and Lloyd iterations.
//!
//! Restart `r` draws from stream `r` of a ChaCha8 generator seeded with the
//! caller's seed, so the best-of-restarts answer does not depend on how the
//! restarts are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const MAX_LLOYD_ITERATIONS: usize = 300;

/// Row-major `n x d` matrix of points.
#[derive(Debug, Clone, PartialEq)]
pub struct Points {
    data: Vec<f64>,
    n: usize,
    d: usize,
}

impl Points {
    pub fn new(data: Vec<f64>, n: usize, d: usize) -> Result<Self> {
        if data.len() != n * d {
            return Err(Error::InvalidArgument(format!(
                "{} values cannot form a {n}x{d} matrix",
                data.len()
            )));
        }
        Ok(Points { data, n, d })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Points::new(rows.concat(), rows.len(), d)
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.d + j]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansResult {
    /// Cluster of each row, in `1..=k`.
    pub assignment: Vec<usize>,
    /// `k` centers; an empty cluster keeps the last center it had.
    pub centers: Vec<Vec<f64>>,
    pub objective: f64,
    pub iterations: usize,
    pub nonempty: usize,
    /// Restart that produced this result.
    pub restart: usize,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(p: &[f64], centers: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, center) in centers.iter().enumerate() {
        let d = sq_dist(p, center);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// Generator for restart `restart` under `seed`.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

fn plus_plus_init(points: &Points, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = points.rows();
    let mut centers = Vec::with_capacity(k);
    let first = rng.random_range(0..n);
    centers.push(points.row(first).to_vec());
    let mut dist: Vec<f64> = (0..n).map(|i| sq_dist(points.row(i), &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = dist.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut chosen = None;
            for (i, &d) in dist.iter().enumerate() {
                acc += d;
                if d > 0.0 && acc > target {
                    chosen = Some(i);
                    break;
                }
            }
            // rounding can leave target just past the last positive weight
            chosen.unwrap_or_else(|| dist.iter().rposition(|&d| d > 0.0).unwrap())
        } else {
            // every point coincides with a center; duplicates are harmless
            0
        };
        let c = points.row(pick).to_vec();
        for (i, di) in dist.iter_mut().enumerate() {
            *di = di.min(sq_dist(points.row(i), &c));
        }
        centers.push(c);
    }
    centers
}

/// Lloyd iterations from the given centers until the assignment stops
/// changing or `max_iter` passes.
fn lloyd(points: &Points, mut centers: Vec<Vec<f64>>, max_iter: usize) -> KMeansResult {
    let n = points.rows();
    let d = points.cols();
    let k = centers.len();
    let mut assignment = vec![usize::MAX; n];
    let mut iterations = 0;
    loop {
        let mut changed = false;
        for (i, a) in assignment.iter_mut().enumerate() {
            let (c, _) = nearest(points.row(i), &centers);
            if *a != c {
                *a = c;
                changed = true;
            }
        }
        if !changed || iterations >= max_iter {
            break;
        }
        iterations += 1;
        let mut sums = vec![vec![0.0; d]; k];
        let mut counts = vec![0usize; k];
        for (i, &a) in assignment.iter().enumerate() {
            counts[a] += 1;
            for (s, x) in sums[a].iter_mut().zip(points.row(i)) {
                *s += x;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                centers[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
    }
    let objective = (0..n)
        .map(|i| sq_dist(points.row(i), &centers[assignment[i]]))
        .sum();
    let mut seen = vec![false; k];
    for &a in &assignment {
        seen[a] = true;
    }
    KMeansResult {
        assignment: assignment.into_iter().map(|a| a + 1).collect(),
        centers,
        objective,
        iterations,
        nonempty: seen.iter().filter(|&&s| s).count(),
        restart: 0,
    }
}

/// One k-means++ / Lloyd run using stream `restart` of `seed`.
pub fn kmeans_single(points: &Points, k: usize, seed: u64, restart: usize) -> Result<KMeansResult> {
    check(points, k)?;
    let mut rng = restart_rng(seed, restart);
    let centers = plus_plus_init(points, k, &mut rng);
    let mut result = lloyd(points, centers, MAX_LLOYD_ITERATIONS);
    result.restart = restart;
    Ok(result)
}

fn check(points: &Points, k: usize) -> Result<()> {
    if points.rows() == 0 || points.cols() == 0 {
        return Err(Error::InvalidArgument("k-means needs a non-empty matrix".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if k > points.rows() {
        return Err(Error::TooManyClusters(k, points.rows()));
    }
    if points.data.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("k-means input has non-finite entries".into()));
    }
    Ok(())
}

/// Best of `restarts` runs by objective; ties go to the lowest restart index.
pub fn kmeans(points: &Points, k: usize, restarts: usize, seed: u64) -> Result<KMeansResult> {
    check(points, k)?;
    let restarts = restarts.max(1);
    let runs: Vec<KMeansResult> = (0..restarts)
        .into_par_iter()
        .map(|r| kmeans_single(points, k, seed, r))
        .collect::<Result<_>>()?;
    Ok(runs
        .into_iter()
        .reduce(|best, r| if r.objective < best.objective { r } else { best })
        .expect("at least one restart"))
}

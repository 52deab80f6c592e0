//! Clustering error against ground truth, eigen-gap statistics and the
//! normalized Rayleigh quotient.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{regularized_laplacian, top_eigenpairs, EigenBasis, SymMatrix};

/// Largest alphabet for which [`error_rate`] enumerates permutations.
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// Labels in `1..=k` for `n` nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector {
    labels: Vec<usize>,
    k: usize,
}

impl LabelVector {
    /// `k` is taken as the largest label present.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let k = labels.iter().copied().max().unwrap_or(0);
        Self::with_alphabet(labels, k)
    }

    pub fn with_alphabet(labels: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l == 0 || l > k) {
            return Err(Error::InvalidArgument(format!(
                "label {bad} outside 1..={k}"
            )));
        }
        Ok(LabelVector { labels, k })
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        let labels = g.labels().ok_or(Error::Unlabeled)?;
        Self::with_alphabet(labels.to_vec(), g.class_count())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.labels
    }

    /// `S_k = { i : label_i = k }` for `k = 1..=K`, as 0-based entries.
    pub fn class_sets(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![Vec::new(); self.k];
        for (i, &l) in self.labels.iter().enumerate() {
            sets[l - 1].push(i);
        }
        sets
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRate {
    pub count: usize,
    pub rate: f64,
}

/// `confusion[a][b]` counts nodes with estimate `a + 1` and truth `b + 1`,
/// padded to a square of side `max(k_est, k_true)`.
fn confusion(est: &LabelVector, truth: &LabelVector) -> Result<Vec<Vec<usize>>> {
    if est.len() != truth.len() {
        return Err(Error::LengthMismatch(est.len(), truth.len()));
    }
    let k = est.k().max(truth.k());
    let mut c = vec![vec![0usize; k]; k];
    for (&a, &b) in est.as_slice().iter().zip(truth.as_slice()) {
        c[a - 1][b - 1] += 1;
    }
    Ok(c)
}

fn finish(n: usize, matched: usize) -> ErrorRate {
    let count = n - matched;
    ErrorRate {
        count,
        rate: if n == 0 { 0.0 } else { count as f64 / n as f64 },
    }
}

/// Minimum over relabelings of the estimate of the number of disagreements
/// with the truth. Enumerates permutations up to [`EXHAUSTIVE_LIMIT`] labels
/// and solves the assignment problem beyond that.
pub fn error_rate(est: &LabelVector, truth: &LabelVector) -> Result<ErrorRate> {
    if est.k().max(truth.k()) <= EXHAUSTIVE_LIMIT {
        error_rate_exhaustive(est, truth)
    } else {
        error_rate_hungarian(est, truth)
    }
}

pub fn error_rate_exhaustive(est: &LabelVector, truth: &LabelVector) -> Result<ErrorRate> {
    let c = confusion(est, truth)?;
    let k = c.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best = 0;
    // Heap's algorithm
    let mut stack = vec![0usize; k];
    let score = |p: &[usize]| p.iter().enumerate().map(|(a, &b)| c[a][b]).sum::<usize>();
    best = best.max(score(&perm));
    let mut i = 1;
    while i < k {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            best = best.max(score(&perm));
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    Ok(finish(est.len(), best))
}

pub fn error_rate_hungarian(est: &LabelVector, truth: &LabelVector) -> Result<ErrorRate> {
    let c = confusion(est, truth)?;
    let cost: Vec<Vec<i64>> = c
        .iter()
        .map(|row| row.iter().map(|&x| -(x as i64)).collect())
        .collect();
    let assign = min_cost_assignment(&cost);
    let matched = assign.iter().enumerate().map(|(a, &b)| c[a][b]).sum();
    Ok(finish(est.len(), matched))
}

/// Hungarian algorithm (shortest augmenting paths with potentials) on a square
/// cost matrix. Returns the column assigned to each row.
pub fn min_cost_assignment(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    const INF: i64 = i64::MAX / 4;
    // 1-based arrays; index 0 is a sentinel
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col_of = vec![0usize; n];
    for j in 1..=n {
        col_of[row_of[j] - 1] = j - 1;
    }
    col_of
}

/// Components of the between/within variance split of `x` over the classes
/// of `truth`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceSplit {
    pub total: f64,
    pub within: f64,
    pub between: f64,
}

pub fn variance_split(x: &[f64], truth: &LabelVector) -> Result<VarianceSplit> {
    if x.len() != truth.len() {
        return Err(Error::LengthMismatch(x.len(), truth.len()));
    }
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let mut sums = vec![0.0; truth.k()];
    let mut counts = vec![0usize; truth.k()];
    for (&xi, &l) in x.iter().zip(truth.as_slice()) {
        sums[l - 1] += xi;
        counts[l - 1] += 1;
    }
    let means: Vec<f64> = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
        .collect();
    let total = x.iter().map(|xi| (xi - mean).powi(2)).sum();
    let within = x
        .iter()
        .zip(truth.as_slice())
        .map(|(xi, &l)| (xi - means[l - 1]).powi(2))
        .sum();
    let between = means
        .iter()
        .zip(&counts)
        .map(|(m, &c)| c as f64 * (m - mean).powi(2))
        .sum();
    Ok(VarianceSplit {
        total,
        within,
        between,
    })
}

/// Normalized Rayleigh quotient: between-class over total variance. Returns 0
/// when the total variance is below `1e-24`.
pub fn rayleigh_quotient(x: &[f64], truth: &LabelVector) -> Result<f64> {
    let s = variance_split(x, truth)?;
    if s.total < 1e-24 {
        return Ok(0.0);
    }
    Ok((s.between / s.total).clamp(0.0, 1.0))
}

/// `1 - lambda_{K+1} / lambda_K` on signed, magnitude-ordered eigenvalues.
pub fn gap_statistic(basis: &EigenBasis, k: usize) -> Result<f64> {
    if k == 0 || basis.len() < k + 1 {
        return Err(Error::InvalidArgument(format!(
            "gap statistic for K={k} needs {} eigenvalues, have {}",
            k + 1,
            basis.len()
        )));
    }
    gap_from_values(basis.value(k - 1), basis.value(k), k)
}

pub(crate) fn gap_from_values(lambda_k: f64, lambda_next: f64, k: usize) -> Result<f64> {
    if lambda_k == 0.0 {
        return Err(Error::ZeroEigenvalue { index: k });
    }
    Ok(1.0 - lambda_next / lambda_k)
}

/// Which matrix a spectrum was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::Laplacian => "laplacian",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreeRow {
    pub matrix: MatrixKind,
    /// 1-based eigen index.
    pub index: usize,
    pub eigenvalue: f64,
    pub rayleigh_quotient: f64,
}

impl ScreeRow {
    pub fn abs_eigenvalue(&self) -> f64 {
        self.eigenvalue.abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreeReport {
    pub k: usize,
    pub delta: f64,
    pub rows: Vec<ScreeRow>,
    pub gap_adjacency: Option<f64>,
    pub gap_laplacian: Option<f64>,
}

pub const SCREE_HEADER: &str = "matrix\tindex\teigenvalue\tabs_eigenvalue\trayleigh_quotient";

impl ScreeReport {
    /// Tab-separated plot data, one row per eigenvector. Values are printed at
    /// full precision.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# k={} delta={}", self.k, self.delta);
        if let Some(g) = self.gap_adjacency {
            let _ = writeln!(out, "# gap_adjacency={g}");
        }
        if let Some(g) = self.gap_laplacian {
            let _ = writeln!(out, "# gap_laplacian={g}");
        }
        let _ = writeln!(out, "{SCREE_HEADER}");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                r.matrix.as_str(),
                r.index,
                r.eigenvalue,
                r.abs_eigenvalue(),
                r.rayleigh_quotient
            );
        }
        out
    }

    pub fn rows_for(&self, kind: MatrixKind) -> impl Iterator<Item = &ScreeRow> {
        self.rows.iter().filter(move |r| r.matrix == kind)
    }

    /// `Q(xi_index)` for a 1-based eigen index.
    pub fn quotient(&self, kind: MatrixKind, index: usize) -> Option<f64> {
        self.rows_for(kind)
            .find(|r| r.index == index)
            .map(|r| r.rayleigh_quotient)
    }
}

/// Scree and Rayleigh-quotient data for the adjacency matrix and `L_delta`,
/// `depth` eigenvectors each (clipped to `n`).
pub fn scree_and_rq_report(g: &Graph, k: usize, delta: f64, depth: usize) -> Result<ScreeReport> {
    let truth = LabelVector::from_graph(g)?;
    let depth = depth.min(g.node_count());
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut gaps = [None, None];
    for (slot, kind) in [MatrixKind::Adjacency, MatrixKind::Laplacian].into_iter().enumerate() {
        let m = match kind {
            MatrixKind::Adjacency => SymMatrix::adjacency(g),
            MatrixKind::Laplacian => regularized_laplacian(g, delta)?,
        };
        let basis = top_eigenpairs(&m, depth)?;
        if basis.len() > k {
            gaps[slot] = gap_statistic(&basis, k).ok();
        }
        for (i, (&lam, x)) in basis.values().iter().zip(basis.vectors()).enumerate() {
            rows.push(ScreeRow {
                matrix: kind,
                index: i + 1,
                eigenvalue: lam,
                rayleigh_quotient: rayleigh_quotient(x, &truth)?,
            });
        }
    }
    Ok(ScreeReport {
        k,
        delta,
        rows,
        gap_adjacency: gaps[0],
        gap_laplacian: gaps[1],
    })
}

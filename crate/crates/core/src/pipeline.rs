//! SCORE, SCORE+ and the variants in between.
//!
//! Every variant is the same composition: pick a matrix (adjacency or the
//! regularized Laplacian), take its leading eigenpairs, decide how many
//! eigenvectors to use, divide them entrywise by the leading one, and run
//! k-means on the rows of the resulting ratio matrix.

use crate::diagnostics::gap_from_values;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kmeans::{kmeans, KMeansResult, Points};
use crate::spectral::{regularized_laplacian, top_eigenpairs, EigenBasis, SymMatrix};

/// Below this magnitude an entry of the leading eigenvector cannot divide.
pub const VANISHING_ENTRY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Adjacency eigenvectors, unweighted ratios, exactly K vectors.
    Score,
    /// Laplacian eigenvectors, eigenvalue-weighted ratios, gap rule.
    ScorePlus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub k: usize,
    /// Use `L_delta` instead of the adjacency matrix.
    pub pre_pca: bool,
    pub delta: f64,
    /// Ratios of `lambda_k xi_k` rather than of `xi_k`.
    pub weight_by_eigenvalue: bool,
    /// Admit eigenvector K+1 when the eigen-gap is at most `t`.
    pub extra_vector: bool,
    pub t: f64,
    /// Clip ratios to `[-ln n, ln n]`.
    pub threshold_ratios: bool,
    /// Divide by the leading eigenvector. Turning this off clusters the raw
    /// eigenvectors (classical PCA), kept for ablations.
    pub post_pca: bool,
    pub kmeans_restarts: usize,
    pub seed: u64,
}

pub const DEFAULT_DELTA: f64 = 0.1;
pub const DEFAULT_T: f64 = 0.1;
pub const DEFAULT_RESTARTS: usize = 100;

impl PipelineConfig {
    pub fn score(k: usize) -> Self {
        PipelineConfig {
            k,
            pre_pca: false,
            delta: DEFAULT_DELTA,
            weight_by_eigenvalue: false,
            extra_vector: false,
            t: DEFAULT_T,
            threshold_ratios: false,
            post_pca: true,
            kmeans_restarts: DEFAULT_RESTARTS,
            seed: 0,
        }
    }

    pub fn score_plus(k: usize) -> Self {
        PipelineConfig {
            pre_pca: true,
            weight_by_eigenvalue: true,
            extra_vector: true,
            ..Self::score(k)
        }
    }

    pub fn for_method(method: Method, k: usize) -> Self {
        match method {
            Method::Score => Self::score(k),
            Method::ScorePlus => Self::score_plus(k),
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.kmeans_restarts = restarts;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidArgument(format!("K must be at least 2, got {}", self.k)));
        }
        if self.pre_pca && !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "delta must be positive, got {}",
                self.delta
            )));
        }
        if self.extra_vector && !(self.t > 0.0 && self.t < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "t must lie in (0, 1), got {}",
                self.t
            )));
        }
        if self.kmeans_restarts == 0 {
            return Err(Error::InvalidArgument("need at least one k-means restart".into()));
        }
        Ok(())
    }

    /// Short human-readable method name.
    pub fn describe(&self) -> String {
        if *self == Self::score(self.k).with_seed(self.seed).with_restarts(self.kmeans_restarts) {
            return "score".into();
        }
        let plus = Self::score_plus(self.k)
            .with_seed(self.seed)
            .with_restarts(self.kmeans_restarts)
            .with_delta(self.delta)
            .with_t(self.t);
        if *self == plus {
            return "score+".into();
        }
        let mut parts = vec![];
        parts.push(if self.pre_pca { "laplacian" } else { "adjacency" });
        if self.weight_by_eigenvalue {
            parts.push("weighted");
        }
        if self.extra_vector {
            parts.push("gap-rule");
        }
        if self.threshold_ratios {
            parts.push("thresholded");
        }
        if !self.post_pca {
            parts.push("no-ratio");
        }
        parts.join("+")
    }
}

/// Decide between `K` and `K + 1` eigenvectors: `K + 1` iff
/// `1 - lambda_{K+1} / lambda_K <= t` on the signed values.
pub fn select_vector_count(lambda_k: f64, lambda_next: f64, t: f64, k: usize) -> Result<usize> {
    let gap = gap_from_values(lambda_k, lambda_next, k)?;
    Ok(if gap <= t { k + 1 } else { k })
}

/// How to treat entries of the leading eigenvector that are (nearly) zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VanishingPolicy {
    /// Fail unless thresholding is enabled.
    Error,
    /// Replace by `±1e-12`, keeping the sign (zero counts as positive).
    Clamp,
}

/// `n x (M - 1)` matrix whose column `k - 1` is `eta_k / eta_1` entrywise.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RatioMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_points(&self) -> Points {
        Points::new(self.data.clone(), self.rows, self.cols).expect("shape is consistent")
    }
}

/// Entrywise eigen-ratios from the first `m` pairs of `basis`.
pub fn build_ratio_matrix(
    basis: &EigenBasis,
    m: usize,
    weight_by_eigenvalue: bool,
    threshold_ratios: bool,
    policy: VanishingPolicy,
) -> Result<RatioMatrix> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("need M >= 2 eigenvectors, got {m}")));
    }
    if basis.len() < m {
        return Err(Error::InvalidArgument(format!(
            "ratio matrix needs {m} eigenpairs, have {}",
            basis.len()
        )));
    }
    let n = basis.dim();
    let lead = basis.vector(0);
    let lambda_1 = basis.value(0);
    let weights: Vec<f64> = (1..m)
        .map(|k| {
            if weight_by_eigenvalue {
                basis.value(k) / lambda_1
            } else {
                1.0
            }
        })
        .collect();
    if weight_by_eigenvalue && lambda_1 == 0.0 {
        return Err(Error::ZeroEigenvalue { index: 1 });
    }
    let bound = (n as f64).ln();
    let cols = m - 1;
    let mut data = Vec::with_capacity(n * cols);
    for (i, &x1) in lead.iter().enumerate() {
        let denom = if x1.abs() < VANISHING_ENTRY {
            if policy == VanishingPolicy::Error && !threshold_ratios {
                return Err(Error::VanishingLeadingEntry { node: i });
            }
            if x1 < 0.0 {
                -VANISHING_ENTRY
            } else {
                VANISHING_ENTRY
            }
        } else {
            x1
        };
        for (k, w) in (1..m).zip(&weights) {
            let mut r = w * basis.vector(k)[i] / denom;
            if threshold_ratios {
                r = r.clamp(-bound, bound);
            }
            data.push(r);
        }
    }
    Ok(RatioMatrix { rows: n, cols, data })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signal {
    /// Gap statistic above `t`.
    Strong,
    /// Gap statistic at most `t`.
    Weak,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionResult {
    /// Estimated labels in `1..=K`; some labels may be unused.
    pub labels: Vec<usize>,
    /// Number of eigenvectors used (`K` or `K + 1`).
    pub m_used: usize,
    /// Leading `K + 1` eigenvalues of the matrix that was decomposed.
    pub eigenvalues: Vec<f64>,
    /// `1 - lambda_{K+1} / lambda_K`.
    pub gap: f64,
    pub signal: Signal,
    pub kmeans_objective: f64,
    pub nonempty_clusters: usize,
    pub config: PipelineConfig,
}

/// Matrix and leading pairs the pipeline would decompose for `cfg`.
pub fn leading_pairs(g: &Graph, cfg: &PipelineConfig, count: usize) -> Result<EigenBasis> {
    let m: SymMatrix = if cfg.pre_pca {
        regularized_laplacian(g, cfg.delta)?
    } else {
        SymMatrix::adjacency(g)
    };
    top_eigenpairs(&m, count)
}

/// Run the configured variant on a connected graph.
pub fn run_pipeline(g: &Graph, cfg: &PipelineConfig) -> Result<DetectionResult> {
    cfg.validate()?;
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let components = g.components().len();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    let k = cfg.k;
    if n <= k {
        return Err(Error::InvalidArgument(format!("need more than K={k} nodes, have {n}")));
    }
    let basis = leading_pairs(g, cfg, k + 1)?;
    let gap = gap_from_values(basis.value(k - 1), basis.value(k), k)?;
    let m = if cfg.extra_vector {
        select_vector_count(basis.value(k - 1), basis.value(k), cfg.t, k)?
    } else {
        k
    };
    let points = if cfg.post_pca {
        let policy = if cfg.pre_pca {
            VanishingPolicy::Error
        } else {
            VanishingPolicy::Clamp
        };
        build_ratio_matrix(&basis, m, cfg.weight_by_eigenvalue, cfg.threshold_ratios, policy)?
            .to_points()
    } else {
        raw_embedding(&basis, m, cfg.weight_by_eigenvalue)
    };
    let km: KMeansResult = kmeans(&points, k, cfg.kmeans_restarts, cfg.seed)?;
    Ok(DetectionResult {
        labels: km.assignment,
        m_used: m,
        eigenvalues: basis.values().to_vec(),
        gap,
        signal: if gap <= cfg.t { Signal::Weak } else { Signal::Strong },
        kmeans_objective: km.objective,
        nonempty_clusters: km.nonempty,
        config: cfg.clone(),
    })
}

/// Rows of `[xi_1 .. xi_M]` (optionally scaled by eigenvalue).
fn raw_embedding(basis: &EigenBasis, m: usize, weighted: bool) -> Points {
    let n = basis.dim();
    let mut data = Vec::with_capacity(n * m);
    for i in 0..n {
        for k in 0..m {
            let w = if weighted { basis.value(k) } else { 1.0 };
            data.push(w * basis.vector(k)[i]);
        }
    }
    Points::new(data, n, m).expect("shape is consistent")
}

//! Degree-corrected block model sampler.
//!
//! Edges `i < j` are independent Bernoulli draws with probability
//! `min(theta_i theta_j P[g_i][g_j], 1)`; the diagonal is empty. `Omega` is
//! evaluated entry by entry and never stored.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `theta_i = c_n * X_i` with `X_i` iid Pareto of shape `alpha`, scale `beta`
/// (support `[beta, inf)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoSpec {
    pub alpha: f64,
    pub beta: f64,
    pub c_n: f64,
}

pub const PARETO_ALPHA: f64 = 5.0;
pub const PARETO_BETA: f64 = 0.8;

/// How the degree scale `c_n` depends on `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeScale {
    /// `c_n = 3 ln(n) / n`.
    Literal,
    /// `c_n = sqrt(10 ln(n) / n)`, so `theta_i theta_j` is of order
    /// `10 ln(n) / n` and the mean degree grows like `ln n`.
    #[default]
    Calibrated,
}

impl DegreeScale {
    pub fn c_n(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            DegreeScale::Literal => 3.0 * n.ln() / n,
            DegreeScale::Calibrated => (10.0 * n.ln() / n).sqrt(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DegreeScale::Literal => "literal",
            DegreeScale::Calibrated => "calibrated",
        }
    }
}

impl ParetoSpec {
    pub fn new(n: usize, scale: DegreeScale) -> Self {
        ParetoSpec {
            alpha: PARETO_ALPHA,
            beta: PARETO_BETA,
            c_n: scale.c_n(n),
        }
    }

    /// `c_n = 3 ln(n) / n`.
    pub fn literal(n: usize) -> Self {
        Self::new(n, DegreeScale::Literal)
    }

    /// `E[X] = alpha beta / (alpha - 1)`.
    pub fn mean(&self) -> f64 {
        self.alpha * self.beta / (self.alpha - 1.0)
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 1.0 && self.beta > 0.0 && self.c_n > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "Pareto spec needs alpha > 1, beta > 0, c_n > 0: {self:?}"
            )));
        }
        Ok(())
    }
}

/// Draw `n` degree parameters by inverse-CDF sampling.
pub fn sample_theta(n: usize, spec: &ParetoSpec, seed: u64) -> Result<Vec<f64>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| {
            // 1 - U lies in (0, 1]
            let u: f64 = 1.0 - rng.random::<f64>();
            spec.c_n * spec.beta * u.powf(-1.0 / spec.alpha)
        })
        .collect())
}

/// Contiguous equal blocks labeled `1..=k`; the last block absorbs `n mod k`.
pub fn build_balanced_pi(n: usize, k: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be positive".into()));
    }
    if k > n {
        return Err(Error::TooManyClusters(k, n));
    }
    let size = n / k;
    Ok((0..n).map(|i| (i / size).min(k - 1) + 1).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DcbmParams {
    /// `K x K` symmetric non-negative block matrix.
    pub p: Vec<Vec<f64>>,
    pub theta: Vec<f64>,
    /// Community of each node, in `1..=K`.
    pub membership: Vec<usize>,
}

impl DcbmParams {
    pub fn new(p: Vec<Vec<f64>>, theta: Vec<f64>, membership: Vec<usize>) -> Result<Self> {
        let params = DcbmParams {
            p,
            theta,
            membership,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }

    pub fn n(&self) -> usize {
        self.theta.len()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k();
        if k == 0 || self.p.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidArgument("P must be a non-empty square matrix".into()));
        }
        for a in 0..k {
            for b in 0..k {
                let v = self.p[a][b];
                if !(v >= 0.0 && v.is_finite()) || v != self.p[b][a] {
                    return Err(Error::InvalidArgument(format!(
                        "P must be symmetric and non-negative (entry {a},{b})"
                    )));
                }
            }
        }
        if self.theta.len() != self.membership.len() {
            return Err(Error::LengthMismatch(self.theta.len(), self.membership.len()));
        }
        if let Some(t) = self.theta.iter().find(|&&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::InvalidArgument(format!("theta must be positive, got {t}")));
        }
        if let Some(g) = self.membership.iter().find(|&&g| g == 0 || g > k) {
            return Err(Error::InvalidArgument(format!("community {g} outside 1..={k}")));
        }
        Ok(())
    }

    /// `Omega_ij = theta_i theta_j P[g_i][g_j]` (before clamping).
    pub fn omega(&self, i: usize, j: usize) -> f64 {
        self.theta[i] * self.theta[j] * self.p[self.membership[i] - 1][self.membership[j] - 1]
    }

    /// Dense `Omega`, including its diagonal.
    pub fn omega_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.omega(i, j)).collect())
            .collect()
    }

    /// `E[d_i] = sum_{j != i} min(Omega_ij, 1)`.
    pub fn expected_degrees(&self) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| self.omega(i, j).min(1.0))
                    .sum()
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct SampledGraph {
    /// Labeled with the true communities.
    pub graph: Graph,
    /// Pairs whose `Omega_ij` exceeded 1 and was clamped.
    pub clamped: usize,
}

/// Draw one adjacency matrix.
pub fn sample_adjacency(params: &DcbmParams, seed: u64) -> Result<SampledGraph> {
    params.validate()?;
    let n = params.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let mut edges = Vec::new();
    let mut clamped = 0;
    for i in 0..n {
        let ti = params.theta[i];
        let pi = &params.p[params.membership[i] - 1];
        for j in i + 1..n {
            let mut prob = ti * params.theta[j] * pi[params.membership[j] - 1];
            if prob > 1.0 {
                clamped += 1;
                prob = 1.0;
            }
            // always draw so the stream position depends only on (i, j)
            let u: f64 = rng.random();
            if u < prob {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(n, edges)?.with_labels(&params.membership)?;
    Ok(SampledGraph { graph, clamped })
}

/// The two block matrices of the simulation study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    One,
    Two,
}

impl Experiment {
    pub fn p_matrix(self) -> Vec<Vec<f64>> {
        match self {
            Experiment::One => (0..4)
                .map(|a| (0..4).map(|b| if a == b { 1.0 } else { 0.5 }).collect())
                .collect(),
            Experiment::Two => vec![
                vec![1.0, 2.0 / 3.0, 0.1, 0.1],
                vec![2.0 / 3.0, 1.0, 0.5, 0.5],
                vec![0.1, 0.5, 1.0, 0.5],
                vec![0.1, 0.5, 0.5, 1.0],
            ],
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Experiment::One => 1,
            Experiment::Two => 2,
        }
    }
}

/// Parameters of the simulation design for a given block matrix: Pareto
/// degree parameters and `K` equal contiguous communities.
pub fn design_params(p: Vec<Vec<f64>>, n: usize, scale: DegreeScale, seed: u64) -> Result<DcbmParams> {
    let k = p.len();
    let theta = sample_theta(n, &ParetoSpec::new(n, scale), seed)?;
    let membership = build_balanced_pi(n, k)?;
    DcbmParams::new(p, theta, membership)
}

/// One replicate of the simulation design.
pub fn simulate(p: Vec<Vec<f64>>, n: usize, scale: DegreeScale, seed: u64) -> Result<SampledGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let params = design_params(p, n, scale, seed)?;
    sample_adjacency(&params, seed)
}

/// Parse a whitespace- or comma-separated square matrix, one row per line.
pub fn parse_p_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| parse_number(t).ok_or_else(|| Error::parse(no + 1, format!("bad number `{t}`"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    let k = rows.len();
    if k == 0 {
        return Err(Error::parse(1, "empty matrix"));
    }
    if rows.iter().any(|r| r.len() != k) {
        return Err(Error::parse(1, "matrix is not square"));
    }
    Ok(rows)
}

/// Accepts plain numbers and fractions such as `2/3`.
fn parse_number(t: &str) -> Option<f64> {
    match t.split_once('/') {
        Some((a, b)) => Some(a.parse::<f64>().ok()? / b.parse::<f64>().ok()?),
        None => t.parse().ok(),
    }
}

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Sparse symmetric matrix in compressed-row form. Both triangles are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SymMatrix {
    /// Build from `(i, j, v)` upper- or lower-triangle triplets; each entry is
    /// mirrored. Duplicate positions are summed.
    pub fn from_triplets(n: usize, triplets: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (i, j, v) in triplets {
            rows[i].push((j, v));
            if i != j {
                rows[j].push((i, v));
            }
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(j, _)| j);
            let mut last: Option<usize> = None;
            for (j, v) in row {
                if last == Some(j) {
                    *vals.last_mut().unwrap() += v;
                } else {
                    cols.push(j);
                    vals.push(v);
                    last = Some(j);
                }
            }
            row_ptr.push(cols.len());
        }
        SymMatrix {
            n,
            row_ptr,
            cols,
            vals,
        }
    }

    /// The 0/1 adjacency matrix of `g`.
    pub fn adjacency(g: &Graph) -> Self {
        Self::from_triplets(g.node_count(), g.edges().map(|(i, j)| (i, j, 1.0)))
    }

    pub fn from_dense(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut t = Vec::new();
        for i in 0..n {
            for j in i..n {
                if rows[i][j] != 0.0 {
                    t.push((i, j, rows[i][j]));
                }
            }
        }
        Self::from_triplets(n, t)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let row = &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]];
        match row.binary_search(&j) {
            Ok(k) => self.vals[self.row_ptr[i] + k],
            Err(_) => 0.0,
        }
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    /// `y = self * x`
    pub fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let mut s = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                s += self.vals[k] * x[self.cols[k]];
            }
            *yi = s;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.mul_vec_into(x, &mut y);
        y
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.n]; self.n];
        for (i, row) in d.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] = v;
            }
        }
        d
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn max_abs_row_sum(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).map(|(_, v)| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// `L = (D + delta d_max I)^{-1/2} A (D + delta d_max I)^{-1/2}`.
///
/// `delta = 0` gives the plain normalized adjacency and fails on isolated nodes.
pub fn regularized_laplacian(g: &Graph, delta: f64) -> Result<SymMatrix> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if delta < 0.0 || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "delta must be a finite non-negative number, got {delta}"
        )));
    }
    let info = g.degree_info();
    let ridge = delta * info.d_max as f64;
    let scale: Vec<f64> = info
        .degrees
        .iter()
        .map(|&d| d as f64 + ridge)
        .collect();
    if let Some(node) = scale.iter().position(|&s| s <= 0.0) {
        return Err(Error::IsolatedNode { node });
    }
    let inv_sqrt: Vec<f64> = scale.iter().map(|s| 1.0 / s.sqrt()).collect();
    Ok(SymMatrix::from_triplets(
        g.node_count(),
        g.edges().map(|(i, j)| (i, j, inv_sqrt[i] * inv_sqrt[j])),
    ))
}

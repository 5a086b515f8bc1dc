//! Random formation graphs and their dual quaternion Laplacians.

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DQMatrix, DQVector};
use crate::scalar::{DualQuaternion, Quaternion};

/// Unit dual quaternion with a uniformly random rotation and a standard
/// normal translation.
pub fn random_unit_dq<R: Rng + ?Sized>(rng: &mut R) -> DualQuaternion {
    let st = loop {
        let q = Quaternion::from_array(std::array::from_fn(|_| rng.sample(StandardNormal)));
        let n = q.norm();
        if n > 1e-6 {
            break q.scale(1.0 / n);
        }
    };
    let t = Quaternion::pure(std::array::from_fn(|_| rng.sample(StandardNormal)));
    DualQuaternion::new(st, (t * st).scale(0.5))
}

/// Undirected graph with a unit dual quaternion attached to every vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormationGraph {
    pub n: usize,
    /// Unordered pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub q: DQVector,
}

impl FormationGraph {
    /// `2|E| / n²`.
    pub fn sparsity(&self) -> f64 {
        2.0 * self.edges.len() as f64 / (self.n * self.n) as f64
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(i, j) in &self.edges {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }
}

/// Number of edges for sparsity `s`: `round(s n² / 2)`.
pub fn edge_count(n: usize, s: f64) -> Result<usize> {
    let max = n * n.saturating_sub(1) / 2;
    let m = (s * (n * n) as f64 / 2.0).round();
    if n == 0 || !(s > 0.0) || !m.is_finite() || m > max as f64 {
        return Err(Error::InfeasibleSparsity { n, s });
    }
    Ok(m as usize)
}

/// Graph on `n` vertices with `round(s n² / 2)` edges drawn uniformly
/// without replacement, and fresh random unit dual quaternions.
pub fn random_graph<R: Rng + ?Sized>(n: usize, s: f64, rng: &mut R) -> Result<FormationGraph> {
    let m = edge_count(n, s)?;
    let total = n * (n - 1) / 2;
    let mut edges: Vec<(usize, usize)> = sample(rng, total, m).into_iter().map(|k| pair_of(n, k)).collect();
    edges.sort_unstable();
    let q = DQVector::from_fn(n, |_| random_unit_dq(rng));
    Ok(FormationGraph { n, edges, q })
}

/// The `k`-th pair `(i, j)`, `i < j`, in row-major order of the strict upper triangle.
fn pair_of(n: usize, mut k: usize) -> (usize, usize) {
    let mut i = 0;
    while k >= n - 1 - i {
        k -= n - 1 - i;
        i += 1;
    }
    (i, i + 1 + k)
}

/// `D - A` with `a_ij = q_i* q_j` on edges.
pub fn laplacian(g: &FormationGraph) -> DQMatrix {
    let mut l = DQMatrix::zeros(g.n, g.n);
    for (i, d) in g.degrees().into_iter().enumerate() {
        l[(i, i)] = DualQuaternion::from_real(d as f64);
    }
    for &(i, j) in &g.edges {
        let a = g.q[i].conj() * g.q[j];
        l[(i, j)] = -a;
        l[(j, i)] = -a.conj();
    }
    l
}

/// Classical real Laplacian `D - A` of the same graph.
pub fn classical_laplacian(g: &FormationGraph) -> Vec<Vec<f64>> {
    let mut l = vec![vec![0.0; g.n]; g.n];
    for (i, d) in g.degrees().into_iter().enumerate() {
        l[i][i] = d as f64;
    }
    for &(i, j) in &g.edges {
        l[i][j] = -1.0;
        l[j][i] = -1.0;
    }
    l
}

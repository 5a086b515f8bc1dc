//! Laplacian eigenvalue benchmark: random formation graphs, both RQI
//! backends, averaged over trials.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::eigen::{random_start, rqi_from, Backend, EigenPair, RqiConfig};
use crate::error::{Error, Result};
use crate::graph::{laplacian, random_graph};

/// `(n, s)` settings of the reference Laplacian experiment.
pub const REFERENCE_ROWS: [(usize, f64); 12] = [
    (10, 0.10),
    (10, 0.20),
    (10, 0.30),
    (10, 0.40),
    (10, 0.50),
    (10, 0.60),
    (100, 0.05),
    (100, 0.08),
    (100, 0.10),
    (100, 0.15),
    (100, 0.18),
    (100, 0.20),
];

pub const CSV_HEADER: &str = "n,s,backend,e_lambda_mean,iters_mean,time_mean_s,flops_mean,trials,seed";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub sizes: Vec<(usize, f64)>,
    pub trials: usize,
    pub seed: u64,
    pub backends: Vec<Backend>,
    pub rqi: RqiConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: REFERENCE_ROWS.to_vec(),
            trials: 100,
            seed: 0,
            backends: vec![Backend::Baseline, Backend::Adjoint],
            rqi: RqiConfig::default(),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.backends.is_empty() {
            return Err(Error::InvalidConfig("no backend selected".into()));
        }
        self.rqi.validate()?;
        for &(n, s) in &self.sizes {
            crate::graph::edge_count(n, s)?;
        }
        Ok(())
    }
}

/// Means (and medians) over the trials that produced an eigenpair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub s: f64,
    pub backend: Backend,
    pub e_lambda_mean: f64,
    pub iters_mean: f64,
    pub time_mean_s: f64,
    pub flops_mean: f64,
    pub trials: usize,
    pub seed: u64,
    pub e_lambda_max: f64,
    pub time_median_s: f64,
    pub converged: usize,
    pub failed: usize,
}

impl BenchRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{:.3e},{:.2},{:.3e},{:.4e},{},{}",
            self.n,
            self.s,
            self.backend.name(),
            self.e_lambda_mean,
            self.iters_mean,
            self.time_mean_s,
            self.flops_mean,
            self.trials,
            self.seed
        )
    }
}

/// Generator for trial `trial` of setting `row`; independent of every other
/// trial and of the backend.
pub fn trial_rng(seed: u64, row: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((row as u64) << 32) | trial as u64);
    rng
}

/// One trial: a fresh graph with fresh frames and start vector, solved by
/// each backend from the same start.
pub fn run_trial(n: usize, s: f64, rng: &mut ChaCha8Rng, rqi: &RqiConfig, backends: &[Backend]) -> Result<Vec<Result<EigenPair>>> {
    let g = random_graph(n, s, rng)?;
    let l = laplacian(&g);
    let v0 = random_start(n, rng)?;
    Ok(backends.iter().map(|&b| rqi_from(&l, &v0, rqi, b)).collect())
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        f64::NAN
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

fn summarize(n: usize, s: f64, backend: Backend, config: &BenchConfig, runs: &[Result<EigenPair>]) -> BenchRow {
    let ok: Vec<&EigenPair> = runs.iter().filter_map(|r| r.as_ref().ok()).collect();
    let e: Vec<f64> = ok.iter().map(|p| p.residual_e_lambda).collect();
    let it: Vec<f64> = ok.iter().map(|p| p.iterations as f64).collect();
    let t: Vec<f64> = ok.iter().map(|p| p.wall_time).collect();
    let f: Vec<f64> = ok.iter().map(|p| p.flops.total() as f64).collect();
    BenchRow {
        n,
        s,
        backend,
        e_lambda_mean: mean(&e),
        iters_mean: mean(&it),
        time_mean_s: mean(&t),
        flops_mean: mean(&f),
        trials: config.trials,
        seed: config.seed,
        e_lambda_max: e.iter().cloned().fold(f64::NAN, f64::max),
        time_median_s: median(&t),
        converged: ok.iter().filter(|p| p.converged).count(),
        failed: runs.len() - ok.len(),
    }
}

/// Runs every `(n, s)` setting and returns one row per setting and backend.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    config.validate()?;
    let mut rows = Vec::new();
    for (r, &(n, s)) in config.sizes.iter().enumerate() {
        let mut per_backend: Vec<Vec<Result<EigenPair>>> = vec![Vec::new(); config.backends.len()];
        for trial in 0..config.trials {
            let mut rng = trial_rng(config.seed, r, trial);
            for (slot, res) in per_backend.iter_mut().zip(run_trial(n, s, &mut rng, &config.rqi, &config.backends)?) {
                slot.push(res);
            }
        }
        for (&b, runs) in config.backends.iter().zip(&per_backend) {
            rows.push(summarize(n, s, b, config, runs));
        }
    }
    Ok(rows)
}

/// Header plus one line per row.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BenchConfig {
        BenchConfig {
            sizes: vec![(10, 0.3), (12, 0.2)],
            trials: 4,
            seed: 7,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn rows_and_csv_shape() {
        let rows = run_bench(&small()).unwrap();
        assert_eq!(rows.len(), 4);
        let csv = to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 9));
        assert!(rows.iter().all(|r| r.failed == 0 && r.converged == 4 && r.e_lambda_mean < 1e-6));
    }

    #[test]
    fn deterministic_apart_from_timing() {
        let strip = |rows: Vec<BenchRow>| {
            rows.into_iter()
                .map(|r| BenchRow {
                    time_mean_s: 0.0,
                    time_median_s: 0.0,
                    ..r
                })
                .collect::<Vec<_>>()
        };
        let a = strip(run_bench(&small()).unwrap());
        let b = strip(run_bench(&small()).unwrap());
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn trial_streams_differ() {
        use rand::RngCore;
        let a = trial_rng(1, 0, 0).next_u64();
        assert_ne!(a, trial_rng(1, 0, 1).next_u64());
        assert_ne!(a, trial_rng(1, 1, 0).next_u64());
        assert_eq!(a, trial_rng(1, 0, 0).next_u64());
    }

    #[test]
    fn rejects_bad_config() {
        let c = BenchConfig { trials: 0, ..small() };
        assert!(matches!(run_bench(&c), Err(Error::InvalidConfig(_))));
        let c = BenchConfig { sizes: vec![(2, 1.0)], ..small() };
        assert!(matches!(run_bench(&c), Err(Error::InfeasibleSparsity { .. })));
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert!(median(&[]).is_nan());
    }
}

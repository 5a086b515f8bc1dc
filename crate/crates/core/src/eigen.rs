//! Extreme eigenpairs of dual quaternion Hermitian matrices by Rayleigh
//! quotient iteration.
//!
//! Both backends run the same iteration and differ only in how the shifted
//! system `(Q - λI) u = v` is solved: through the real dual representation
//! or through the dual complex adjoint matrix.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::adjoint::{adjoint, dual_rep_col, dual_rep_col_inv, dual_representation, fmap, fmap_inv, DualRepMatrix};
use crate::error::{Error, Result};
use crate::handeye::diagonalize;
use crate::linalg::{DCMatrix, DQMatrix, DQVector, Matrix};
use crate::scalar::{DualComplex, DualNumber, DualQuaternion};
use crate::solve::{solve_dc, solve_dual_real, FlopCount, FlopCounter, Method, Stopwatch};

/// Rayleigh quotient imaginary residue above this (relative to `max(1, ‖Q‖_FR)`)
/// means the input is not Hermitian.
pub const HERMITIAN_RESIDUE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RqiConfig {
    pub k_max: usize,
    pub delta: f64,
    pub power_iters: usize,
    pub seed: u64,
}

impl Default for RqiConfig {
    fn default() -> Self {
        Self {
            k_max: 50,
            delta: 1e-7,
            power_iters: 20,
            seed: 0,
        }
    }
}

impl RqiConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k_max == 0 {
            return Err(Error::InvalidConfig("k_max must be at least 1".into()));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::InvalidConfig(format!("delta must be positive, got {}", self.delta)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Real `4n × 4n` dual representation.
    Baseline,
    /// Dual complex `2n × 2n` adjoint matrix.
    Adjoint,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Baseline => "baseline",
            Backend::Adjoint => "adjoint",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenPair {
    pub lambda: DualNumber,
    pub vector: DQVector,
    /// `‖Q u - u λ‖_2R`, recomputed from the returned pair.
    pub residual_e_lambda: f64,
    /// Rayleigh quotient steps, including a final step whose shifted system
    /// was singular. Power iterations are not counted.
    pub iterations: usize,
    pub power_iterations: usize,
    pub converged: bool,
    /// Residual before the first step and after each completed step.
    pub history: Vec<f64>,
    pub backend: Backend,
    /// Flops spent in the shifted solves.
    pub flops: FlopCount,
    pub factorizations: u32,
    /// Seconds spent in the iteration loop.
    pub wall_time: f64,
}

/// `v* Q v` as a dual number.
pub fn rayleigh_quotient(q: &DQMatrix, v: &DQVector) -> Result<DualNumber> {
    let qv = q.dq_matvec(v)?;
    let r = v.dot(&qv)?;
    let residue = r.st.vector().iter().chain(&r.du.vector()).fold(0.0f64, |m, x| m.max(x.abs()));
    if residue > HERMITIAN_RESIDUE_TOL * q.norm_fr().max(1.0) {
        return Err(Error::HermitianViolation { residue });
    }
    Ok(DualNumber::new(r.st.w, r.du.w))
}

/// `‖Q v - v λ‖_2R`.
pub fn eigen_residual(q: &DQMatrix, lambda: DualNumber, v: &DQVector) -> Result<f64> {
    let qv = q.dq_matvec(v)?;
    Ok((&qv - &v.scale_dual(lambda)).norm2r())
}

/// Applies `v ← Q v / ‖Q v‖₂` `iters` times to the normalized `v0`.
pub fn power_preprocess(q: &DQMatrix, v0: &DQVector, iters: usize) -> Result<DQVector> {
    let (mut v, _) = v0.normalized()?;
    for _ in 0..iters {
        let (next, _) = q.dq_matvec(&v)?.normalized()?;
        v = next;
    }
    Ok(v)
}

/// Unit start vector with i.i.d. standard normal components.
pub fn random_start<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DQVector> {
    let v = DQVector::from_fn(n, |_| DualQuaternion::from_array(std::array::from_fn(|_| rng.sample(StandardNormal))));
    Ok(v.normalized()?.0)
}

/// Shifted solver for one backend, built once per run.
enum Shifted {
    Baseline(DualRepMatrix),
    Adjoint(DCMatrix),
}

fn shift_diag<T: Copy + std::ops::SubAssign>(m: &Matrix<T>, s: T) -> Matrix<T> {
    let mut out = m.clone();
    for i in 0..m.rows().min(m.cols()) {
        out[(i, i)] -= s;
    }
    out
}

impl Shifted {
    fn new(q: &DQMatrix, backend: Backend) -> Self {
        match backend {
            Backend::Baseline => Shifted::Baseline(dual_representation(q)),
            Backend::Adjoint => Shifted::Adjoint(adjoint(q).into_inner()),
        }
    }

    /// Solves `(Q - λI) u = v`. A real shift is `λI` on every diagonal of
    /// both representations.
    fn solve(&self, lambda: DualNumber, v: &DQVector, flops: &mut FlopCounter) -> Result<DQVector> {
        match self {
            Shifted::Baseline(d) => {
                let st = shift_diag(&d.st, lambda.st);
                let du = shift_diag(&d.du, lambda.du);
                let x = solve_dual_real(&st, &du, &dual_rep_col(v), flops)?;
                dual_rep_col_inv(&x)
            }
            Shifted::Adjoint(p) => {
                let shifted = DCMatrix {
                    st: shift_diag(&p.st, Complex64::new(lambda.st, 0.0)),
                    du: shift_diag(&p.du, Complex64::new(lambda.du, 0.0)),
                };
                let u = solve_dc(&shifted, &fmap(v), Method::Lu, flops)?;
                fmap_inv(&u)
            }
        }
    }
}

/// Rayleigh quotient iteration from a start drawn with `config.seed`, after
/// `config.power_iters` power steps.
pub fn rqi(q: &DQMatrix, config: &RqiConfig, backend: Backend) -> Result<EigenPair> {
    let n = q.require_square()?;
    let v0 = random_start(n, &mut ChaCha8Rng::seed_from_u64(config.seed))?;
    rqi_from(q, &v0, config, backend)
}

/// Rayleigh quotient iteration from a given start vector.
///
/// Stops once `‖Q v - v λ‖_2R ≤ δ ‖Q‖_FR` with `λ` the Rayleigh quotient of
/// the current `v`. A singular shifted system ends the iteration; it counts
/// as convergence when the current residual is within `10 δ ‖Q‖_FR`.
pub fn rqi_from(q: &DQMatrix, v0: &DQVector, config: &RqiConfig, backend: Backend) -> Result<EigenPair> {
    config.validate()?;
    q.require_square()?;
    let scale = q.norm_fr();
    let tol = config.delta * scale;
    let mut v = power_preprocess(q, v0, config.power_iters)?;

    let clock = Stopwatch::start();
    let solver = Shifted::new(q, backend);
    let mut flops = FlopCounter::new();
    let mut lambda = rayleigh_quotient(q, &v)?;
    let mut residual = eigen_residual(q, lambda, &v)?;
    let mut history = vec![residual];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < config.k_max {
        iterations += 1;
        let u = match solver.solve(lambda, &v, &mut flops) {
            Ok(u) => u,
            Err(Error::SingularPivot { .. }) => {
                converged = residual <= 10.0 * tol;
                break;
            }
            Err(e) => return Err(e),
        };
        v = u.normalized()?.0;
        lambda = rayleigh_quotient(q, &v)?;
        residual = eigen_residual(q, lambda, &v)?;
        history.push(residual);
        if residual <= tol {
            converged = true;
            break;
        }
    }
    let wall_time = clock.seconds();

    Ok(EigenPair {
        residual_e_lambda: eigen_residual(q, lambda, &v)?,
        lambda,
        vector: v,
        iterations,
        power_iterations: config.power_iters,
        converged,
        history,
        backend,
        flops: flops.count(),
        factorizations: flops.factorizations(),
        wall_time,
    })
}

/// Representative `μ1 + μ2 i + (μ3 + μ4 i)ε` of the similarity class of
/// `lam` with `μ2 > 0`, or `μ2 = 0` and `μ4 ≥ 0`.
pub fn standardize_right_eigenvalue(lam: DualQuaternion) -> DualComplex {
    let d = diagonalize(lam).lambda;
    if d.st.im < 0.0 || (d.st.im == 0.0 && d.du.im < 0.0) {
        DualComplex::new(d.st.conj(), d.du.conj())
    } else {
        d
    }
}

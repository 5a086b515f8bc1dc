//! Dual quaternion linear systems `Q x = y`.
//!
//! The adjoint route maps the system to `J(Q) F(x) = F(y)` and solves the
//! standard and dual parts with one factorization of `J(Q)_st`. The
//! baseline route does the same on the real `4n × 4n` dual representation.

mod factor;
mod flops;

pub use factor::{Cholesky, Factorization, Field, Lu, Method, PIVOT_TOL};
pub use flops::{FlopCount, FlopCounter};

use serde::Serialize;

use crate::adjoint::{adjoint, dual_rep_col, dual_rep_col_inv, dual_representation, fmap, fmap_inv, DualRealVector};
use crate::error::{Error, Result};
use crate::linalg::{DCMatrix, DCVector, DQMatrix, DQVector, Matrix};

/// Result of one dual quaternion solve.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub solution: DQVector,
    pub flops: FlopCount,
    pub factorization: Method,
    pub factorizations: u32,
    pub wall_time: f64,
    /// `‖Q x - y‖_2R`, filled in by the public entry points.
    pub residual: Option<f64>,
}

#[cfg(not(target_arch = "wasm32"))]
pub(crate) struct Stopwatch(std::time::Instant);

#[cfg(not(target_arch = "wasm32"))]
impl Stopwatch {
    pub(crate) fn start() -> Self {
        Self(std::time::Instant::now())
    }
    pub(crate) fn seconds(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

// No monotonic clock on bare wasm; timings read as zero there.
#[cfg(target_arch = "wasm32")]
pub(crate) struct Stopwatch;

#[cfg(target_arch = "wasm32")]
impl Stopwatch {
    pub(crate) fn start() -> Self {
        Self
    }
    pub(crate) fn seconds(&self) -> f64 {
        0.0
    }
}

/// `x_du` right-hand side `y_du - P_du x_st`, tallied.
fn dual_rhs<T: Field>(p_du: &Matrix<T>, x_st: &[T], y_du: &[T], flops: &mut FlopCounter) -> Result<Vec<T>> {
    let px = p_du.matvec(x_st)?;
    let n = p_du.rows() as u64 * p_du.cols() as u64;
    flops.charge(T::MUL + T::ADD, n);
    Ok(y_du.iter().zip(&px).map(|(&a, &b)| a - b).collect())
}

/// Solves `P x = y` over dual complex numbers with one factorization of
/// `P_st`.
pub fn solve_dc(p: &DCMatrix, y: &DCVector, method: Method, flops: &mut FlopCounter) -> Result<DCVector> {
    if p.rows() != y.len() {
        return Err(Error::dims(p.rows(), y.len()));
    }
    let f = Factorization::new(&p.st, method, flops)?;
    let st = f.solve(&y.st, flops)?;
    let rhs = dual_rhs(&p.du, &st, &y.du, flops)?;
    let du = f.solve(&rhs, flops)?;
    Ok(DCVector { st, du })
}

/// Real counterpart of [`solve_dc`] on `Q1 x1 = y1`, `Q1 x2 = y2 - Q2 x1`.
pub(crate) fn solve_dual_real(
    st: &Matrix<f64>,
    du: &Matrix<f64>,
    y: &DualRealVector,
    flops: &mut FlopCounter,
) -> Result<DualRealVector> {
    let f = Lu::factor(st, flops)?;
    let x1 = f.solve(&y.st, flops)?;
    let rhs = dual_rhs(du, &x1, &y.du, flops)?;
    let x2 = f.solve(&rhs, flops)?;
    Ok(DualRealVector { st: x1, du: x2 })
}

fn check_system(q: &DQMatrix, y: &DQVector) -> Result<()> {
    let n = q.require_square()?;
    if y.len() != n {
        return Err(Error::dims(n, y.len()));
    }
    Ok(())
}

pub(crate) fn adjoint_raw(q: &DQMatrix, y: &DQVector, method: Method) -> Result<SolveReport> {
    check_system(q, y)?;
    let clock = Stopwatch::start();
    let mut flops = FlopCounter::new();
    let p = adjoint(q).into_inner();
    let u = solve_dc(&p, &fmap(y), method, &mut flops)?;
    let solution = fmap_inv(&u)?;
    Ok(SolveReport {
        solution,
        flops: flops.count(),
        factorization: method,
        factorizations: flops.factorizations(),
        wall_time: clock.seconds(),
        residual: None,
    })
}

pub(crate) fn baseline_raw(q: &DQMatrix, y: &DQVector) -> Result<SolveReport> {
    check_system(q, y)?;
    let clock = Stopwatch::start();
    let mut flops = FlopCounter::new();
    let d = dual_representation(q);
    let x = solve_dual_real(&d.st, &d.du, &dual_rep_col(y), &mut flops)?;
    let solution = dual_rep_col_inv(&x)?;
    Ok(SolveReport {
        solution,
        flops: flops.count(),
        factorization: Method::Lu,
        factorizations: flops.factorizations(),
        wall_time: clock.seconds(),
        residual: None,
    })
}

fn with_residual(q: &DQMatrix, y: &DQVector, mut r: SolveReport) -> Result<SolveReport> {
    let qx = q.dq_matvec(&r.solution)?;
    r.residual = Some((&qx - y).norm2r());
    Ok(r)
}

/// Adjoint route: `x = F⁻¹(J(Q) \ F(y))`.
pub fn solve_dq_adjoint(q: &DQMatrix, y: &DQVector, method: Method) -> Result<SolveReport> {
    with_residual(q, y, adjoint_raw(q, y, method)?)
}

/// Baseline route through the dual representation.
pub fn solve_dq_baseline(q: &DQMatrix, y: &DQVector) -> Result<SolveReport> {
    with_residual(q, y, baseline_raw(q, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{DualQuaternion, Quaternion};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_dq(rng: &mut ChaCha8Rng) -> DualQuaternion {
        DualQuaternion::from_array(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
    }

    fn well_conditioned(n: usize, rng: &mut ChaCha8Rng) -> DQMatrix {
        let mut q = DQMatrix::from_fn(n, n, |_, _| rand_dq(rng));
        for i in 0..n {
            q[(i, i)] += DualQuaternion::from_real(2.0 * n as f64);
        }
        q
    }

    #[test]
    fn identity_system_echoes_rhs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let y = DQVector::from_fn(4, |_| rand_dq(&mut rng));
        let eye = DQMatrix::identity(4);
        assert!(solve_dq_adjoint(&eye, &y, Method::Lu).unwrap().solution.max_abs_diff(&y) < 1e-15);
        assert!(solve_dq_adjoint(&eye, &y, Method::Cholesky).unwrap().solution.max_abs_diff(&y) < 1e-15);
        assert!(solve_dq_baseline(&eye, &y).unwrap().solution.max_abs_diff(&y) < 1e-15);
    }

    #[test]
    fn scalar_system_matches_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = rand_dq(&mut rng);
        let y = rand_dq(&mut rng);
        let m = DQMatrix::from_rows(&[vec![q]]).unwrap();
        let v = DQVector::new(vec![y]).unwrap();
        let expect = q.inverse().unwrap() * y;
        assert!(solve_dq_adjoint(&m, &v, Method::Lu).unwrap().solution[0].max_abs_diff(expect) < 1e-12);
        assert!(solve_dq_baseline(&m, &v).unwrap().solution[0].max_abs_diff(expect) < 1e-12);
    }

    #[test]
    fn backends_agree_and_reuse_one_factorization() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let q = well_conditioned(8, &mut rng);
        let y = DQVector::from_fn(8, |_| rand_dq(&mut rng));
        let a = solve_dq_adjoint(&q, &y, Method::Lu).unwrap();
        let b = solve_dq_baseline(&q, &y).unwrap();
        assert!(a.solution.max_abs_diff(&b.solution) < 1e-9 * b.solution.norm2r());
        assert!(a.residual.unwrap() < 1e-8 * y.norm2r());
        assert_eq!(a.factorizations, 1);
        assert_eq!(b.factorizations, 1);
    }

    #[test]
    fn dc_solve_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let mut st = crate::linalg::CMatrix::from_fn(6, 6, |_, _| c());
        for i in 0..6 {
            st[(i, i)] += Complex64::new(6.0, 0.0);
        }
        let du = crate::linalg::CMatrix::from_fn(6, 6, |_, _| c());
        let p = DCMatrix::new(st, du).unwrap();
        let y = DCVector::new((0..6).map(|_| c()).collect(), (0..6).map(|_| c()).collect()).unwrap();
        let x = solve_dc(&p, &y, Method::Lu, &mut FlopCounter::new()).unwrap();
        let r = p.matvec(&x).unwrap().sub(&y).norm2r();
        assert!(r < 1e-10 * y.norm2r());
    }

    #[test]
    fn singular_standard_part() {
        let q = DQMatrix::from_fn(3, 3, |_, _| DualQuaternion::new(Quaternion::ZERO, Quaternion::ONE));
        let y = DQVector::basis(3, 0);
        assert!(matches!(solve_dq_adjoint(&q, &y, Method::Lu), Err(Error::SingularPivot { .. })));
        assert!(matches!(solve_dq_baseline(&q, &y), Err(Error::SingularPivot { .. })));
        assert!(solve_dq_adjoint(&q, &DQVector::zeros(2), Method::Lu).is_err());
    }
}

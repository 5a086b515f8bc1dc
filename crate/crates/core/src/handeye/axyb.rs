use num_complex::Complex64;
use serde::Serialize;

use super::axxb::{axxb_solve_with_tol, scale_of, CONSISTENCY_TOL};
use super::diag::{diagonalize, is_real};
use crate::error::{Error, Result};
use crate::scalar::{DualComplex, DualQuaternion};

/// Screw invariants of a diagonalized motion: `|λ1|` and `Re(λ2 conj(λ1))`.
pub fn screw_invariants(lambda: DualComplex) -> (f64, f64) {
    (lambda.st.norm(), (lambda.du * lambda.st.conj()).re)
}

/// All solutions `(q, p)` of `a q = p b`, parametrized by a unit `m`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxybFamily {
    pub x: DualQuaternion,
    pub y: DualQuaternion,
    pub lambda: DualComplex,
    pub mu: DualComplex,
}

/// `(conj(z)/|z|)(1 - Im(w conj(z)/|z|²) i ε)` as a dual complex number.
fn phase_factor(z: DualComplex) -> DualComplex {
    let r = z.st.norm();
    let rot = z.st.conj() / r;
    let twist = Complex64::new(0.0, -(z.du * z.st.conj() / (r * r)).im);
    DualComplex::new(rot, rot * twist)
}

impl AxybFamily {
    /// Dual complex factor applied on the `q` side.
    pub fn left_factor(&self) -> DualQuaternion {
        DualQuaternion::from_dual_complex(phase_factor(self.lambda))
    }

    /// Dual complex factor applied on the `p` side.
    pub fn right_factor(&self) -> DualQuaternion {
        DualQuaternion::from_dual_complex(phase_factor(self.mu))
    }

    /// `(Q(m), P(m))`.
    pub fn apply(&self, m: DualQuaternion) -> (DualQuaternion, DualQuaternion) {
        let yc = self.y.conj();
        let q = self.x * self.left_factor() * m * yc;
        let p = self.x * m * self.right_factor() * yc;
        (q, p)
    }

    /// The parameter `m` with `Q(m) = q`.
    pub fn recover_m(&self, q: DualQuaternion) -> DualQuaternion {
        // The factor is a unit dual complex number, so its inverse is its conjugate.
        self.left_factor().conj() * self.x.conj() * q * self.y
    }
}

/// Builds the solution family of `a q = p b` with the default tolerance.
pub fn axyb_family(a: DualQuaternion, b: DualQuaternion) -> Result<AxybFamily> {
    axyb_family_with_tol(a, b, CONSISTENCY_TOL)
}

pub fn axyb_family_with_tol(a: DualQuaternion, b: DualQuaternion, tol: f64) -> Result<AxybFamily> {
    let da = diagonalize(a);
    let db = diagonalize(b);
    if is_real(da.lambda.st) || is_real(db.lambda.st) {
        return Err(Error::RealAxis);
    }
    let (ra, pa) = screw_invariants(da.lambda);
    let (rb, pb) = screw_invariants(db.lambda);
    let limit = tol * scale_of(&[a, b]);
    if (ra - rb).abs() > limit {
        return Err(Error::InvariantMismatch {
            detail: format!("|λ1| = {ra} vs |μ1| = {rb}"),
        });
    }
    if (pa - pb).abs() > limit * ra.max(1.0) {
        return Err(Error::InvariantMismatch {
            detail: format!("Re(λ2 conj λ1) = {pa} vs Re(μ2 conj μ1) = {pb}"),
        });
    }
    Ok(AxybFamily {
        x: da.q,
        y: db.q,
        lambda: da.lambda,
        mu: db.lambda,
    })
}

/// Solution of a set of `a_k q = p b_k` equations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxybSolution {
    pub q: DualQuaternion,
    pub p: DualQuaternion,
    pub family: AxybFamily,
    /// `‖a_k q - p b_k‖_2R` per pair.
    pub residuals: Vec<f64>,
}

/// Solves `a_k q = p b_k` from measurement pairs with the default tolerance.
pub fn axyb_solve(pairs: &[(DualQuaternion, DualQuaternion)]) -> Result<AxybSolution> {
    axyb_solve_with_tol(pairs, CONSISTENCY_TOL)
}

/// The first pair fixes the family; every pair `k` then gives
/// `c_k m = m d_k` with `c_k = x* a_k x L` and `d_k = R y* b_k y`, which is
/// solved as an `AX = XB` problem. The first pair always reduces to a real
/// dual number, so its equation carries no information about `m`.
pub fn axyb_solve_with_tol(pairs: &[(DualQuaternion, DualQuaternion)], tol: f64) -> Result<AxybSolution> {
    if pairs.len() < 2 {
        return Err(Error::Underdetermined {
            pairs: pairs.len(),
            needed: 2,
        });
    }
    let family = axyb_family_with_tol(pairs[0].0, pairs[0].1, tol)?;
    let (l, r) = (family.left_factor(), family.right_factor());
    let reduced: Vec<(DualQuaternion, DualQuaternion)> = pairs
        .iter()
        .map(|&(a, b)| {
            let c = family.x.conj() * a * family.x * l;
            let d = r * family.y.conj() * b * family.y;
            (c, d)
        })
        .collect();

    // Primary equation from the second pair; the secondary is the first later
    // pair that is not degenerate, falling back to the first pair.
    let (c1, d1) = reduced[1];
    // A second pair that repeats the first reduces to a real dual number too.
    let lead = diagonalize(c1).lambda.st;
    if is_real(lead) {
        return Err(Error::C2Degenerate { magnitude: lead.im.abs() });
    }
    let mut last_err = None;
    let mut m = None;
    for &(c2, d2) in reduced[2..].iter().chain(std::iter::once(&reduced[0])) {
        match axxb_solve_with_tol(c1, d1, c2, d2, tol) {
            Ok(s) => {
                m = Some(s.q_plus);
                break;
            }
            Err(e @ Error::C2Degenerate { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    let Some(m) = m else {
        return Err(last_err.expect("at least one reduced equation was tried"));
    };

    let (q, p) = family.apply(m);
    let residuals: Vec<f64> = pairs.iter().map(|&(a, b)| (a * q - p * b).mag2()).collect();
    let all: Vec<DualQuaternion> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    if !(worst <= tol * scale_of(&all)) {
        return Err(Error::Inconsistent { residual: worst });
    }
    Ok(AxybSolution { q, p, family, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_unit_dq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close_up_to_sign(a: DualQuaternion, b: DualQuaternion, tol: f64) -> bool {
        a.max_abs_diff(b) < tol || a.max_abs_diff(-b) < tol
    }

    #[test]
    fn self_pair_is_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = random_unit_dq(&mut rng);
        let fam = axyb_family(a, a).unwrap();
        let (q, p) = fam.apply(DualQuaternion::ONE);
        assert!((a * q - p * a).mag2() < 1e-12);
    }

    #[test]
    fn family_contains_ground_truth() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let (q, p, a) = (random_unit_dq(&mut rng), random_unit_dq(&mut rng), random_unit_dq(&mut rng));
            let b = p.conj() * a * q;
            let fam = axyb_family(a, b).unwrap();
            let (ra, pa) = screw_invariants(fam.lambda);
            let (rb, pb) = screw_invariants(fam.mu);
            assert!((ra - rb).abs() < 1e-9 && (pa - pb).abs() < 1e-9);
            let m = fam.recover_m(q);
            assert!(m.is_unit(1e-10));
            let (q2, p2) = fam.apply(m);
            assert!(q2.max_abs_diff(q) < 1e-9);
            assert!(p2.max_abs_diff(p) < 1e-8, "{p2} vs {p}");
            assert!((a * q2 - p2 * b).mag2() < 1e-8);
        }
    }

    #[test]
    fn mismatched_translation_pitch() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let (q, p, a) = (random_unit_dq(&mut rng), random_unit_dq(&mut rng), random_unit_dq(&mut rng));
        let mut b = p.conj() * a * q;
        b.du += b.st.scale(0.3);
        let err = axyb_family(a, b).unwrap_err();
        assert_eq!(err.reason(), "invariant-mismatch");
    }

    #[test]
    fn three_pairs_recover_both() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..20 {
            let (q, p) = (random_unit_dq(&mut rng), random_unit_dq(&mut rng));
            let pairs: Vec<_> = (0..3)
                .map(|_| {
                    let a = random_unit_dq(&mut rng);
                    (a, p.conj() * a * q)
                })
                .collect();
            let s = axyb_solve(&pairs).unwrap();
            assert!(close_up_to_sign(s.q, q, 1e-8), "{} vs {}", s.q, q);
            assert!(close_up_to_sign(s.p, p, 1e-8));
            assert!(s.residuals.iter().all(|&r| r < 1e-8));
        }
    }

    #[test]
    fn two_pairs_leave_the_parameter_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let (q, p) = (random_unit_dq(&mut rng), random_unit_dq(&mut rng));
        let pairs: Vec<_> = (0..2)
            .map(|_| {
                let a = random_unit_dq(&mut rng);
                (a, p.conj() * a * q)
            })
            .collect();
        assert_eq!(axyb_solve(&pairs).unwrap_err().reason(), "c2-degenerate");
        let dup = [pairs[0], pairs[0], pairs[0]];
        assert_eq!(axyb_solve(&dup).unwrap_err().reason(), "c2-degenerate");
        assert!(matches!(axyb_solve(&pairs[..1]), Err(Error::Underdetermined { .. })));
    }
}

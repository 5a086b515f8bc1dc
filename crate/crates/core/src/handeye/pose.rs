use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{DualQuaternion, Quaternion};

/// Rotation and translation checks use this absolute tolerance.
pub const POSE_TOL: f64 = 1e-10;

/// Unit deviation allowed when converting a dual quaternion to a pose.
pub const UNIT_TOL: f64 = 1e-8;

/// Rigid motion `v ↦ R v + t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    #[serde(rename = "R")]
    pub rotation: [[f64; 3]; 3],
    #[serde(rename = "t")]
    pub translation: [f64; 3],
}

/// A pose file entry: either a rotation and translation or a raw dual quaternion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PoseRecord {
    Pose(Pose),
    Dq { dq: [f64; 8] },
}

impl PoseRecord {
    pub fn to_dq(&self) -> Result<DualQuaternion> {
        match self {
            PoseRecord::Pose(p) => pose_to_dq(p),
            PoseRecord::Dq { dq } => Ok(DualQuaternion::from_array(*dq)),
        }
    }
}

impl Pose {
    pub fn validate(&self) -> Result<()> {
        let r = &self.rotation;
        if r.iter().flatten().chain(&self.translation).any(|v| !v.is_finite()) {
            return Err(Error::InvalidPose("non-finite entry".into()));
        }
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| r[k][i] * r[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (dot - want).abs() > POSE_TOL {
                    return Err(Error::InvalidPose(format!("RᵀR deviates from I by {:e}", (dot - want).abs())));
                }
            }
        }
        let det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        if (det - 1.0).abs() > POSE_TOL {
            return Err(Error::InvalidPose(format!("det R = {det}")));
        }
        Ok(())
    }

    /// Applies the motion to a point.
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| (0..3).map(|k| self.rotation[i][k] * v[k]).sum::<f64>() + self.translation[i])
    }
}

/// Unit quaternion of a rotation matrix, with `w ≥ 0`.
pub fn rotation_to_quaternion(r: &[[f64; 3]; 3]) -> Quaternion {
    let trace = r[0][0] + r[1][1] + r[2][2];
    let diag = [r[0][0], r[1][1], r[2][2]];
    // Divide by the largest of 4w², 4x², 4y², 4z² to stay accurate everywhere.
    let q = if trace >= diag[0].max(diag[1]).max(diag[2]) {
        let s = 2.0 * (1.0 + trace).sqrt();
        Quaternion::new(s / 4.0, (r[2][1] - r[1][2]) / s, (r[0][2] - r[2][0]) / s, (r[1][0] - r[0][1]) / s)
    } else if diag[0] >= diag[1] && diag[0] >= diag[2] {
        let s = 2.0 * (1.0 + r[0][0] - r[1][1] - r[2][2]).sqrt();
        Quaternion::new((r[2][1] - r[1][2]) / s, s / 4.0, (r[0][1] + r[1][0]) / s, (r[0][2] + r[2][0]) / s)
    } else if diag[1] >= diag[2] {
        let s = 2.0 * (1.0 - r[0][0] + r[1][1] - r[2][2]).sqrt();
        Quaternion::new((r[0][2] - r[2][0]) / s, (r[0][1] + r[1][0]) / s, s / 4.0, (r[1][2] + r[2][1]) / s)
    } else {
        let s = 2.0 * (1.0 - r[0][0] - r[1][1] + r[2][2]).sqrt();
        Quaternion::new((r[1][0] - r[0][1]) / s, (r[0][2] + r[2][0]) / s, (r[1][2] + r[2][1]) / s, s / 4.0)
    };
    let q = q.scale(1.0 / q.norm());
    canonical_sign(q)
}

/// Picks `w > 0`, or for `w = 0` the first nonzero vector component positive.
fn canonical_sign(q: Quaternion) -> Quaternion {
    let lead = q.to_array().into_iter().find(|v| *v != 0.0).unwrap_or(0.0);
    if q.w < 0.0 || (q.w == 0.0 && lead < 0.0) {
        -q
    } else {
        q
    }
}

/// Rotation matrix of a unit quaternion.
pub fn quaternion_to_rotation(q: Quaternion) -> [[f64; 3]; 3] {
    let Quaternion { w, x, y, z } = q;
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

/// `q_st + ε ½ t q_st`.
pub fn pose_to_dq(pose: &Pose) -> Result<DualQuaternion> {
    pose.validate()?;
    let st = rotation_to_quaternion(&pose.rotation);
    let du = (Quaternion::pure(pose.translation) * st).scale(0.5);
    Ok(DualQuaternion::new(st, du))
}

/// Inverse of [`pose_to_dq`]; `dq` must be unit within [`UNIT_TOL`].
pub fn dq_to_pose(dq: DualQuaternion) -> Result<Pose> {
    let deviation = dq.unit_deviation();
    if !(deviation <= UNIT_TOL) {
        return Err(Error::NonUnit { deviation });
    }
    let t = (dq.du * dq.st.conj()).scale(2.0);
    Ok(Pose {
        rotation: quaternion_to_rotation(dq.st),
        translation: t.vector(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_unit_dq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn axis_angle(axis: [f64; 3], theta: f64) -> [[f64; 3]; 3] {
        let n = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
        let [x, y, z] = axis.map(|v| v / n);
        let (s, c) = theta.sin_cos();
        let k = [[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]];
        let kk: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|m| k[i][m] * k[m][j]).sum()));
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 } + s * k[i][j] + (1.0 - c) * kk[i][j]))
    }

    fn max_diff(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> f64 {
        a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn round_trip_near_identity_and_half_turn() {
        for theta in [0.0, 1e-9, 1e-4, 1.0, std::f64::consts::PI - 1e-9, std::f64::consts::PI] {
            for axis in [[1.0, 0.0, 0.0], [0.3, -0.5, 0.8], [0.0, 0.0, -1.0]] {
                let pose = Pose {
                    rotation: axis_angle(axis, theta),
                    translation: [0.1, -2.0, 3.5],
                };
                let back = dq_to_pose(pose_to_dq(&pose).unwrap()).unwrap();
                assert!(max_diff(&back.rotation, &pose.rotation) < 1e-12, "theta {theta}");
                assert!(back.translation.iter().zip(&pose.translation).all(|(a, b)| (a - b).abs() < 1e-12));
            }
        }
    }

    #[test]
    fn product_composes_motions() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let (d1, d2) = (random_unit_dq(&mut rng), random_unit_dq(&mut rng));
            let (p1, p2) = (dq_to_pose(d1).unwrap(), dq_to_pose(d2).unwrap());
            let p12 = dq_to_pose(d1 * d2).unwrap();
            p12.validate().unwrap();
            let v = [0.7, -0.2, 1.3];
            let direct = p12.apply(v);
            let chained = p1.apply(p2.apply(v));
            assert!(direct.iter().zip(&chained).all(|(a, b)| (a - b).abs() < 1e-12));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let mut pose = Pose {
            rotation: axis_angle([0.0, 1.0, 0.0], 0.4),
            translation: [0.0; 3],
        };
        pose.rotation[0][0] += 1e-6;
        assert!(matches!(pose_to_dq(&pose), Err(Error::InvalidPose(_))));
        let reflect = Pose {
            rotation: [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            translation: [0.0; 3],
        };
        assert!(matches!(pose_to_dq(&reflect), Err(Error::InvalidPose(_))));
        let big = DualQuaternion::from_array([2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(dq_to_pose(big), Err(Error::NonUnit { .. })));
    }

    #[test]
    fn pose_records_parse() {
        let json = r#"[{"R": [[1,0,0],[0,1,0],[0,0,1]], "t": [1,2,3]}, {"dq": [1,0,0,0,0,0.5,1,1.5]}]"#;
        let recs: Vec<PoseRecord> = serde_json::from_str(json).unwrap();
        let a = recs[0].to_dq().unwrap();
        let b = recs[1].to_dq().unwrap();
        assert!(a.max_abs_diff(b) < 1e-15);
    }

    proptest! {
        #[test]
        fn canonical_round_trip(v in prop::array::uniform4(-1.0..1.0f64), t in prop::array::uniform3(-5.0..5.0f64)) {
            let q = Quaternion::from_array(v);
            prop_assume!(q.norm() > 1e-3);
            let q = canonical_sign(q.scale(1.0 / q.norm()));
            let r = quaternion_to_rotation(q);
            prop_assert!(rotation_to_quaternion(&r).max_abs_diff(q) < 1e-12);
            let pose = Pose { rotation: r, translation: t };
            let back = dq_to_pose(pose_to_dq(&pose).unwrap()).unwrap();
            prop_assert!(max_diff(&back.rotation, &r) < 1e-12);
        }
    }
}

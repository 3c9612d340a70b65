//! Keyframe-interpolation error harness on an analytic turning motion.
//!
//! The ground truth is an object circling the z axis at constant angular
//! speed with its heading locked to the direction of travel, i.e. a single
//! rotation about an axis that does not pass through the object. Keyframes
//! are taken every `spacing` radians of turn and each method reconstructs
//! the in-between poses; errors are measured on a set of object-local marker
//! points against the dense analytic pose.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use super::{motor_lerp, ErrorStats, MatrixBlend, MotionError, QuatVec};
use crate::conformal::{motor_compose, rotor_from_axis_angle, translator, Motor, Quaternion};
use crate::{Mat4, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InterpMethod {
    /// Normalized LERP of motors.
    Motor,
    /// Quaternion SLERP plus translation LERP.
    QuatVec,
    /// Entrywise matrix LERP plus Gram–Schmidt.
    Matrix,
}

impl InterpMethod {
    pub const ALL: [InterpMethod; 3] = [InterpMethod::Motor, InterpMethod::QuatVec, InterpMethod::Matrix];

    pub fn name(self) -> &'static str {
        match self {
            InterpMethod::Motor => "motor",
            InterpMethod::QuatVec => "quatvec",
            InterpMethod::Matrix => "matrix",
        }
    }
}

impl fmt::Display for InterpMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InterpMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "motor" => Ok(InterpMethod::Motor),
            "quatvec" => Ok(InterpMethod::QuatVec),
            "matrix" => Ok(InterpMethod::Matrix),
            other => Err(format!("unknown interpolation method `{other}` (motor, quatvec, matrix)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TurnTrajectory {
    pub radius: f64,
    /// Radians per second.
    pub angular_speed: f64,
    pub duration: f64,
    /// Object-local points whose world positions are compared.
    pub markers: Vec<Vec3>,
}

/// One sample of an error curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub time: f64,
    pub rms: f64,
    pub max: f64,
}

impl TurnTrajectory {
    /// Radius 2, a quarter turn per second, one full revolution.
    pub fn bundled() -> Self {
        TurnTrajectory {
            radius: 2.0,
            angular_speed: FRAC_PI_2,
            duration: 4.0,
            markers: vec![
                Vec3::zeros(),
                Vec3::new(0.5, 0.0, 0.0),
                Vec3::new(0.0, 0.5, 0.0),
                Vec3::new(0.0, 0.0, 0.5),
            ],
        }
    }

    fn angle(&self, t: f64) -> f64 {
        self.angular_speed * t
    }

    pub fn quatvec(&self, t: f64) -> QuatVec {
        let q = Quaternion::from_axis_angle(&Vec3::z(), self.angle(t));
        QuatVec { rotation: q, translation: q.rotate(&Vec3::new(self.radius, 0.0, 0.0)) }
    }

    pub fn motor(&self, t: f64) -> Result<Motor, MotionError> {
        Ok(motor_compose(&[
            rotor_from_axis_angle(&Vec3::z(), self.angle(t))?.motor(),
            translator(&Vec3::new(self.radius, 0.0, 0.0))?.motor(),
        ])?)
    }

    pub fn matrix(&self, t: f64) -> Mat4 {
        self.quatvec(t).to_matrix()
    }

    pub fn ground_truth_markers(&self, t: f64) -> Vec<Vec3> {
        let pose = self.quatvec(t);
        self.markers.iter().map(|m| pose.transform_point(m)).collect()
    }

    /// Keyframe times every `spacing` radians, always including the end.
    pub fn keyframe_times(&self, spacing: f64) -> Vec<f64> {
        let dt = spacing / self.angular_speed;
        let mut times = Vec::new();
        let mut k = 0u32;
        loop {
            let t = f64::from(k) * dt;
            if t >= self.duration - 1e-12 {
                break;
            }
            times.push(t);
            k += 1;
        }
        times.push(self.duration);
        times
    }

    /// Evenly spaced sample times over `[0, duration]`.
    pub fn sample_times(&self, samples: usize) -> Vec<f64> {
        let n = samples.max(2);
        (0..n).map(|i| self.duration * i as f64 / (n - 1) as f64).collect()
    }
}

fn bracket(times: &[f64], t: f64) -> (usize, usize, f64) {
    let last = times.len() - 1;
    if t <= times[0] {
        return (0, 0, 0.0);
    }
    if t >= times[last] {
        return (last, last, 0.0);
    }
    let j = times.partition_point(|&k| k <= t);
    let i = j - 1;
    (i, j, (t - times[i]) / (times[j] - times[i]))
}

/// Keyframed reconstruction of a turn with one interpolation method.
pub struct Reconstruction<'a> {
    traj: &'a TurnTrajectory,
    method: InterpMethod,
    times: Vec<f64>,
    motors: Vec<Motor>,
    quatvecs: Vec<QuatVec>,
    matrices: Vec<Mat4>,
}

impl<'a> Reconstruction<'a> {
    pub fn new(traj: &'a TurnTrajectory, spacing: f64, method: InterpMethod) -> Result<Self, MotionError> {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(MotionError::NonFinite);
        }
        let times = traj.keyframe_times(spacing);
        let motors = times.iter().map(|&t| traj.motor(t)).collect::<Result<Vec<_>, _>>()?;
        let quatvecs = times.iter().map(|&t| traj.quatvec(t)).collect();
        let matrices = times.iter().map(|&t| traj.matrix(t)).collect();
        Ok(Reconstruction { traj, method, times, motors, quatvecs, matrices })
    }

    pub fn keyframe_count(&self) -> usize {
        self.times.len()
    }

    /// Motor pose at `t` (only meaningful for [`InterpMethod::Motor`]).
    pub fn motor_at(&self, t: f64) -> Result<Motor, MotionError> {
        let (i, j, a) = bracket(&self.times, t);
        motor_lerp(&self.motors[i], &self.motors[j], a)
    }

    pub fn markers_at(&self, t: f64) -> Result<Vec<Vec3>, MotionError> {
        let (i, j, a) = bracket(&self.times, t);
        let markers = &self.traj.markers;
        match self.method {
            InterpMethod::Motor => {
                let p = self.motor_at(t)?.prepared()?;
                markers
                    .iter()
                    .map(|m| Ok(crate::conformal::down(&p.transform_point(m)?)?))
                    .collect()
            }
            InterpMethod::QuatVec => {
                let pose = self.quatvecs[i].interpolate(&self.quatvecs[j], a);
                Ok(markers.iter().map(|m| pose.transform_point(m)).collect())
            }
            InterpMethod::Matrix => {
                let m = MatrixBlend::Orthonormalized.apply(&self.matrices[i], &self.matrices[j], a);
                Ok(markers.iter().map(|x| m.transform_point(&(*x).into()).coords).collect())
            }
        }
    }
}

/// Per-sample marker error against the analytic pose.
pub fn error_curve(
    traj: &TurnTrajectory,
    spacing: f64,
    method: InterpMethod,
    samples: usize,
) -> Result<Vec<CurvePoint>, MotionError> {
    let rec = Reconstruction::new(traj, spacing, method)?;
    traj.sample_times(samples)
        .into_iter()
        .map(|t| {
            let got = rec.markers_at(t)?;
            let e = super::frame_error(&got, &traj.ground_truth_markers(t))?;
            Ok(CurvePoint { time: t, rms: e.rms, max: e.max })
        })
        .collect()
}

/// Pooled statistics of a curve whose samples all cover the same markers.
pub fn summarize(curve: &[CurvePoint]) -> ErrorStats {
    if curve.is_empty() {
        return ErrorStats::default();
    }
    let mean_sq = curve.iter().map(|c| c.rms * c.rms).sum::<f64>() / curve.len() as f64;
    ErrorStats { rms: mean_sq.sqrt(), max: curve.iter().fold(0.0, |m, c| m.max(c.max)) }
}

/// Largest change in distance between a rigidly attached vertex and its
/// bone origin along the motor-interpolated path.
pub fn motor_rigidity_drift(
    traj: &TurnTrajectory,
    spacing: f64,
    vertex: &Vec3,
    samples: usize,
) -> Result<f64, MotionError> {
    let rec = Reconstruction::new(traj, spacing, InterpMethod::Motor)?;
    let rest = vertex.norm();
    let mut drift: f64 = 0.0;
    for t in traj.sample_times(samples) {
        let m = rec.motor_at(t)?;
        let d = (m.apply_point(vertex)? - m.apply_point(&Vec3::zeros())?).norm();
        drift = drift.max((d - rest).abs());
    }
    Ok(drift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ground_truth_forms_agree() {
        let traj = TurnTrajectory::bundled();
        for t in [0.0, 0.3, 1.7, 4.0] {
            let m = traj.motor(t).unwrap();
            let qv = traj.quatvec(t);
            for x in &traj.markers {
                assert!((m.apply_point(x).unwrap() - qv.transform_point(x)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn keyframes_at_exact_times_have_no_error() {
        let traj = TurnTrajectory::bundled();
        for method in InterpMethod::ALL {
            let rec = Reconstruction::new(&traj, FRAC_PI_2, method).unwrap();
            assert_eq!(rec.keyframe_count(), 5);
            for t in [0.0, 1.0, 2.0, 3.0, 4.0] {
                let e = crate::motion::frame_error(&rec.markers_at(t).unwrap(), &traj.ground_truth_markers(t)).unwrap();
                assert!(e.max < 1e-12, "{method} at {t}");
            }
        }
    }

    #[test]
    fn finer_spacing_reduces_error() {
        let traj = TurnTrajectory::bundled();
        for method in InterpMethod::ALL {
            let coarse = summarize(&error_curve(&traj, PI / 2.0, method, 401).unwrap());
            let fine = summarize(&error_curve(&traj, PI / 8.0, method, 401).unwrap());
            assert!(fine.rms < coarse.rms, "{method}");
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in InterpMethod::ALL {
            assert_eq!(m.name().parse::<InterpMethod>().unwrap(), m);
        }
        assert!("slerp".parse::<InterpMethod>().is_err());
    }
}

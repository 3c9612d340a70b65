use serde::{Deserialize, Serialize};

use super::NetError;
use crate::conformal::{motor_compose, motor_from_matrix, rotor_from_axis_angle, translator, Motor};
use crate::motion::motor_lerp;
use crate::scene::mat_from_slice;
use crate::Vec3;

/// Object-local points whose world positions are compared for error.
pub const MARKERS: [[f64; 3]; 4] = [[0.0, 0.0, 0.0], [0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.5]];

fn v3(a: &[f64; 3]) -> Vec3 {
    Vec3::new(a[0], a[1], a[2])
}

fn z_axis() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

/// Analytic or sampled rigid motion of one object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Trajectory {
    /// `T(center) R_z(ωt) T(r, 0, bob)`, with `bob = a sin(νt)`.
    Orbit {
        radius: f64,
        angular_speed: f64,
        #[serde(default)]
        center: [f64; 3],
        #[serde(default)]
        bob_amplitude: f64,
        #[serde(default)]
        bob_speed: f64,
    },
    /// `T(start + v t) R(axis, ωt)`.
    ConstantVelocity {
        start: [f64; 3],
        velocity: [f64; 3],
        #[serde(default = "z_axis")]
        axis: [f64; 3],
        #[serde(default)]
        angular_speed: f64,
    },
    /// Uniform Catmull-Rom through `points` over `duration`, yawed to face
    /// along the tangent.
    Spline { points: Vec<[f64; 3]>, duration: f64 },
    /// Column-major matrices at sorted times, motor-interpolated between.
    Sampled { times: Vec<f64>, poses: Vec<[f64; 16]> },
}

impl Trajectory {
    pub fn validate(&self) -> Result<(), NetError> {
        let bad = |m: &str| Err(NetError::BadTrajectory(m.into()));
        match self {
            Trajectory::Orbit { radius, angular_speed, center, bob_amplitude, bob_speed } => {
                let all = [*radius, *angular_speed, *bob_amplitude, *bob_speed, center[0], center[1], center[2]];
                if !all.iter().all(|x| x.is_finite()) {
                    return bad("non-finite orbit parameter");
                }
            }
            Trajectory::ConstantVelocity { start, velocity, axis, angular_speed } => {
                if !start.iter().chain(velocity).chain(axis).all(|x| x.is_finite()) || !angular_speed.is_finite() {
                    return bad("non-finite parameter");
                }
                if *angular_speed != 0.0 && v3(axis).norm() <= 1e-12 {
                    return bad("zero rotation axis");
                }
            }
            Trajectory::Spline { points, duration } => {
                if points.len() < 2 {
                    return bad("spline needs at least two points");
                }
                if !(duration.is_finite() && *duration > 0.0) {
                    return bad("spline duration must be positive");
                }
                if !points.iter().flatten().all(|x| x.is_finite()) {
                    return bad("non-finite spline point");
                }
            }
            Trajectory::Sampled { times, poses } => {
                if times.is_empty() || times.len() != poses.len() {
                    return bad("sampled trajectory needs matching non-empty times and poses");
                }
                if times.windows(2).any(|w| !(w[1] > w[0])) || !times.iter().all(|t| t.is_finite()) {
                    return bad("sample times must be finite and strictly increasing");
                }
                for p in poses {
                    motor_from_matrix(&mat_from_slice(p))?;
                }
            }
        }
        Ok(())
    }

    pub fn pose(&self, t: f64) -> Result<Motor, NetError> {
        match self {
            Trajectory::Orbit { radius, angular_speed, center, bob_amplitude, bob_speed } => {
                let bob = bob_amplitude * (bob_speed * t).sin();
                Ok(motor_compose(&[
                    translator(&v3(center))?.motor(),
                    rotor_from_axis_angle(&Vec3::z(), angular_speed * t)?.motor(),
                    translator(&Vec3::new(*radius, 0.0, bob))?.motor(),
                ])?)
            }
            Trajectory::ConstantVelocity { start, velocity, axis, angular_speed } => {
                let p = v3(start) + v3(velocity) * t;
                let mut parts = vec![translator(&p)?.motor()];
                if *angular_speed != 0.0 {
                    parts.push(rotor_from_axis_angle(&v3(axis), angular_speed * t)?.motor());
                }
                Ok(motor_compose(&parts)?)
            }
            Trajectory::Spline { points, duration } => {
                let (p, d) = catmull_rom(points, (t / duration).clamp(0.0, 1.0));
                let yaw = if d.xy().norm() > 1e-12 { d.y.atan2(d.x) } else { 0.0 };
                Ok(motor_compose(&[
                    translator(&p)?.motor(),
                    rotor_from_axis_angle(&Vec3::z(), yaw)?.motor(),
                ])?)
            }
            Trajectory::Sampled { times, poses } => {
                let last = times.len() - 1;
                let at = |i: usize| -> Result<Motor, NetError> { Ok(motor_from_matrix(&mat_from_slice(&poses[i]))?) };
                if t <= times[0] {
                    return at(0);
                }
                if t >= times[last] {
                    return at(last);
                }
                let j = times.partition_point(|&x| x <= t);
                let i = j - 1;
                let alpha = (t - times[i]) / (times[j] - times[i]);
                Ok(motor_lerp(&at(i)?, &at(j)?, alpha)?)
            }
        }
    }

    pub fn markers(&self, t: f64) -> Result<Vec<Vec3>, NetError> {
        let m = self.pose(t)?.prepared()?;
        MARKERS
            .iter()
            .map(|x| Ok(crate::conformal::down(&m.transform_point(&v3(x))?)?))
            .collect()
    }
}

/// Position and tangent at `u ∈ [0, 1]` along the whole curve.
fn catmull_rom(points: &[[f64; 3]], u: f64) -> (Vec3, Vec3) {
    let segments = points.len() - 1;
    let s = u * segments as f64;
    let i = (s.floor() as usize).min(segments - 1);
    let f = s - i as f64;
    let p = |k: isize| v3(&points[k.clamp(0, segments as isize) as usize]);
    let i = i as isize;
    let (p0, p1, p2, p3) = (p(i - 1), p(i), p(i + 1), p(i + 2));
    let (f2, f3) = (f * f, f * f * f);
    let pos = (p1 * 2.0 + (p2 - p0) * f + (p0 * 2.0 - p1 * 5.0 + p2 * 4.0 - p3) * f2 + (p1 * 3.0 - p0 - p2 * 3.0 + p3) * f3)
        * 0.5;
    let tan = ((p2 - p0) + (p0 * 2.0 - p1 * 5.0 + p2 * 4.0 - p3) * (2.0 * f) + (p1 * 3.0 - p0 - p2 * 3.0 + p3) * (3.0 * f2))
        * 0.5;
    (pos, tan)
}

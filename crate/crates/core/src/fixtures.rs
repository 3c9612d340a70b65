//! Canonical inputs: a two-bone capped cylinder with an elbow clip, a unit
//! cube, and the orbit synchronization scenario. The JSON copies under
//! `fixtures/` are written from these builders.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Rotation3, Translation3, Unit};

use crate::netsync::{Encoding, NetworkModel, Scenario, StreamConfig, Trajectory};
use crate::scene::{mat_to_array, BoneFile, KeyframeFile, MeshFile, RigFile, SceneFile};
use crate::{Mat4, Vec3};

pub const CYLINDER_JSON: &str = include_str!("../fixtures/two_bone_cylinder.json");
pub const CUBE_JSON: &str = include_str!("../fixtures/unit_cube.json");
pub const ORBIT_JSON: &str = include_str!("../fixtures/orbit_scenario.json");

pub const CYLINDER_RINGS: usize = 11;
pub const CYLINDER_SEGMENTS: usize = 12;
pub const CYLINDER_RADIUS: f64 = 0.2;
pub const CYLINDER_LENGTH: f64 = 2.0;

fn translation(x: f64, y: f64, z: f64) -> Mat4 {
    Translation3::new(x, y, z).to_homogeneous()
}

fn rotation(axis: Vec3, degrees: f64) -> Mat4 {
    Rotation3::from_axis_angle(&Unit::new_normalize(axis), degrees.to_radians()).to_homogeneous()
}

/// Append `tri`, flipped if needed so its normal points along `outward`.
fn push_oriented(tris: &mut Vec<[usize; 3]>, pos: &[Vec3], tri: [usize; 3], outward: Vec3) {
    let [a, b, c] = tri.map(|i| pos[i]);
    if (b - a).cross(&(c - a)).dot(&outward) < 0.0 {
        tris.push([tri[0], tri[2], tri[1]]);
    } else {
        tris.push(tri);
    }
}

fn mesh_file(pos: &[Vec3], tris: Vec<[usize; 3]>, weights: Vec<Vec<[f64; 2]>>) -> MeshFile {
    MeshFile { vertices: pos.iter().map(|p| [p.x, p.y, p.z]).collect(), triangles: tris, weights }
}

fn two_bone_rig() -> RigFile {
    RigFile {
        bones: vec![
            BoneFile { name: "upper".into(), parent: None, offset: mat_to_array(&Mat4::identity()) },
            BoneFile { name: "lower".into(), parent: Some(0), offset: mat_to_array(&translation(-1.0, 0.0, 0.0)) },
        ],
    }
}

/// Capped tube along +x from 0 to 2; bone 0 at the origin, bone 1 at x = 1,
/// weights blending linearly over 0.8 ≤ x ≤ 1.2.
pub fn two_bone_cylinder() -> SceneFile {
    let step = CYLINDER_LENGTH / (CYLINDER_RINGS - 1) as f64;
    let mut pos = Vec::new();
    let mut weights = Vec::new();
    let ring_weights = |i: usize| -> Vec<[f64; 2]> {
        let w1 = ((i as f64 - 4.0) / 2.0).clamp(0.0, 1.0);
        match w1 {
            0.0 => vec![[0.0, 1.0]],
            1.0 => vec![[1.0, 1.0]],
            _ => vec![[0.0, 1.0 - w1], [1.0, w1]],
        }
    };
    for i in 0..CYLINDER_RINGS {
        for j in 0..CYLINDER_SEGMENTS {
            let phi = 2.0 * PI * j as f64 / CYLINDER_SEGMENTS as f64;
            pos.push(Vec3::new(i as f64 * step, CYLINDER_RADIUS * phi.cos(), CYLINDER_RADIUS * phi.sin()));
            weights.push(ring_weights(i));
        }
    }
    let start = pos.len();
    pos.push(Vec3::zeros());
    weights.push(ring_weights(0));
    let end = pos.len();
    pos.push(Vec3::new(CYLINDER_LENGTH, 0.0, 0.0));
    weights.push(ring_weights(CYLINDER_RINGS - 1));

    let v = |i: usize, j: usize| i * CYLINDER_SEGMENTS + j % CYLINDER_SEGMENTS;
    let mut tris = Vec::new();
    for i in 0..CYLINDER_RINGS - 1 {
        for j in 0..CYLINDER_SEGMENTS {
            let (a, b, c, d) = (v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1));
            let mid = (pos[a] + pos[c]) * 0.5;
            let out = Vec3::new(0.0, mid.y, mid.z);
            push_oriented(&mut tris, &pos, [a, b, c], out);
            push_oriented(&mut tris, &pos, [a, c, d], out);
        }
    }
    let last = CYLINDER_RINGS - 1;
    for j in 0..CYLINDER_SEGMENTS {
        push_oriented(&mut tris, &pos, [start, v(0, j), v(0, j + 1)], -Vec3::x());
        push_oriented(&mut tris, &pos, [end, v(last, j), v(last, j + 1)], Vec3::x());
    }

    let bend = |t: f64, base: Mat4, elbow: Mat4| KeyframeFile {
        time: t,
        pose: vec![mat_to_array(&base), mat_to_array(&(base * translation(1.0, 0.0, 0.0) * elbow))],
    };
    let keyframes = vec![
        bend(0.0, Mat4::identity(), Mat4::identity()),
        bend(0.5, rotation(Vec3::y(), 15.0), rotation(Vec3::z(), 45.0)),
        bend(1.0, translation(0.0, 0.0, 0.1) * rotation(Vec3::y(), 30.0), rotation(Vec3::z(), 90.0)),
        bend(
            1.5,
            translation(0.0, 0.0, 0.1) * rotation(Vec3::y(), 30.0) * rotation(Vec3::x(), 20.0),
            rotation(Vec3::new(0.0, 1.0, 1.0), 120.0),
        ),
    ];
    SceneFile { manifest: None, rig: two_bone_rig(), mesh: mesh_file(&pos, tris, weights), keyframes, topology: None }
}

/// Unit cube `[0, 1]³`, 12 triangles, weights shifting from bone 0 to bone 1 along x.
pub fn unit_cube() -> SceneFile {
    let pos: Vec<Vec3> = (0..8).map(|i| Vec3::new((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64)).collect();
    let weights = pos.iter().map(|p| vec![[0.0, 0.75 - 0.5 * p.x], [1.0, 0.25 + 0.5 * p.x]]).collect();
    // corners of each face in cyclic order, with the outward direction
    let faces: [([usize; 4], Vec3); 6] = [
        ([0, 2, 6, 4], -Vec3::x()),
        ([1, 3, 7, 5], Vec3::x()),
        ([0, 1, 5, 4], -Vec3::y()),
        ([2, 3, 7, 6], Vec3::y()),
        ([0, 1, 3, 2], -Vec3::z()),
        ([4, 5, 7, 6], Vec3::z()),
    ];
    let mut tris = Vec::new();
    for ([a, b, c, d], out) in faces {
        push_oriented(&mut tris, &pos, [a, b, c], out);
        push_oriented(&mut tris, &pos, [a, c, d], out);
    }
    SceneFile { manifest: None, rig: two_bone_rig(), mesh: mesh_file(&pos, tris, weights), keyframes: Vec::new(), topology: None }
}

/// The pinned bandwidth scenario: one object on a bobbing orbit behind a
/// lossy, jittery link, streamed at several rates in each encoding.
pub fn orbit_scenario() -> Scenario {
    let c = StreamConfig::new;
    Scenario {
        name: "orbit".into(),
        description: Some(
            "Bandwidth baseline: Matrix16 at 30 Hz against Motor8 at 20 Hz (payload 64 vs 32 bytes). \
             Rate sweep 5/20/60 Hz for Motor8; QuatVec7 at 20 and 30 Hz for error comparison."
                .into(),
        ),
        duration: 10.0,
        render_hz: 120.0,
        objects: vec![Trajectory::Orbit {
            radius: 2.0,
            angular_speed: FRAC_PI_2,
            center: [0.0, 0.0, 1.0],
            bob_amplitude: 0.1,
            bob_speed: 2.0,
        }],
        network: NetworkModel { latency: 0.05, jitter: 0.01, drop: 0.02, seed: 42 },
        configs: vec![
            c(20.0, Encoding::Motor8),
            c(30.0, Encoding::Matrix16),
            c(30.0, Encoding::QuatVec7),
            c(20.0, Encoding::QuatVec7),
            c(20.0, Encoding::Matrix16),
            c(5.0, Encoding::Motor8),
            c(60.0, Encoding::Motor8),
        ],
    }
}

use std::f64::consts::{FRAC_PI_2, PI};

use cgakit::conformal::{motor_compose, motor_from_matrix, rotor_from_axis_angle, translator, Quaternion};
use cgakit::fixtures;
use cgakit::motion::turn::{error_curve, motor_rigidity_drift, summarize, InterpMethod, TurnTrajectory};
use cgakit::motion::{
    matrix_lerp, motor_lerp, sample_clip, sample_clip_matrices, skin_cga, skin_cga_with, skin_lbs, MatrixBlend,
};
use cgakit::par::Execution;
use cgakit::{Mat4, Vec3};

#[test]
fn bundled_cylinder_keyframes_agree() {
    let scene = fixtures::two_bone_cylinder().to_scene().unwrap();
    let mesh = scene.skinned().unwrap();
    let clip = scene.clip.as_ref().unwrap();
    for k in clip.keyframes() {
        let lbs = skin_lbs(&mesh, &scene.rig, k.matrices()).unwrap();
        let cga = skin_cga(&mesh, &scene.rig, k.motors()).unwrap();
        let worst = lbs
            .positions
            .iter()
            .zip(&cga.positions)
            .map(|(a, b)| (a - b).amax())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-9, "t = {}: {worst:e}", k.time);
    }
}

#[test]
fn execution_modes_agree() {
    let scene = fixtures::two_bone_cylinder().to_scene().unwrap();
    let mesh = scene.skinned().unwrap();
    let pose = sample_clip(scene.clip.as_ref().unwrap(), 0.8).unwrap();
    let a = skin_cga_with(&mesh, &scene.rig, &pose, Execution::Sequential).unwrap();
    let b = skin_cga_with(&mesh, &scene.rig, &pose, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn interpolated_frames_deviate_but_stay_rigid() {
    let scene = fixtures::two_bone_cylinder().to_scene().unwrap();
    let mesh = scene.skinned().unwrap();
    let clip = scene.clip.as_ref().unwrap();
    let t = 0.75;
    let cga = skin_cga(&mesh, &scene.rig, &sample_clip(clip, t).unwrap()).unwrap();
    let lbs = skin_lbs(&mesh, &scene.rig, &sample_clip_matrices(clip, t, MatrixBlend::Entrywise).unwrap()).unwrap();
    let dev = cga.positions.iter().zip(&lbs.positions).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(dev > 1e-6 && dev < 0.2, "{dev}");

    // vertices bound only to the lower bone keep their distance to its origin
    let pose = sample_clip(clip, t).unwrap();
    let bone = pose[1] * *scene.rig.bones()[1].offset_motor();
    let origin = pose[1].apply_point(&Vec3::zeros()).unwrap();
    for (i, w) in mesh.influences().iter().enumerate() {
        if w.len() == 1 && w[0].bone == 1 {
            let rest = (mesh.positions()[i] - Vec3::new(1.0, 0.0, 0.0)).norm();
            let now = (cga.positions[i] - origin).norm();
            assert!((now - rest).abs() < 1e-9);
            assert!((bone.apply_point(&mesh.positions()[i]).unwrap() - cga.positions[i]).norm() < 1e-9);
        }
    }
}

#[test]
fn turn_ordinal_comparison() {
    let traj = TurnTrajectory::bundled();
    let stats = |m| summarize(&error_curve(&traj, FRAC_PI_2, m, 801).unwrap());
    let (motor, quatvec, matrix) = (stats(InterpMethod::Motor), stats(InterpMethod::QuatVec), stats(InterpMethod::Matrix));
    assert!(motor.rms <= quatvec.rms, "{motor:?} {quatvec:?}");
    assert!(motor.rms < matrix.rms, "{motor:?} {matrix:?}");
    let drift = motor_rigidity_drift(&traj, FRAC_PI_2, &Vec3::new(0.3, 0.4, 0.5), 801).unwrap();
    assert!(drift <= 1e-9, "{drift:e}");
}

#[test]
fn coarser_keyframes_never_help() {
    let traj = TurnTrajectory::bundled();
    for m in InterpMethod::ALL {
        let mut last = 0.0;
        for spacing in [PI / 16.0, PI / 8.0, PI / 4.0, PI / 2.0] {
            let rms = summarize(&error_curve(&traj, spacing, m, 401).unwrap()).rms;
            assert!(rms >= last, "{m}: {rms} < {last}");
            last = rms;
        }
    }
    let fine = summarize(&error_curve(&traj, PI / 256.0, InterpMethod::QuatVec, 401).unwrap()).rms;
    assert!(fine < 1e-4);
}

#[test]
fn matrix_lerp_breaks_rigidity_on_half_turn() {
    let a = Mat4::identity();
    let mut b = Mat4::identity();
    b.fixed_view_mut::<3, 3>(0, 0).copy_from(&Quaternion::from_axis_angle(&Vec3::z(), 0.999 * PI).to_rotation_matrix());
    let mid = matrix_lerp(&a, &b, 0.5);
    let v = Vec3::new(1.0, 0.0, 0.0);
    let len = mid.transform_vector(&v).norm();
    assert!((1.0 - len) > 0.01, "{len}");

    let m = motor_lerp(&motor_from_matrix(&a).unwrap(), &motor_from_matrix(&b).unwrap(), 0.5).unwrap();
    assert!(((m.apply_point(&v).unwrap() - m.apply_point(&Vec3::zeros()).unwrap()).norm() - 1.0).abs() < 1e-12);
}

#[test]
fn rotor_midpoint_shares_slerp_axis() {
    let axis = Vec3::new(1.0, 2.0, 2.0).normalize();
    let r0 = rotor_from_axis_angle(&axis, 0.2).unwrap().motor();
    let r1 = rotor_from_axis_angle(&axis, 0.2 + FRAC_PI_2).unwrap().motor();
    let mid = motor_lerp(&r0, &r1, 0.5).unwrap();
    let q = Quaternion::from_axis_angle(&axis, 0.2).slerp(&Quaternion::from_axis_angle(&axis, 0.2 + FRAC_PI_2), 0.5);
    let probe = Vec3::new(0.3, -1.0, 0.7);
    assert!((mid.apply_point(&probe).unwrap() - q.rotate(&probe)).norm() < 1e-9);
    // the fixed axis of the blend is the slerp axis
    assert!((mid.apply_point(&axis).unwrap() - axis).norm() < 1e-12);
}

#[test]
fn translator_blend_is_linear() {
    let a = Vec3::new(1.0, -2.0, 0.5);
    let b = Vec3::new(-3.0, 0.25, 4.0);
    let (ta, tb) = (translator(&a).unwrap().motor(), translator(&b).unwrap().motor());
    for t in [0.1, 0.37, 0.5, 0.9] {
        let m = motor_lerp(&ta, &tb, t).unwrap();
        let want = translator(&(a * (1.0 - t) + b * t)).unwrap().motor();
        assert!(m.mv().max_abs_diff(want.mv()) < 1e-15);
    }
    let screw = motor_compose(&[ta, rotor_from_axis_angle(&Vec3::x(), 1.0).unwrap().motor()]).unwrap();
    assert_eq!(motor_lerp(&screw, &tb, 0.0).unwrap(), screw);
    assert_eq!(motor_lerp(&screw, &tb, 1.0).unwrap(), tb);
}

use std::f64::consts::PI;

use cgakit::fixtures;
use cgakit::netsync::{
    client_reconstruct, payload_reduction, reports_csv, run_comparison, run_config, server_stream, simulate_network,
    Encoding, NetworkModel, Scenario, StreamConfig, Trajectory,
};
use cgakit::par::Execution;

fn scenario(objects: Vec<Trajectory>, network: NetworkModel, configs: Vec<StreamConfig>) -> Scenario {
    Scenario { name: "test".into(), description: None, duration: 4.0, render_hz: 64.0, objects, network, configs }
}

#[test]
fn payload_arithmetic() {
    let still = Trajectory::ConstantVelocity { start: [0.0; 3], velocity: [0.0; 3], axis: [0.0, 0.0, 1.0], angular_speed: 0.0 };
    let mut s = scenario(vec![still], NetworkModel::ideal(), vec![
        StreamConfig::new(20.0, Encoding::Motor8),
        StreamConfig::new(30.0, Encoding::Matrix16),
        StreamConfig::new(20.0, Encoding::QuatVec7),
    ]);
    s.duration = 10.0;
    let r = run_comparison(&s, Execution::Sequential).unwrap();
    assert_eq!(r[0].payload_bytes_per_sec * 10.0, 6400.0);
    assert_eq!(r[1].payload_bytes_per_sec * 10.0, 19200.0);
    assert_eq!(r[0].total_bytes_per_sec, 20.0 * (17.0 + 32.0));
    assert!((payload_reduction(&r[0], &r[1]) - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(r[0].payload_bytes_per_sec / r[2].payload_bytes_per_sec, 32.0 / 28.0);
    assert_eq!(r[0].sent, 201);
    assert!(r.iter().all(|r| r.rms < 1e-6));
}

#[test]
fn constant_velocity_motor_reconstruction_is_exact() {
    // dyadic rate, start and velocity keep every streamed value exact in f32
    let traj = Trajectory::ConstantVelocity { start: [1.0, -0.5, 0.25], velocity: [0.5, 0.25, -0.125], axis: [0.0, 0.0, 1.0], angular_speed: 0.0 };
    let s = scenario(vec![traj], NetworkModel::ideal(), vec![StreamConfig::new(16.0, Encoding::Motor8)]);
    let r = run_config(&s, &s.configs[0]).unwrap();
    assert!(r.max < 1e-9, "{}", r.max);
    assert_eq!(r.held_frames, 0);
}

#[test]
fn static_pose_is_exact_for_every_encoding() {
    let traj = Trajectory::Orbit { radius: 1.5, angular_speed: 0.0, center: [0.0, 1.0, 0.0], bob_amplitude: 0.0, bob_speed: 0.0 };
    for e in [Encoding::Matrix16, Encoding::QuatVec7, Encoding::Motor8] {
        let s = scenario(vec![traj.clone()], NetworkModel::ideal(), vec![StreamConfig::new(10.0, e)]);
        let r = run_config(&s, &s.configs[0]).unwrap();
        assert!(r.max < 1e-6, "{e}: {}", r.max);
    }
}

#[test]
fn error_falls_with_rate() {
    let orbit = fixtures::orbit_scenario().objects;
    let configs = [5.0, 20.0, 60.0].map(|r| StreamConfig::new(r, Encoding::Motor8)).to_vec();
    let s = scenario(orbit, NetworkModel::ideal(), configs);
    let r = run_comparison(&s, Execution::Sequential).unwrap();
    assert!(r[2].rms < r[1].rms && r[1].rms < r[0].rms, "{}", reports_csv(&r));
}

#[test]
fn matrix_blend_leaves_rotation_group() {
    let spin = Trajectory::ConstantVelocity { start: [0.0; 3], velocity: [1.0, 0.0, 0.0], axis: [0.0, 0.0, 1.0], angular_speed: PI };
    let s = scenario(vec![spin], NetworkModel::ideal(), vec![StreamConfig::new(20.0, Encoding::Matrix16)]);
    let r = run_config(&s, &s.configs[0]).unwrap();
    assert!(r.max_matrix_defect > 1e-3, "{}", r.max_matrix_defect);
    let m = scenario(s.objects.clone(), NetworkModel::ideal(), vec![StreamConfig::new(20.0, Encoding::Motor8)]);
    assert_eq!(run_config(&m, &m.configs[0]).unwrap().max_matrix_defect, 0.0);
}

#[test]
fn comparison_is_deterministic_and_mode_independent() {
    let s = fixtures::orbit_scenario();
    let a = run_comparison(&s, Execution::Sequential).unwrap();
    let b = run_comparison(&s, Execution::Parallel).unwrap();
    assert_eq!(reports_csv(&a), reports_csv(&b));
    assert_eq!(a, run_comparison(&s, Execution::Sequential).unwrap());
}

#[test]
fn starved_client_holds_last_pose() {
    let s = fixtures::orbit_scenario();
    let config = StreamConfig::new(20.0, Encoding::Motor8);
    let packets = server_stream(&s.objects[0], 0, &config, 1.0).unwrap();
    let delivered = simulate_network(&packets[..5], &NetworkModel::ideal()).unwrap();
    let targets: Vec<f64> = (0..20).map(|i| i as f64 * 0.05).collect();
    let out = client_reconstruct(&delivered, &config, 0.0, &targets).unwrap();
    assert_eq!(out.frames.len(), 20);
    assert!(out.held >= 15);
    assert_eq!(out.frames[19].markers, out.frames[10].markers);
    let none = client_reconstruct(&[], &config, 0.0, &targets).unwrap();
    assert!(none.frames.is_empty());
}

#[test]
fn pinned_scenario_numbers() {
    let s = fixtures::orbit_scenario();
    let r = run_comparison(&s, Execution::Parallel).unwrap();
    let find = |e: Encoding, hz: f64| r.iter().find(|x| x.encoding == e && x.rate_hz == hz).unwrap();
    let m20 = find(Encoding::Motor8, 20.0);
    let q30 = find(Encoding::QuatVec7, 30.0);
    assert!((payload_reduction(m20, find(Encoding::Matrix16, 30.0)) - 2.0 / 3.0).abs() < 1e-3);
    assert!(m20.rms <= 1.25 * q30.rms, "{} vs {}", m20.rms, q30.rms);
}

#[test]
fn scenario_json_round_trip() {
    let s = fixtures::orbit_scenario();
    assert_eq!(Scenario::from_json(&s.to_json()).unwrap(), s);
    assert!(Scenario::from_json("{\"name\": 3}").is_err());
}

use std::fmt::Write;
use std::fs;

use cgakit::algebra::{oracle, BladeIndex, ProductEntry, ProductTable, Signature};
use cgakit::conformal::plane;
use cgakit::mesh::{cut_mesh, TopologyReport};
use cgakit::motion::turn::{error_curve, summarize, InterpMethod, TurnTrajectory};
use cgakit::motion::{frame_error, sample_clip, sample_clip_matrices, skin_cga_with, skin_lbs_with, MatrixBlend};
use cgakit::netsync::{payload_reduction, run_comparison, Encoding, Scenario, CSV_HEADER};
use cgakit::par::Execution;
use cgakit::scene::{Scene, SceneFile};
use cgakit::Vec3;
use serde_json::json;

use crate::manifest::RunManifest;
use crate::{CayleyArgs, CliError, CutArgs, InterpArgs, NetbenchArgs, Outcome, SkinArgs};

/// Rows at keyframe times must agree to this.
const KEYFRAME_TOLERANCE: f64 = 1e-9;

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn parse_list<const N: usize>(s: &str, what: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("{what} '{s}': {e}")))?;
    let n = parts.len();
    parts.try_into().map_err(|_| CliError::Input(format!("{what} '{s}': expected {N} values, got {n}")))
}

pub fn cayley(args: &CayleyArgs, seed: Option<u64>, out: Option<&str>) -> Result<Outcome, CliError> {
    let [p, q] = parse_list::<2>(&args.signature, "signature")?;
    if p.fract() != 0.0 || q.fract() != 0.0 || p < 0.0 || q < 0.0 || p > 255.0 || q > 255.0 {
        return Err(CliError::Input(format!("signature '{}' must be two small non-negative integers", args.signature)));
    }
    let sig = Signature::new(p as u8, q as u8).map_err(input)?;
    let mut m = RunManifest::new("cayley", seed, out);
    m.param("signature", sig.to_string());

    let mut table = ProductTable::build(sig);
    if let Some(pair) = &args.inject_sign_flip {
        let [a, b] = parse_list::<2>(pair, "inject-sign-flip")?;
        let (a, b) = (a as usize, b as usize);
        if a >= table.signature().blade_count() || b >= table.signature().blade_count() {
            return Err(CliError::Input(format!("inject-sign-flip '{pair}' out of range")));
        }
        let e = table.entry(a, b);
        table.set_entry(a, b, ProductEntry { mask: e.mask, sign: -e.sign });
        m.param("inject_sign_flip", [a, b]);
    }

    let name = |mask: usize| BladeIndex::new(mask, sig).expect("mask in range").to_string();
    let mut s = m.csv_line();
    s.push_str("a,b,product,sign\n");
    for (a, b, e) in table.iter() {
        writeln!(s, "{},{},{},{}", name(a), name(b), name(e.mask as usize), e.sign).unwrap();
    }
    let bad = oracle::table_mismatches(&table);
    let failure = if bad.is_empty() {
        writeln!(s, "# oracle: PASS ({} entries)", table.len()).unwrap();
        None
    } else {
        writeln!(s, "# oracle: FAIL ({} of {} entries differ)", bad.len(), table.len()).unwrap();
        Some(format!("{} table entries disagree with the oracle", bad.len()))
    };
    Ok(Outcome { output: s, failure })
}

fn load_scene(m: &mut RunManifest, path: &str) -> Result<Scene, CliError> {
    let text = m.read_input(path)?;
    Scene::from_json(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

pub fn skin(args: &SkinArgs, seed: Option<u64>, out: Option<&str>, exec: Execution) -> Result<Outcome, CliError> {
    let mut m = RunManifest::new("skin", seed, out);
    let scene = load_scene(&mut m, &args.scene)?;
    let clip = scene.clip.as_ref().ok_or_else(|| CliError::Input(format!("{}: scene has no keyframes", args.scene)))?;
    let mesh = scene.skinned().map_err(input)?;
    let times: Vec<f64> = match (args.time, args.sweep) {
        (Some(t), _) => {
            m.param("time", t);
            vec![t]
        }
        (None, Some(n)) => {
            m.param("sweep", n);
            let n = n.max(1);
            (0..=n).map(|i| clip.start() + (clip.end() - clip.start()) * i as f64 / n as f64).collect()
        }
        (None, None) => unreachable!("clap requires --time or --sweep"),
    };
    let keyframe_times: Vec<f64> = clip.keyframes().iter().map(|k| k.time).collect();

    let mut s = m.csv_line();
    s.push_str("method,time,rms,max,keyframe\n");
    let mut worst_key: f64 = 0.0;
    for &t in &times {
        let is_key = keyframe_times.contains(&t);
        let reference =
            skin_lbs_with(&mesh, &scene.rig, &sample_clip_matrices(clip, t, MatrixBlend::Entrywise).map_err(input)?, exec)
                .map_err(input)?;
        let cga = skin_cga_with(&mesh, &scene.rig, &sample_clip(clip, t).map_err(input)?, exec).map_err(input)?;
        let ortho =
            skin_lbs_with(&mesh, &scene.rig, &sample_clip_matrices(clip, t, MatrixBlend::Orthonormalized).map_err(input)?, exec)
                .map_err(input)?;
        for (method, frame) in [("cga", &cga), ("lbs_orthonormalized", &ortho)] {
            let e = frame_error(&frame.positions, &reference.positions).map_err(input)?;
            if is_key && method == "cga" {
                worst_key = worst_key.max(e.max);
            }
            writeln!(s, "{method},{t},{:e},{:e},{}", e.rms, e.max, u8::from(is_key)).unwrap();
        }
    }
    let failure = (worst_key > KEYFRAME_TOLERANCE)
        .then(|| format!("keyframe rows differ from matrix skinning by {worst_key:e}"));
    Ok(Outcome { output: s, failure })
}

pub fn interp(args: &InterpArgs, seed: Option<u64>, out: Option<&str>) -> Result<Outcome, CliError> {
    if !(args.keyframe_spacing.is_finite() && args.keyframe_spacing > 0.0) {
        return Err(CliError::Input(format!("keyframe spacing {} must be positive", args.keyframe_spacing)));
    }
    if args.samples < 2 {
        return Err(CliError::Input("need at least 2 samples".into()));
    }
    let methods: Vec<InterpMethod> = if args.method == "all" {
        InterpMethod::ALL.to_vec()
    } else {
        vec![args.method.parse().map_err(input)?]
    };
    let mut m = RunManifest::new("interp", seed, out);
    m.param("keyframe_spacing_deg", args.keyframe_spacing).param("method", &args.method).param("samples", args.samples);

    let traj = TurnTrajectory::bundled();
    let spacing = args.keyframe_spacing.to_radians();
    let mut s = m.csv_line();
    s.push_str("time,rms,max,method\n");
    let mut summary = String::new();
    for method in methods {
        let curve = error_curve(&traj, spacing, method, args.samples).map_err(input)?;
        for c in &curve {
            writeln!(s, "{},{:e},{:e},{method}", c.time, c.rms, c.max).unwrap();
        }
        let st = summarize(&curve);
        writeln!(summary, "# summary: method={method} rms={:e} max={:e}", st.rms, st.max).unwrap();
    }
    s.push_str(&summary);
    Ok(Outcome { output: s, failure: None })
}

pub fn cut(args: &CutArgs, seed: Option<u64>, out: Option<&str>) -> Result<Outcome, CliError> {
    let normal = parse_list::<3>(&args.normal, "normal")?;
    let mut m = RunManifest::new("cut", seed, out);
    m.param("normal", normal).param("offset", args.offset);
    if let Some(r) = &args.report {
        m.outputs.push(r.clone());
    }
    let scene = load_scene(&mut m, &args.scene)?;
    let pl = plane(&Vec3::from(normal), args.offset).map_err(input)?;
    let result = cut_mesh(&scene.mesh, &pl).map_err(input)?;
    let topology = TopologyReport::with_labels(&result.mesh, &result.components, result.component_count);
    let report = json!({
        "plane": { "normal": [pl.normal().x, pl.normal().y, pl.normal().z], "offset": pl.offset() },
        "epsilon": result.epsilon,
        "crossed_triangles": result.crossed_triangles(),
        "new_vertices": result.new_vertices.len(),
        "components": topology.components.len(),
        "vertices": topology.vertices,
        "edges": topology.edges,
        "faces": topology.faces,
        "euler": topology.euler,
        "boundary_rings": topology.boundary_rings,
        "per_component": topology.components,
        "component_of_triangle": result.components,
    });

    let mut file: SceneFile = scene.with_mesh(result.mesh).to_file();
    file.manifest = Some(m.to_value());
    file.topology = Some(report.clone());
    if let Some(path) = &args.report {
        let doc = json!({ "manifest": m.to_value(), "topology": report });
        fs::write(path, serde_json::to_string_pretty(&doc).expect("report serializes") + "\n")?;
    }
    Ok(Outcome { output: file.to_json(), failure: None })
}

pub fn netbench(args: &NetbenchArgs, seed: Option<u64>, out: Option<&str>, exec: Execution) -> Result<Outcome, CliError> {
    let mut m = RunManifest::new("netbench", seed, out);
    let text = m.read_input(&args.scenario)?;
    let mut scenario = Scenario::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", args.scenario)))?;
    if let Some(seed) = seed {
        scenario.network.seed = seed;
    }
    m.seed = Some(scenario.network.seed);
    m.param("scenario", &scenario.name);
    let reports = run_comparison(&scenario, exec).map_err(input)?;

    let mut s = m.csv_line();
    writeln!(s, "{CSV_HEADER}").unwrap();
    for r in &reports {
        writeln!(
            s,
            "{},{},{},{},{:e},{:e}",
            r.encoding, r.rate_hz, r.payload_bytes_per_sec, r.total_bytes_per_sec, r.rms, r.max
        )
        .unwrap();
    }
    for a in reports.iter().filter(|r| r.encoding == Encoding::Motor8) {
        for b in reports.iter().filter(|r| r.encoding == Encoding::Matrix16) {
            writeln!(
                s,
                "# payload reduction {}@{}Hz vs {}@{}Hz: {:.3}%",
                a.encoding,
                a.rate_hz,
                b.encoding,
                b.rate_hz,
                100.0 * payload_reduction(a, b)
            )
            .unwrap();
        }
    }
    Ok(Outcome { output: s, failure: None })
}

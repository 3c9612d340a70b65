use std::collections::{BTreeMap, BTreeSet, VecDeque};

use cgakit::conformal::plane;
use cgakit::fixtures;
use cgakit::mesh::{
    classify_vertex, cut_mesh, edge_plane_intersection, MeshError, Side, TopologyReport, TriMesh,
};
use cgakit::motion::{sample_clip, skin_cga, Influence};
use cgakit::scene::Scene;
use cgakit::Vec3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cube() -> Scene {
    fixtures::unit_cube().to_scene().unwrap()
}

/// Components by breadth-first search over shared edges, never crossing
/// between triangles whose non-plane vertices lie on opposite sides.
fn bfs_components(mesh: &TriMesh, side_of: impl Fn(&Vec3) -> f64) -> usize {
    let tris = mesh.triangles();
    let p = mesh.positions();
    let sign = |t: &[usize; 3]| {
        let s: f64 = t.iter().map(|&i| side_of(&p[i])).filter(|d| d.abs() > 1e-9).sum();
        s > 0.0
    };
    let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            by_edge.entry((a.min(b), a.max(b))).or_default().push(i);
        }
    }
    let mut seen = vec![false; tris.len()];
    let mut count = 0;
    for start in 0..tris.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let t = tris[i];
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                for &j in &by_edge[&(a.min(b), a.max(b))] {
                    if !seen[j] && sign(&tris[j]) == sign(&t) {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    count
}

#[test]
fn cube_cut_at_half() {
    let scene = cube();
    let pl = plane(&Vec3::x(), 0.5).unwrap();
    let p = scene.mesh.positions();
    let crossed = scene
        .mesh
        .triangles()
        .iter()
        .filter(|t| {
            let xs: Vec<f64> = t.iter().map(|&i| p[i].x - 0.5).collect();
            xs.iter().any(|&x| x > 0.0) && xs.iter().any(|&x| x < 0.0)
        })
        .count();
    assert_eq!(crossed, 8);

    let cut = cut_mesh(&scene.mesh, &pl).unwrap();
    assert_eq!(cut.mesh.triangles().len(), 12 + 2 * crossed);
    assert_eq!(cut.crossed_triangles(), crossed);
    assert_eq!(cut.component_count, 2);
    assert_eq!(bfs_components(&cut.mesh, |x| x.x - 0.5), 2);

    let diag = cut.mesh.bbox_diagonal();
    for nv in &cut.new_vertices {
        let x = cut.mesh.positions()[nv.index];
        assert!(pl.incidence(&x).unwrap().abs() <= 1e-9 * diag);
        assert!(nv.t > 0.0 && nv.t < 1.0);
    }
    for w in cut.mesh.weights() {
        let s: f64 = w.iter().map(|i| i.weight).sum();
        assert!((s - 1.0).abs() <= 1e-9 && w.iter().all(|i| i.weight >= 0.0));
    }

    let report = TopologyReport::with_labels(&cut.mesh, &cut.components, cut.component_count);
    assert_eq!(report.boundary_rings, 2);
    for c in &report.components {
        // an open genus-0 surface with b rings has V − E + F = 2 − b
        assert_eq!(c.boundary_rings, 1);
        assert_eq!(c.euler, 2 - c.boundary_rings as i64);
        assert!(!c.closed);
    }
    // new vertices interpolate the x-graded weights: bone 1 gets 0.25 + 0.5·0.5
    let w = &cut.mesh.weights()[cut.new_vertices[0].index];
    assert_eq!(w, &vec![Influence { bone: 0, weight: 0.5 }, Influence { bone: 1, weight: 0.5 }]);
}

#[test]
fn plane_missing_mesh_is_identity() {
    let scene = cube();
    let cut = cut_mesh(&scene.mesh, &plane(&Vec3::new(1.0, 1.0, 1.0), 10.0).unwrap()).unwrap();
    assert_eq!(cut.mesh, scene.mesh);
    assert_eq!(cut.component_count, 1);
    assert!(cut.new_vertices.is_empty());
    let report = TopologyReport::new(&cut.mesh);
    assert!(report.components[0].closed);
}

#[test]
fn diagonal_cut_through_vertices() {
    let scene = cube();
    let pl = plane(&Vec3::new(1.0, -1.0, 0.0), 0.0).unwrap();
    let cut = cut_mesh(&scene.mesh, &pl).unwrap();
    // the four corners with x = y stay shared and are not duplicated
    assert_eq!(cut.mesh.vertex_count() - 8, cut.new_vertices.len());
    assert_eq!(cut.component_count, 2);
    assert_eq!(bfs_components(&cut.mesh, |x| x.x - x.y), 2);
    for nv in &cut.new_vertices {
        assert!(pl.incidence(&cut.mesh.positions()[nv.index]).unwrap().abs() <= 1e-12);
    }
}

#[test]
fn cut_is_deterministic() {
    let scene = fixtures::two_bone_cylinder().to_scene().unwrap();
    let pl = plane(&Vec3::new(1.0, 0.1, 0.05), 1.1).unwrap();
    let a = cut_mesh(&scene.mesh, &pl).unwrap();
    let b = cut_mesh(&scene.mesh, &pl).unwrap();
    assert_eq!(a, b);
}

#[test]
fn cylinder_cut_reskins() {
    let scene = fixtures::two_bone_cylinder().to_scene().unwrap();
    let cut = cut_mesh(&scene.mesh, &plane(&Vec3::x(), 1.1).unwrap()).unwrap();
    assert_eq!(cut.component_count, 2);
    assert_eq!(cut.crossed_triangles(), 2 * fixtures::CYLINDER_SEGMENTS);
    let report = TopologyReport::with_labels(&cut.mesh, &cut.components, cut.component_count);
    assert!(report.components.iter().all(|c| c.boundary_rings == 1 && c.euler == 1));

    let cut_scene = scene.with_mesh(cut.mesh.clone());
    let mesh = cut_scene.skinned().unwrap();
    let clip = cut_scene.clip.as_ref().unwrap();
    for k in 0..=12 {
        let t = clip.end() * k as f64 / 12.0;
        let frame = skin_cga(&mesh, &cut_scene.rig, &sample_clip(clip, t).unwrap()).unwrap();
        assert_eq!(frame.positions.len(), cut.mesh.vertex_count());
        assert!(frame.positions.iter().all(|p| p.iter().all(|x| x.is_finite())));
    }
}

#[test]
fn classification_matches_dot_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let n = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let d = rng.gen_range(-2.0..2.0);
        let pl = plane(&n, d).unwrap();
        let x = Vec3::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let s = x.dot(&n.normalize()) - d;
        let expect = if s.abs() <= 1e-9 {
            Side::On
        } else if s > 0.0 {
            Side::Above
        } else {
            Side::Below
        };
        assert_eq!(classify_vertex(&x, &pl, 1e-9).unwrap(), expect);
    }
    let pl = plane(&Vec3::new(0.0, 3.0, 4.0), 2.0).unwrap();
    let n = pl.normal();
    assert_eq!(classify_vertex(&(n * 2.0), &pl, 1e-9).unwrap(), Side::On);
    assert_eq!(classify_vertex(&(n * 2.0 + n), &pl, 1e-9).unwrap(), Side::Above);
}

#[test]
fn intersection_matches_parametric_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut done = 0;
    while done < 1000 {
        let n = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if n.norm() < 0.1 {
            continue;
        }
        let d = rng.gen_range(-1.0..1.0);
        let a = Vec3::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let b = Vec3::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let nh = n.normalize();
        let (sa, sb) = (a.dot(&nh) - d, b.dot(&nh) - d);
        if sa * sb >= 0.0 || sa.abs() < 1e-6 || sb.abs() < 1e-6 {
            continue;
        }
        // line a + t (b − a) meets n̂·x = d at t = (d − n̂·a) / n̂·(b − a)
        let t = (d - nh.dot(&a)) / nh.dot(&(b - a));
        let hit = edge_plane_intersection(&a, &b, &plane(&n, d).unwrap()).unwrap();
        assert!((hit.t - t).abs() < 1e-10);
        assert!((hit.point - (a + (b - a) * t)).norm() < 1e-10);
        done += 1;
    }
}

#[test]
fn non_manifold_input_rejected() {
    let p = vec![
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(0.5, 1.0, 0.0),
        Vec3::new(0.5, -1.0, 0.0),
        Vec3::new(0.5, 0.0, 1.0),
    ];
    let w = vec![vec![Influence { bone: 0, weight: 1.0 }]; 5];
    let mesh = TriMesh::new(p, w, vec![[0, 1, 2], [1, 0, 3], [0, 1, 4]]).unwrap();
    let err = cut_mesh(&mesh, &plane(&Vec3::x(), 0.5).unwrap()).unwrap_err();
    assert_eq!(err, MeshError::NonManifold { a: 0, b: 1, count: 3 });
}

#[test]
fn cut_output_preserves_orientation() {
    let scene = cube();
    let cut = cut_mesh(&scene.mesh, &plane(&Vec3::new(1.0, 0.3, 0.2), 0.6).unwrap()).unwrap();
    let p = cut.mesh.positions();
    let centre = Vec3::new(0.5, 0.5, 0.5);
    for t in cut.mesh.triangles() {
        let n = (p[t[1]] - p[t[0]]).cross(&(p[t[2]] - p[t[0]]));
        assert!(n.dot(&((p[t[0]] + p[t[1]] + p[t[2]]) / 3.0 - centre)) > 0.0);
    }
    let verts: BTreeSet<usize> = cut.mesh.triangles().iter().flatten().copied().collect();
    assert_eq!(verts.len(), cut.mesh.vertex_count());
}

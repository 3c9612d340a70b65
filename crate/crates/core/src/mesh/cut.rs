use std::collections::BTreeMap;

use super::{topology, MeshError, TriMesh};
use crate::conformal::CutPlane;
use crate::motion::{Influence, MAX_INFLUENCES};
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Above,
    Below,
    On,
}

/// Classify by the sign of `up(x)·π`, with `|·| ≤ eps` counting as on the plane.
pub fn classify_vertex(x: &Vec3, plane: &CutPlane, eps: f64) -> Result<Side, MeshError> {
    let d = plane.incidence(x)?;
    Ok(side_of(d, eps))
}

fn side_of(d: f64, eps: f64) -> Side {
    if d.abs() <= eps {
        Side::On
    } else if d > 0.0 {
        Side::Above
    } else {
        Side::Below
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeHit {
    pub point: Vec3,
    pub t: f64,
}

/// Crossing point of segment `ab` with the plane, from the two incidences.
pub fn edge_plane_intersection(a: &Vec3, b: &Vec3, plane: &CutPlane) -> Result<EdgeHit, MeshError> {
    let da = plane.incidence(a)?;
    let db = plane.incidence(b)?;
    if da == 0.0 || db == 0.0 {
        return Err(MeshError::EndpointOnPlane);
    }
    if (da > 0.0) == (db > 0.0) {
        return Err(MeshError::SameSide);
    }
    let t = da / (da - db);
    Ok(EdgeHit { point: a + (b - a) * t, t })
}

/// `(1−t)·wa + t·wb`, merged per bone, trimmed to the strongest
/// influences and renormalized.
pub fn interpolate_weights(wa: &[Influence], wb: &[Influence], t: f64) -> Vec<Influence> {
    let mut merged: BTreeMap<usize, f64> = BTreeMap::new();
    for inf in wa {
        *merged.entry(inf.bone).or_default() += (1.0 - t) * inf.weight;
    }
    for inf in wb {
        *merged.entry(inf.bone).or_default() += t * inf.weight;
    }
    let mut out: Vec<Influence> =
        merged.into_iter().filter(|&(_, w)| w > 0.0).map(|(bone, weight)| Influence { bone, weight }).collect();
    if out.len() > MAX_INFLUENCES {
        out.sort_by(|a, b| b.weight.total_cmp(&a.weight).then(a.bone.cmp(&b.bone)));
        out.truncate(MAX_INFLUENCES);
        out.sort_by_key(|inf| inf.bone);
    }
    let sum: f64 = out.iter().map(|inf| inf.weight).sum();
    for inf in &mut out {
        inf.weight /= sum;
    }
    out
}

/// A vertex created on a cut edge. `edge` is ordered low index first and
/// `t` is measured from `edge.0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewVertex {
    pub index: usize,
    pub edge: (usize, usize),
    pub t: f64,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    pub mesh: TriMesh,
    pub new_vertices: Vec<NewVertex>,
    /// Component label per output triangle, numbered in order of first appearance.
    pub components: Vec<usize>,
    pub component_count: usize,
    /// Side of each output triangle.
    pub sides: Vec<Side>,
    pub epsilon: f64,
}

impl CutResult {
    pub fn crossed_triangles(&self) -> usize {
        self.new_vertices.len() / 2
    }
}

/// Cut with the default tolerance, `1e−9` times the bounding-box diagonal.
pub fn cut_mesh(mesh: &TriMesh, plane: &CutPlane) -> Result<CutResult, MeshError> {
    let diag = mesh.bbox_diagonal();
    let eps = 1e-9 * if diag > 0.0 { diag } else { 1.0 };
    cut_mesh_with_epsilon(mesh, plane, eps)
}

pub fn cut_mesh_with_epsilon(mesh: &TriMesh, plane: &CutPlane, eps: f64) -> Result<CutResult, MeshError> {
    for (&(a, b), &count) in &topology::edge_incidence(mesh.triangles()) {
        if count > 2 {
            return Err(MeshError::NonManifold { a, b, count });
        }
    }

    let mut positions = mesh.positions().to_vec();
    let mut weights = mesh.weights().to_vec();
    let mut sides = Vec::with_capacity(positions.len());
    let n = plane.normal();
    for p in positions.iter_mut() {
        let d = plane.incidence(p)?;
        let s = side_of(d, eps);
        if s == Side::On {
            *p -= n * d;
        }
        sides.push(s);
    }

    let mut cache: BTreeMap<(usize, usize), [usize; 2]> = BTreeMap::new();
    let mut new_vertices = Vec::new();
    let mut split = |a: usize, b: usize, side: Side, positions: &mut Vec<Vec3>, weights: &mut Vec<Vec<Influence>>| {
        let key = if a < b { (a, b) } else { (b, a) };
        if let Some(pair) = cache.get(&key) {
            return Ok::<usize, MeshError>(pair[slot(side)]);
        }
        let hit = edge_plane_intersection(&positions[key.0], &positions[key.1], plane)?;
        let w = interpolate_weights(&weights[key.0], &weights[key.1], hit.t);
        let mut pair = [0; 2];
        for s in [Side::Above, Side::Below] {
            let index = positions.len();
            positions.push(hit.point);
            weights.push(w.clone());
            new_vertices.push(NewVertex { index, edge: key, t: hit.t, side: s });
            pair[slot(s)] = index;
        }
        cache.insert(key, pair);
        Ok(pair[slot(side)])
    };

    let mut triangles = Vec::with_capacity(mesh.triangles().len());
    let mut tri_sides = Vec::with_capacity(mesh.triangles().len());
    for tri in mesh.triangles() {
        let s = tri.map(|i| sides[i]);
        let above = s.contains(&Side::Above);
        let below = s.contains(&Side::Below);
        if !(above && below) {
            triangles.push(*tri);
            tri_sides.push(if below { Side::Below } else { Side::Above });
            continue;
        }
        if let Some(k) = s.iter().position(|&x| x == Side::On) {
            let (o, p, q) = (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]);
            let cp = split(p, q, sides[p], &mut positions, &mut weights)?;
            let cq = split(p, q, sides[q], &mut positions, &mut weights)?;
            triangles.push([o, p, cp]);
            tri_sides.push(sides[p]);
            triangles.push([o, cq, q]);
            tri_sides.push(sides[q]);
        } else {
            // the lone vertex is the one whose side differs from both others
            let k = (0..3).find(|&k| s[k] != s[(k + 1) % 3] && s[k] != s[(k + 2) % 3]).unwrap();
            let (l, a, b) = (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]);
            let (ls, os) = (sides[l], sides[a]);
            let c1l = split(l, a, ls, &mut positions, &mut weights)?;
            let c2l = split(l, b, ls, &mut positions, &mut weights)?;
            let c1o = split(l, a, os, &mut positions, &mut weights)?;
            let c2o = split(l, b, os, &mut positions, &mut weights)?;
            triangles.push([l, c1l, c2l]);
            tri_sides.push(ls);
            triangles.push([c1o, a, b]);
            tri_sides.push(os);
            triangles.push([c1o, b, c2o]);
            tri_sides.push(os);
        }
    }

    let (components, component_count) = topology::label_components(&triangles, Some(&tri_sides));
    let mesh = TriMesh::new(positions, weights, triangles)?;
    Ok(CutResult { mesh, new_vertices, components, component_count, sides: tri_sides, epsilon: eps })
}

fn slot(side: Side) -> usize {
    match side {
        Side::Below => 1,
        _ => 0,
    }
}

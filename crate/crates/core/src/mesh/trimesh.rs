use std::collections::HashMap;

use super::MeshError;
use crate::motion::{Influence, MotionError, SkinnedMesh};
use crate::Vec3;

/// Indexed triangle mesh carrying per-vertex bone weights.
///
/// Triangles are counterclockwise when seen from outside.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    positions: Vec<Vec3>,
    weights: Vec<Vec<Influence>>,
    triangles: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn new(
        positions: Vec<Vec3>,
        weights: Vec<Vec<Influence>>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, MeshError> {
        if positions.len() != weights.len() {
            return Err(MeshError::WeightCount { positions: positions.len(), weights: weights.len() });
        }
        if positions.iter().any(|p| !p.iter().all(|x| x.is_finite())) {
            return Err(MotionError::NonFinite.into());
        }
        for (i, w) in weights.iter().enumerate() {
            crate::motion::rig::check_weights(i, w)?;
        }
        let n = positions.len();
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            if let Some(&index) = tri.iter().find(|&&i| i >= n) {
                return Err(MeshError::IndexOutOfRange { triangle: t, index, vertices: n });
            }
            let [a, b, c] = tri.map(|i| positions[i]);
            let area = 0.5 * (b - a).cross(&(c - a)).norm();
            if !(area > 1e-12) {
                return Err(MeshError::Degenerate { triangle: t, area });
            }
            for k in 0..3 {
                *directed.entry((tri[k], tri[(k + 1) % 3])).or_default() += 1;
            }
        }
        // a manifold edge must be used once in each direction
        for (&(a, b), &count) in &directed {
            let reverse = directed.get(&(b, a)).copied().unwrap_or(0);
            if count + reverse == 2 && count != 1 {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                return Err(MeshError::InconsistentOrientation(lo, hi));
            }
        }
        Ok(TriMesh { positions, weights, triangles })
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn weights(&self) -> &[Vec<Influence>] {
        &self.weights
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    /// Length of the axis-aligned bounding box diagonal.
    pub fn bbox_diagonal(&self) -> f64 {
        let Some(first) = self.positions.first() else {
            return 0.0;
        };
        let (lo, hi) = self.positions.iter().fold((*first, *first), |(lo, hi), p| (lo.inf(p), hi.sup(p)));
        (hi - lo).norm()
    }

    pub fn to_skinned(&self) -> Result<SkinnedMesh, MotionError> {
        SkinnedMesh::new(self.positions.clone(), self.weights.clone())
    }
}

//! Skinned-scene JSON: a rig, a weighted triangle mesh and an optional clip.
//!
//! ```json
//! {
//!   "manifest": { ... },
//!   "rig": { "bones": [ { "name": "root", "parent": null, "offset": [16 reals] } ] },
//!   "mesh": {
//!     "vertices": [[x, y, z], ...],
//!     "triangles": [[i, j, k], ...],
//!     "weights": [[[bone, w], ...], ...]
//!   },
//!   "keyframes": [ { "time": 0.0, "pose": [[16 reals], ...] } ],
//!   "topology": { ... }
//! }
//! ```
//!
//! Matrices are column-major. `offset` is the bind-inverse `O_n`, each
//! `pose` entry the global bone transform `T_{n,k}`. Motors are derived on load.
//! `manifest` and `topology` are optional and ignored on load.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mesh::{MeshError, TriMesh};
use crate::motion::{AnimationClip, Bone, Influence, Keyframe, MotionError, Rig, SkinnedMesh, MAX_INFLUENCES};
use crate::{Mat4, Vec3};

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("scene JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Motion(#[from] MotionError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("vertex {vertex} references bone {bone}, rig has {bones}")]
    BoneOutOfRange { vertex: usize, bone: usize, bones: usize },
    #[error("keyframe {index} has {got} poses, rig has {expected} bones")]
    PoseCount { index: usize, expected: usize, got: usize },
    #[error("vertex {vertex}: bone index {value} is not a non-negative integer")]
    BadBoneIndex { vertex: usize, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoneFile {
    pub name: String,
    pub parent: Option<usize>,
    pub offset: [f64; 16],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RigFile {
    pub bones: Vec<BoneFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshFile {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    /// `[bone, weight]` pairs per vertex.
    pub weights: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyframeFile {
    pub time: f64,
    pub pose: Vec<[f64; 16]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
    pub rig: RigFile,
    pub mesh: MeshFile,
    #[serde(default)]
    pub keyframes: Vec<KeyframeFile>,
    /// Free-form report attached by tools that produced the scene.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<serde_json::Value>,
}

/// Validated scene.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub rig: Rig,
    pub mesh: TriMesh,
    pub clip: Option<AnimationClip>,
}

pub fn mat_from_slice(m: &[f64; 16]) -> Mat4 {
    Mat4::from_column_slice(m)
}

pub fn mat_to_array(m: &Mat4) -> [f64; 16] {
    let mut out = [0.0; 16];
    out.copy_from_slice(m.as_slice());
    out
}

impl SceneFile {
    pub fn from_json(text: &str) -> Result<Self, SceneError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scene serializes");
        s.push('\n');
        s
    }

    pub fn to_scene(&self) -> Result<Scene, SceneError> {
        let bones = self
            .rig
            .bones
            .iter()
            .map(|b| Bone::new(b.name.clone(), b.parent, mat_from_slice(&b.offset)))
            .collect::<Result<Vec<_>, _>>()?;
        let rig = Rig::new(bones)?;

        let mut weights = Vec::with_capacity(self.mesh.weights.len());
        for (vertex, pairs) in self.mesh.weights.iter().enumerate() {
            if pairs.len() > MAX_INFLUENCES {
                return Err(MotionError::TooManyInfluences { vertex, count: pairs.len() }.into());
            }
            let mut list = Vec::with_capacity(pairs.len());
            for &[b, weight] in pairs {
                if !(b >= 0.0 && b.fract() == 0.0 && b < usize::MAX as f64) {
                    return Err(SceneError::BadBoneIndex { vertex, value: b });
                }
                let bone = b as usize;
                if bone >= rig.len() {
                    return Err(SceneError::BoneOutOfRange { vertex, bone, bones: rig.len() });
                }
                list.push(Influence { bone, weight });
            }
            weights.push(list);
        }
        let positions = self.mesh.vertices.iter().map(|v| Vec3::new(v[0], v[1], v[2])).collect();
        let mesh = TriMesh::new(positions, weights, self.mesh.triangles.clone())?;

        let clip = if self.keyframes.is_empty() {
            None
        } else {
            let mut keys = Vec::with_capacity(self.keyframes.len());
            for (index, k) in self.keyframes.iter().enumerate() {
                if k.pose.len() != rig.len() {
                    return Err(SceneError::PoseCount { index, expected: rig.len(), got: k.pose.len() });
                }
                keys.push(Keyframe::new(k.time, k.pose.iter().map(mat_from_slice).collect())?);
            }
            Some(AnimationClip::new(keys)?)
        };
        Ok(Scene { rig, mesh, clip })
    }
}

impl Scene {
    pub fn from_json(text: &str) -> Result<Self, SceneError> {
        SceneFile::from_json(text)?.to_scene()
    }

    pub fn skinned(&self) -> Result<SkinnedMesh, MotionError> {
        self.mesh.to_skinned()
    }

    pub fn to_file(&self) -> SceneFile {
        let bones = self
            .rig
            .bones()
            .iter()
            .map(|b| BoneFile { name: b.name.clone(), parent: b.parent, offset: mat_to_array(b.offset_matrix()) })
            .collect();
        let mesh = MeshFile {
            vertices: self.mesh.positions().iter().map(|p| [p.x, p.y, p.z]).collect(),
            triangles: self.mesh.triangles().to_vec(),
            weights: self
                .mesh
                .weights()
                .iter()
                .map(|w| w.iter().map(|i| [i.bone as f64, i.weight]).collect())
                .collect(),
        };
        let keyframes = self
            .clip
            .iter()
            .flat_map(|c| c.keyframes())
            .map(|k| KeyframeFile { time: k.time, pose: k.matrices().iter().map(mat_to_array).collect() })
            .collect();
        SceneFile { manifest: None, rig: RigFile { bones }, mesh, keyframes, topology: None }
    }

    /// Same rig and clip over a different mesh.
    pub fn with_mesh(&self, mesh: TriMesh) -> Scene {
        Scene { rig: self.rig.clone(), mesh, clip: self.clip.clone() }
    }
}

use std::collections::BTreeMap;

use super::{DecodedPose, Delivery, NetError, StreamConfig, MARKERS};
use crate::motion::{matrix_lerp, motor_lerp, orthonormalize, orthonormality_defect};
use crate::{Mat4, Vec3};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderedFrame {
    pub object_id: u32,
    /// Server time the frame represents.
    pub target: f64,
    pub markers: Vec<Vec3>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClientOutput {
    pub frames: Vec<RenderedFrame>,
    /// Frames rendered from a single held update.
    pub held: usize,
    /// Ticks with nothing buffered for the object.
    pub missing: usize,
    /// Worst `‖AᵀA − I‖_F` of entrywise-blended matrices before repair.
    pub max_matrix_defect: f64,
}

enum Event<'a> {
    Arrive(&'a Delivery),
    Render(usize),
}

fn blend(a: &DecodedPose, b: &DecodedPose, t: f64, defect: &mut f64) -> Result<DecodedPose, NetError> {
    Ok(match (a, b) {
        (DecodedPose::Motor { motor: ma, scale: sa }, DecodedPose::Motor { motor: mb, scale: sb }) => {
            DecodedPose::Motor { motor: motor_lerp(ma, mb, t)?, scale: sa + (sb - sa) * t }
        }
        (DecodedPose::QuatVec(qa), DecodedPose::QuatVec(qb)) => DecodedPose::QuatVec(qa.interpolate(qb, t)),
        (DecodedPose::Matrix(ma), DecodedPose::Matrix(mb)) => {
            let raw = matrix_lerp(ma, mb, t);
            let s = raw.fixed_view::<3, 3>(0, 0).determinant().abs().cbrt();
            *defect = defect.max(orthonormality_defect(&(raw / s.max(1e-300))));
            DecodedPose::Matrix(repair(&raw, ma, mb, t))
        }
        _ => return Err(NetError::BadConfig("mixed encodings in one stream".into())),
    })
}

/// Re-orthonormalize the rotation block, keeping the blended uniform scale.
fn repair(raw: &Mat4, a: &Mat4, b: &Mat4, t: f64) -> Mat4 {
    let scale = |m: &Mat4| m.fixed_view::<3, 3>(0, 0).determinant().abs().cbrt();
    let s = scale(a) + (scale(b) - scale(a)) * t;
    let mut out = orthonormalize(raw);
    for j in 0..3 {
        for i in 0..3 {
            out[(i, j)] *= s;
        }
    }
    out
}

/// Replay deliveries and render ticks in one time-ordered loop.
///
/// The tick at client time `τ` renders server time `τ − clock_offset − delay`
/// from the two buffered updates bracketing it, holding the nearest one when
/// only one side is available. `targets` are the server times to render.
pub fn client_reconstruct(
    delivered: &[Delivery],
    config: &StreamConfig,
    clock_offset: f64,
    targets: &[f64],
) -> Result<ClientOutput, NetError> {
    config.validate()?;
    let lag = clock_offset + config.delay();
    let mut events: Vec<(f64, u8, usize, Event)> = Vec::with_capacity(delivered.len() + targets.len());
    for (i, d) in delivered.iter().enumerate() {
        events.push((d.arrival, 0, i, Event::Arrive(d)));
    }
    for (i, &t) in targets.iter().enumerate() {
        events.push((t + lag, 1, i, Event::Render(i)));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let objects: Vec<u32> = {
        let mut ids: Vec<u32> = delivered.iter().map(|d| d.update.object_id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    };
    let mut buffers: BTreeMap<u32, Vec<(f64, DecodedPose)>> = objects.iter().map(|&id| (id, Vec::new())).collect();
    let mut out = ClientOutput::default();
    let markers: Vec<Vec3> = MARKERS.iter().map(|m| Vec3::new(m[0], m[1], m[2])).collect();

    for (_, _, _, ev) in events {
        match ev {
            Event::Arrive(d) => {
                let pose = d.update.pose()?;
                buffers.get_mut(&d.update.object_id).expect("known object").push((d.update.timestamp, pose));
            }
            Event::Render(i) => {
                let target = targets[i];
                for (&object_id, buf) in &buffers {
                    let j = buf.partition_point(|(ts, _)| *ts <= target);
                    let pose = match (j.checked_sub(1).map(|k| &buf[k]), buf.get(j)) {
                        (Some((ta, a)), _) if *ta == target => *a,
                        (Some((ta, a)), Some((tb, b))) => {
                            blend(a, b, (target - ta) / (tb - ta), &mut out.max_matrix_defect)?
                        }
                        (Some((_, p)), None) | (None, Some((_, p))) => {
                            out.held += 1;
                            *p
                        }
                        (None, None) => {
                            out.missing += 1;
                            continue;
                        }
                    };
                    let pts = markers.iter().map(|m| pose.transform_point(m)).collect::<Result<_, _>>()?;
                    out.frames.push(RenderedFrame { object_id, target, markers: pts });
                }
            }
        }
    }
    Ok(out)
}

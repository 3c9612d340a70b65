use super::MotionError;
use crate::Vec3;

/// RMS and maximum Euclidean distance, in scene length units.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorStats {
    pub rms: f64,
    pub max: f64,
}

impl ErrorStats {
    /// Pool per-point distances.
    pub fn from_distances(d: impl IntoIterator<Item = f64>) -> Self {
        let (mut sum_sq, mut max, mut n) = (0.0, 0.0f64, 0usize);
        for x in d {
            sum_sq += x * x;
            max = max.max(x);
            n += 1;
        }
        if n == 0 {
            return ErrorStats::default();
        }
        ErrorStats { rms: (sum_sq / n as f64).sqrt(), max }
    }
}

/// Per-point distance statistics between two equally sized point sets.
pub fn frame_error(a: &[Vec3], b: &[Vec3]) -> Result<ErrorStats, MotionError> {
    if a.len() != b.len() {
        return Err(MotionError::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(ErrorStats::from_distances(a.iter().zip(b).map(|(p, q)| (p - q).norm())))
}

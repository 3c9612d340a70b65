use serde::{Deserialize, Serialize};

use super::{Encoding, NetError, PoseSample, Trajectory, TransformUpdate};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StreamConfig {
    pub rate_hz: f64,
    pub encoding: Encoding,
    /// Client interpolation delay in seconds; `2 / rate` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delay: Option<f64>,
}

impl StreamConfig {
    pub fn new(rate_hz: f64, encoding: Encoding) -> Self {
        StreamConfig { rate_hz, encoding, delay: None }
    }

    pub fn delay(&self) -> f64 {
        self.delay.unwrap_or(2.0 / self.rate_hz)
    }

    pub fn validate(&self) -> Result<(), NetError> {
        if !(self.rate_hz.is_finite() && self.rate_hz > 0.0) {
            return Err(NetError::BadConfig(format!("rate {} must be positive", self.rate_hz)));
        }
        let d = self.delay();
        if !(d.is_finite() && d * self.rate_hz >= 1.0 - 1e-12) {
            return Err(NetError::BadConfig(format!("delay {d} is shorter than one update interval")));
        }
        Ok(())
    }
}

/// Updates for one object at `t = i / rate`, `i = 0..=⌊duration·rate⌋`.
pub fn server_stream(
    trajectory: &Trajectory,
    object_id: u32,
    config: &StreamConfig,
    duration: f64,
) -> Result<Vec<TransformUpdate>, NetError> {
    config.validate()?;
    trajectory.validate()?;
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(NetError::BadConfig(format!("duration {duration} must be non-negative")));
    }
    let n = (duration * config.rate_hz + 1e-9).floor() as u32;
    (0..=n)
        .map(|i| {
            let t = i as f64 / config.rate_hz;
            let sample = PoseSample::new(t, object_id, trajectory.pose(t)?)?;
            TransformUpdate::from_sample(&sample, i, config.encoding)
        })
        .collect()
}

/// All objects' streams merged in send order, ties by object id.
pub fn server_stream_all(
    objects: &[Trajectory],
    config: &StreamConfig,
    duration: f64,
) -> Result<Vec<TransformUpdate>, NetError> {
    let mut all = Vec::new();
    for (id, t) in objects.iter().enumerate() {
        all.extend(server_stream(t, id as u32, config, duration)?);
    }
    all.sort_by(|a, b| a.timestamp.total_cmp(&b.timestamp).then(a.object_id.cmp(&b.object_id)));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn still() -> Trajectory {
        Trajectory::ConstantVelocity { start: [0.0; 3], velocity: [0.0; 3], axis: [0.0, 0.0, 1.0], angular_speed: 0.0 }
    }

    #[test]
    fn inclusive_fenceposts() {
        let s = server_stream(&still(), 0, &StreamConfig::new(20.0, Encoding::Motor8), 1.0).unwrap();
        assert_eq!(s.len(), 21);
        assert!(s.iter().enumerate().all(|(i, u)| u.seq == i as u32));
        assert_eq!(s[20].timestamp, 1.0);
    }

    #[test]
    fn config_validation() {
        assert!(StreamConfig::new(0.0, Encoding::Motor8).validate().is_err());
        let short = StreamConfig { rate_hz: 10.0, encoding: Encoding::Motor8, delay: Some(0.05) };
        assert!(short.validate().is_err());
        assert_eq!(StreamConfig::new(20.0, Encoding::Motor8).delay(), 0.1);
    }
}

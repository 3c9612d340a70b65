use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{client_reconstruct, server_stream_all, simulate_network, Encoding, NetError, NetworkModel, StreamConfig, Trajectory};
use crate::motion::ErrorStats;
use crate::par::{try_map_indexed, Execution};

/// A synchronization experiment: moving objects, a network, and the stream
/// configurations to compare.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Streamed span in seconds.
    pub duration: f64,
    /// Client render rate for error measurement.
    pub render_hz: f64,
    pub objects: Vec<Trajectory>,
    pub network: NetworkModel,
    pub configs: Vec<StreamConfig>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, NetError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| NetError::BadScenario(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<(), NetError> {
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return Err(NetError::BadScenario("duration must be positive".into()));
        }
        if !(self.render_hz.is_finite() && self.render_hz > 0.0) {
            return Err(NetError::BadScenario("render_hz must be positive".into()));
        }
        if self.objects.is_empty() {
            return Err(NetError::BadScenario("no objects".into()));
        }
        for t in &self.objects {
            t.validate()?;
        }
        for c in &self.configs {
            c.validate()?;
        }
        self.network.validate()
    }

    /// Server times rendered by the client, `0, 1/render_hz, …, duration`.
    pub fn render_targets(&self) -> Vec<f64> {
        let n = (self.duration * self.render_hz + 1e-9).floor() as usize;
        (0..=n).map(|i| i as f64 / self.render_hz).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandwidthReport {
    pub encoding: Encoding,
    pub rate_hz: f64,
    pub delay: f64,
    /// Sent payload bytes per second over `[0, duration)`.
    pub payload_bytes_per_sec: f64,
    /// As above with the header included.
    pub total_bytes_per_sec: f64,
    pub rms: f64,
    pub max: f64,
    pub sent: usize,
    pub delivered: usize,
    pub held_frames: usize,
    pub missing_frames: usize,
    pub max_matrix_defect: f64,
}

/// Stream, deliver and reconstruct one configuration of `scenario`.
pub fn run_config(scenario: &Scenario, config: &StreamConfig) -> Result<BandwidthReport, NetError> {
    scenario.validate()?;
    config.validate()?;
    let packets = server_stream_all(&scenario.objects, config, scenario.duration)?;
    let window: Vec<_> = packets.iter().filter(|p| p.timestamp < scenario.duration).collect();
    let payload: usize = window.iter().map(|p| 4 * p.payload.len()).sum();
    let total: usize = window.iter().map(|p| p.wire_len()).sum();

    let delivered = simulate_network(&packets, &scenario.network)?;
    let targets = scenario.render_targets();
    let out = client_reconstruct(&delivered, config, scenario.network.latency, &targets)?;

    let mut distances = Vec::with_capacity(out.frames.len() * 4);
    for f in &out.frames {
        let truth = scenario.objects[f.object_id as usize].markers(f.target)?;
        distances.extend(f.markers.iter().zip(&truth).map(|(a, b)| (a - b).norm()));
    }
    let stats = ErrorStats::from_distances(distances);
    Ok(BandwidthReport {
        encoding: config.encoding,
        rate_hz: config.rate_hz,
        delay: config.delay(),
        payload_bytes_per_sec: payload as f64 / scenario.duration,
        total_bytes_per_sec: total as f64 / scenario.duration,
        rms: stats.rms,
        max: stats.max,
        sent: packets.len(),
        delivered: delivered.len(),
        held_frames: out.held,
        missing_frames: out.missing,
        max_matrix_defect: out.max_matrix_defect,
    })
}

/// Every configuration of `scenario`, in order.
pub fn run_comparison(scenario: &Scenario, exec: Execution) -> Result<Vec<BandwidthReport>, NetError> {
    scenario.validate()?;
    try_map_indexed(scenario.configs.len(), exec, |i| run_config(scenario, &scenario.configs[i]))
}

/// `1 − a / b` on payload bandwidth.
pub fn payload_reduction(a: &BandwidthReport, b: &BandwidthReport) -> f64 {
    1.0 - a.payload_bytes_per_sec / b.payload_bytes_per_sec
}

pub const CSV_HEADER: &str = "encoding,rate_hz,payload_Bps,total_Bps,rms_err,max_err";

pub fn reports_csv(reports: &[BandwidthReport]) -> String {
    let mut s = format!("{CSV_HEADER}\n");
    for r in reports {
        writeln!(
            s,
            "{},{},{},{},{:e},{:e}",
            r.encoding, r.rate_hz, r.payload_bytes_per_sec, r.total_bytes_per_sec, r.rms, r.max
        )
        .unwrap();
    }
    s
}

//! Pose-synchronization simulator: a server streams object poses in one
//! of several wire encodings, a seeded network model delays and drops
//! packets, and a client reconstructs motion by buffered interpolation.

mod client;
mod network;
mod report;
mod stream;
mod trajectory;
mod wire;

pub use client::{client_reconstruct, ClientOutput, RenderedFrame};
pub use network::{delivery_log, simulate_network, Delivery, NetworkModel};
pub use report::{
    payload_reduction, reports_csv, run_comparison, run_config, BandwidthReport, Scenario, CSV_HEADER,
};
pub use stream::{server_stream, server_stream_all, StreamConfig};
pub use trajectory::{Trajectory, MARKERS};
pub use wire::{
    decode_update, encode_update, DecodedPose, Encoding, PoseSample, TransformUpdate, HEADER_BYTES,
    MOTOR_DECODE_TOLERANCE,
};

use thiserror::Error;

use crate::conformal::ConformalError;
use crate::motion::MotionError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetError {
    #[error(transparent)]
    Conformal(#[from] ConformalError),
    #[error(transparent)]
    Motion(#[from] MotionError),
    #[error("buffer holds {got} bytes, need {need}")]
    Truncated { need: usize, got: usize },
    #[error("unknown encoding tag {0}")]
    UnknownTag(u8),
    #[error("decoded motor is not a versor (residual {0:e})")]
    NotAVersor(f64),
    #[error("non-finite value in payload")]
    NonFinite,
    #[error("invalid stream config: {0}")]
    BadConfig(String),
    #[error("invalid trajectory: {0}")]
    BadTrajectory(String),
    #[error("invalid network model: {0}")]
    BadNetwork(String),
    #[error("invalid scenario: {0}")]
    BadScenario(String),
}

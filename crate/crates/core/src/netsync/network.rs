use std::collections::HashMap;
use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{NetError, TransformUpdate};

/// Latency `latency + U(−jitter, jitter)` clamped at zero, i.i.d. drops.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkModel {
    pub latency: f64,
    pub jitter: f64,
    pub drop: f64,
    pub seed: u64,
}

impl NetworkModel {
    pub fn ideal() -> Self {
        NetworkModel { latency: 0.0, jitter: 0.0, drop: 0.0, seed: 0 }
    }

    pub fn validate(&self) -> Result<(), NetError> {
        if !(self.latency.is_finite() && self.latency >= 0.0 && self.jitter.is_finite() && self.jitter >= 0.0) {
            return Err(NetError::BadNetwork("latency and jitter must be finite and non-negative".into()));
        }
        if !(0.0..=1.0).contains(&self.drop) {
            return Err(NetError::BadNetwork(format!("drop probability {} outside [0, 1]", self.drop)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Delivery {
    pub update: TransformUpdate,
    pub send: f64,
    pub arrival: f64,
}

/// Deliver `packets` (in send order) through `model`.
///
/// Two draws are taken per packet whether or not it is dropped, so every
/// packet sees the same random stream position for a given seed. Output is
/// in arrival order; a packet arriving after a newer one from the same
/// object is discarded.
pub fn simulate_network(packets: &[TransformUpdate], model: &NetworkModel) -> Result<Vec<Delivery>, NetError> {
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let mut flight = Vec::with_capacity(packets.len());
    for (order, p) in packets.iter().enumerate() {
        let lost: f64 = rng.gen();
        let j: f64 = rng.gen_range(-1.0..=1.0);
        if lost < model.drop {
            continue;
        }
        let arrival = p.timestamp + (model.latency + j * model.jitter).max(0.0);
        flight.push((arrival, order));
    }
    flight.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut newest: HashMap<u32, u32> = HashMap::new();
    let mut out = Vec::with_capacity(flight.len());
    for (arrival, order) in flight {
        let p = &packets[order];
        if newest.get(&p.object_id).is_some_and(|&s| p.seq < s) {
            continue;
        }
        newest.insert(p.object_id, p.seq);
        out.push(Delivery { update: p.clone(), send: p.timestamp, arrival });
    }
    Ok(out)
}

/// One `object,seq,send,arrival` line per delivery.
pub fn delivery_log(deliveries: &[Delivery]) -> String {
    let mut s = String::from("object,seq,send,arrival\n");
    for d in deliveries {
        writeln!(s, "{},{},{:?},{:?}", d.update.object_id, d.update.seq, d.send, d.arrival).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netsync::{server_stream, Encoding, StreamConfig, Trajectory};

    fn packets(n_secs: f64) -> Vec<TransformUpdate> {
        let t = Trajectory::Orbit { radius: 1.0, angular_speed: 1.0, center: [0.0; 3], bob_amplitude: 0.0, bob_speed: 0.0 };
        server_stream(&t, 0, &StreamConfig::new(10.0, Encoding::Motor8), n_secs).unwrap()
    }

    #[test]
    fn ideal_network_is_identity() {
        let p = packets(1.0);
        let d = simulate_network(&p, &NetworkModel::ideal()).unwrap();
        assert_eq!(d.len(), p.len());
        assert!(d.iter().zip(&p).all(|(d, p)| d.update == *p && d.arrival == d.send));
    }

    #[test]
    fn total_loss() {
        let m = NetworkModel { drop: 1.0, ..NetworkModel::ideal() };
        assert!(simulate_network(&packets(1.0), &m).unwrap().is_empty());
    }

    #[test]
    fn order_is_preserved_per_object() {
        let m = NetworkModel { latency: 0.05, jitter: 0.2, drop: 0.1, seed: 3 };
        let d = simulate_network(&packets(5.0), &m).unwrap();
        assert!(d.windows(2).all(|w| w[0].update.seq < w[1].update.seq && w[0].arrival <= w[1].arrival));
        assert!(d.iter().all(|d| d.arrival >= d.send));
    }

    #[test]
    fn golden_delivery_log() {
        let m = NetworkModel { latency: 0.03, jitter: 0.01, drop: 0.25, seed: 7 };
        let log = delivery_log(&simulate_network(&packets(0.5), &m).unwrap());
        let again = delivery_log(&simulate_network(&packets(0.5), &m).unwrap());
        assert_eq!(log, again);
        assert_eq!(log, GOLDEN);
    }

    const GOLDEN: &str = "object,seq,send,arrival
0,1,0.1,0.1345348259342653
0,2,0.2,0.22718728737817587
0,4,0.4,0.43979944927847614
";
}

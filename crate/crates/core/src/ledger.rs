//! Bookkeeping of zeropoint resources: how many vacuum mode sets a network
//! consumes and what that implies for its discriminating power.
//!
//! A source of two photons entangled in `n` degrees of freedom amplifies
//! `2^{n+1}` zeropoint mode sets (two exit beams per photon and degree of
//! freedom, times two polarization components per beam in the cases built
//! here).  Every analyzer adds idle vacuum at its open ports.  The number
//! of Bell classes a lossless linear analyzer can separate is bounded by
//! half the amplified sets, `2^n`, and the analyzers in this crate meet
//! that bound exactly while the no-ancilla baseline shows the collapse to
//! two classes at `n = 1`.

use crate::network::{Network, Side};
use crate::zpf::ModeOrigin;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors raised while auditing a network.
#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("channel {0} is not collected by any detector")]
    UncollectedChannel(String),
    #[error("idle port {0} feeds detectors on both sides")]
    StraddlingIdle(String),
    #[error("idle mode {0} drives no detector channel")]
    DisconnectedIdle(String),
}

/// Zeropoint audit of one network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZpfLedger {
    /// Degrees of freedom the source entangles.
    pub n_dof: usize,
    /// Vacuum mode sets amplified by the source crystals.
    pub source_sets: usize,
    /// Idle ports opened by analyzers, in total.
    pub idle_channels: usize,
    /// Idle ports feeding photon-1 detectors.
    pub idle_sets_left: usize,
    /// Idle ports feeding photon-2 detectors.
    pub idle_sets_right: usize,
    /// Upper bound on separable Bell classes: half the amplified sets.
    pub max_distinguishable_classes: usize,
}

impl ZpfLedger {
    /// True when the audited source consumption matches the counting rule
    /// for its number of degrees of freedom.
    pub fn satisfies_counting_bound(&self) -> bool {
        let record = zpf_counting(self.n_dof as u32);
        self.source_sets as u64 == record.required_source_sets
            && self.max_distinguishable_classes as u64 == record.max_classes
    }
}

/// Counts the zeropoint resources of a finished network.
///
/// The side an idle port serves is derived from the map itself: the
/// detectors whose channels its modes drive.
pub fn audit(network: &Network, n_dof: usize) -> Result<ZpfLedger, LedgerError> {
    let map = network.map();
    let mut channel_side: Vec<Option<Side>> = vec![None; map.outputs().len()];
    for det in network.detectors() {
        for &ch in &det.channels {
            channel_side[ch] = Some(det.side);
        }
    }
    for (ch, side) in channel_side.iter().enumerate() {
        if side.is_none() {
            return Err(LedgerError::UncollectedChannel(
                map.outputs()[ch].to_string(),
            ));
        }
    }
    let mut port_sides: BTreeMap<String, Side> = BTreeMap::new();
    for (k, mode) in map.inputs().modes().iter().enumerate() {
        if mode.origin != ModeOrigin::Idle {
            continue;
        }
        let mut fed = None;
        for (m, side) in channel_side.iter().enumerate() {
            if map.a()[(m, k)].norm() > 1e-12 {
                let side = side.expect("every channel has a side");
                match fed {
                    None => fed = Some(side),
                    Some(s) if s != side => {
                        return Err(LedgerError::StraddlingIdle(mode.port.clone()))
                    }
                    _ => {}
                }
            }
        }
        let side = fed.ok_or_else(|| LedgerError::DisconnectedIdle(mode.to_string()))?;
        match port_sides.get(&mode.port) {
            Some(&s) if s != side => return Err(LedgerError::StraddlingIdle(mode.port.clone())),
            _ => {
                port_sides.insert(mode.port.clone(), side);
            }
        }
    }
    let source_sets = map.inputs().count_origin(ModeOrigin::Source);
    let idle_sets_left = port_sides.values().filter(|&&s| s == Side::Left).count();
    let idle_sets_right = port_sides.values().filter(|&&s| s == Side::Right).count();
    Ok(ZpfLedger {
        n_dof,
        source_sets,
        idle_channels: idle_sets_left + idle_sets_right,
        idle_sets_left,
        idle_sets_right,
        max_distinguishable_classes: source_sets / 2,
    })
}

/// Channel-count check: a lossless linear network exposes exactly as many
/// output channels as it has zeropoint input sets, since the map between
/// them is square and unitary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaTwoReport {
    pub input_sets: usize,
    pub output_channels: usize,
    pub holds: bool,
}

pub fn verify_lemma_two(network: &Network) -> LemmaTwoReport {
    let inputs = network.map().inputs().len();
    let outputs = network.map().outputs().len();
    LemmaTwoReport {
        input_sets: inputs,
        output_channels: outputs,
        holds: inputs == outputs,
    }
}

/// The counting rule for a source entangling `n` degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountingRecord {
    pub n_dof: u32,
    /// Zeropoint sets the source must amplify: `2^{n+1}`.
    pub required_source_sets: u64,
    /// Bell classes a linear analyzer can separate at most: `2^n`.
    pub max_classes: u64,
}

pub fn zpf_counting(n_dof: u32) -> CountingRecord {
    CountingRecord {
        n_dof,
        required_source_sets: 1u64 << (n_dof + 1),
        max_classes: 1u64 << n_dof,
    }
}

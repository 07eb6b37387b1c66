//! Zeropoint-field modes, the vacuum covariance model and a deterministic
//! vacuum sampler.
//!
//! Every amplitude in the simulator is a linear functional of the zeropoint
//! (vacuum) inputs of the optical system: the modes entering the nonlinear
//! crystals plus two more for every idle port opened by an analyzer.  This
//! module owns the identifiers for those modes, the fixed Gaussian statistics
//! of the vacuum, and a counter-based sampler whose output depends only on
//! `(seed, sample_index, mode_index)` so that Monte Carlo runs can be
//! sharded or replayed without any hidden stream state.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Mean square modulus of a single vacuum amplitude, `⟨α α*⟩ = 1/2`.
///
/// The non-conjugate moment `⟨α α⟩` vanishes; real and imaginary parts are
/// independent Gaussians of variance 1/4 each.
pub const VACUUM_MEAN_SQUARE: f64 = 0.5;

/// Polarization component of a mode or channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pol {
    H,
    V,
}

impl Pol {
    /// Both components in canonical order.
    pub const BOTH: [Pol; 2] = [Pol::H, Pol::V];
}

impl fmt::Display for Pol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pol::H => write!(f, "H"),
            Pol::V => write!(f, "V"),
        }
    }
}

/// Where a vacuum mode enters the network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModeOrigin {
    /// One of the mode sets amplified by the source crystals.
    Source,
    /// Vacuum entering through the unused port of an analyzer.
    Idle,
}

/// Identifier of a single zeropoint input mode: a port label, a polarization
/// and the origin of the mode.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModeId {
    pub port: String,
    pub pol: Pol,
    pub origin: ModeOrigin,
}

impl ModeId {
    pub fn source(port: &str, pol: Pol) -> Self {
        ModeId {
            port: port.to_string(),
            pol,
            origin: ModeOrigin::Source,
        }
    }

    pub fn idle(port: &str, pol: Pol) -> Self {
        ModeId {
            port: port.to_string(),
            pol,
            origin: ModeOrigin::Idle,
        }
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.port, self.pol)
    }
}

/// Errors raised by mode bookkeeping.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZpfError {
    #[error("mode {0} is not a member of the basis")]
    UnknownMode(String),
    #[error("mode {0} appears twice in the basis")]
    DuplicateMode(String),
}

/// Ordered list of the vacuum modes feeding a network.
///
/// The order is significant: sampler output, field-map columns and ledger
/// reports are all indexed against it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeBasis {
    modes: Vec<ModeId>,
}

impl ModeBasis {
    pub fn new(modes: Vec<ModeId>) -> Result<Self, ZpfError> {
        for (k, m) in modes.iter().enumerate() {
            if modes[..k].contains(m) {
                return Err(ZpfError::DuplicateMode(m.to_string()));
            }
        }
        Ok(ModeBasis { modes })
    }

    /// Builds a basis of H and V source modes for each listed port.
    pub fn source_ports(ports: &[&str]) -> Self {
        let modes = ports
            .iter()
            .flat_map(|p| Pol::BOTH.iter().map(|&pol| ModeId::source(p, pol)))
            .collect();
        ModeBasis { modes }
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[ModeId] {
        &self.modes
    }

    pub fn index_of(&self, mode: &ModeId) -> Result<usize, ZpfError> {
        self.modes
            .iter()
            .position(|m| m == mode)
            .ok_or_else(|| ZpfError::UnknownMode(mode.to_string()))
    }

    /// Appends a mode, returning its index.
    pub fn push(&mut self, mode: ModeId) -> Result<usize, ZpfError> {
        if self.modes.contains(&mode) {
            return Err(ZpfError::DuplicateMode(mode.to_string()));
        }
        self.modes.push(mode);
        Ok(self.modes.len() - 1)
    }

    pub fn count_origin(&self, origin: ModeOrigin) -> usize {
        self.modes.iter().filter(|m| m.origin == origin).count()
    }
}

/// The fixed second-moment structure of the vacuum.
///
/// All modes are independent circular complex Gaussians, so the only nonzero
/// second moment is `⟨α_i α_i*⟩ = 1/2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CovarianceModel;

impl CovarianceModel {
    /// Returns `⟨α_i α_j*⟩` when `conjugate_second` is true, `⟨α_i α_j⟩`
    /// otherwise.  Both modes must belong to `basis`.
    pub fn second_moment(
        basis: &ModeBasis,
        i: &ModeId,
        j: &ModeId,
        conjugate_second: bool,
    ) -> Result<Complex64, ZpfError> {
        basis.index_of(i)?;
        basis.index_of(j)?;
        if conjugate_second && i == j {
            Ok(Complex64::new(VACUUM_MEAN_SQUARE, 0.0))
        } else {
            Ok(Complex64::new(0.0, 0.0))
        }
    }
}

/// One draw of vacuum amplitudes, aligned with a [`ModeBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct ZpfSample {
    pub amplitudes: Vec<Complex64>,
}

/// Draws the vacuum amplitudes for one Monte Carlo sample.
///
/// The draw for mode `m` of sample `s` is a pure function of
/// `(seed, s, m)`, so partial runs over disjoint sample ranges reproduce
/// exactly the draws of a single long run.
pub fn sample_zpf(basis: &ModeBasis, seed: u64, sample_index: u64) -> ZpfSample {
    let amplitudes = (0..basis.len() as u64)
        .map(|mode| vacuum_amplitude(seed, sample_index, mode))
        .collect();
    ZpfSample { amplitudes }
}

/// Fills `out` with the amplitudes of one sample, avoiding reallocation in
/// hot loops.  `out.len()` must equal the basis length.
pub fn fill_zpf(out: &mut [Complex64], seed: u64, sample_index: u64) {
    for (mode, slot) in out.iter_mut().enumerate() {
        *slot = vacuum_amplitude(seed, sample_index, mode as u64);
    }
}

/// 64-bit finalizer used to key the counter-based stream.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn draw_u64(seed: u64, sample: u64, mode: u64, lane: u64) -> u64 {
    mix64(mix64(mix64(mix64(seed) ^ sample) ^ mode) ^ lane)
}

/// Maps a word to the open-closed interval (0, 1]; never returns 0 so the
/// logarithm below stays finite.
fn unit_pos(h: u64) -> f64 {
    ((h >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn unit(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Circular complex Gaussian with `⟨|α|²⟩ = 1/2` via Box-Muller.
fn vacuum_amplitude(seed: u64, sample: u64, mode: u64) -> Complex64 {
    let u1 = unit_pos(draw_u64(seed, sample, mode, 0));
    let u2 = unit(draw_u64(seed, sample, mode, 1));
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    // Standard normal pair scaled by 1/2: each quadrature has variance 1/4.
    0.5 * Complex64::new(r * theta.cos(), r * theta.sin())
}

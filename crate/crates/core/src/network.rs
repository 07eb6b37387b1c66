//! Linear-optics networks as explicit maps from zeropoint inputs to output
//! channels.
//!
//! A [`FieldMap`] carries the amplitude of every output channel as a linear
//! functional `d = A z + B z*` of the vacuum amplitudes `z` entering the
//! system.  Passive devices (wave plates, beam splitters, polarizing beam
//! splitters, phase shifters) act by left-multiplication with a unitary
//! block; the parametric source is the one stage with a nonzero conjugating
//! part `B`.  [`NetworkBuilder`] threads a map through a sequence of devices,
//! opens idle ports where analyzers admit extra vacuum, and records which
//! output channels each detector collects.

use crate::zpf::{ModeBasis, ModeId, Pol, ZpfError};
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// A labeled optical channel: one polarization component of one port.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Channel {
    pub port: String,
    pub axis: Pol,
}

impl Channel {
    pub fn new(port: &str, axis: Pol) -> Self {
        Channel {
            port: port.to_string(),
            axis,
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.port, self.axis)
    }
}

/// Errors raised while assembling or transforming a network.
#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("channel {0} is not an output of the map")]
    UnknownChannel(String),
    #[error("channel {0} would appear twice among the outputs")]
    DuplicateChannel(String),
    #[error("detector {0} declared twice")]
    DuplicateDetector(String),
    #[error("detector {0} is not part of the network")]
    UnknownDetector(String),
    #[error("matrix of shape {rows}x{cols} does not fit {expected} channels")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error(transparent)]
    Zpf(#[from] ZpfError),
}

/// Linear functional `d = A z + B z*` from vacuum inputs to output channels.
///
/// `A` and `B` have one row per output channel and one column per input
/// mode.  Passive stages keep `B = 0`; the parametric source contributes the
/// conjugating part.
#[derive(Debug, Clone)]
pub struct FieldMap {
    inputs: ModeBasis,
    outputs: Vec<Channel>,
    a: Array2<Complex64>,
    b: Array2<Complex64>,
}

impl FieldMap {
    /// Builds a map from explicit matrices.  Row count must match the number
    /// of output channels, column count the number of input modes.
    pub fn new(
        inputs: ModeBasis,
        outputs: Vec<Channel>,
        a: Array2<Complex64>,
        b: Array2<Complex64>,
    ) -> Result<Self, NetworkError> {
        for (k, c) in outputs.iter().enumerate() {
            if outputs[..k].contains(c) {
                return Err(NetworkError::DuplicateChannel(c.to_string()));
            }
        }
        for m in [&a, &b] {
            if m.nrows() != outputs.len() || m.ncols() != inputs.len() {
                return Err(NetworkError::ShapeMismatch {
                    rows: m.nrows(),
                    cols: m.ncols(),
                    expected: outputs.len(),
                });
            }
        }
        Ok(FieldMap {
            inputs,
            outputs,
            a,
            b,
        })
    }

    /// Identity map: each input mode feeds the channel with the same port
    /// and polarization.
    pub fn identity(inputs: ModeBasis) -> Self {
        let outputs = inputs
            .modes()
            .iter()
            .map(|m| Channel::new(&m.port, m.pol))
            .collect::<Vec<_>>();
        let n = inputs.len();
        FieldMap {
            inputs,
            outputs,
            a: Array2::eye(n),
            b: Array2::zeros((n, n)),
        }
    }

    pub fn inputs(&self) -> &ModeBasis {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Channel] {
        &self.outputs
    }

    pub fn a(&self) -> &Array2<Complex64> {
        &self.a
    }

    pub fn b(&self) -> &Array2<Complex64> {
        &self.b
    }

    pub fn output_index(&self, channel: &Channel) -> Result<usize, NetworkError> {
        self.outputs
            .iter()
            .position(|c| c == channel)
            .ok_or_else(|| NetworkError::UnknownChannel(channel.to_string()))
    }

    /// Output amplitudes for one draw of vacuum inputs.
    pub fn evaluate(&self, z: &Array1<Complex64>) -> Array1<Complex64> {
        self.a.dot(z) + self.b.dot(&z.mapv(|v| v.conj()))
    }

    /// Splits the output into its direct part `A z` and conjugating part
    /// `B z*`.  Their sum is [`FieldMap::evaluate`]; the direct part alone is
    /// the field the same vacuum draw would produce with the source off.
    pub fn evaluate_parts(&self, z: &Array1<Complex64>) -> (Array1<Complex64>, Array1<Complex64>) {
        (self.a.dot(z), self.b.dot(&z.mapv(|v| v.conj())))
    }

    /// Applies a further stage `d' = A₂ d + B₂ d*` on top of this map and
    /// relabels the outputs.  The stage matrices must be square over the
    /// current channel count.
    pub fn transformed(
        &self,
        a2: &Array2<Complex64>,
        b2: &Array2<Complex64>,
        outputs: Vec<Channel>,
    ) -> Result<Self, NetworkError> {
        let n = self.outputs.len();
        for m in [a2, b2] {
            if m.nrows() != n || m.ncols() != n {
                return Err(NetworkError::ShapeMismatch {
                    rows: m.nrows(),
                    cols: m.ncols(),
                    expected: n,
                });
            }
        }
        let a_conj = self.a.mapv(|v| v.conj());
        let b_conj = self.b.mapv(|v| v.conj());
        let a = a2.dot(&self.a) + b2.dot(&b_conj);
        let b = a2.dot(&self.b) + b2.dot(&a_conj);
        FieldMap::new(self.inputs.clone(), outputs, a, b)
    }

    /// Grows the map with a fresh idle port: two new vacuum modes that feed
    /// two new output channels directly.
    pub fn extended_with_idle(&self, port: &str) -> Result<Self, NetworkError> {
        let mut inputs = self.inputs.clone();
        let mut outputs = self.outputs.clone();
        let (rows, cols) = (self.a.nrows(), self.a.ncols());
        let mut a = Array2::zeros((rows + 2, cols + 2));
        let mut b = Array2::zeros((rows + 2, cols + 2));
        a.slice_mut(ndarray::s![..rows, ..cols]).assign(&self.a);
        b.slice_mut(ndarray::s![..rows, ..cols]).assign(&self.b);
        for (k, pol) in Pol::BOTH.iter().enumerate() {
            inputs.push(ModeId::idle(port, *pol))?;
            if outputs.contains(&Channel::new(port, *pol)) {
                return Err(NetworkError::DuplicateChannel(format!("{port}:{pol}")));
            }
            outputs.push(Channel::new(port, *pol));
            a[(rows + k, cols + k)] = Complex64::new(1.0, 0.0);
        }
        FieldMap::new(inputs, outputs, a, b)
    }

    /// Matrix of non-conjugate pair moments `⟨d_m d_n⟩ = ½(ABᵀ + BAᵀ)`.
    ///
    /// These carry all the two-channel correlations the source imprints;
    /// they vanish identically with the pump off.
    pub fn pair_moments(&self) -> Array2<Complex64> {
        let k = self.a.dot(&self.b.t()) + self.b.dot(&self.a.t());
        k.mapv(|v| 0.5 * v)
    }

    /// Matrix of conjugate pair moments `⟨d_m d_n*⟩ = ½(AA† + BB†)`.
    ///
    /// The diagonal is the mean intensity per channel, vacuum included.
    pub fn hermitian_moments(&self) -> Array2<Complex64> {
        let ah = self.a.t().mapv(|v| v.conj());
        let bh = self.b.t().mapv(|v| v.conj());
        let g = self.a.dot(&ah) + self.b.dot(&bh);
        g.mapv(|v| 0.5 * v)
    }

    /// Largest deviation of the direct part from unitarity,
    /// `max |（A A† − I)_jk|`.  For a passive lossless network fed by the
    /// identity this must vanish to numerical precision.
    pub fn unitarity_deviation(&self) -> f64 {
        let ah = self.a.t().mapv(|v| v.conj());
        let gram = self.a.dot(&ah);
        let mut worst = 0.0f64;
        for j in 0..gram.nrows() {
            for k in 0..gram.ncols() {
                let expect = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((gram[(j, k)] - expect).norm());
            }
        }
        worst
    }

    /// Largest conjugating-part entry; zero for any passive network.
    pub fn passivity_deviation(&self) -> f64 {
        self.b.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Physically swaps two output ports: the field headed for `p` exits at
    /// `q` and vice versa, for both polarizations.
    pub fn swap_output_ports(&mut self, p: &str, q: &str) -> Result<(), NetworkError> {
        for pol in Pol::BOTH {
            let i = self.output_index(&Channel::new(p, pol))?;
            let j = self.output_index(&Channel::new(q, pol))?;
            for col in 0..self.a.ncols() {
                self.a.swap((i, col), (j, col));
                self.b.swap((i, col), (j, col));
            }
        }
        Ok(())
    }
}

/// A passive optical element acting on one or two ports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Device {
    /// Polarizing beam splitter across two ports: H is reflected back out of
    /// the same side with amplitude `i`, V is transmitted to the other side.
    Pbs {
        in_p: String,
        in_q: String,
        out_p: String,
        out_q: String,
    },
    /// Polarizing beam splitter used in place, outputs keeping the input
    /// port names.  Routes V across the two beams while H stays, which makes
    /// the beam pair flip conditionally on polarization.
    CnotPbs { port_p: String, port_q: String },
    /// Half-wave plate at `angle` radians to the H axis: the Jones matrix
    /// `[[cos2θ, sin2θ], [sin2θ, −cos2θ]]`.  At π/4 it swaps H and V; at π/8
    /// it maps them onto the ±45° diagonal basis.
    HalfWavePlate { port: String, angle: f64 },
    /// Polarization-preserving 50/50 beam splitter:
    /// `out_a = (i·in_a + in_b)/√2`, `out_b = (in_a + i·in_b)/√2`.
    Bs50 {
        in_a: String,
        in_b: String,
        out_a: String,
        out_b: String,
    },
    /// Rotation of the polarization plane by `angle`:
    /// `H' = cos·H − sin·V`, `V' = sin·H + cos·V`.
    PolRotator { port: String, angle: f64 },
    /// Retarder adding phase `e^{iφ}` to the V component only.
    WaveRetarder { port: String, phase: f64 },
    /// Phase `e^{iφ}` on both components of a port.
    PhaseShift { port: String, phase: f64 },
}

/// The unitary block of one device: input channels, output channels and the
/// square matrix connecting them.  Output `j` takes the list position of
/// input `j` when the block is embedded into a larger map.
#[derive(Debug, Clone)]
pub struct DeviceBlock {
    pub inputs: Vec<Channel>,
    pub outputs: Vec<Channel>,
    pub a: Array2<Complex64>,
}

impl DeviceBlock {
    /// Largest deviation of the block from unitarity.
    pub fn unitarity_deviation(&self) -> f64 {
        let ah = self.a.t().mapv(|v| v.conj());
        let gram = self.a.dot(&ah);
        let mut worst = 0.0f64;
        for j in 0..gram.nrows() {
            for k in 0..gram.ncols() {
                let expect = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((gram[(j, k)] - expect).norm());
            }
        }
        worst
    }
}

fn port_channels(port: &str) -> Vec<Channel> {
    Pol::BOTH
        .iter()
        .map(|&pol| Channel::new(port, pol))
        .collect()
}

fn two_port_channels(p: &str, q: &str) -> Vec<Channel> {
    let mut v = port_channels(p);
    v.extend(port_channels(q));
    v
}

fn pbs_matrix() -> Array2<Complex64> {
    // Channel order (p:H, p:V, q:H, q:V); H reflects in place with a factor
    // i, V crosses to the opposite port.
    let i = Complex64::new(0.0, 1.0);
    let o = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    ndarray::arr2(&[[i, z, z, z], [z, z, z, o], [z, z, i, z], [z, o, z, z]])
}

/// Constructs the unitary block of a device.
pub fn device_map(device: &Device) -> DeviceBlock {
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::new(0.0, 0.0);
    match device {
        Device::Pbs {
            in_p,
            in_q,
            out_p,
            out_q,
        } => DeviceBlock {
            inputs: two_port_channels(in_p, in_q),
            outputs: two_port_channels(out_p, out_q),
            a: pbs_matrix(),
        },
        Device::CnotPbs { port_p, port_q } => DeviceBlock {
            inputs: two_port_channels(port_p, port_q),
            outputs: two_port_channels(port_p, port_q),
            a: pbs_matrix(),
        },
        Device::HalfWavePlate { port, angle } => {
            let (s, c) = (2.0 * angle).sin_cos();
            DeviceBlock {
                inputs: port_channels(port),
                outputs: port_channels(port),
                a: ndarray::arr2(&[
                    [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(-c, 0.0)],
                ]),
            }
        }
        Device::Bs50 {
            in_a,
            in_b,
            out_a,
            out_b,
        } => {
            let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            let ir = i * r;
            DeviceBlock {
                inputs: two_port_channels(in_a, in_b),
                outputs: two_port_channels(out_a, out_b),
                a: ndarray::arr2(&[[ir, z, r, z], [z, ir, z, r], [r, z, ir, z], [z, r, z, ir]]),
            }
        }
        Device::PolRotator { port, angle } => {
            let (s, c) = angle.sin_cos();
            DeviceBlock {
                inputs: port_channels(port),
                outputs: port_channels(port),
                a: ndarray::arr2(&[
                    [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
                ]),
            }
        }
        Device::WaveRetarder { port, phase } => DeviceBlock {
            inputs: port_channels(port),
            outputs: port_channels(port),
            a: ndarray::arr2(&[
                [Complex64::new(1.0, 0.0), z],
                [z, Complex64::from_polar(1.0, *phase)],
            ]),
        },
        Device::PhaseShift { port, phase } => {
            let ph = Complex64::from_polar(1.0, *phase);
            DeviceBlock {
                inputs: port_channels(port),
                outputs: port_channels(port),
                a: ndarray::arr2(&[[ph, z], [z, ph]]),
            }
        }
    }
}

/// Applies a device to a map: channels the device touches are transformed
/// and relabeled, all others pass through unchanged.
pub fn apply_device(map: &FieldMap, device: &Device) -> Result<FieldMap, NetworkError> {
    let block = device_map(device);
    let n = map.outputs().len();
    let positions = block
        .inputs
        .iter()
        .map(|c| map.output_index(c))
        .collect::<Result<Vec<_>, _>>()?;
    // Start from the identity and overwrite the block's rows and columns.
    // Row j of the block sits at positions[j], which is also one of the
    // block columns, so the seeded diagonal 1 is always replaced.
    let mut a2 = Array2::eye(n);
    for (j, &row) in positions.iter().enumerate() {
        for (k, &col) in positions.iter().enumerate() {
            a2[(row, col)] = block.a[(j, k)];
        }
    }
    let mut outputs = map.outputs().to_vec();
    for (j, &row) in positions.iter().enumerate() {
        outputs[row] = block.outputs[j].clone();
    }
    let b2 = Array2::zeros((n, n));
    map.transformed(&a2, &b2, outputs)
}

/// Which photon of the pair a detector watches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// A detector: collects the total intensity of both polarization channels
/// of one output port.
#[derive(Debug, Clone)]
pub struct Detector {
    pub name: String,
    pub side: Side,
    pub port: String,
    /// Indices of the collected channels among the map outputs.
    pub channels: Vec<usize>,
}

/// Builder threading a field map through devices, idle ports and analyzers.
#[derive(Debug)]
pub struct NetworkBuilder {
    map: FieldMap,
    declared: Vec<(String, Side, String)>,
    injections: Vec<String>,
}

impl NetworkBuilder {
    /// Starts from an existing map, typically the source output.
    pub fn new(map: FieldMap) -> Self {
        NetworkBuilder {
            map,
            declared: Vec::new(),
            injections: Vec::new(),
        }
    }

    pub fn apply(mut self, device: &Device) -> Result<Self, NetworkError> {
        self.map = apply_device(&self.map, device)?;
        Ok(self)
    }

    /// Opens an idle port: fresh vacuum modes that later devices may mix in.
    pub fn inject_idle(mut self, port: &str) -> Result<Self, NetworkError> {
        self.map = self.map.extended_with_idle(port)?;
        self.injections.push(port.to_string());
        Ok(self)
    }

    /// Declares that the detector `name` collects everything arriving at
    /// `port`.
    pub fn declare_detector(
        mut self,
        name: &str,
        side: Side,
        port: &str,
    ) -> Result<Self, NetworkError> {
        if self.declared.iter().any(|(n, _, _)| n == name) {
            return Err(NetworkError::DuplicateDetector(name.to_string()));
        }
        self.declared
            .push((name.to_string(), side, port.to_string()));
        Ok(self)
    }

    /// Analyzer for the ±45° diagonal basis: a half-wave plate at π/8
    /// rotates the diagonal components onto H/V, then a polarizing beam
    /// splitter with an idle port separates them onto two detectors.
    pub fn apply_diag_analyzer(
        self,
        port: &str,
        side: Side,
        plus: &str,
        minus: &str,
    ) -> Result<Self, NetworkError> {
        let idle = format!("{port}.idle");
        self.apply(&Device::HalfWavePlate {
            port: port.to_string(),
            angle: std::f64::consts::FRAC_PI_8,
        })?
        .inject_idle(&idle)?
        .apply(&Device::Pbs {
            in_p: port.to_string(),
            in_q: idle,
            out_p: plus.to_string(),
            out_q: minus.to_string(),
        })?
        .declare_detector(plus, side, plus)?
        .declare_detector(minus, side, minus)
    }

    /// Analyzer for the H/V basis: a polarizing beam splitter with an idle
    /// port sends H (reflected) to one detector and V (transmitted) to the
    /// other.
    pub fn apply_hv_analyzer(
        self,
        port: &str,
        side: Side,
        h_name: &str,
        v_name: &str,
    ) -> Result<Self, NetworkError> {
        let idle = format!("{port}.idle");
        self.inject_idle(&idle)?
            .apply(&Device::Pbs {
                in_p: port.to_string(),
                in_q: idle,
                out_p: h_name.to_string(),
                out_q: v_name.to_string(),
            })?
            .declare_detector(h_name, side, h_name)?
            .declare_detector(v_name, side, v_name)
    }

    /// Freezes the network, resolving detector channels by port name.
    pub fn finish(self) -> Result<Network, NetworkError> {
        let mut detectors = Vec::new();
        for (name, side, port) in self.declared {
            let channels: Vec<usize> = self
                .map
                .outputs()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.port == port)
                .map(|(k, _)| k)
                .collect();
            if channels.is_empty() {
                return Err(NetworkError::UnknownDetector(name));
            }
            detectors.push(Detector {
                name,
                side,
                port,
                channels,
            });
        }
        Ok(Network {
            map: self.map,
            detectors,
            injections: self.injections,
        })
    }
}

/// A finished network: source-to-detector field map plus the detector list.
#[derive(Debug, Clone)]
pub struct Network {
    map: FieldMap,
    detectors: Vec<Detector>,
    injections: Vec<String>,
}

impl Network {
    pub fn map(&self) -> &FieldMap {
        &self.map
    }

    pub fn detectors(&self) -> &[Detector] {
        &self.detectors
    }

    pub fn detector(&self, name: &str) -> Result<&Detector, NetworkError> {
        self.detectors
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| NetworkError::UnknownDetector(name.to_string()))
    }

    pub fn idle_ports(&self) -> &[String] {
        &self.injections
    }

    pub fn detectors_on(&self, side: Side) -> Vec<&Detector> {
        self.detectors.iter().filter(|d| d.side == side).collect()
    }
}

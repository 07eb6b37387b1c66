//! The parametric source of polarization-momentum hyperentangled photon
//! pairs and the local devices that dial in any of its sixteen Bell-state
//! products.
//!
//! Two crystal passes amplify eight zeropoint mode sets pairwise: the first
//! couples beams `a1`/`b2`, the second couples `b1`/`a2`, each on both
//! polarization components.  To first order in the dimensionless coupling
//! `C` every output amplitude is the incoming vacuum amplitude plus `C`
//! times the conjugate of its partner mode, which makes the non-conjugate
//! cross correlations `⟨F F⟩ = C` while everything else stays vacuum.
//!
//! The polarization Bell state is selected by a wave-plate chain on the
//! photon-1 beams (a fixed half-wave plate, a rotator of angle β, a retarder
//! of phase κ); the momentum Bell state by per-beam phases φ₁, φ₂ and by
//! which exit port each photon-1 beam takes.

use crate::network::{apply_device, Device, FieldMap, NetworkError};
use crate::zpf::ModeBasis;
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Largest coupling magnitude for which the first-order treatment of the
/// crystals is trustworthy.
pub const MAX_COUPLING: f64 = 0.2;

/// Errors raised while configuring the source.
#[derive(Debug, Error)]
pub enum SourceError {
    #[error("coupling magnitude {0} outside the perturbative range [0, {MAX_COUPLING}]")]
    CouplingOutOfRange(f64),
    #[error("cannot parse Bell-state selector {0:?}")]
    BadSelector(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Dimensionless coupling of the parametric crystals, `C = mag·e^{i·phase}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingParams {
    mag: f64,
    phase: f64,
}

impl CouplingParams {
    pub fn new(mag: f64, phase: f64) -> Result<Self, SourceError> {
        if !(0.0..=MAX_COUPLING).contains(&mag) {
            return Err(SourceError::CouplingOutOfRange(mag));
        }
        Ok(CouplingParams { mag, phase })
    }

    pub fn mag(&self) -> f64 {
        self.mag
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.mag, self.phase)
    }
}

/// Polarization Bell states, written `Psi+`, `Psi-`, `Phi+`, `Phi-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PolarizationBell {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl PolarizationBell {
    pub const ALL: [PolarizationBell; 4] = [
        PolarizationBell::PsiPlus,
        PolarizationBell::PsiMinus,
        PolarizationBell::PhiPlus,
        PolarizationBell::PhiMinus,
    ];
}

impl fmt::Display for PolarizationBell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PolarizationBell::PsiPlus => "Psi+",
            PolarizationBell::PsiMinus => "Psi-",
            PolarizationBell::PhiPlus => "Phi+",
            PolarizationBell::PhiMinus => "Phi-",
        };
        write!(f, "{s}")
    }
}

impl FromStr for PolarizationBell {
    type Err = SourceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Psi+" => Ok(PolarizationBell::PsiPlus),
            "Psi-" => Ok(PolarizationBell::PsiMinus),
            "Phi+" => Ok(PolarizationBell::PhiPlus),
            "Phi-" => Ok(PolarizationBell::PhiMinus),
            _ => Err(SourceError::BadSelector(s.to_string())),
        }
    }
}

/// Momentum (beam-pair) Bell states, written `psi+`, `psi-`, `phi+`, `phi-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MomentumBell {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl MomentumBell {
    pub const ALL: [MomentumBell; 4] = [
        MomentumBell::PsiPlus,
        MomentumBell::PsiMinus,
        MomentumBell::PhiPlus,
        MomentumBell::PhiMinus,
    ];
}

impl fmt::Display for MomentumBell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MomentumBell::PsiPlus => "psi+",
            MomentumBell::PsiMinus => "psi-",
            MomentumBell::PhiPlus => "phi+",
            MomentumBell::PhiMinus => "phi-",
        };
        write!(f, "{s}")
    }
}

impl FromStr for MomentumBell {
    type Err = SourceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "psi+" => Ok(MomentumBell::PsiPlus),
            "psi-" => Ok(MomentumBell::PsiMinus),
            "phi+" => Ok(MomentumBell::PhiPlus),
            "phi-" => Ok(MomentumBell::PhiMinus),
            _ => Err(SourceError::BadSelector(s.to_string())),
        }
    }
}

/// Which exit port each photon-1 beam takes.
///
/// `Ab` sends the beam correlated with `b2` out of port `a1`; `Ba` swaps
/// the two exit ports, which flips the momentum correlations from the
/// `a1-b2`/`b1-a2` pairing to `b1-b2`/`a1-a2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathAssignment {
    Ab,
    Ba,
}

/// Full parameter set of the source: wave-plate angles for polarization,
/// phases and path assignment for momentum.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperBellParams {
    pub beta: f64,
    pub kappa: f64,
    pub paths: PathAssignment,
    pub phi1: f64,
    pub phi2: f64,
}

impl HyperBellParams {
    /// Device settings that prepare a given product of Bell states.
    pub fn from_labels(pol: PolarizationBell, mom: MomentumBell) -> Self {
        use std::f64::consts::{FRAC_PI_2, PI};
        let (beta, kappa) = match pol {
            PolarizationBell::PsiPlus => (0.0, 0.0),
            PolarizationBell::PsiMinus => (0.0, PI),
            PolarizationBell::PhiMinus => (-FRAC_PI_2, 0.0),
            PolarizationBell::PhiPlus => (-FRAC_PI_2, PI),
        };
        let (paths, phi1, phi2) = match mom {
            MomentumBell::PsiPlus => (PathAssignment::Ab, 0.0, 0.0),
            MomentumBell::PsiMinus => (PathAssignment::Ab, 0.0, PI),
            MomentumBell::PhiPlus => (PathAssignment::Ba, 0.0, 0.0),
            MomentumBell::PhiMinus => (PathAssignment::Ba, PI, 0.0),
        };
        HyperBellParams {
            beta,
            kappa,
            paths,
            phi1,
            phi2,
        }
    }

    /// Recovers the Bell-state labels if the parameters match one of the
    /// sixteen canonical settings.
    pub fn labels(&self) -> Option<(PolarizationBell, MomentumBell)> {
        let close = |x: f64, y: f64| (x - y).abs() < 1e-9;
        for pol in PolarizationBell::ALL {
            for mom in MomentumBell::ALL {
                let p = HyperBellParams::from_labels(pol, mom);
                if close(self.beta, p.beta)
                    && close(self.kappa, p.kappa)
                    && self.paths == p.paths
                    && close(self.phi1, p.phi1)
                    && close(self.phi2, p.phi2)
                {
                    return Some((pol, mom));
                }
            }
        }
        None
    }

    /// Parses a combined selector such as `"Phi+:psi-"` (polarization label,
    /// colon, momentum label).
    pub fn parse_selector(s: &str) -> Result<(PolarizationBell, MomentumBell), SourceError> {
        let (pol, mom) = s
            .split_once(':')
            .ok_or_else(|| SourceError::BadSelector(s.to_string()))?;
        Ok((pol.parse()?, mom.parse()?))
    }

    /// Inverse of [`HyperBellParams::parse_selector`].
    pub fn selector(pol: PolarizationBell, mom: MomentumBell) -> String {
        format!("{pol}:{mom}")
    }

    /// All sixteen Bell-state products in a fixed order.
    pub fn all_states() -> Vec<(PolarizationBell, MomentumBell)> {
        let mut v = Vec::with_capacity(16);
        for pol in PolarizationBell::ALL {
            for mom in MomentumBell::ALL {
                v.push((pol, mom));
            }
        }
        v
    }
}

/// The eight zeropoint mode sets feeding the source, in the fixed order
/// `a1:H, a1:V, b1:H, b1:V, a2:H, a2:V, b2:H, b2:V`.
pub fn source_basis() -> ModeBasis {
    ModeBasis::source_ports(&["a1", "b1", "a2", "b2"])
}

/// Writes the first-order amplification pattern of one crystal pass into
/// `b`: each of the two modes at (row `i`, partner `j`) picks up `C` times
/// the conjugate of the other, on both polarization components.
fn couple_pair(b: &mut Array2<Complex64>, c: Complex64, left: usize, right: usize) {
    for pol in 0..2 {
        b[(left + pol, right + pol)] = c;
        b[(right + pol, left + pol)] = c;
    }
}

/// Output of the two crystal passes before any local device: port `a1`
/// carries the beam correlated with `b2`, port `b1` the beam correlated
/// with `a2`, identically on H and V.
pub fn baseline_source(coupling: CouplingParams) -> FieldMap {
    let basis = source_basis();
    let n = basis.len();
    let a = Array2::eye(n);
    let mut b = Array2::zeros((n, n));
    // Mode offsets in the basis: a1 = 0, b1 = 2, a2 = 4, b2 = 6.
    couple_pair(&mut b, coupling.value(), 0, 6);
    couple_pair(&mut b, coupling.value(), 2, 4);
    let outputs = FieldMap::identity(basis.clone()).outputs().to_vec();
    FieldMap::new(basis, outputs, a, b).expect("source matrices match the basis")
}

/// A single-crystal source of one polarization-entangled pair across ports
/// `a` and `b`; the four-mode reduction used by the one-degree-of-freedom
/// demonstration network.
pub fn single_pair_source(coupling: CouplingParams) -> FieldMap {
    let basis = ModeBasis::source_ports(&["a", "b"]);
    let n = basis.len();
    let a = Array2::eye(n);
    let mut b = Array2::zeros((n, n));
    couple_pair(&mut b, coupling.value(), 0, 2);
    let outputs = FieldMap::identity(basis.clone()).outputs().to_vec();
    FieldMap::new(basis, outputs, a, b).expect("source matrices match the basis")
}

/// Polarization-preparation chain for one beam: the fixed half-wave plate
/// that exchanges the components, then the rotator and retarder whose
/// settings pick the Bell state.
pub fn pol_preparation(port: &str, beta: f64, kappa: f64) -> Vec<Device> {
    vec![
        Device::HalfWavePlate {
            port: port.to_string(),
            angle: std::f64::consts::FRAC_PI_4,
        },
        Device::PolRotator {
            port: port.to_string(),
            angle: beta,
        },
        Device::WaveRetarder {
            port: port.to_string(),
            phase: kappa,
        },
    ]
}

/// The local devices acting on the photon-1 beams for a given parameter
/// set, in the order the beams traverse them.  The exit-port swap of the
/// `Ba` path assignment is not a device and is applied separately.
pub fn local_devices(params: &HyperBellParams) -> Vec<Device> {
    let mut chain = Vec::new();
    for port in ["a1", "b1"] {
        chain.extend(pol_preparation(port, params.beta, params.kappa));
    }
    chain.push(Device::PhaseShift {
        port: "a1".to_string(),
        phase: params.phi1,
    });
    chain.push(Device::PhaseShift {
        port: "b1".to_string(),
        phase: params.phi2,
    });
    chain
}

/// Full source: crystals plus local devices, producing the hyperentangled
/// state selected by `params` on ports `a1`, `b1` (photon 1) and `a2`, `b2`
/// (photon 2).
pub fn hyperbell_source(
    coupling: CouplingParams,
    params: &HyperBellParams,
) -> Result<FieldMap, SourceError> {
    let mut map = baseline_source(coupling);
    for device in local_devices(params) {
        map = apply_device(&map, &device)?;
    }
    if params.paths == PathAssignment::Ba {
        map.swap_output_ports("a1", "b1")?;
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Channel;
    use crate::zpf::Pol;
    use approx::assert_abs_diff_eq;

    fn coupling() -> CouplingParams {
        CouplingParams::new(0.1, 0.0).unwrap()
    }

    #[test]
    fn coupling_outside_perturbative_range_is_rejected() {
        assert!(CouplingParams::new(0.21, 0.0).is_err());
        assert!(CouplingParams::new(-0.1, 0.0).is_err());
        assert!(CouplingParams::new(0.2, 1.0).is_ok());
    }

    #[test]
    fn baseline_source_correlates_exactly_four_mode_pairs() {
        let map = baseline_source(coupling());
        let k = map.pair_moments();
        let c = coupling().value();
        let idx = |port: &str, pol: Pol| map.output_index(&Channel::new(port, pol)).unwrap();
        let expected = [
            (idx("a1", Pol::H), idx("b2", Pol::H)),
            (idx("a1", Pol::V), idx("b2", Pol::V)),
            (idx("b1", Pol::H), idx("a2", Pol::H)),
            (idx("b1", Pol::V), idx("a2", Pol::V)),
        ];
        for m in 0..8 {
            for n in m..8 {
                let want = if expected.contains(&(m, n)) {
                    c
                } else {
                    Complex64::default()
                };
                assert_abs_diff_eq!((k[(m, n)] - want).norm(), 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn baseline_mean_intensity_carries_the_pair_gain() {
        let g = baseline_source(coupling()).hermitian_moments();
        let expect = 0.5 * (1.0 + coupling().mag().powi(2));
        for m in 0..8 {
            assert_abs_diff_eq!(g[(m, m)].re, expect, epsilon = 1e-15);
            for n in 0..8 {
                if n != m {
                    assert_abs_diff_eq!(g[(m, n)].norm(), 0.0, epsilon = 1e-15);
                }
            }
        }
    }

    #[test]
    fn psi_states_differ_by_the_sign_of_one_correlator() {
        let plus = HyperBellParams::from_labels(PolarizationBell::PsiPlus, MomentumBell::PsiPlus);
        let minus = HyperBellParams::from_labels(PolarizationBell::PsiMinus, MomentumBell::PsiPlus);
        let kp = hyperbell_source(coupling(), &plus).unwrap();
        let km = hyperbell_source(coupling(), &minus).unwrap();
        let c = coupling().value();
        let h1 = kp.output_index(&Channel::new("a1", Pol::H)).unwrap();
        let v1 = kp.output_index(&Channel::new("a1", Pol::V)).unwrap();
        let h2 = kp.output_index(&Channel::new("b2", Pol::H)).unwrap();
        let v2 = kp.output_index(&Channel::new("b2", Pol::V)).unwrap();
        let kp = kp.pair_moments();
        let km = km.pair_moments();
        // The H component of beam 1 correlates with the V component of its
        // partner and vice versa; the retarder flips the sign of the second
        // correlator only.
        assert_abs_diff_eq!((kp[(h1, v2)] - c).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((kp[(v1, h2)] - c).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((km[(h1, v2)] - c).norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!((km[(v1, h2)] + c).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn every_state_keeps_four_cross_correlators_of_coupling_strength() {
        for (pol, mom) in HyperBellParams::all_states() {
            let params = HyperBellParams::from_labels(pol, mom);
            let map = hyperbell_source(coupling(), &params).unwrap();
            let k = map.pair_moments();
            let mut nonzero = 0;
            for m in 0..8 {
                for n in m..8 {
                    let mag = k[(m, n)].norm();
                    // Photon 1 lives on the first four channels, photon 2 on
                    // the last four; no intra-photon correlations survive.
                    let cross = m < 4 && n >= 4;
                    if mag > 1e-14 {
                        assert!(
                            cross,
                            "intra-photon correlation at ({m},{n}) for {pol}:{mom}"
                        );
                        assert_abs_diff_eq!(mag, coupling().mag(), epsilon = 1e-12);
                        nonzero += 1;
                    }
                }
            }
            assert_eq!(nonzero, 4, "state {pol}:{mom}");
        }
    }

    #[test]
    fn source_direct_part_stays_unitary() {
        for (pol, mom) in HyperBellParams::all_states() {
            let params = HyperBellParams::from_labels(pol, mom);
            let map = hyperbell_source(coupling(), &params).unwrap();
            assert!(map.unitarity_deviation() < 1e-12);
        }
    }

    #[test]
    fn path_swap_moves_the_unprimed_beam_to_port_b1() {
        let params = HyperBellParams::from_labels(PolarizationBell::PsiPlus, MomentumBell::PhiPlus);
        let map = hyperbell_source(coupling(), &params).unwrap();
        let k = map.pair_moments();
        let b1h = map.output_index(&Channel::new("b1", Pol::H)).unwrap();
        let a1h = map.output_index(&Channel::new("a1", Pol::H)).unwrap();
        let b2v = map.output_index(&Channel::new("b2", Pol::V)).unwrap();
        let a2v = map.output_index(&Channel::new("a2", Pol::V)).unwrap();
        // With swapped exit ports the beam correlated with b2 leaves at b1.
        assert_abs_diff_eq!(
            (k[(b1h, b2v)] - coupling().value()).norm(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            (k[(a1h, a2v)] - coupling().value()).norm(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn labels_round_trip_through_parameters() {
        for (pol, mom) in HyperBellParams::all_states() {
            let params = HyperBellParams::from_labels(pol, mom);
            assert_eq!(params.labels(), Some((pol, mom)));
        }
        let odd = HyperBellParams {
            beta: 0.3,
            kappa: 0.0,
            paths: PathAssignment::Ab,
            phi1: 0.0,
            phi2: 0.0,
        };
        assert_eq!(odd.labels(), None);
    }

    #[test]
    fn selectors_round_trip_and_reject_garbage() {
        for (pol, mom) in HyperBellParams::all_states() {
            let s = HyperBellParams::selector(pol, mom);
            assert_eq!(HyperBellParams::parse_selector(&s).unwrap(), (pol, mom));
        }
        assert!(HyperBellParams::parse_selector("Phi+").is_err());
        assert!(HyperBellParams::parse_selector("phi+:Psi-").is_err());
        assert!(HyperBellParams::parse_selector("Phi*:psi+").is_err());
    }
}

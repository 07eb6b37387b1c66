//! The two Bell-state-measurement setups, their signature dictionaries, and
//! the classification of coincidence tables.
//!
//! Both analyzers exploit the hyperentanglement of the source: to measure
//! the Bell state of one degree of freedom, the other degree of freedom
//! must arrive in its `psi+`-type state, acting as the ancilla that powers
//! a complete, deterministic discrimination.  Each of the four target
//! states then fires exactly one quartet of detector pairs, and the
//! quartets are disjoint.
//!
//! The polarization analyzer routes the two photon-1 beams through a shared
//! polarizing beam splitter (a momentum-polarization CNOT) and measures all
//! four beams in the ±45° basis.  The momentum analyzer swaps H and V on
//! one beam of each photon (a polarization-momentum CNOT), interferes each
//! photon's beams on a 50/50 splitter and measures in the H/V basis.  A
//! reduced single-degree-of-freedom network with no ancilla is included as
//! a baseline: it separates only two classes, as the zeropoint-counting
//! bound demands.

use crate::detection::{analytic_joint, mc_joint, CoincidenceTable, DetectionError, DetectorGains};
use crate::network::{Device, Network, NetworkBuilder, NetworkError, Side};
use crate::oracle::oracle_table;
use crate::source::{
    hyperbell_source, pol_preparation, single_pair_source, CouplingParams, HyperBellParams,
    MomentumBell, PolarizationBell, SourceError,
};
use crate::zpf::ZpfError;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Errors raised while building or running an experiment.
#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(
        "setup {setup} needs the {dof} degree of freedom in {needed} as ancilla, got {got} \
         (pass the override to run anyway)"
    )]
    InadmissibleAncilla {
        setup: Setup,
        dof: &'static str,
        needed: String,
        got: String,
    },
    #[error("unknown setup {0:?}, expected pol-bsm or mom-bsm")]
    BadSetup(String),
    #[error("signature quartet refers to pair {0}-{1} missing from the table")]
    MissingPair(String, String),
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Detection(#[from] DetectionError),
    #[error(transparent)]
    Zpf(#[from] ZpfError),
}

/// Which degree of freedom the Bell-state measurement resolves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Setup {
    Polarization,
    Momentum,
}

impl Setup {
    pub const ALL: [Setup; 2] = [Setup::Polarization, Setup::Momentum];

    /// The ancilla state the analyzer is aligned for.
    pub fn admissible_ancilla_label(&self) -> &'static str {
        match self {
            Setup::Polarization => "psi+",
            Setup::Momentum => "Psi+",
        }
    }

    /// True when the non-measured degree of freedom is in the ancilla state
    /// the analyzer expects.
    pub fn ancilla_admissible(&self, pol: PolarizationBell, mom: MomentumBell) -> bool {
        match self {
            Setup::Polarization => mom == MomentumBell::PsiPlus,
            Setup::Momentum => pol == PolarizationBell::PsiPlus,
        }
    }

    /// Label of the state this setup is supposed to identify.
    pub fn measured_label(&self, pol: PolarizationBell, mom: MomentumBell) -> String {
        match self {
            Setup::Polarization => pol.to_string(),
            Setup::Momentum => mom.to_string(),
        }
    }
}

impl fmt::Display for Setup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Setup::Polarization => write!(f, "pol-bsm"),
            Setup::Momentum => write!(f, "mom-bsm"),
        }
    }
}

impl FromStr for Setup {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pol-bsm" => Ok(Setup::Polarization),
            "mom-bsm" => Ok(Setup::Momentum),
            _ => Err(ExperimentError::BadSetup(s.to_string())),
        }
    }
}

/// Builds the full network of one Bell-state measurement: source, local
/// state preparation, analyzer optics and detectors.
pub fn build_bsm(
    setup: Setup,
    coupling: CouplingParams,
    params: &HyperBellParams,
) -> Result<Network, ExperimentError> {
    let source = hyperbell_source(coupling, params)?;
    let builder = NetworkBuilder::new(source);
    let network = match setup {
        Setup::Polarization => builder
            .apply(&Device::CnotPbs {
                port_p: "a1".into(),
                port_q: "b1".into(),
            })?
            .apply(&Device::CnotPbs {
                port_p: "a2".into(),
                port_q: "b2".into(),
            })?
            .apply_diag_analyzer("a1", Side::Left, "A1+", "A1-")?
            .apply_diag_analyzer("b1", Side::Left, "B1+", "B1-")?
            .apply_diag_analyzer("a2", Side::Right, "A2+", "A2-")?
            .apply_diag_analyzer("b2", Side::Right, "B2+", "B2-")?
            .finish()?,
        Setup::Momentum => builder
            .apply(&Device::HalfWavePlate {
                port: "b1".into(),
                angle: std::f64::consts::FRAC_PI_4,
            })?
            .apply(&Device::HalfWavePlate {
                port: "b2".into(),
                angle: std::f64::consts::FRAC_PI_4,
            })?
            .apply(&Device::Bs50 {
                in_a: "a1".into(),
                in_b: "b1".into(),
                out_a: "A1".into(),
                out_b: "B1".into(),
            })?
            .apply(&Device::Bs50 {
                in_a: "a2".into(),
                in_b: "b2".into(),
                out_a: "A2".into(),
                out_b: "B2".into(),
            })?
            .apply_hv_analyzer("A1", Side::Left, "A1H", "A1V")?
            .apply_hv_analyzer("B1", Side::Left, "B1H", "B1V")?
            .apply_hv_analyzer("A2", Side::Right, "A2H", "A2V")?
            .apply_hv_analyzer("B2", Side::Right, "B2H", "B2V")?
            .finish()?,
    };
    Ok(network)
}

/// The single-degree-of-freedom baseline: one polarization-entangled pair,
/// state preparation on beam `a`, and a ±45° analyzer on each beam.  No
/// ancilla assists the measurement.
pub fn build_n1_demo(
    coupling: CouplingParams,
    pol: PolarizationBell,
) -> Result<Network, ExperimentError> {
    let params = HyperBellParams::from_labels(pol, MomentumBell::PsiPlus);
    let mut map = single_pair_source(coupling);
    for device in pol_preparation("a", params.beta, params.kappa) {
        map = crate::network::apply_device(&map, &device)?;
    }
    let network = NetworkBuilder::new(map)
        .apply_diag_analyzer("a", Side::Left, "a+", "a-")?
        .apply_diag_analyzer("b", Side::Right, "b+", "b-")?
        .finish()?;
    Ok(network)
}

/// The signature dictionary of an analyzer: for every identifiable class,
/// the detector pairs that fire for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureTable {
    pub name: String,
    pub quartets: BTreeMap<String, Vec<(String, String)>>,
}

fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
    list.iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

/// The known coincidence signatures of a Bell-state measurement, with the
/// ancilla degree of freedom in its admissible state.
pub fn signature_table(setup: Setup) -> SignatureTable {
    let quartets = match setup {
        Setup::Polarization => BTreeMap::from([
            (
                "Psi+".to_string(),
                pairs(&[
                    ("A1+", "A2+"),
                    ("B1+", "B2+"),
                    ("A1-", "A2-"),
                    ("B1-", "B2-"),
                ]),
            ),
            (
                "Psi-".to_string(),
                pairs(&[
                    ("A1+", "A2-"),
                    ("B1+", "B2-"),
                    ("A1-", "A2+"),
                    ("B1-", "B2+"),
                ]),
            ),
            (
                "Phi-".to_string(),
                pairs(&[
                    ("A1+", "B2+"),
                    ("B1+", "A2+"),
                    ("A1-", "B2-"),
                    ("B1-", "A2-"),
                ]),
            ),
            (
                "Phi+".to_string(),
                pairs(&[
                    ("A1+", "B2-"),
                    ("B1+", "A2-"),
                    ("A1-", "B2+"),
                    ("B1-", "A2+"),
                ]),
            ),
        ]),
        Setup::Momentum => BTreeMap::from([
            (
                "psi+".to_string(),
                pairs(&[
                    ("A1H", "A2H"),
                    ("B1H", "B2H"),
                    ("A1V", "A2V"),
                    ("B1V", "B2V"),
                ]),
            ),
            (
                "psi-".to_string(),
                pairs(&[
                    ("A1H", "B2H"),
                    ("B1H", "A2H"),
                    ("A1V", "B2V"),
                    ("B1V", "A2V"),
                ]),
            ),
            (
                "phi-".to_string(),
                pairs(&[
                    ("A1H", "A2V"),
                    ("A1V", "A2H"),
                    ("B1H", "B2V"),
                    ("B1V", "B2H"),
                ]),
            ),
            (
                "phi+".to_string(),
                pairs(&[
                    ("A1H", "B2V"),
                    ("A1V", "B2H"),
                    ("B1H", "A2V"),
                    ("B1V", "A2H"),
                ]),
            ),
        ]),
    };
    SignatureTable {
        name: setup.to_string(),
        quartets,
    }
}

/// Signature classes of the single-degree-of-freedom baseline.  Only the
/// sign correlation of the two ±45° analyzers survives, so the four Bell
/// states collapse into two classes.
pub fn n1_signature_table() -> SignatureTable {
    SignatureTable {
        name: "n1-demo".to_string(),
        quartets: BTreeMap::from([
            (
                "same-sign".to_string(),
                pairs(&[("a+", "b+"), ("a-", "b-")]),
            ),
            (
                "opposite-sign".to_string(),
                pairs(&[("a+", "b-"), ("a-", "b+")]),
            ),
        ]),
    }
}

/// The class the baseline network puts each polarization Bell state in.
pub fn n1_expected_class(pol: PolarizationBell) -> &'static str {
    match pol {
        PolarizationBell::PsiPlus | PolarizationBell::PhiPlus => "same-sign",
        PolarizationBell::PsiMinus | PolarizationBell::PhiMinus => "opposite-sign",
    }
}

/// Verdict of matching a coincidence table against a signature dictionary.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    /// One class holds essentially all coincidence weight.
    Identified { state: String, fraction: f64 },
    /// No class stands out at the table's statistical resolution.
    Ambiguous { reason: String },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Identified { state, fraction } => {
                write!(f, "identified {state} (fraction {fraction:.6})")
            }
            Classification::Ambiguous { reason } => write!(f, "ambiguous: {reason}"),
        }
    }
}

/// Assigns a table to the signature class holding essentially all its
/// coincidence weight.
///
/// The acceptance margin is one percent, widened by five combined standard
/// errors for Monte Carlo tables, so sampled tables classify exactly like
/// their analytic limits.
pub fn classify(
    table: &CoincidenceTable,
    signatures: &SignatureTable,
) -> Result<Classification, ExperimentError> {
    let total = table.total_joint();
    if total <= 0.0 {
        return Ok(Classification::Ambiguous {
            reason: "no coincidence weight".to_string(),
        });
    }
    let noise: f64 = table
        .joint
        .values()
        .map(|e| e.stderr * e.stderr)
        .sum::<f64>()
        .sqrt();
    let margin = 0.01 + 5.0 * noise / total;
    let mut best: Option<(&str, f64)> = None;
    for (label, quartet) in &signatures.quartets {
        let mut mass = 0.0;
        for (a, b) in quartet {
            let entry = table
                .joint(a, b)
                .ok_or_else(|| ExperimentError::MissingPair(a.clone(), b.clone()))?;
            mass += entry.p;
        }
        let fraction = mass / total;
        if best.is_none_or(|(_, f)| fraction > f) {
            best = Some((label, fraction));
        }
    }
    let (state, fraction) = best.expect("signature table has at least one class");
    if fraction >= 1.0 - margin {
        Ok(Classification::Identified {
            state: state.to_string(),
            fraction,
        })
    } else {
        Ok(Classification::Ambiguous {
            reason: format!("best class {state} holds only fraction {fraction:.4}"),
        })
    }
}

/// How a coincidence table is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Exact second moments of the field.
    Analytic,
    /// Sampled vacuum draws with zeropoint subtraction.
    MonteCarlo { samples: u64, seed: u64 },
    /// Conventional two-photon amplitude calculation, normalized.
    HilbertOracle,
}

/// A complete experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub setup: Setup,
    pub pol: PolarizationBell,
    pub mom: MomentumBell,
    pub coupling: CouplingParams,
    pub engine: Engine,
    pub gains: DetectorGains,
    /// Run even when the ancilla degree of freedom is not in the state the
    /// analyzer expects.  Signatures then overlap between classes and the
    /// classification can land on the wrong label.
    pub allow_any_ancilla: bool,
}

/// Result of one experiment run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub table: CoincidenceTable,
    pub classification: Classification,
    /// The label a correct identification must produce; absent when the
    /// ancilla is overridden into an unsupported state.
    pub expected: Option<String>,
}

/// Builds the network, produces the coincidence table with the requested
/// engine and classifies it against the setup's signature dictionary.
pub fn run(spec: &ExperimentSpec) -> Result<RunOutcome, ExperimentError> {
    let admissible = spec.setup.ancilla_admissible(spec.pol, spec.mom);
    if !admissible && !spec.allow_any_ancilla {
        let (dof, needed, got) = match spec.setup {
            Setup::Polarization => ("momentum", "psi+".to_string(), spec.mom.to_string()),
            Setup::Momentum => ("polarization", "Psi+".to_string(), spec.pol.to_string()),
        };
        return Err(ExperimentError::InadmissibleAncilla {
            setup: spec.setup,
            dof,
            needed,
            got,
        });
    }
    let table = match spec.engine {
        Engine::Analytic => {
            let params = HyperBellParams::from_labels(spec.pol, spec.mom);
            let network = build_bsm(spec.setup, spec.coupling, &params)?;
            analytic_joint(&network, &spec.gains)
        }
        Engine::MonteCarlo { samples, seed } => {
            let params = HyperBellParams::from_labels(spec.pol, spec.mom);
            let network = build_bsm(spec.setup, spec.coupling, &params)?;
            mc_joint(&network, &spec.gains, seed, samples)?
        }
        Engine::HilbertOracle => oracle_table(spec.setup, spec.pol, spec.mom),
    };
    let classification = classify(&table, &signature_table(spec.setup))?;
    let expected = admissible.then(|| spec.setup.measured_label(spec.pol, spec.mom));
    Ok(RunOutcome {
        table,
        classification,
        expected,
    })
}

/// Runs every target state through the analyzer (ancilla in its admissible
/// state) and counts how many distinct classes the classifier reports.
pub fn achieved_classes(setup: Setup, coupling: CouplingParams) -> Result<usize, ExperimentError> {
    let mut labels = BTreeSet::new();
    let states: Vec<(PolarizationBell, MomentumBell)> = match setup {
        Setup::Polarization => PolarizationBell::ALL
            .into_iter()
            .map(|p| (p, MomentumBell::PsiPlus))
            .collect(),
        Setup::Momentum => MomentumBell::ALL
            .into_iter()
            .map(|m| (PolarizationBell::PsiPlus, m))
            .collect(),
    };
    for (pol, mom) in states {
        let params = HyperBellParams::from_labels(pol, mom);
        let network = build_bsm(setup, coupling, &params)?;
        let table = analytic_joint(&network, &DetectorGains::uniform());
        match classify(&table, &signature_table(setup))? {
            Classification::Identified { state, .. } => {
                labels.insert(state);
            }
            Classification::Ambiguous { reason } => {
                return Err(ExperimentError::MissingPair("ambiguous".into(), reason));
            }
        }
    }
    Ok(labels.len())
}

/// Same count for the single-degree-of-freedom baseline.
pub fn n1_achieved_classes(coupling: CouplingParams) -> Result<usize, ExperimentError> {
    let mut labels = BTreeSet::new();
    for pol in PolarizationBell::ALL {
        let network = build_n1_demo(coupling, pol)?;
        let table = analytic_joint(&network, &DetectorGains::uniform());
        match classify(&table, &n1_signature_table())? {
            Classification::Identified { state, .. } => {
                labels.insert(state);
            }
            Classification::Ambiguous { reason } => {
                return Err(ExperimentError::MissingPair("ambiguous".into(), reason));
            }
        }
    }
    Ok(labels.len())
}

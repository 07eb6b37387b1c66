//! Simulator of two-photon polarization-momentum hyperentanglement in the
//! Wigner representation.
//!
//! Optical fields are carried as explicit linear functionals of the
//! zeropoint (vacuum) amplitudes entering the source crystals and the idle
//! ports of the analyzers.  A parametric source correlates those amplitudes
//! across two beam pairs, a linear network of wave plates, beam splitters
//! and polarizing beam splitters steers them onto detectors, and detection
//! probabilities emerge after subtraction of the vacuum intensity that every
//! channel carries even with the pump off.
//!
//! The crate builds Bell-state analyzers for the polarization and the
//! momentum degree of freedom, tabulates their coincidence signatures by
//! three interchangeable engines (analytic moments, Monte Carlo sampling of
//! the vacuum, and a conventional two-photon amplitude calculation used as a
//! cross-check), and audits how many zeropoint mode sets each analyzer
//! consumes, which bounds how many Bell classes it can separate.

pub mod detection;
pub mod experiments;
pub mod ledger;
pub mod network;
pub mod oracle;
pub mod source;
pub mod zpf;

pub use detection::{
    analytic_joint, analytic_singles, mc_finish, mc_joint, mc_merge, mc_partial, CoincidenceTable,
    DetectorGains, Normalization,
};
pub use experiments::{
    achieved_classes, build_bsm, build_n1_demo, classify, n1_achieved_classes, run,
    signature_table, Classification, Engine, ExperimentSpec, RunOutcome, Setup, SignatureTable,
};
pub use ledger::{
    audit, verify_lemma_two, zpf_counting, CountingRecord, LemmaTwoReport, ZpfLedger,
};
pub use network::{Detector, Device, FieldMap, Network, NetworkBuilder, Side};
pub use oracle::oracle_table;
pub use source::{
    baseline_source, hyperbell_source, CouplingParams, HyperBellParams, MomentumBell,
    PathAssignment, PolarizationBell,
};
pub use zpf::{sample_zpf, CovarianceModel, ModeBasis, ModeId, ModeOrigin, Pol, ZpfError};

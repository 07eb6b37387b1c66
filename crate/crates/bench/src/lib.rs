//! Shared fixtures for the benchmark targets: canonical networks built the
//! same way the acceptance tests build them.

use hyperbell_core::{
    build_bsm, CouplingParams, HyperBellParams, MomentumBell, Network, PolarizationBell, Setup,
};

/// The default pair coupling used across all benchmarks.
pub fn standard_coupling() -> CouplingParams {
    CouplingParams::new(0.1, 0.0).expect("0.1 is within the perturbative range")
}

/// A full analyzer network with the ancilla in its admissible state.
pub fn standard_network(setup: Setup) -> Network {
    let params = HyperBellParams::from_labels(PolarizationBell::PsiPlus, MomentumBell::PsiPlus);
    build_bsm(setup, standard_coupling(), &params).expect("canonical network builds")
}

//! Conventional two-photon amplitude calculation used as an independent
//! cross-check of the field-moment engines.
//!
//! Each photon lives in a four-dimensional space (exit port `a`/`b` times
//! polarization H/V).  The source state is the product of a polarization
//! and a momentum Bell vector; each analyzer is a 4×4 single-photon unitary
//! mapping input modes onto detectors, written down directly from the
//! device conventions (reflections carry a factor `i`, 50/50 splitters a
//! factor `1/√2`, half-wave plates exchange components).  Coincidence
//! probabilities are squared amplitudes of `U₁ ⊗ U₂` applied to the state
//! and sum to one, so the oracle table is normalized by construction.

use crate::detection::{CoincidenceTable, Normalization, TableEntry};
use crate::experiments::Setup;
use crate::network::Side;
use crate::source::{MomentumBell, PolarizationBell};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Single-photon mode order used throughout: `a:H, a:V, b:H, b:V`.
pub const MODE_LABELS: [&str; 4] = ["a:H", "a:V", "b:H", "b:V"];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// 2×2 Bell coefficients over (photon 1, photon 2) for one degree of
/// freedom; index 0 is H or port `a`, index 1 is V or port `b`.
fn bell2(psi_type: bool, plus: bool) -> [[Complex64; 2]; 2] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let s = if plus { r } else { -r };
    let z = c(0.0, 0.0);
    if psi_type {
        [[z, c(r, 0.0)], [c(s, 0.0), z]]
    } else {
        [[c(r, 0.0), z], [z, c(s, 0.0)]]
    }
}

fn pol_vector(pol: PolarizationBell) -> [[Complex64; 2]; 2] {
    match pol {
        PolarizationBell::PsiPlus => bell2(true, true),
        PolarizationBell::PsiMinus => bell2(true, false),
        PolarizationBell::PhiPlus => bell2(false, true),
        PolarizationBell::PhiMinus => bell2(false, false),
    }
}

fn mom_vector(mom: MomentumBell) -> [[Complex64; 2]; 2] {
    match mom {
        MomentumBell::PsiPlus => bell2(true, true),
        MomentumBell::PsiMinus => bell2(true, false),
        MomentumBell::PhiPlus => bell2(false, true),
        MomentumBell::PhiMinus => bell2(false, false),
    }
}

/// The two-photon state as a 4×4 coefficient array over the single-photon
/// modes of photon 1 (rows) and photon 2 (columns).
pub fn make_state(pol: PolarizationBell, mom: MomentumBell) -> [[Complex64; 4]; 4] {
    let p = pol_vector(pol);
    let m = mom_vector(mom);
    let mut psi = [[c(0.0, 0.0); 4]; 4];
    for port1 in 0..2 {
        for pol1 in 0..2 {
            for port2 in 0..2 {
                for pol2 in 0..2 {
                    psi[2 * port1 + pol1][2 * port2 + pol2] = m[port1][port2] * p[pol1][pol2];
                }
            }
        }
    }
    psi
}

/// The 4×4 single-photon map of one analyzer arm: rows are detectors (in
/// the returned name order), columns the modes `a:H, a:V, b:H, b:V`.
pub fn single_photon_unitary(setup: Setup, side: Side) -> ([[Complex64; 4]; 4], [&'static str; 4]) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let n = -r;
    let i = c(0.0, r);
    let z = c(0.0, 0.0);
    match (setup, side) {
        // Shared polarizing beam splitter across the two beams (H reflects
        // in place with i, V crosses), then ±45° analyzers on both ports.
        (Setup::Polarization, Side::Left) => (
            [
                [c(n, 0.0), z, z, i],
                [i, z, z, c(n, 0.0)],
                [z, i, c(n, 0.0), z],
                [z, c(n, 0.0), i, z],
            ],
            ["A1+", "A1-", "B1+", "B1-"],
        ),
        // Same shared-PBS-plus-analyzers arm on the second photon.
        (Setup::Polarization, Side::Right) => (
            [
                [c(n, 0.0), z, z, i],
                [i, z, z, c(n, 0.0)],
                [z, i, c(n, 0.0), z],
                [z, c(n, 0.0), i, z],
            ],
            ["A2+", "A2-", "B2+", "B2-"],
        ),
        // Half-wave plate on beam b, 50/50 splitter across the beams, H/V
        // analyzers on both outputs; identical on both sides.
        (Setup::Momentum, Side::Left) => (
            [
                [c(n, 0.0), z, z, i],
                [z, i, c(r, 0.0), z],
                [i, z, z, c(n, 0.0)],
                [z, c(r, 0.0), i, z],
            ],
            ["A1H", "A1V", "B1H", "B1V"],
        ),
        (Setup::Momentum, Side::Right) => (
            [
                [c(n, 0.0), z, z, i],
                [z, i, c(r, 0.0), z],
                [i, z, z, c(n, 0.0)],
                [z, c(r, 0.0), i, z],
            ],
            ["A2H", "A2V", "B2H", "B2V"],
        ),
    }
}

/// Normalized coincidence and singles table of the ideal two-photon
/// calculation.
pub fn oracle_table(setup: Setup, pol: PolarizationBell, mom: MomentumBell) -> CoincidenceTable {
    let psi = make_state(pol, mom);
    let (u1, left_names) = single_photon_unitary(setup, Side::Left);
    let (u2, right_names) = single_photon_unitary(setup, Side::Right);
    let mut joint = BTreeMap::new();
    let mut left_singles = [0.0f64; 4];
    let mut right_singles = [0.0f64; 4];
    for d1 in 0..4 {
        for d2 in 0..4 {
            let mut amp = c(0.0, 0.0);
            for m1 in 0..4 {
                for m2 in 0..4 {
                    amp += u1[d1][m1] * u2[d2][m2] * psi[m1][m2];
                }
            }
            let p = amp.norm_sqr();
            left_singles[d1] += p;
            right_singles[d2] += p;
            joint.insert(
                (left_names[d1].to_string(), right_names[d2].to_string()),
                TableEntry { p, stderr: 0.0 },
            );
        }
    }
    let mut singles = BTreeMap::new();
    for d in 0..4 {
        singles.insert(
            left_names[d].to_string(),
            TableEntry {
                p: left_singles[d],
                stderr: 0.0,
            },
        );
        singles.insert(
            right_names[d].to_string(),
            TableEntry {
                p: right_singles[d],
                stderr: 0.0,
            },
        );
    }
    CoincidenceTable {
        joint,
        singles,
        normalization: Normalization::Coincidences,
    }
}

//! Detection probabilities by zeropoint subtraction: analytic moments and a
//! Monte Carlo engine over vacuum samples.
//!
//! A detector at the end of the network sees the intensity of its channels,
//! which is dominated by the vacuum level `ν` every channel carries with the
//! pump off.  Single-detection rates are the intensity excess over the
//! pump-off run of the same vacuum draw; joint rates are covariances of the
//! mean-subtracted intensities, whose expectation equals the squared
//! non-conjugate pair moments `|⟨d_m d_n⟩|²` summed over the channel pairs
//! of the two detectors (plus an accidental background of fourth order in
//! the coupling, far below statistical resolution at perturbative
//! couplings).
//!
//! Monte Carlo sums run through a dyadic accumulator aligned to the
//! absolute sample grid, so a run split into contiguous shards merges to
//! bit-identical results no matter where the cuts fall.

use crate::network::{Network, NetworkError, Side};
use crate::zpf::fill_zpf;
use ndarray::Array1;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Errors raised by table construction and shard handling.
#[derive(Debug, Error)]
pub enum DetectionError {
    #[error("shard starts at sample {got} but the accumulator ends at {expected}")]
    NonContiguousShards { expected: u64, got: u64 },
    #[error("shards disagree on {0}")]
    MismatchedShards(String),
    #[error("table has no weight to normalize or too few samples")]
    DegenerateTable,
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Detection efficiency per detector; anything not listed has gain one.
#[derive(Debug, Clone, Default)]
pub struct DetectorGains {
    overrides: BTreeMap<String, f64>,
}

impl DetectorGains {
    /// All detectors at unit efficiency.
    pub fn uniform() -> Self {
        DetectorGains::default()
    }

    pub fn set(&mut self, name: &str, gain: f64) {
        self.overrides.insert(name.to_string(), gain);
    }

    pub fn get(&self, name: &str) -> f64 {
        self.overrides.get(name).copied().unwrap_or(1.0)
    }
}

/// Whether table entries are raw rates (set by the coupling strength) or
/// fractions of the total coincidence weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    Raw,
    Coincidences,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Normalization::Raw => write!(f, "raw"),
            Normalization::Coincidences => write!(f, "coincidences"),
        }
    }
}

/// One probability with its statistical error (zero for analytic entries).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub p: f64,
    pub stderr: f64,
}

/// Singles and cross-side coincidence probabilities of one experiment.
///
/// Joint entries are keyed `(left detector, right detector)`; only pairs
/// across the two photons are tabulated.
#[derive(Debug, Clone, PartialEq)]
pub struct CoincidenceTable {
    pub joint: BTreeMap<(String, String), TableEntry>,
    pub singles: BTreeMap<String, TableEntry>,
    pub normalization: Normalization,
}

impl CoincidenceTable {
    /// Looks a pair up in either order.
    pub fn joint(&self, a: &str, b: &str) -> Option<&TableEntry> {
        self.joint
            .get(&(a.to_string(), b.to_string()))
            .or_else(|| self.joint.get(&(b.to_string(), a.to_string())))
    }

    pub fn total_joint(&self) -> f64 {
        self.joint.values().map(|e| e.p).sum()
    }

    /// Rescales joints to fractions of the total coincidence weight and
    /// singles to fractions of the total singles weight.
    pub fn normalized(&self) -> Result<CoincidenceTable, DetectionError> {
        let jtot = self.total_joint();
        let stot: f64 = self.singles.values().map(|e| e.p).sum();
        if jtot <= 0.0 || stot <= 0.0 {
            return Err(DetectionError::DegenerateTable);
        }
        let joint = self
            .joint
            .iter()
            .map(|(k, e)| {
                (
                    k.clone(),
                    TableEntry {
                        p: e.p / jtot,
                        stderr: e.stderr / jtot,
                    },
                )
            })
            .collect();
        let singles = self
            .singles
            .iter()
            .map(|(k, e)| {
                (
                    k.clone(),
                    TableEntry {
                        p: e.p / stot,
                        stderr: e.stderr / stot,
                    },
                )
            })
            .collect();
        Ok(CoincidenceTable {
            joint,
            singles,
            normalization: Normalization::Coincidences,
        })
    }

    /// JSON rendering with all numbers rounded to twelve significant
    /// digits, matching [`CoincidenceTable::to_csv`] exactly.
    pub fn to_json_value(&self) -> serde_json::Value {
        let singles: serde_json::Map<String, serde_json::Value> = self
            .singles
            .iter()
            .map(|(name, e)| {
                (
                    name.clone(),
                    serde_json::json!({ "p": round12(e.p), "stderr": round12(e.stderr) }),
                )
            })
            .collect();
        let joint: Vec<serde_json::Value> = self
            .joint
            .iter()
            .map(|((i, j), e)| {
                serde_json::json!({
                    "detector_i": i,
                    "detector_j": j,
                    "p": round12(e.p),
                    "stderr": round12(e.stderr),
                })
            })
            .collect();
        serde_json::json!({
            "normalization": self.normalization.to_string(),
            "singles": singles,
            "joint": joint,
        })
    }

    /// CSV rendering of the joint table, one row per detector pair, twelve
    /// significant digits.  Values parse back to exactly the numbers the
    /// JSON rendering carries; the stderr field stays empty on exact
    /// (analytic or oracle) tables.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("detector_i,detector_j,p,stderr\n");
        for ((i, j), e) in &self.joint {
            if e.stderr == 0.0 {
                out.push_str(&format!("{i},{j},{:.11e},\n", e.p));
            } else {
                out.push_str(&format!("{i},{j},{:.11e},{:.11e}\n", e.p, e.stderr));
            }
        }
        out
    }
}

/// Rounds to twelve significant digits by a decimal round trip, the same
/// rounding the text renderings apply.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}")
        .parse()
        .expect("formatted float parses back")
}

/// Per-channel vacuum level with the pump off: half the squared norm of the
/// direct-part row.  The direct part of the map is exactly the passive
/// network, so this is the mean intensity the channel would carry without
/// the source term.
fn channel_vacuum_levels(network: &Network) -> Vec<f64> {
    let a = network.map().a();
    (0..a.nrows())
        .map(|m| 0.5 * a.row(m).iter().map(|v| v.norm_sqr()).sum::<f64>())
        .collect()
}

fn left_right_pairs(network: &Network) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (i, di) in network.detectors().iter().enumerate() {
        if di.side != Side::Left {
            continue;
        }
        for (j, dj) in network.detectors().iter().enumerate() {
            if dj.side == Side::Right {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Exact single-detection probabilities: the vacuum-subtracted mean
/// intensity `Σ ½‖B row‖²` over each detector's channels.
pub fn analytic_singles(network: &Network, gains: &DetectorGains) -> BTreeMap<String, TableEntry> {
    let b = network.map().b();
    network
        .detectors()
        .iter()
        .map(|d| {
            let p: f64 = d
                .channels
                .iter()
                .map(|&m| 0.5 * b.row(m).iter().map(|v| v.norm_sqr()).sum::<f64>())
                .sum();
            (
                d.name.clone(),
                TableEntry {
                    p: gains.get(&d.name) * p,
                    stderr: 0.0,
                },
            )
        })
        .collect()
}

/// Exact coincidence table from the second moments of the field: the joint
/// probability of a left and a right detector is the squared magnitude of
/// the non-conjugate pair moment summed over their channel pairs, times the
/// detector gains.
pub fn analytic_joint(network: &Network, gains: &DetectorGains) -> CoincidenceTable {
    let k = network.map().pair_moments();
    let mut joint = BTreeMap::new();
    for (i, j) in left_right_pairs(network) {
        let di = &network.detectors()[i];
        let dj = &network.detectors()[j];
        let mut p = 0.0;
        for &m in &di.channels {
            for &n in &dj.channels {
                p += k[(m, n)].norm_sqr();
            }
        }
        p *= gains.get(&di.name) * gains.get(&dj.name);
        joint.insert(
            (di.name.clone(), dj.name.clone()),
            TableEntry { p, stderr: 0.0 },
        );
    }
    CoincidenceTable {
        joint,
        singles: analytic_singles(network, gains),
        normalization: Normalization::Raw,
    }
}

/// Running sum over a contiguous range of sample indices whose value is
/// independent of how the range was split into shards.
///
/// Partial sums are kept as blocks aligned to the absolute dyadic grid:
/// pushing the right sibling of the top block folds the two (always left
/// plus right), so after any contiguous sequence of pushes and merges the
/// block list is the canonical dyadic decomposition of the covered range,
/// and each block value is the fixed binary-tree reduction of its leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicAccumulator {
    blocks: Vec<(u32, u64, f64)>,
    start: u64,
    len: u64,
}

impl DyadicAccumulator {
    pub fn new_at(start: u64) -> Self {
        DyadicAccumulator {
            blocks: Vec::new(),
            start,
            len: 0,
        }
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, value: f64) {
        let index = self.start + self.len;
        self.push_block(0, index, value);
        self.len += 1;
    }

    fn push_block(&mut self, mut level: u32, mut start: u64, mut sum: f64) {
        while let Some(&(l, s, v)) = self.blocks.last() {
            let width = 1u64 << l;
            let merged = l == level && s + width == start && s % (2 * width) == 0;
            if !merged {
                break;
            }
            self.blocks.pop();
            sum += v;
            level = l + 1;
            start = s;
        }
        self.blocks.push((level, start, sum));
    }

    /// Appends a shard that starts exactly where this one ends.
    pub fn merge(&mut self, other: &DyadicAccumulator) -> Result<(), DetectionError> {
        if other.start != self.start + self.len {
            return Err(DetectionError::NonContiguousShards {
                expected: self.start + self.len,
                got: other.start,
            });
        }
        for &(l, s, v) in &other.blocks {
            self.push_block(l, s, v);
        }
        self.len += other.len;
        Ok(())
    }

    /// Folds the canonical blocks left to right.
    pub fn finish(&self) -> f64 {
        self.blocks.iter().fold(0.0, |acc, &(_, _, v)| acc + v)
    }
}

/// Accumulated Monte Carlo statistics over a contiguous range of vacuum
/// samples: per-detector intensity excesses for singles, products of
/// mean-subtracted detector intensities for every cross-side pair.
#[derive(Debug, Clone, PartialEq)]
pub struct McPartial {
    seed: u64,
    first: u64,
    count: u64,
    detector_names: Vec<String>,
    pairs: Vec<(usize, usize)>,
    singles_sum: Vec<DyadicAccumulator>,
    singles_sq: Vec<DyadicAccumulator>,
    joint_sum: Vec<DyadicAccumulator>,
    joint_sq: Vec<DyadicAccumulator>,
}

impl McPartial {
    pub fn samples(&self) -> u64 {
        self.count
    }
}

/// Runs the sample range `[first, first + count)` through the network.
///
/// Singles use same-draw subtraction: the intensity of the full field minus
/// the intensity of the direct (pump-off) part of the very same vacuum
/// draw, which is unbiased and strips most vacuum noise.  Joints multiply
/// intensities with the constant pump-off mean subtracted; same-draw
/// subtraction would also remove part of the genuine pair signal there, so
/// the constant is the correct reference.
pub fn mc_partial(network: &Network, seed: u64, first: u64, count: u64) -> McPartial {
    let map = network.map();
    let n_modes = map.inputs().len();
    let detectors = network.detectors();
    let vacuum = channel_vacuum_levels(network);
    let det_vacuum: Vec<f64> = detectors
        .iter()
        .map(|d| d.channels.iter().map(|&m| vacuum[m]).sum())
        .collect();
    let pairs = left_right_pairs(network);

    let mut singles_sum = vec![DyadicAccumulator::new_at(first); detectors.len()];
    let mut singles_sq = vec![DyadicAccumulator::new_at(first); detectors.len()];
    let mut joint_sum = vec![DyadicAccumulator::new_at(first); pairs.len()];
    let mut joint_sq = vec![DyadicAccumulator::new_at(first); pairs.len()];

    let mut z = Array1::from_elem(n_modes, Complex64::default());
    let mut excess = vec![0.0f64; detectors.len()];
    let mut centered = vec![0.0f64; detectors.len()];
    for s in first..first + count {
        fill_zpf(z.as_slice_mut().expect("contiguous"), seed, s);
        let (direct, conjugate) = map.evaluate_parts(&z);
        for (k, d) in detectors.iter().enumerate() {
            let mut full = 0.0;
            let mut pump_off = 0.0;
            for &m in &d.channels {
                full += (direct[m] + conjugate[m]).norm_sqr();
                pump_off += direct[m].norm_sqr();
            }
            excess[k] = full - pump_off;
            centered[k] = full - det_vacuum[k];
        }
        for k in 0..detectors.len() {
            singles_sum[k].push(excess[k]);
            singles_sq[k].push(excess[k] * excess[k]);
        }
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            let w = centered[i] * centered[j];
            joint_sum[idx].push(w);
            joint_sq[idx].push(w * w);
        }
    }

    McPartial {
        seed,
        first,
        count,
        detector_names: detectors.iter().map(|d| d.name.clone()).collect(),
        pairs,
        singles_sum,
        singles_sq,
        joint_sum,
        joint_sq,
    }
}

/// Merges a shard that continues exactly where `left` ends.  The merged
/// state is bit-identical to a single run over the union.
pub fn mc_merge(left: &McPartial, right: &McPartial) -> Result<McPartial, DetectionError> {
    if left.seed != right.seed {
        return Err(DetectionError::MismatchedShards("the seed".into()));
    }
    if left.detector_names != right.detector_names || left.pairs != right.pairs {
        return Err(DetectionError::MismatchedShards(
            "the detector layout".into(),
        ));
    }
    let mut merged = left.clone();
    for (acc, other) in merged.singles_sum.iter_mut().zip(&right.singles_sum) {
        acc.merge(other)?;
    }
    for (acc, other) in merged.singles_sq.iter_mut().zip(&right.singles_sq) {
        acc.merge(other)?;
    }
    for (acc, other) in merged.joint_sum.iter_mut().zip(&right.joint_sum) {
        acc.merge(other)?;
    }
    for (acc, other) in merged.joint_sq.iter_mut().zip(&right.joint_sq) {
        acc.merge(other)?;
    }
    merged.count += right.count;
    Ok(merged)
}

fn mean_and_stderr(sum: &DyadicAccumulator, sq: &DyadicAccumulator, n: f64) -> (f64, f64) {
    let mean = sum.finish() / n;
    let var = (sq.finish() / n - mean * mean).max(0.0) / (n - 1.0);
    (mean, var.sqrt())
}

/// Turns accumulated statistics into a coincidence table with standard
/// errors of the mean.
pub fn mc_finish(
    partial: &McPartial,
    gains: &DetectorGains,
) -> Result<CoincidenceTable, DetectionError> {
    if partial.count < 2 {
        return Err(DetectionError::DegenerateTable);
    }
    let n = partial.count as f64;
    let mut singles = BTreeMap::new();
    for (k, name) in partial.detector_names.iter().enumerate() {
        let (mean, err) = mean_and_stderr(&partial.singles_sum[k], &partial.singles_sq[k], n);
        let g = gains.get(name);
        singles.insert(
            name.clone(),
            TableEntry {
                p: g * mean,
                stderr: g * err,
            },
        );
    }
    let mut joint = BTreeMap::new();
    for (idx, &(i, j)) in partial.pairs.iter().enumerate() {
        let ni = &partial.detector_names[i];
        let nj = &partial.detector_names[j];
        let (mean, err) = mean_and_stderr(&partial.joint_sum[idx], &partial.joint_sq[idx], n);
        let g = gains.get(ni) * gains.get(nj);
        joint.insert(
            (ni.clone(), nj.clone()),
            TableEntry {
                p: g * mean,
                stderr: g * err,
            },
        );
    }
    Ok(CoincidenceTable {
        joint,
        singles,
        normalization: Normalization::Raw,
    })
}

/// One-call Monte Carlo estimate over `samples` vacuum draws.
pub fn mc_joint(
    network: &Network,
    gains: &DetectorGains,
    seed: u64,
    samples: u64,
) -> Result<CoincidenceTable, DetectionError> {
    let partial = mc_partial(network, seed, 0, samples);
    mc_finish(&partial, gains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::NetworkBuilder;
    use crate::source::{baseline_source, CouplingParams};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn bare_pair_network() -> Network {
        NetworkBuilder::new(baseline_source(CouplingParams::new(0.1, 0.0).unwrap()))
            .declare_detector("d1", Side::Left, "a1")
            .unwrap()
            .declare_detector("d2", Side::Right, "b2")
            .unwrap()
            .finish()
            .unwrap()
    }

    #[test]
    fn analytic_rates_of_the_bare_pair() {
        let net = bare_pair_network();
        let table = analytic_joint(&net, &DetectorGains::uniform());
        let c2 = 0.01;
        // Each detector integrates two channels of excess ½|C|².
        assert_abs_diff_eq!(table.singles["d1"].p, c2, epsilon = 1e-15);
        assert_abs_diff_eq!(table.singles["d2"].p, c2, epsilon = 1e-15);
        // Two correlated channel pairs of strength |C|² each.
        let j = table.joint("d1", "d2").unwrap();
        assert_abs_diff_eq!(j.p, 2.0 * c2, epsilon = 1e-15);
    }

    #[test]
    fn detector_gains_scale_rates() {
        let net = bare_pair_network();
        let mut gains = DetectorGains::uniform();
        gains.set("d1", 0.5);
        let table = analytic_joint(&net, &gains);
        assert_abs_diff_eq!(table.singles["d1"].p, 0.005, epsilon = 1e-15);
        assert_abs_diff_eq!(table.singles["d2"].p, 0.01, epsilon = 1e-15);
        assert_abs_diff_eq!(table.joint("d1", "d2").unwrap().p, 0.01, epsilon = 1e-15);
    }

    #[test]
    fn monte_carlo_agrees_with_analytic_moments() {
        let net = bare_pair_network();
        let gains = DetectorGains::uniform();
        let exact = analytic_joint(&net, &gains);
        let mc = mc_joint(&net, &gains, 2024, 200_000).unwrap();
        for (name, entry) in &mc.singles {
            let want = exact.singles[name].p;
            assert!(
                (entry.p - want).abs() < 5.0 * entry.stderr,
                "singles {name}: {} vs {want} ± {}",
                entry.p,
                entry.stderr
            );
        }
        for (key, entry) in &mc.joint {
            let want = exact.joint[key].p;
            assert!(
                (entry.p - want).abs() < 5.0 * entry.stderr,
                "joint {key:?}: {} vs {want} ± {}",
                entry.p,
                entry.stderr
            );
        }
    }

    #[test]
    fn sharded_runs_merge_bit_exactly() {
        let net = bare_pair_network();
        let gains = DetectorGains::uniform();
        let whole = mc_partial(&net, 7, 0, 3000);
        let a = mc_partial(&net, 7, 0, 1000);
        let b = mc_partial(&net, 7, 1000, 1237);
        let c = mc_partial(&net, 7, 2237, 763);
        let merged = mc_merge(&mc_merge(&a, &b).unwrap(), &c).unwrap();
        assert_eq!(whole, merged);
        let t1 = mc_finish(&whole, &gains).unwrap();
        let t2 = mc_finish(&merged, &gains).unwrap();
        for (k, e) in &t1.joint {
            assert_eq!(e.p.to_bits(), t2.joint[k].p.to_bits());
            assert_eq!(e.stderr.to_bits(), t2.joint[k].stderr.to_bits());
        }
    }

    #[test]
    fn merge_rejects_gaps_and_foreign_shards() {
        let net = bare_pair_network();
        let a = mc_partial(&net, 7, 0, 100);
        let gap = mc_partial(&net, 7, 150, 100);
        assert!(matches!(
            mc_merge(&a, &gap),
            Err(DetectionError::NonContiguousShards {
                expected: 100,
                got: 150
            })
        ));
        let other_seed = mc_partial(&net, 8, 100, 100);
        assert!(matches!(
            mc_merge(&a, &other_seed),
            Err(DetectionError::MismatchedShards(_))
        ));
    }

    #[test]
    fn normalized_table_sums_to_one() {
        let net = bare_pair_network();
        let table = analytic_joint(&net, &DetectorGains::uniform());
        let norm = table.normalized().unwrap();
        assert_abs_diff_eq!(norm.total_joint(), 1.0, epsilon = 1e-12);
        let s: f64 = norm.singles.values().map(|e| e.p).sum();
        assert_abs_diff_eq!(s, 1.0, epsilon = 1e-12);
        assert_eq!(norm.normalization, Normalization::Coincidences);
    }

    #[test]
    fn csv_and_json_carry_identical_numbers() {
        let net = bare_pair_network();
        let table = mc_joint(&net, &DetectorGains::uniform(), 3, 500).unwrap();
        let json = table.to_json_value();
        let csv = table.to_csv();
        let mut rows = csv.lines().skip(1);
        for entry in json["joint"].as_array().unwrap() {
            let row = rows.next().unwrap();
            let fields: Vec<&str> = row.split(',').collect();
            assert_eq!(fields[0], entry["detector_i"].as_str().unwrap());
            assert_eq!(fields[1], entry["detector_j"].as_str().unwrap());
            let p_csv: f64 = fields[2].parse().unwrap();
            let e_csv: f64 = if fields[3].is_empty() {
                0.0
            } else {
                fields[3].parse().unwrap()
            };
            assert_eq!(p_csv.to_bits(), entry["p"].as_f64().unwrap().to_bits());
            assert_eq!(e_csv.to_bits(), entry["stderr"].as_f64().unwrap().to_bits());
        }
        assert!(rows.next().is_none());
    }

    #[test]
    fn accumulator_matches_plain_sum() {
        let mut acc = DyadicAccumulator::new_at(0);
        let mut plain = 0.0;
        for k in 0..1000u64 {
            let x = (k as f64).sin();
            acc.push(x);
            plain += x;
        }
        assert_abs_diff_eq!(acc.finish(), plain, epsilon = 1e-9);
        assert_eq!(acc.len(), 1000);
    }

    proptest! {
        /// Any contiguous split of a sample range must reproduce the
        /// accumulator state of one sequential pass bit for bit.
        #[test]
        fn accumulator_is_split_invariant(
            cuts in proptest::collection::vec(1u64..500, 0..4),
            total in 500u64..600,
        ) {
            let value = |i: u64| ((i as f64) * 0.7).cos() / 3.0;
            let mut whole = DyadicAccumulator::new_at(0);
            for i in 0..total {
                whole.push(value(i));
            }
            let mut bounds: Vec<u64> = cuts.into_iter().filter(|&c| c < total).collect();
            bounds.sort_unstable();
            bounds.dedup();
            bounds.insert(0, 0);
            bounds.push(total);
            let mut merged = DyadicAccumulator::new_at(0);
            for w in bounds.windows(2) {
                let mut shard = DyadicAccumulator::new_at(w[0]);
                for i in w[0]..w[1] {
                    shard.push(value(i));
                }
                merged.merge(&shard).unwrap();
            }
            prop_assert_eq!(&whole, &merged);
            prop_assert_eq!(whole.finish().to_bits(), merged.finish().to_bits());
        }

        /// Twelve-digit rounding is idempotent and within relative 1e-11.
        #[test]
        fn round12_is_idempotent(x in -1.0e3f64..1.0e3) {
            let once = round12(x);
            prop_assert_eq!(once.to_bits(), round12(once).to_bits());
            prop_assert!((once - x).abs() <= 1e-11 * x.abs() + f64::MIN_POSITIVE);
        }
    }
}

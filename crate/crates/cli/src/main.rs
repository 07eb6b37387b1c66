//! Command-line front end: configure, run, and export experiments and
//! audits of the hyperentanglement simulator.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 when a
//! `--expect` label does not match the classification.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use hyperbell_core::detection::round12;
use hyperbell_core::experiments::{n1_expected_class, n1_signature_table};
use hyperbell_core::{
    achieved_classes, analytic_joint, audit, build_bsm, build_n1_demo, classify, mc_joint,
    n1_achieved_classes, run, verify_lemma_two, zpf_counting, Classification, CouplingParams,
    DetectorGains, Engine, ExperimentSpec, HyperBellParams, MomentumBell, PolarizationBell,
    RunOutcome, Setup,
};

#[derive(Parser)]
#[command(
    name = "hyperbell",
    version,
    about = "Simulates polarization-momentum hyperentangled photon pairs from vacuum amplitudes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and export its coincidence table.
    Simulate(SimulateArgs),
    /// Print the zeropoint bookkeeping of one analyzer.
    Audit(AuditArgs),
    /// Run a grid of input states and emit the signature matrix as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Experiment {
    PolBsm,
    MomBsm,
    N1Demo,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Experiment::PolBsm => "pol-bsm",
            Experiment::MomBsm => "mom-bsm",
            Experiment::N1Demo => "n1-demo",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum EngineKind {
    Analytic,
    Montecarlo,
    Oracle,
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Analytic => "analytic",
            EngineKind::Montecarlo => "montecarlo",
            EngineKind::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

/// One experiment configuration.  Every field is optional so a JSON file
/// can carry any subset; explicit command-line flags take precedence over
/// the file, and unset fields fall back to defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RunConfig {
    experiment: Option<Experiment>,
    state: Option<String>,
    engine: Option<EngineKind>,
    samples: Option<u64>,
    seed: Option<u64>,
    coupling: Option<f64>,
    coupling_phase: Option<f64>,
    gains: BTreeMap<String, f64>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

impl RunConfig {
    /// Overlays `flags` (explicitly set fields only) onto `self`.
    fn overridden_by(mut self, flags: RunConfig) -> RunConfig {
        self.experiment = flags.experiment.or(self.experiment);
        self.state = flags.state.or(self.state);
        self.engine = flags.engine.or(self.engine);
        self.samples = flags.samples.or(self.samples);
        self.seed = flags.seed.or(self.seed);
        self.coupling = flags.coupling.or(self.coupling);
        self.coupling_phase = flags.coupling_phase.or(self.coupling_phase);
        self.format = flags.format.or(self.format);
        self.out = flags.out.or(self.out);
        self.gains.extend(flags.gains);
        self
    }
}

#[derive(Args)]
struct SimulateArgs {
    /// Analyzer to run.
    #[arg(long, value_enum)]
    experiment: Option<Experiment>,
    /// Input state selector, e.g. "Psi+:psi+" ("Psi+" for n1-demo).
    #[arg(long)]
    state: Option<String>,
    /// Probability engine.
    #[arg(long, value_enum)]
    engine: Option<EngineKind>,
    /// Monte Carlo sample count.
    #[arg(long)]
    samples: Option<u64>,
    /// Monte Carlo seed.
    #[arg(long, env = "HYPERBELL_SEED")]
    seed: Option<u64>,
    /// Pair-coupling magnitude |C|.
    #[arg(long)]
    coupling: Option<f64>,
    /// Pair-coupling phase in radians.
    #[arg(long)]
    coupling_phase: Option<f64>,
    /// Detector gain override, repeatable.
    #[arg(long = "gain", value_name = "NAME=VALUE")]
    gains: Vec<String>,
    /// JSON configuration file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the artifact to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Artifact format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Exit with code 3 unless the classification equals this label.
    #[arg(long)]
    expect: Option<String>,
    /// Run even when the ancilla degree of freedom is not in the state the
    /// analyzer expects; signatures then collide between classes.
    #[arg(long)]
    override_ancilla: bool,
}

impl SimulateArgs {
    fn flags(&self) -> Result<RunConfig, CliError> {
        Ok(RunConfig {
            experiment: self.experiment,
            state: self.state.clone(),
            engine: self.engine,
            samples: self.samples,
            seed: self.seed,
            coupling: self.coupling,
            coupling_phase: self.coupling_phase,
            gains: parse_gains(&self.gains)?,
            format: self.format,
            out: self.out.clone(),
        })
    }
}

#[derive(Args)]
struct AuditArgs {
    /// Analyzer to audit.
    #[arg(value_enum)]
    experiment: Experiment,
    /// Emit the audit as JSON instead of the human-readable block.
    #[arg(long)]
    json: bool,
    /// Pair-coupling magnitude |C| used to build the network.
    #[arg(long)]
    coupling: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Analyzer to sweep.
    #[arg(long, value_enum)]
    experiment: Option<Experiment>,
    /// Probability engine.
    #[arg(long, value_enum)]
    engine: Option<EngineKind>,
    /// Monte Carlo sample count.
    #[arg(long)]
    samples: Option<u64>,
    /// Monte Carlo seed.
    #[arg(long, env = "HYPERBELL_SEED")]
    seed: Option<u64>,
    /// Pair-coupling magnitude |C|.
    #[arg(long)]
    coupling: Option<f64>,
    /// Pair-coupling phase in radians.
    #[arg(long)]
    coupling_phase: Option<f64>,
    /// JSON configuration file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sweep all sixteen input states instead of the admissible four.
    #[arg(long)]
    override_ancilla: bool,
    /// Write the CSV matrix to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SweepArgs {
    fn flags(&self) -> RunConfig {
        RunConfig {
            experiment: self.experiment,
            state: None,
            engine: self.engine,
            samples: self.samples,
            seed: self.seed,
            coupling: self.coupling,
            coupling_phase: self.coupling_phase,
            gains: BTreeMap::new(),
            format: None,
            out: self.out.clone(),
        }
    }
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Expectation(String),
}

fn cfg<E: fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

fn parse_gains(entries: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    let mut map = BTreeMap::new();
    for entry in entries {
        let (name, value) = entry
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("gain '{entry}' is not NAME=VALUE")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| CliError::Config(format!("gain value in '{entry}' is not a number")))?;
        map.insert(name.to_string(), value);
    }
    Ok(map)
}

fn load_config(path: &Option<PathBuf>) -> Result<RunConfig, CliError> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("invalid config {}: {e}", p.display())))
        }
    }
}

/// A fully defaulted configuration, ready to execute.
struct Resolved {
    experiment: Experiment,
    state: Option<String>,
    engine: EngineKind,
    samples: u64,
    seed: u64,
    coupling: CouplingParams,
    gains: DetectorGains,
    format: Format,
    out: Option<PathBuf>,
}

fn resolve(flags: RunConfig, config_path: &Option<PathBuf>) -> Result<Resolved, CliError> {
    let merged = load_config(config_path)?.overridden_by(flags);
    let experiment = merged
        .experiment
        .ok_or_else(|| CliError::Config("no experiment selected (--experiment)".into()))?;
    let coupling = CouplingParams::new(
        merged.coupling.unwrap_or(0.1),
        merged.coupling_phase.unwrap_or(0.0),
    )
    .map_err(cfg)?;
    let mut gains = DetectorGains::uniform();
    for (name, value) in &merged.gains {
        gains.set(name, *value);
    }
    Ok(Resolved {
        experiment,
        state: merged.state,
        engine: merged.engine.unwrap_or(EngineKind::Analytic),
        samples: merged.samples.unwrap_or(100_000),
        seed: merged.seed.unwrap_or(0),
        coupling,
        gains,
        format: merged.format.unwrap_or(Format::Json),
        out: merged.out,
    })
}

fn setup_of(experiment: Experiment) -> Option<Setup> {
    match experiment {
        Experiment::PolBsm => Some(Setup::Polarization),
        Experiment::MomBsm => Some(Setup::Momentum),
        Experiment::N1Demo => None,
    }
}

fn engine_of(r: &Resolved) -> Engine {
    match r.engine {
        EngineKind::Analytic => Engine::Analytic,
        EngineKind::Montecarlo => Engine::MonteCarlo {
            samples: r.samples,
            seed: r.seed,
        },
        EngineKind::Oracle => Engine::HilbertOracle,
    }
}

fn run_resolved(
    r: &Resolved,
    state: &str,
    allow_any_ancilla: bool,
) -> Result<RunOutcome, CliError> {
    match setup_of(r.experiment) {
        Some(setup) => {
            let (pol, mom) = HyperBellParams::parse_selector(state).map_err(cfg)?;
            run(&ExperimentSpec {
                setup,
                pol,
                mom,
                coupling: r.coupling,
                engine: engine_of(r),
                gains: r.gains.clone(),
                allow_any_ancilla,
            })
            .map_err(cfg)
        }
        None => {
            let pol: PolarizationBell = state.parse().map_err(cfg)?;
            let network = build_n1_demo(r.coupling, pol).map_err(cfg)?;
            let table = match r.engine {
                EngineKind::Analytic => analytic_joint(&network, &r.gains),
                EngineKind::Montecarlo => {
                    mc_joint(&network, &r.gains, r.seed, r.samples).map_err(cfg)?
                }
                EngineKind::Oracle => {
                    return Err(CliError::Config(
                        "the oracle engine covers only pol-bsm and mom-bsm".into(),
                    ))
                }
            };
            let classification = classify(&table, &n1_signature_table()).map_err(cfg)?;
            Ok(RunOutcome {
                table,
                classification,
                expected: Some(n1_expected_class(pol).to_string()),
            })
        }
    }
}

fn classification_json(classification: &Classification) -> serde_json::Value {
    match classification {
        Classification::Identified { state, fraction } => {
            serde_json::json!({ "label": state, "fraction": round12(*fraction) })
        }
        Classification::Ambiguous { reason } => serde_json::json!({ "ambiguous": reason }),
    }
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let r = resolve(args.flags()?, &args.config)?;
    let state = r
        .state
        .clone()
        .ok_or_else(|| CliError::Config("no input state selected (--state)".into()))?;
    let outcome = run_resolved(&r, &state, args.override_ancilla)?;

    if let Some(expect) = &args.expect {
        let matched = matches!(
            &outcome.classification,
            Classification::Identified { state, .. } if state == expect
        );
        if !matched {
            return Err(CliError::Expectation(format!(
                "expected {expect}, got {}",
                outcome.classification
            )));
        }
    }

    let mut metadata = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "experiment": r.experiment.to_string(),
        "state": state,
        "engine": r.engine.to_string(),
        "coupling": round12(r.coupling.mag()),
        "coupling_phase": round12(r.coupling.phase()),
    });
    if r.engine == EngineKind::Montecarlo {
        metadata["samples"] = r.samples.into();
        metadata["seed"] = r.seed.into();
    }
    let artifact = match r.format {
        Format::Json => {
            let document = serde_json::json!({
                "metadata": metadata,
                "classification": classification_json(&outcome.classification),
                "expected": outcome.expected,
                "table": outcome.table.to_json_value(),
            });
            let mut text = serde_json::to_string_pretty(&document).expect("document serializes");
            text.push('\n');
            text
        }
        Format::Csv => outcome.table.to_csv(),
    };
    match &r.out {
        Some(path) => {
            fs::write(path, &artifact)
                .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {}", path.display());
            println!("classification: {}", outcome.classification);
        }
        None => {
            print!("{artifact}");
            eprintln!("classification: {}", outcome.classification);
        }
    }
    Ok(())
}

fn cmd_audit(args: &AuditArgs) -> Result<(), CliError> {
    let coupling = CouplingParams::new(args.coupling.unwrap_or(0.1), 0.0).map_err(cfg)?;
    let params = HyperBellParams::from_labels(PolarizationBell::PsiPlus, MomentumBell::PsiPlus);
    let (network, n_dof, achieved) = match args.experiment {
        Experiment::PolBsm => (
            build_bsm(Setup::Polarization, coupling, &params).map_err(cfg)?,
            2u32,
            achieved_classes(Setup::Polarization, coupling).map_err(cfg)?,
        ),
        Experiment::MomBsm => (
            build_bsm(Setup::Momentum, coupling, &params).map_err(cfg)?,
            2,
            achieved_classes(Setup::Momentum, coupling).map_err(cfg)?,
        ),
        Experiment::N1Demo => (
            build_n1_demo(coupling, PolarizationBell::PsiPlus).map_err(cfg)?,
            1,
            n1_achieved_classes(coupling).map_err(cfg)?,
        ),
    };
    let ledger = audit(&network, n_dof as usize).map_err(cfg)?;
    let lemma = verify_lemma_two(&network);
    let counting = zpf_counting(n_dof);

    if args.json {
        let document = serde_json::json!({
            "experiment": args.experiment.to_string(),
            "ledger": ledger,
            "lemma": lemma,
            "counting": counting,
            "achieved_classes": achieved,
            "counting_bound_satisfied": ledger.satisfies_counting_bound(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&document).expect("audit serializes")
        );
    } else {
        println!("audit of {}", args.experiment);
        println!("  degrees of freedom           {}", ledger.n_dof);
        println!("  amplified source sets        {}", ledger.source_sets);
        println!(
            "  idle channels                {}  (photon 1: {}, photon 2: {})",
            ledger.idle_channels, ledger.idle_sets_left, ledger.idle_sets_right
        );
        println!(
            "  max distinguishable classes  {}",
            ledger.max_distinguishable_classes
        );
        println!("  achieved signature classes   {achieved}");
        println!(
            "  counting rule (n = {})        {} source sets, at most {} classes",
            counting.n_dof, counting.required_source_sets, counting.max_classes
        );
        println!(
            "  counting bound               {}",
            if ledger.satisfies_counting_bound() {
                "satisfied"
            } else {
                "violated"
            }
        );
        println!(
            "  channel conservation         {} inputs -> {} outputs ({})",
            lemma.input_sets,
            lemma.output_channels,
            if lemma.holds { "holds" } else { "broken" }
        );
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let r = resolve(args.flags(), &args.config)?;
    let states: Vec<String> = match setup_of(r.experiment) {
        Some(setup) => {
            let all = HyperBellParams::all_states();
            all.into_iter()
                .filter(|(pol, mom)| args.override_ancilla || setup.ancilla_admissible(*pol, *mom))
                .map(|(pol, mom)| HyperBellParams::selector(pol, mom))
                .collect()
        }
        None => PolarizationBell::ALL
            .iter()
            .map(|p| p.to_string())
            .collect(),
    };

    let mut columns: Option<Vec<(String, String)>> = None;
    let mut rows = Vec::new();
    for state in &states {
        let outcome = run_resolved(&r, state, true)?;
        let keys: Vec<(String, String)> = outcome.table.joint.keys().cloned().collect();
        match &columns {
            None => columns = Some(keys),
            Some(existing) => {
                if existing != &keys {
                    return Err(CliError::Config(
                        "sweep rows disagree on detector pairs".into(),
                    ));
                }
            }
        }
        let label = match &outcome.classification {
            Classification::Identified { state, .. } => state.clone(),
            Classification::Ambiguous { .. } => "ambiguous".to_string(),
        };
        let expected = outcome.expected.clone().unwrap_or_default();
        let collision = label != expected;
        let values: Vec<String> = outcome
            .table
            .joint
            .values()
            .map(|e| format!("{:.11e}", e.p))
            .collect();
        rows.push(format!(
            "{state},{label},{expected},{collision},{}",
            values.join(",")
        ));
    }

    let columns = columns.ok_or_else(|| CliError::Config("empty sweep".into()))?;
    let header: Vec<String> = columns.iter().map(|(a, b)| format!("{a}|{b}")).collect();
    let mut csv = format!("state,label,expected,collision,{}\n", header.join(","));
    for row in rows {
        csv.push_str(&row);
        csv.push('\n');
    }
    match &r.out {
        Some(path) => {
            fs::write(path, &csv)
                .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Expectation(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips_through_json() {
        let config = RunConfig {
            experiment: Some(Experiment::MomBsm),
            state: Some("Psi+:phi-".to_string()),
            engine: Some(EngineKind::Montecarlo),
            samples: Some(50_000),
            seed: Some(7),
            coupling: Some(0.12),
            coupling_phase: Some(0.3),
            gains: BTreeMap::from([("A1H".to_string(), 0.9)]),
            format: Some(Format::Csv),
            out: Some(PathBuf::from("/tmp/table.csv")),
        };
        let text = serde_json::to_string(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn flags_override_file_fields() {
        let file = RunConfig {
            experiment: Some(Experiment::PolBsm),
            seed: Some(1),
            samples: Some(1000),
            ..RunConfig::default()
        };
        let flags = RunConfig {
            seed: Some(9),
            ..RunConfig::default()
        };
        let merged = file.overridden_by(flags);
        assert_eq!(merged.seed, Some(9));
        assert_eq!(merged.samples, Some(1000));
        assert_eq!(merged.experiment, Some(Experiment::PolBsm));
    }

    #[test]
    fn gain_entries_must_be_name_value_pairs() {
        assert!(parse_gains(&["A1+=0.5".to_string()]).is_ok());
        assert!(parse_gains(&["A1+".to_string()]).is_err());
        assert!(parse_gains(&["A1+=x".to_string()]).is_err());
    }
}

//! Command line front end.
//!
//! Subcommands wrap the library: deterministic and stochastic checks,
//! population classification, sampling-scheme simulation, and acceptance
//! probability tables. Reports are JSON (tables also CSV), echo the resolved
//! configuration including any seed, and are byte-identical for identical
//! inputs and flags.
//!
//! Exit codes: 0 the run completed (the verdict is in the report), 2 bad
//! input or flags, 3 geometry errors, 4 power preconditions, 5 empty sample.

mod input;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use revpref::power::{
    power_brute_force, power_closed_form, power_monte_carlo, reproduce_table2, ErrorRate,
    PowerResult, TABLE2_SIZES,
};
use revpref::sampling::{
    counts_to_probabilities, cross_section_probabilities, multinomial_draw, panel_probabilities,
};
use revpref::{
    ChoiceProbabilities, DemandType, Error, PopulationDistribution, Region, SampleCounts, Seed,
    SufficientCondition, TheoremBranch,
};

use report::{counts_map, mixture_map, to_json, ProbabilitiesReport, RatField};

/// A failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::NonOverlappingBudgets | Error::OffBudgetLine { .. } => 3,
            Error::Region3MassPresent | Error::InstanceTooLarge { .. } => 4,
            Error::EmptySample => 5,
            _ => 2,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "revpref",
    version,
    about = "Rationalizability of demand in the two-good, two-budget environment"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test two observed choices for consistency with utility maximization
    CheckDeterministic(CheckArgs),
    /// Test region choice probabilities for stochastic rationalizability
    CheckStochastic(CheckArgs),
    /// Classify a population distribution over demand types
    ClassifyPopulation(CheckArgs),
    /// Simulate a sampling scheme and test the observed probabilities
    Sample(SampleArgs),
    /// Acceptance probability of the test under multinomial sampling
    Power(PowerArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Input JSON file
    #[arg(long)]
    input: PathBuf,
    /// Output format (verdict reports are JSON only)
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SampleArgs {
    /// Input JSON file with the population and, per scheme, sample weights
    #[arg(long)]
    input: PathBuf,
    /// Sampling scheme
    #[arg(long, value_enum)]
    scheme: Scheme,
    /// Sample size per observation (multinomial scheme; exactly one value)
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<u64>,
    /// RNG seed (multinomial scheme)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format (sample reports are JSON only)
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct PowerArgs {
    /// Population JSON file (not needed with --table2)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Computation method
    #[arg(long, value_enum, default_value_t = Method::ClosedForm)]
    method: Method,
    /// Sample sizes, comma separated
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<u64>,
    /// Monte Carlo replications
    #[arg(long, default_value_t = 10_000)]
    reps: u64,
    /// RNG seed (monte-carlo method)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the benchmark table at the reference sample sizes
    #[arg(long)]
    table2: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    CrossSection,
    Panel,
    Multinomial,
}

impl Scheme {
    fn name(self) -> &'static str {
        match self {
            Scheme::CrossSection => "cross-section",
            Scheme::Panel => "panel",
            Scheme::Multinomial => "multinomial",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    ClosedForm,
    BruteForce,
    MonteCarlo,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::BruteForce => "brute_force",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::CheckDeterministic(args) => check_deterministic(args),
        Command::CheckStochastic(args) => check_stochastic(args),
        Command::ClassifyPopulation(args) => classify_population(args),
        Command::Sample(args) => sample(args),
        Command::Power(args) => power(args),
    }
}

fn require_json(format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::invalid(
            "csv output is only available for power tables",
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckConfig {
    input: String,
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<&'static str>,
}

#[derive(Serialize)]
struct ViolationReport {
    revealed_preferred_observation: usize,
    over_observation: usize,
    explanation: String,
}

#[derive(Serialize)]
struct DeterministicReport {
    command: &'static str,
    config: CheckConfig,
    rationalizable: bool,
    demand_type: String,
    demand_type_rationalizable: bool,
    violations: Vec<ViolationReport>,
}

fn check_deterministic(args: CheckArgs) -> Result<String, CliError> {
    require_json(args.format)?;
    let (dataset, from_float) = input::load_deterministic(&args.input)?;
    let demand_type = dataset.demand_type();
    let violations: Vec<ViolationReport> = dataset
        .sarp_violations()
        .into_iter()
        .map(|v| {
            let s = v.first.number();
            let t = v.second.number();
            ViolationReport {
                revealed_preferred_observation: s,
                over_observation: t,
                explanation: format!(
                    "choice {t} is affordable at observation-{s} prices, so choice {s} is \
                     revealed preferred, yet observation-{t} prices do not make choice {s} \
                     strictly more expensive than choice {t}"
                ),
            }
        })
        .collect();
    let report = DeterministicReport {
        command: "check-deterministic",
        config: CheckConfig {
            input: args.input.display().to_string(),
            format: args.format.name(),
            tolerance: Some(if from_float {
                "1e-9 relative (float inputs)"
            } else {
                "exact"
            }),
        },
        rationalizable: violations.is_empty(),
        demand_type: demand_type.to_string(),
        demand_type_rationalizable: demand_type.is_rationalizable(),
        violations,
    };
    Ok(to_json(&report))
}

#[derive(Serialize)]
struct StochasticReport {
    command: &'static str,
    config: CheckConfig,
    rationalizable: bool,
    axiom_lhs: RatField,
    observed_probabilities: ProbabilitiesReport,
    mixture: Option<BTreeMap<String, String>>,
}

fn check_stochastic(args: CheckArgs) -> Result<String, CliError> {
    require_json(args.format)?;
    let pi = input::load_choice_probabilities(&args.input)?;
    let mixture = pi.solve_mixture();
    let report = StochasticReport {
        command: "check-stochastic",
        config: CheckConfig {
            input: args.input.display().to_string(),
            format: args.format.name(),
            tolerance: None,
        },
        rationalizable: pi.axiom_check(),
        axiom_lhs: RatField::of(&pi.axiom_lhs()),
        observed_probabilities: ProbabilitiesReport::of(&pi),
        mixture: mixture.as_ref().map(mixture_map),
    };
    Ok(to_json(&report))
}

#[derive(Serialize)]
struct RequirementReport {
    description: &'static str,
    lhs: RatField,
    rhs: RatField,
}

#[derive(Serialize)]
struct Region3Report {
    budget1: RatField,
    budget2: RatField,
}

#[derive(Serialize)]
struct ShortcutReport {
    rationalizable: bool,
    crossing_type_share: RatField,
    opposite_type_share: RatField,
}

#[derive(Serialize)]
struct PopulationReport {
    command: &'static str,
    config: CheckConfig,
    rationalizable: bool,
    branch: &'static str,
    requirement: RequirementReport,
    region3_mass: Region3Report,
    no_region3_shortcut: Option<ShortcutReport>,
    decisive_condition: Option<&'static str>,
}

fn classify_population(args: CheckArgs) -> Result<String, CliError> {
    require_json(args.format)?;
    let nu = input::load_population(&args.input)?;
    let verdict = nu.classify();
    let (branch, description) = match verdict.branch {
        TheoremBranch::Region3LighterOnBudget1 => (
            "region3_budget1_le_budget2",
            "region-2 mass on budget 1 must not exceed region-2 mass on budget 2",
        ),
        TheoremBranch::Region3HeavierOnBudget1 => (
            "region3_budget1_gt_budget2",
            "region-1 mass on budget 2 must not exceed region-1 mass on budget 1",
        ),
    };
    let shortcut = if nu.has_region3_mass() {
        None
    } else {
        let crossing = DemandType::of(Region::Two, Region::One);
        let opposite = DemandType::of(Region::One, Region::Two);
        Some(ShortcutReport {
            rationalizable: nu.classify_no_region3().expect("region-3 free"),
            crossing_type_share: RatField::of(nu.weight(crossing)),
            opposite_type_share: RatField::of(nu.weight(opposite)),
        })
    };
    let report = PopulationReport {
        command: "classify-population",
        config: CheckConfig {
            input: args.input.display().to_string(),
            format: args.format.name(),
            tolerance: None,
        },
        rationalizable: verdict.rationalizable,
        branch,
        requirement: RequirementReport {
            description,
            lhs: RatField::of(&verdict.requirement_lhs),
            rhs: RatField::of(&verdict.requirement_rhs),
        },
        region3_mass: Region3Report {
            budget1: RatField::of(&verdict.region3_budget1),
            budget2: RatField::of(&verdict.region3_budget2),
        },
        no_region3_shortcut: shortcut,
        decisive_condition: nu.decisive_condition().map(|c| match c {
            SufficientCondition::Type12Majority => {
                "at least half the population is type (1,2); acceptance is guaranteed"
            }
            SufficientCondition::Type21Majority => {
                "a strict majority is the crossing type (2,1); rejection is guaranteed"
            }
            SufficientCondition::NoRationalizableSupport => {
                "no rationalizable type has positive share; rejection is guaranteed"
            }
        }),
    };
    Ok(to_json(&report))
}

#[derive(Serialize)]
struct SampleConfig {
    input: String,
    scheme: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    format: &'static str,
}

#[derive(Serialize)]
struct CountsReport {
    n: u64,
    observation1: BTreeMap<String, u64>,
    observation2: BTreeMap<String, u64>,
}

#[derive(Serialize)]
struct SampleReport {
    command: &'static str,
    config: SampleConfig,
    observed_probabilities: ProbabilitiesReport,
    rationalizable: bool,
    axiom_lhs: RatField,
    counts: Option<CountsReport>,
}

fn sample(args: SampleArgs) -> Result<String, CliError> {
    require_json(args.format)?;
    let file = input::load_sample(&args.input)?;
    let nu = input::population_from_weights(&file.nu)?;

    let missing = |field: &str| {
        CliError::invalid(format!(
            "the {} scheme needs a {field} weight block in the input file",
            args.scheme.name()
        ))
    };

    let (pi, counts, n, seed): (ChoiceProbabilities, Option<(SampleCounts, SampleCounts)>, _, _) =
        match args.scheme {
            Scheme::CrossSection => {
                let s1 = input::sample_weights(&nu, file.s1.as_ref().ok_or_else(|| missing("s1"))?)?;
                let s2 = input::sample_weights(&nu, file.s2.as_ref().ok_or_else(|| missing("s2"))?)?;
                (cross_section_probabilities(&s1, &s2)?, None, None, None)
            }
            Scheme::Panel => {
                let s = input::sample_weights(&nu, file.s.as_ref().ok_or_else(|| missing("s"))?)?;
                (panel_probabilities(&s)?, None, None, None)
            }
            Scheme::Multinomial => {
                let n = match args.sizes.as_slice() {
                    [n] if *n >= 1 => *n,
                    _ => {
                        return Err(CliError::invalid(
                            "the multinomial scheme needs --sizes with exactly one positive value",
                        ))
                    }
                };
                let (c1, c2) = multinomial_draw(&nu, n, Seed(args.seed));
                let pi = counts_to_probabilities(&c1, &c2);
                (pi, Some((c1, c2)), Some(n), Some(args.seed))
            }
        };

    let report = SampleReport {
        command: "sample",
        config: SampleConfig {
            input: args.input.display().to_string(),
            scheme: args.scheme.name(),
            n,
            seed,
            format: args.format.name(),
        },
        observed_probabilities: ProbabilitiesReport::of(&pi),
        rationalizable: pi.axiom_check(),
        axiom_lhs: RatField::of(&pi.axiom_lhs()),
        counts: counts.map(|(c1, c2)| CountsReport {
            n: c1.total(),
            observation1: counts_map(&c1),
            observation2: counts_map(&c2),
        }),
    };
    Ok(to_json(&report))
}

#[derive(Serialize)]
struct PowerConfig {
    input: Option<String>,
    method: &'static str,
    sizes: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reps: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    table2: bool,
    format: &'static str,
}

#[derive(Serialize)]
struct ErrorRateReport {
    kind: &'static str,
    probability: f64,
}

#[derive(Serialize)]
struct PowerRow {
    n: u64,
    probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    standard_error: Option<f64>,
    error_rate: ErrorRateReport,
}

#[derive(Serialize)]
struct PowerReport {
    command: &'static str,
    config: PowerConfig,
    rows: Vec<PowerRow>,
}

#[derive(Serialize)]
struct Table2Entry {
    population: &'static str,
    n: u64,
    probability: String,
}

#[derive(Serialize)]
struct Table2Report {
    command: &'static str,
    config: PowerConfig,
    rows: Vec<Table2Entry>,
}

fn power_row(n: u64, result: &PowerResult) -> PowerRow {
    let error_rate = match result.error_rate {
        ErrorRate::FalseAcceptance { probability } => ErrorRateReport {
            kind: "false_acceptance",
            probability,
        },
        ErrorRate::FalseRejection { probability } => ErrorRateReport {
            kind: "false_rejection",
            probability,
        },
    };
    PowerRow {
        n,
        probability: result.acceptance_probability,
        standard_error: result.standard_error,
        error_rate,
    }
}

fn power(args: PowerArgs) -> Result<String, CliError> {
    if args.table2 {
        return power_table2(&args);
    }
    let input_path = args
        .input
        .as_ref()
        .ok_or_else(|| CliError::invalid("power needs --input (or --table2)"))?;
    if args.sizes.is_empty() {
        return Err(CliError::invalid("power needs --sizes (or --table2)"));
    }
    if args.sizes.iter().any(|n| *n == 0) {
        return Err(CliError::invalid("sample sizes must be positive"));
    }
    if args.method == Method::MonteCarlo && args.reps == 0 {
        return Err(CliError::invalid("--reps must be positive"));
    }
    let nu: PopulationDistribution = input::load_population(input_path)?;

    let mut rows = Vec::with_capacity(args.sizes.len());
    for &n in &args.sizes {
        let result = match args.method {
            Method::ClosedForm => power_closed_form(&nu, n)?,
            Method::BruteForce => power_brute_force(&nu, n)?,
            Method::MonteCarlo => power_monte_carlo(&nu, n, args.reps, Seed(args.seed)),
        };
        rows.push(power_row(n, &result));
    }

    let monte_carlo = args.method == Method::MonteCarlo;
    let config = PowerConfig {
        input: Some(input_path.display().to_string()),
        method: args.method.name(),
        sizes: args.sizes.clone(),
        reps: monte_carlo.then_some(args.reps),
        seed: monte_carlo.then_some(args.seed),
        table2: false,
        format: args.format.name(),
    };

    match args.format {
        Format::Json => Ok(to_json(&PowerReport {
            command: "power",
            config,
            rows,
        })),
        Format::Csv => {
            let mut out = String::from("method,n,probability,standard_error\n");
            for row in &rows {
                let se = row
                    .standard_error
                    .map(|s| s.to_string())
                    .unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    args.method.name(),
                    row.n,
                    row.probability,
                    se
                ));
            }
            out.pop();
            Ok(out)
        }
    }
}

fn power_table2(args: &PowerArgs) -> Result<String, CliError> {
    let table = reproduce_table2();
    let config = PowerConfig {
        input: None,
        method: Method::ClosedForm.name(),
        sizes: TABLE2_SIZES.to_vec(),
        reps: None,
        seed: None,
        table2: true,
        format: args.format.name(),
    };
    let entries: Vec<Table2Entry> = table
        .rows
        .iter()
        .flat_map(|row| {
            TABLE2_SIZES
                .iter()
                .zip(row.probabilities)
                .map(|(n, p)| Table2Entry {
                    population: row.population,
                    n: *n,
                    probability: format!("{p:.4}"),
                })
        })
        .collect();
    match args.format {
        Format::Json => Ok(to_json(&Table2Report {
            command: "power",
            config,
            rows: entries,
        })),
        Format::Csv => {
            let mut out = String::from("population,n,probability\n");
            for entry in &entries {
                out.push_str(&format!(
                    "{},{},{}\n",
                    entry.population, entry.n, entry.probability
                ));
            }
            out.pop();
            Ok(out)
        }
    }
}

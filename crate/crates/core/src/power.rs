//! Probability that a multinomial sample is stochastically rationalized.
//!
//! For populations that never choose region 3, a sample of equal size per
//! observation passes the rationalizability test exactly when observation 1
//! produces at least as many region-1 choices as observation 2. With
//! region-1 counts `X ~ Binomial(n, p_1|1)` and `Y ~ Binomial(n, p_1|2)`
//! independent, the acceptance probability is `P(X >= Y)`.
//!
//! Three routes are provided: a closed form evaluating the binomial double
//! sum in O(n), an exact enumeration oracle for small `n`, and a seeded
//! Monte Carlo estimator that also handles populations with region-3 mass.
//! When the population contains the non-rationalizable crossing type this
//! acceptance probability is the false-acceptance rate; when it does not,
//! its complement is the false-rejection rate.

use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::geometry::{DemandType, Region};
use crate::population::PopulationDistribution;
use crate::rational::Rat;
use crate::sampling::{counts_to_probabilities, multinomial_draw_replication, SampleCounts, Seed};

/// Region-1 and region-2 shares per budget for a region-3-free population:
/// `p_j|1` sums types by their budget-1 region, `p_j|2` by budget-2 region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMarginals {
    region1_budget1: Rat,
    region2_budget1: Rat,
    region1_budget2: Rat,
    region2_budget2: Rat,
}

impl BinaryMarginals {
    pub fn region1_budget1(&self) -> &Rat {
        &self.region1_budget1
    }

    pub fn region2_budget1(&self) -> &Rat {
        &self.region2_budget1
    }

    pub fn region1_budget2(&self) -> &Rat {
        &self.region1_budget2
    }

    pub fn region2_budget2(&self) -> &Rat {
        &self.region2_budget2
    }
}

/// Binary region marginals of a population with no region-3 mass.
pub fn marginals_of(nu: &PopulationDistribution) -> Result<BinaryMarginals, Error> {
    if nu.has_region3_mass() {
        return Err(Error::Region3MassPresent);
    }
    let share = |j, k| nu.weight(DemandType::of(j, k)).clone();
    Ok(BinaryMarginals {
        region1_budget1: share(Region::One, Region::One) + share(Region::One, Region::Two),
        region2_budget1: share(Region::Two, Region::One) + share(Region::Two, Region::Two),
        region1_budget2: share(Region::One, Region::One) + share(Region::Two, Region::One),
        region2_budget2: share(Region::One, Region::Two) + share(Region::Two, Region::Two),
    })
}

/// How the acceptance probability was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMethod {
    ClosedForm,
    BruteForce,
    MonteCarlo,
}

/// What the acceptance probability means for the population at hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorRate {
    /// The population contains the crossing type (2,1): passing the test is
    /// a false acceptance, and this is its probability.
    FalseAcceptance { probability: f64 },
    /// No crossing types: failing the test is a false rejection, and this is
    /// its probability.
    FalseRejection { probability: f64 },
}

/// Acceptance probability of the stochastic rationalizability test under
/// multinomial sampling, with its sampling-error interpretation.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerResult {
    pub acceptance_probability: f64,
    pub method: PowerMethod,
    /// Binomial standard error; Monte Carlo only.
    pub standard_error: Option<f64>,
    pub error_rate: ErrorRate,
}

fn labeled(nu: &PopulationDistribution, acceptance: f64) -> ErrorRate {
    let crossing = nu.weight(DemandType::of(Region::Two, Region::One));
    if crossing.is_positive() {
        ErrorRate::FalseAcceptance {
            probability: acceptance,
        }
    } else {
        ErrorRate::FalseRejection {
            probability: 1.0 - acceptance,
        }
    }
}

/// Binomial pmf over `0..=n`, built outward from the mode by the successive
/// term ratio and normalized; degenerate `p` short-circuits to a unit vector.
/// Working from the mode keeps far-tail underflow from zeroing the array.
fn binomial_pmf(n: u64, p: f64) -> Vec<f64> {
    let len = n as usize + 1;
    let mut pmf = vec![0.0; len];
    if p <= 0.0 {
        pmf[0] = 1.0;
        return pmf;
    }
    if p >= 1.0 {
        pmf[len - 1] = 1.0;
        return pmf;
    }
    let q = 1.0 - p;
    let mode = (((n + 1) as f64) * p).floor().min(n as f64) as usize;
    pmf[mode] = 1.0;
    for k in mode..len - 1 {
        pmf[k + 1] = pmf[k] * ((n as usize - k) as f64 / (k + 1) as f64) * (p / q);
    }
    for k in (1..=mode).rev() {
        pmf[k - 1] = pmf[k] * (k as f64 / (n as usize - k + 1) as f64) * (q / p);
    }
    let total: f64 = pmf.iter().sum();
    for value in &mut pmf {
        *value /= total;
    }
    pmf
}

/// `P(X >= Y)` for independent `X ~ Bin(n, px)`, `Y ~ Bin(n, py)`.
fn binomial_dominance(n: u64, px: f64, py: f64) -> f64 {
    let pmf_x = binomial_pmf(n, px);
    let pmf_y = binomial_pmf(n, py);
    let len = pmf_x.len();
    // Survival of X by suffix sum, small tail terms first.
    let mut survival_x = vec![0.0; len + 1];
    for i in (0..len).rev() {
        survival_x[i] = survival_x[i + 1] + pmf_x[i];
    }
    let total: f64 = (0..len).map(|i| pmf_y[i] * survival_x[i]).sum();
    total.clamp(0.0, 1.0)
}

/// Closed-form acceptance probability for a region-3-free population.
pub fn power_closed_form(nu: &PopulationDistribution, n: u64) -> Result<PowerResult, Error> {
    assert!(n >= 1, "sample size must be positive");
    let marginals = marginals_of(nu)?;
    let px = marginals.region1_budget1().to_f64().unwrap_or(0.0);
    let py = marginals.region1_budget2().to_f64().unwrap_or(0.0);
    let acceptance = binomial_dominance(n, px, py);
    Ok(PowerResult {
        acceptance_probability: acceptance,
        method: PowerMethod::ClosedForm,
        standard_error: None,
        error_rate: labeled(nu, acceptance),
    })
}

/// Largest sample size [`power_brute_force`] enumerates.
pub const BRUTE_FORCE_MAX_N: u64 = 8;

/// Exact acceptance probability by enumerating every pair of count vectors
/// over the four region-3-free types, weighting each by its multinomial
/// probability and applying the rationalizability test to the observed
/// frequencies. Exponential state space; limited to [`BRUTE_FORCE_MAX_N`].
pub fn power_brute_force_exact(nu: &PopulationDistribution, n: u64) -> Result<Rat, Error> {
    assert!(n >= 1, "sample size must be positive");
    marginals_of(nu)?;
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::InstanceTooLarge {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let types = [
        DemandType::of(Region::One, Region::One),
        DemandType::of(Region::One, Region::Two),
        DemandType::of(Region::Two, Region::One),
        DemandType::of(Region::Two, Region::Two),
    ];
    let shares: Vec<Rat> = types.iter().map(|ty| nu.weight(*ty).clone()).collect();
    let outcomes = weighted_count_vectors(n, &shares);

    let to_counts = |allocation: &[u64; 4]| {
        let mut counts = [0u64; 9];
        for (ty, c) in types.iter().zip(allocation) {
            counts[ty.index()] = *c;
        }
        SampleCounts::new(counts).expect("n >= 1 trials allocated")
    };

    let mut accepted = Rat::zero();
    for (alloc1, w1) in &outcomes {
        let counts1 = to_counts(alloc1);
        for (alloc2, w2) in &outcomes {
            let counts2 = to_counts(alloc2);
            if counts_to_probabilities(&counts1, &counts2).axiom_check() {
                accepted += w1 * w2;
            }
        }
    }
    Ok(accepted)
}

/// [`power_brute_force_exact`] packaged alongside the other methods.
pub fn power_brute_force(nu: &PopulationDistribution, n: u64) -> Result<PowerResult, Error> {
    let exact = power_brute_force_exact(nu, n)?;
    let acceptance = exact.to_f64().unwrap_or(0.0);
    Ok(PowerResult {
        acceptance_probability: acceptance,
        method: PowerMethod::BruteForce,
        standard_error: None,
        error_rate: labeled(nu, acceptance),
    })
}

/// All count vectors of `n` trials over the given shares with nonzero
/// probability, paired with their exact multinomial probabilities.
fn weighted_count_vectors(n: u64, shares: &[Rat]) -> Vec<([u64; 4], Rat)> {
    assert_eq!(shares.len(), 4);
    let mut outcomes = Vec::new();
    for c0 in 0..=n {
        for c1 in 0..=n - c0 {
            for c2 in 0..=n - c0 - c1 {
                let c3 = n - c0 - c1 - c2;
                let allocation = [c0, c1, c2, c3];
                if allocation
                    .iter()
                    .zip(shares)
                    .any(|(c, p)| *c > 0 && p.is_zero())
                {
                    continue;
                }
                let mut probability = Rat::from_integer(multinomial_coefficient(n, &allocation));
                for (c, p) in allocation.iter().zip(shares) {
                    if *c > 0 {
                        probability *= num::pow(p.clone(), *c as usize);
                    }
                }
                outcomes.push((allocation, probability));
            }
        }
    }
    outcomes
}

fn multinomial_coefficient(n: u64, allocation: &[u64; 4]) -> BigInt {
    let mut coefficient = factorial(n);
    for c in allocation {
        coefficient /= factorial(*c);
    }
    coefficient
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// Monte Carlo acceptance estimate over seeded multinomial replications.
///
/// Handles populations with region-3 mass, unlike the closed form.
/// Replications use independent substreams of the seed and are combined by
/// an order-free count, so the estimate is bit-identical however the work is
/// scheduled across threads.
pub fn power_monte_carlo(
    nu: &PopulationDistribution,
    n: u64,
    replications: u64,
    seed: Seed,
) -> PowerResult {
    assert!(n >= 1, "sample size must be positive");
    assert!(replications >= 1, "at least one replication");
    let accepted: u64 = (0..replications)
        .into_par_iter()
        .map(|replication| {
            let (counts1, counts2) = multinomial_draw_replication(nu, n, seed, replication);
            u64::from(counts_to_probabilities(&counts1, &counts2).axiom_check())
        })
        .sum();
    let acceptance = accepted as f64 / replications as f64;
    let standard_error = (acceptance * (1.0 - acceptance) / replications as f64).sqrt();
    PowerResult {
        acceptance_probability: acceptance,
        method: PowerMethod::MonteCarlo,
        standard_error: Some(standard_error),
        error_rate: labeled(nu, acceptance),
    }
}

/// Sample sizes of the reference table.
pub const TABLE2_SIZES: [u64; 5] = [10, 50, 100, 500, 1000];

/// One population's row of the reference table, rounded to four decimals.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2Row {
    pub population: &'static str,
    pub probabilities: [f64; 5],
}

/// The benchmark acceptance-probability table: uniform and proportional
/// populations at the five reference sample sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2 {
    pub rows: [Table2Row; 2],
}

/// Computes the benchmark table via the closed form, rounding each entry
/// half-away-from-zero to four decimals.
pub fn reproduce_table2() -> Table2 {
    let row = |population: &'static str, nu: PopulationDistribution| {
        let probabilities = TABLE2_SIZES.map(|n| {
            let result = power_closed_form(&nu, n).expect("benchmarks are region-3 free");
            round4(result.acceptance_probability)
        });
        Table2Row {
            population,
            probabilities,
        }
    };
    Table2 {
        rows: [
            row("uniform", PopulationDistribution::benchmark_uniform()),
            row("proportional", PopulationDistribution::benchmark_proportional()),
        ],
    }
}

/// Round half away from zero to four decimal places.
pub fn round4(x: f64) -> f64 {
    (x * 10_000.0).round() / 10_000.0
}

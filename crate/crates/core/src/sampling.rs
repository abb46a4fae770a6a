//! Sampling schemes producing observed choice probabilities.
//!
//! Cross-section sampling draws an arbitrary nonnegative sub-population for
//! each observation; panel sampling reuses one sub-population for both.
//! These are deterministic transforms of caller-supplied weights. The
//! multinomial scheme is the stochastic one: independent samples of a fixed
//! size per observation, each individual's demand type drawn with its
//! population probability, reproducible from a seed.

use num::traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::Error;
use crate::geometry::{DemandType, Observation, Region};
use crate::population::PopulationDistribution;
use crate::rational::Rat;
use crate::stochastic::ChoiceProbabilities;

/// Seed for reproducible sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seed(pub u64);

/// Nonnegative sampling weights over demand types, at most the population
/// share of each type; the shares sampled into an observation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleWeights {
    s: [Rat; 9],
}

impl SampleWeights {
    /// Weights only need to be nonnegative; checking them against a
    /// population is [`SampleWeights::drawn_from`]'s job.
    pub fn new(s: [Rat; 9]) -> Result<Self, Error> {
        if s.iter().any(|w| w.is_negative()) {
            return Err(Error::NegativeWeight);
        }
        Ok(SampleWeights { s })
    }

    /// Builds weights from sparse entries; omitted types get zero.
    pub fn from_weights(weights: &[(DemandType, Rat)]) -> Result<Self, Error> {
        let mut s: [Rat; 9] = std::array::from_fn(|_| Rat::zero());
        for (ty, w) in weights {
            s[ty.index()] += w;
        }
        Self::new(s)
    }

    /// Validates that a sample could come from `nu`: no type is sampled
    /// beyond its population share.
    pub fn drawn_from(nu: &PopulationDistribution, s: [Rat; 9]) -> Result<Self, Error> {
        let weights = Self::new(s)?;
        if weights
            .s
            .iter()
            .zip(nu.as_array())
            .any(|(sample, share)| sample > share)
        {
            return Err(Error::ExceedsPopulation);
        }
        Ok(weights)
    }

    /// The full population sampled in an observation.
    pub fn full_population(nu: &PopulationDistribution) -> Self {
        SampleWeights {
            s: nu.as_array().clone(),
        }
    }

    pub fn weight(&self, ty: DemandType) -> &Rat {
        &self.s[ty.index()]
    }

    pub fn as_array(&self) -> &[Rat; 9] {
        &self.s
    }

    pub fn total_mass(&self) -> Rat {
        self.s.iter().sum()
    }

    fn region_mass(&self, r: Region, t: Observation) -> Rat {
        DemandType::ALL
            .iter()
            .filter(|ty| ty.region(t) == r)
            .map(|ty| self.s[ty.index()].clone())
            .sum()
    }

    /// Normalized region shares of these weights on budget `t`.
    fn region_shares(&self, t: Observation) -> Result<[Rat; 3], Error> {
        let total = self.total_mass();
        if total.is_zero() {
            return Err(Error::EmptySample);
        }
        Ok([
            self.region_mass(Region::One, t) / &total,
            self.region_mass(Region::Two, t) / &total,
            self.region_mass(Region::Three, t) / &total,
        ])
    }
}

/// Observed choice probabilities of a cross-section sample: observation 1
/// sees only `s1`, observation 2 only `s2`.
pub fn cross_section_probabilities(
    s1: &SampleWeights,
    s2: &SampleWeights,
) -> Result<ChoiceProbabilities, Error> {
    let budget1 = s1.region_shares(Observation::One)?;
    let budget2 = s2.region_shares(Observation::Two)?;
    Ok(ChoiceProbabilities::from_regions(budget1, budget2)
        .expect("normalized region masses form two simplices"))
}

/// Panel sampling: the same individuals appear in both observations.
pub fn panel_probabilities(s: &SampleWeights) -> Result<ChoiceProbabilities, Error> {
    cross_section_probabilities(s, s)
}

/// Demand-type counts of one observation's sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleCounts {
    counts: [u64; 9],
}

impl SampleCounts {
    pub fn new(counts: [u64; 9]) -> Result<Self, Error> {
        if counts.iter().sum::<u64>() == 0 {
            return Err(Error::EmptySample);
        }
        Ok(SampleCounts { counts })
    }

    pub fn count(&self, ty: DemandType) -> u64 {
        self.counts[ty.index()]
    }

    pub fn as_array(&self) -> &[u64; 9] {
        &self.counts
    }

    /// The sample size.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Empirical region shares of this observation's sample on budget `t`.
    pub fn region_frequencies(&self, t: Observation) -> [Rat; 3] {
        let n = Rat::from_integer(self.total().into());
        let tally = |r: Region| {
            let hits: u64 = DemandType::ALL
                .iter()
                .filter(|ty| ty.region(t) == r)
                .map(|ty| self.counts[ty.index()])
                .sum();
            Rat::from_integer(hits.into()) / &n
        };
        [tally(Region::One), tally(Region::Two), tally(Region::Three)]
    }
}

/// Observed choice probabilities from one count vector per observation.
pub fn counts_to_probabilities(
    observation1: &SampleCounts,
    observation2: &SampleCounts,
) -> ChoiceProbabilities {
    ChoiceProbabilities::from_regions(
        observation1.region_frequencies(Observation::One),
        observation2.region_frequencies(Observation::Two),
    )
    .expect("empirical frequencies form two simplices")
}

/// Independent multinomial samples of size `n` for both observations.
///
/// Equivalent to [`multinomial_draw_replication`] at replication 0.
pub fn multinomial_draw(
    nu: &PopulationDistribution,
    n: u64,
    seed: Seed,
) -> (SampleCounts, SampleCounts) {
    multinomial_draw_replication(nu, n, seed, 0)
}

/// One replication of the multinomial scheme.
///
/// Each (replication, observation) pair draws from its own ChaCha8 stream of
/// the seed, so replications are mutually independent, may run concurrently
/// in any order, and reproduce exactly for a given `(seed, replication)`.
pub fn multinomial_draw_replication(
    nu: &PopulationDistribution,
    n: u64,
    seed: Seed,
    replication: u64,
) -> (SampleCounts, SampleCounts) {
    assert!(n >= 1, "sample size must be positive");
    let draw = |t: Observation| {
        let mut rng = substream(seed, replication, t);
        SampleCounts {
            counts: multinomial_counts(&mut rng, nu, n),
        }
    };
    (draw(Observation::One), draw(Observation::Two))
}

fn substream(seed: Seed, replication: u64, t: Observation) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    rng.set_stream(replication * 2 + t.index() as u64);
    rng
}

/// Sequential conditional-binomial decomposition: for each type in index
/// order, the count given the remaining trials is binomial with the type's
/// share of the remaining mass. Remaining mass is tracked exactly and only
/// converted to a double per step, and the last supported type takes all
/// remaining trials, so the counts always sum to `n`.
fn multinomial_counts(rng: &mut ChaCha8Rng, nu: &PopulationDistribution, n: u64) -> [u64; 9] {
    let mut counts = [0u64; 9];
    let mut remaining_trials = n;
    let mut remaining_mass = Rat::one();
    for (i, share) in nu.as_array().iter().enumerate() {
        if remaining_trials == 0 || share.is_zero() {
            continue;
        }
        if *share == remaining_mass {
            counts[i] = remaining_trials;
            remaining_trials = 0;
            continue;
        }
        let p = (share / &remaining_mass).to_f64().unwrap_or(0.0).clamp(0.0, 1.0);
        let drawn = if p <= 0.0 {
            0
        } else if p >= 1.0 {
            remaining_trials
        } else {
            Binomial::new(remaining_trials, p)
                .expect("probability in (0,1)")
                .sample(rng)
        };
        counts[i] = drawn;
        remaining_trials -= drawn;
        remaining_mass -= share;
    }
    debug_assert_eq!(remaining_trials, 0, "distribution sums to one");
    counts
}

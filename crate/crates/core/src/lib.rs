//! Rationalizability of demand in the two-good, two-budget environment.
//!
//! Two overlapping budget lines split each line into three demand regions:
//! the segment above the other line, the segment below it, and the single
//! intersection point. A pair of region choices is a *demand type*; six of
//! the nine types are consistent with maximizing one locally non-satiated
//! utility function, three are not. Aggregate region-choice probabilities
//! are *stochastically rationalizable* when they are a mixture of the six
//! rationalizable types.
//!
//! The crate provides:
//!
//! * [`geometry`] — budget-set geometry, region classification, the demand
//!   type taxonomy, and the deterministic revealed-preference test.
//! * [`stochastic`] — the closed-form rationalizability axiom and exact
//!   feasibility / mixture recovery for the region-probability system.
//! * [`population`] — classification of a population distribution over all
//!   nine demand types, without sampling error.
//! * [`sampling`] — cross-section, panel, and multinomial sampling schemes
//!   producing observed choice probabilities.
//! * [`power`] — the probability that a multinomial sample of a given
//!   population is stochastically rationalized (closed form, brute-force
//!   oracle, and Monte Carlo).
//!
//! All core arithmetic is exact over arbitrary-precision rationals; floats
//! are converted exactly at the boundary.

pub mod error;
pub mod geometry;
pub mod population;
pub mod power;
pub mod rational;
pub mod sampling;
pub mod simplex;
pub mod stochastic;

pub use error::Error;
pub use geometry::{
    Budget, BudgetPair, Bundle, DemandType, DeterministicDataset, Observation, Region, Tolerance,
};
pub use population::{
    PopulationDistribution, PopulationVerdict, SufficientCondition, TheoremBranch,
};
pub use power::{BinaryMarginals, ErrorRate, PowerMethod, PowerResult, Table2, TABLE2_SIZES};
pub use rational::Rat;
pub use sampling::{SampleCounts, SampleWeights, Seed};
pub use stochastic::{ChoiceProbabilities, RationalMixture};

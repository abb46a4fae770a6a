//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Budget lines are proportional or cross outside the strictly positive orthant.
    #[error("budget lines do not overlap in the positive orthant")]
    NonOverlappingBudgets,

    /// A bundle claimed to lie on a budget line does not.
    #[error("bundle is not on budget line {observation}")]
    OffBudgetLine { observation: usize },

    /// A price must be strictly positive.
    #[error("budget prices must be strictly positive")]
    NonpositivePrice,

    /// A bundle component must be nonnegative.
    #[error("bundle quantities must be nonnegative")]
    NegativeQuantity,

    /// Choice probabilities must be nonnegative and sum to one per budget.
    #[error("choice probabilities for budget {observation} are not a probability vector")]
    NotAProbabilityVector { observation: usize },

    /// A distribution over demand types must be nonnegative and sum to one.
    #[error("demand-type weights are not a probability distribution")]
    NotADistribution,

    /// Sample weights must be nonnegative.
    #[error("sample weights must be nonnegative")]
    NegativeWeight,

    /// A sample weight exceeds the population share it is drawn from.
    #[error("sample weight for a demand type exceeds its population share")]
    ExceedsPopulation,

    /// Counts must sum to the declared sample size.
    #[error("sample counts do not sum to the declared sample size")]
    CountMismatch,

    /// An operation that normalizes sample weights received zero total mass.
    #[error("sample has zero total mass")]
    EmptySample,

    /// The operation requires a population with no mass on region-3 types.
    #[error("population places mass on a demand type that chooses region 3")]
    Region3MassPresent,

    /// Exhaustive enumeration is only supported for small sample sizes.
    #[error("sample size {n} exceeds the enumeration limit {max}")]
    InstanceTooLarge { n: u64, max: u64 },

    /// A numeric string could not be parsed as a rational.
    #[error("cannot parse {0:?} as a rational number")]
    InvalidNumber(String),

    /// A float input was NaN or infinite.
    #[error("number is not finite")]
    NonFiniteNumber,
}

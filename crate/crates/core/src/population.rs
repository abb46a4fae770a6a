//! Population-level classification without sampling error.
//!
//! A population is a probability distribution over all nine demand types.
//! Sampling the entire population turns type shares directly into region
//! choice probabilities, so stochastic rationalizability of the population
//! dataset reduces to an inequality between type-share sums. The check here
//! reports which of the two branches fired and the sums it compared, and a
//! faster special case covers populations with no mass on the knife-edge
//! region-3 types.

use num::traits::{One, Signed, Zero};

use crate::error::Error;
use crate::geometry::{DemandType, Observation, Region};
use crate::rational::{rat, Rat};
use crate::stochastic::ChoiceProbabilities;

/// A probability distribution over all nine demand types, stored in the
/// order of [`DemandType::ALL`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopulationDistribution {
    nu: [Rat; 9],
}

/// Which branch of the population criterion applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremBranch {
    /// Region-3 mass on budget 1 is at most that on budget 2; the test
    /// compares region-2 masses across budgets.
    Region3LighterOnBudget1,
    /// Region-3 mass on budget 1 exceeds that on budget 2; the test
    /// compares region-1 masses across budgets.
    Region3HeavierOnBudget1,
}

/// Outcome of the population classification, with the numbers behind it.
///
/// The population is stochastically rationalizable iff `requirement_lhs <=
/// requirement_rhs` on the branch selected by the region-3 masses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopulationVerdict {
    pub rationalizable: bool,
    pub branch: TheoremBranch,
    pub requirement_lhs: Rat,
    pub requirement_rhs: Rat,
    pub region3_budget1: Rat,
    pub region3_budget2: Rat,
}

/// A share condition that settles the classification on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SufficientCondition {
    /// At least half the population is type (1,2): always rationalizable.
    Type12Majority,
    /// A strict majority is the crossing type (2,1): never rationalizable.
    Type21Majority,
    /// Every supported type is non-rationalizable: never rationalizable.
    NoRationalizableSupport,
}

impl PopulationDistribution {
    pub fn new(nu: [Rat; 9]) -> Result<Self, Error> {
        if nu.iter().any(|w| w.is_negative()) || nu.iter().sum::<Rat>() != Rat::one() {
            return Err(Error::NotADistribution);
        }
        Ok(PopulationDistribution { nu })
    }

    /// Builds a distribution from sparse weights; omitted types get zero and
    /// repeated types accumulate.
    pub fn from_weights(weights: &[(DemandType, Rat)]) -> Result<Self, Error> {
        let mut nu: [Rat; 9] = std::array::from_fn(|_| Rat::zero());
        for (ty, w) in weights {
            nu[ty.index()] += w;
        }
        Self::new(nu)
    }

    /// All mass on one demand type.
    pub fn point_mass(ty: DemandType) -> Self {
        let mut nu: [Rat; 9] = std::array::from_fn(|_| Rat::zero());
        nu[ty.index()] = Rat::one();
        PopulationDistribution { nu }
    }

    /// The uniform benchmark: one quarter on each demand type that never
    /// chooses region 3.
    pub fn benchmark_uniform() -> Self {
        let quarter = rat(1, 4);
        Self::from_weights(&[
            (DemandType::of(Region::One, Region::One), quarter.clone()),
            (DemandType::of(Region::One, Region::Two), quarter.clone()),
            (DemandType::of(Region::Two, Region::One), quarter.clone()),
            (DemandType::of(Region::Two, Region::Two), quarter),
        ])
        .expect("weights sum to one")
    }

    /// The proportional benchmark: shares proportional to the lengths the
    /// crossing cuts from each budget line (1/3 and 2/3 for the symmetric
    /// price pair), the region shares of uniform choice on the line.
    pub fn benchmark_proportional() -> Self {
        Self::from_weights(&[
            (DemandType::of(Region::One, Region::One), rat(2, 9)),
            (DemandType::of(Region::One, Region::Two), rat(4, 9)),
            (DemandType::of(Region::Two, Region::One), rat(1, 9)),
            (DemandType::of(Region::Two, Region::Two), rat(2, 9)),
        ])
        .expect("weights sum to one")
    }

    pub fn weight(&self, ty: DemandType) -> &Rat {
        &self.nu[ty.index()]
    }

    pub fn as_array(&self) -> &[Rat; 9] {
        &self.nu
    }

    /// Demand types carrying positive probability.
    pub fn support(&self) -> impl Iterator<Item = DemandType> + '_ {
        DemandType::ALL
            .into_iter()
            .filter(|ty| self.nu[ty.index()].is_positive())
    }

    /// Total mass of types choosing region `r` on budget `t`.
    pub fn region_mass(&self, r: Region, t: Observation) -> Rat {
        DemandType::ALL
            .iter()
            .filter(|ty| ty.region(t) == r)
            .map(|ty| self.nu[ty.index()].clone())
            .sum()
    }

    /// Whether any mass sits on a type that chooses region 3 somewhere.
    pub fn has_region3_mass(&self) -> bool {
        DemandType::ALL
            .iter()
            .any(|ty| {
                (ty.budget1 == Region::Three || ty.budget2 == Region::Three)
                    && self.nu[ty.index()].is_positive()
            })
    }

    /// The choice probabilities a full-population sample produces: region
    /// shares are sums of the relevant type shares.
    pub fn induced_probabilities(&self) -> ChoiceProbabilities {
        let triple = |t: Observation| {
            [
                self.region_mass(Region::One, t),
                self.region_mass(Region::Two, t),
                self.region_mass(Region::Three, t),
            ]
        };
        ChoiceProbabilities::from_regions(triple(Observation::One), triple(Observation::Two))
            .expect("region masses of a distribution form two simplices")
    }

    /// Stochastic rationalizability straight from type shares, with the
    /// fired branch and compared sums.
    pub fn classify(&self) -> PopulationVerdict {
        let region3_budget1 = self.region_mass(Region::Three, Observation::One);
        let region3_budget2 = self.region_mass(Region::Three, Observation::Two);
        let (branch, lhs, rhs) = if region3_budget1 <= region3_budget2 {
            (
                TheoremBranch::Region3LighterOnBudget1,
                self.region_mass(Region::Two, Observation::One),
                self.region_mass(Region::Two, Observation::Two),
            )
        } else {
            (
                TheoremBranch::Region3HeavierOnBudget1,
                self.region_mass(Region::One, Observation::Two),
                self.region_mass(Region::One, Observation::One),
            )
        };
        PopulationVerdict {
            rationalizable: lhs <= rhs,
            branch,
            requirement_lhs: lhs,
            requirement_rhs: rhs,
            region3_budget1,
            region3_budget2,
        }
    }

    /// The region-3-free special case: rationalizable iff the share of the
    /// crossing type (2,1) does not exceed the share of type (1,2).
    pub fn classify_no_region3(&self) -> Result<bool, Error> {
        if self.has_region3_mass() {
            return Err(Error::Region3MassPresent);
        }
        let crossing = self.weight(DemandType::of(Region::Two, Region::One));
        let opposite = self.weight(DemandType::of(Region::One, Region::Two));
        Ok(crossing <= opposite)
    }

    /// A share condition that already decides the verdict, if one applies.
    pub fn decisive_condition(&self) -> Option<SufficientCondition> {
        let half = rat(1, 2);
        if *self.weight(DemandType::of(Region::One, Region::Two)) >= half {
            return Some(SufficientCondition::Type12Majority);
        }
        if *self.weight(DemandType::of(Region::Two, Region::One)) > half {
            return Some(SufficientCondition::Type21Majority);
        }
        if self.support().all(|ty| !ty.is_rationalizable()) {
            return Some(SufficientCondition::NoRationalizableSupport);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_population() -> PopulationDistribution {
        PopulationDistribution::from_weights(&[
            (DemandType::of(Region::One, Region::Two), rat(9, 10)),
            (DemandType::of(Region::Two, Region::One), rat(1, 10)),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_bad_distributions() {
        let mut nu: [Rat; 9] = std::array::from_fn(|_| Rat::zero());
        nu[0] = rat(1, 2);
        assert_eq!(
            PopulationDistribution::new(nu).unwrap_err(),
            Error::NotADistribution
        );
    }

    #[test]
    fn induced_probabilities_of_the_worked_population() {
        let pi = example_population().induced_probabilities();
        let expected = ChoiceProbabilities::new([
            rat(9, 10),
            rat(1, 10),
            rat(0, 1),
            rat(1, 10),
            rat(9, 10),
            rat(0, 1),
        ])
        .unwrap();
        assert_eq!(pi, expected);
    }

    #[test]
    fn induced_probabilities_of_point_mass_and_uniform() {
        let crossing_type =
            PopulationDistribution::point_mass(DemandType::of(Region::Three, Region::Three));
        let pi = crossing_type.induced_probabilities();
        assert_eq!(
            pi.as_array(),
            &[rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 1)]
        );

        let ninth: [Rat; 9] = std::array::from_fn(|_| rat(1, 9));
        let uniform9 = PopulationDistribution::new(ninth).unwrap();
        let third = rat(1, 3);
        assert!(uniform9
            .induced_probabilities()
            .as_array()
            .iter()
            .all(|p| *p == third));
    }

    #[test]
    fn classification_examples() {
        assert!(example_population().classify().rationalizable);

        let pure_crossing =
            PopulationDistribution::point_mass(DemandType::of(Region::Two, Region::One));
        assert!(!pure_crossing.classify().rationalizable);

        let ninth: [Rat; 9] = std::array::from_fn(|_| rat(1, 9));
        let uniform9 = PopulationDistribution::new(ninth).unwrap();
        let verdict = uniform9.classify();
        assert!(verdict.rationalizable, "equality satisfies the weak bound");
        assert_eq!(verdict.branch, TheoremBranch::Region3LighterOnBudget1);
        assert_eq!(verdict.region3_budget1, rat(1, 3));
        assert_eq!(verdict.region3_budget2, rat(1, 3));
        assert_eq!(verdict.requirement_lhs, verdict.requirement_rhs);
    }

    #[test]
    fn no_region3_shortcut() {
        assert_eq!(example_population().classify_no_region3(), Ok(true));

        let split = PopulationDistribution::from_weights(&[
            (DemandType::of(Region::Two, Region::One), rat(1, 2)),
            (DemandType::of(Region::One, Region::Two), rat(1, 2)),
        ])
        .unwrap();
        assert_eq!(split.classify_no_region3(), Ok(true));

        let heavy_crossing = PopulationDistribution::from_weights(&[
            (DemandType::of(Region::Two, Region::One), rat(3, 5)),
            (DemandType::of(Region::One, Region::One), rat(2, 5)),
        ])
        .unwrap();
        assert_eq!(heavy_crossing.classify_no_region3(), Ok(false));

        let with_region3 =
            PopulationDistribution::point_mass(DemandType::of(Region::Three, Region::Three));
        assert_eq!(
            with_region3.classify_no_region3(),
            Err(Error::Region3MassPresent)
        );
    }

    #[test]
    fn decisive_conditions() {
        assert_eq!(
            example_population().decisive_condition(),
            Some(SufficientCondition::Type12Majority)
        );

        let heavy_crossing = PopulationDistribution::from_weights(&[
            (DemandType::of(Region::Two, Region::One), rat(3, 5)),
            (DemandType::of(Region::Two, Region::Three), rat(2, 5)),
        ])
        .unwrap();
        assert_eq!(
            heavy_crossing.decisive_condition(),
            Some(SufficientCondition::Type21Majority)
        );
        assert!(!heavy_crossing.classify().rationalizable);

        let all_bad = PopulationDistribution::from_weights(&[
            (DemandType::of(Region::Two, Region::One), rat(1, 3)),
            (DemandType::of(Region::Two, Region::Three), rat(1, 3)),
            (DemandType::of(Region::Three, Region::One), rat(1, 3)),
        ])
        .unwrap();
        assert_eq!(
            all_bad.decisive_condition(),
            Some(SufficientCondition::NoRationalizableSupport)
        );
        assert!(!all_bad.classify().rationalizable);

        assert_eq!(
            PopulationDistribution::benchmark_uniform().decisive_condition(),
            None
        );
    }

    #[test]
    fn benchmarks_are_region3_free_distributions() {
        for nu in [
            PopulationDistribution::benchmark_uniform(),
            PopulationDistribution::benchmark_proportional(),
        ] {
            assert!(!nu.has_region3_mass());
            assert_eq!(nu.as_array().iter().sum::<Rat>(), Rat::one());
        }
        let proportional = PopulationDistribution::benchmark_proportional();
        assert_eq!(
            proportional.weight(DemandType::of(Region::One, Region::Two)),
            &rat(4, 9)
        );
    }
}

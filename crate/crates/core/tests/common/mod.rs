//! Shared generators for the property suites.

#![allow(dead_code)]

use proptest::prelude::*;

use revpref::rational::{rat, Rat};
use revpref::{Budget, BudgetPair, ChoiceProbabilities, DemandType, PopulationDistribution, Region};

pub fn ty(j: u8, k: u8) -> DemandType {
    DemandType::of(Region::from_index(j).unwrap(), Region::from_index(k).unwrap())
}

/// A random point on the 3-simplex with denominators up to `granularity`.
pub fn simplex3(granularity: u32) -> impl Strategy<Value = [Rat; 3]> {
    (0..=granularity, 0..=granularity, 0..=granularity)
        .prop_filter("positive mass", |(a, b, c)| a + b + c > 0)
        .prop_map(|(a, b, c)| {
            let total = i64::from(a + b + c);
            [
                rat(i64::from(a), total),
                rat(i64::from(b), total),
                rat(i64::from(c), total),
            ]
        })
}

/// Region choice probabilities with coarse rational entries, corners included.
pub fn choice_probabilities(granularity: u32) -> impl Strategy<Value = ChoiceProbabilities> {
    (simplex3(granularity), simplex3(granularity)).prop_map(|(budget1, budget2)| {
        ChoiceProbabilities::from_regions(budget1, budget2).expect("normalized triples")
    })
}

/// A random distribution over all nine demand types.
pub fn population(granularity: u32) -> impl Strategy<Value = PopulationDistribution> {
    proptest::array::uniform9(0..=granularity)
        .prop_filter("positive mass", |w| w.iter().sum::<u32>() > 0)
        .prop_map(|w| {
            let total: i64 = w.iter().map(|v| i64::from(*v)).sum();
            let nu: [Rat; 9] = std::array::from_fn(|i| rat(i64::from(w[i]), total));
            PopulationDistribution::new(nu).expect("normalized weights")
        })
}

/// A random distribution supported on the four types that avoid region 3.
pub fn population_region3_free(granularity: u32) -> impl Strategy<Value = PopulationDistribution> {
    proptest::array::uniform4(0..=granularity)
        .prop_filter("positive mass", |w| w.iter().sum::<u32>() > 0)
        .prop_map(|w| {
            let total: i64 = w.iter().map(|v| i64::from(*v)).sum();
            let types = [ty(1, 1), ty(1, 2), ty(2, 1), ty(2, 2)];
            let weights: Vec<(DemandType, Rat)> = types
                .iter()
                .zip(w)
                .map(|(t, v)| (*t, rat(i64::from(v), total)))
                .collect();
            PopulationDistribution::from_weights(&weights).expect("normalized weights")
        })
}

/// A strictly positive price as a small rational.
pub fn price() -> impl Strategy<Value = Rat> {
    (1..=20i64, 1..=20i64).prop_map(|(n, d)| rat(n, d))
}

/// A budget pair whose lines cross in the positive orthant.
pub fn budget_pair() -> impl Strategy<Value = BudgetPair> {
    (price(), price(), price(), price()).prop_filter_map("lines must overlap", |(a, b, c, d)| {
        let budget1 = Budget::new(a, b).ok()?;
        let budget2 = Budget::new(c, d).ok()?;
        BudgetPair::new(budget1, budget2).ok()
    })
}

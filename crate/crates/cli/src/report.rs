//! Report structures: everything a run prints, JSON-serializable and
//! deterministic for fixed inputs and flags.

use std::collections::BTreeMap;

use serde::Serialize;

use revpref::rational::{to_f64, Rat};
use revpref::{
    ChoiceProbabilities, DemandType, Observation, RationalMixture, Region, SampleCounts,
};

/// An exact rational with a reading aid.
#[derive(Debug, Serialize)]
pub struct RatField {
    pub exact: String,
    pub approx: f64,
}

impl RatField {
    pub fn of(value: &Rat) -> Self {
        RatField {
            exact: value.to_string(),
            approx: to_f64(value),
        }
    }
}

/// Region probabilities grouped per budget, regions 1..3.
#[derive(Debug, Serialize)]
pub struct ProbabilitiesReport {
    pub budget1: [RatField; 3],
    pub budget2: [RatField; 3],
}

impl ProbabilitiesReport {
    pub fn of(pi: &ChoiceProbabilities) -> Self {
        let triple = |t: Observation| {
            [
                RatField::of(pi.probability(Region::One, t)),
                RatField::of(pi.probability(Region::Two, t)),
                RatField::of(pi.probability(Region::Three, t)),
            ]
        };
        ProbabilitiesReport {
            budget1: triple(Observation::One),
            budget2: triple(Observation::Two),
        }
    }
}

/// Mixture weights keyed by demand type, all six entries.
pub fn mixture_map(mu: &RationalMixture) -> BTreeMap<String, String> {
    DemandType::RATIONALIZABLE
        .iter()
        .map(|ty| (ty.to_string(), mu.weight(*ty).unwrap().to_string()))
        .collect()
}

/// Counts keyed by demand type, all nine entries.
pub fn counts_map(counts: &SampleCounts) -> BTreeMap<String, u64> {
    DemandType::ALL
        .iter()
        .map(|ty| (ty.to_string(), counts.count(*ty)))
        .collect()
}

/// Serializes a report as pretty JSON; the stable field order makes output
/// byte-identical across runs.
pub fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

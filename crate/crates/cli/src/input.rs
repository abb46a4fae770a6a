//! JSON input schemas and exact parsing.
//!
//! Numbers may be JSON numbers or strings. Strings are parsed exactly
//! (`"9/10"`, `"0.9"`); JSON integers convert exactly; JSON floats convert
//! to their exact binary value and flip the input into float mode, which
//! relaxes knife-edge geometry comparisons to the declared 1e-9 relative
//! tolerance. Type-weight collections are either a nine-entry array in
//! lexicographic type order or a sparse `"j,k"`-keyed map.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use num::traits::Signed;
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use revpref::rational::{from_f64_exact, parse_rational, rat, Rat};
use revpref::{
    Budget, BudgetPair, Bundle, ChoiceProbabilities, DemandType, DeterministicDataset,
    PopulationDistribution, Region, SampleWeights, Tolerance,
};

use crate::CliError;

/// A rational parsed from JSON, remembering whether it came from a float.
#[derive(Debug, Clone)]
pub struct ExactNumber {
    pub value: Rat,
    pub from_float: bool,
}

impl<'de> Deserialize<'de> for ExactNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct NumberVisitor;

        impl<'de> Visitor<'de> for NumberVisitor {
            type Value = ExactNumber;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a rational/decimal string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExactNumber, E> {
                Ok(ExactNumber {
                    value: Rat::from_integer(v.into()),
                    from_float: false,
                })
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExactNumber, E> {
                Ok(ExactNumber {
                    value: Rat::from_integer(v.into()),
                    from_float: false,
                })
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExactNumber, E> {
                let value = from_f64_exact(v).map_err(|e| E::custom(e.to_string()))?;
                Ok(ExactNumber {
                    value,
                    from_float: v.fract() != 0.0,
                })
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExactNumber, E> {
                let value = parse_rational(v).map_err(|e| E::custom(e.to_string()))?;
                Ok(ExactNumber {
                    value,
                    from_float: false,
                })
            }
        }

        deserializer.deserialize_any(NumberVisitor)
    }
}

/// Weights over the nine demand types: a full array or a sparse map.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TypeWeights {
    Array(Vec<ExactNumber>),
    Map(BTreeMap<String, ExactNumber>),
}

impl TypeWeights {
    /// Dense weights in [`DemandType::ALL`] order plus the float flag.
    pub fn resolve(&self) -> Result<([Rat; 9], bool), CliError> {
        let mut weights: [Rat; 9] = std::array::from_fn(|_| Rat::from_integer(0.into()));
        let mut from_float = false;
        match self {
            TypeWeights::Array(entries) => {
                if entries.len() != 9 {
                    return Err(CliError::invalid(format!(
                        "type-weight arrays need 9 entries in lexicographic order, got {}",
                        entries.len()
                    )));
                }
                for (slot, entry) in weights.iter_mut().zip(entries) {
                    *slot = entry.value.clone();
                    from_float |= entry.from_float;
                }
            }
            TypeWeights::Map(entries) => {
                for (key, entry) in entries {
                    let ty = parse_type_key(key)?;
                    weights[ty.index()] += &entry.value;
                    from_float |= entry.from_float;
                }
            }
        }
        Ok((weights, from_float))
    }
}

fn parse_type_key(key: &str) -> Result<DemandType, CliError> {
    let trimmed = key
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')');
    let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
    let indices: Option<(u8, u8)> = match parts.as_slice() {
        [j, k] => j.parse().ok().zip(k.parse().ok()),
        _ => None,
    };
    indices
        .and_then(|(j, k)| Some(DemandType::of(Region::from_index(j)?, Region::from_index(k)?)))
        .ok_or_else(|| {
            CliError::invalid(format!(
                "bad demand-type key {key:?}; expected \"j,k\" with j,k in 1..=3"
            ))
        })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeterministicInput {
    pub budget1: [ExactNumber; 2],
    pub budget2: [ExactNumber; 2],
    pub choice1: [ExactNumber; 2],
    pub choice2: [ExactNumber; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StochasticInput {
    /// Six entries: regions 1..3 of budget 1, then regions 1..3 of budget 2.
    pub pi: [ExactNumber; 6],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PopulationInput {
    pub nu: TypeWeights,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleInput {
    pub nu: TypeWeights,
    /// Panel weights.
    #[serde(default)]
    pub s: Option<TypeWeights>,
    /// Cross-section weights, one per observation.
    #[serde(default)]
    pub s1: Option<TypeWeights>,
    #[serde(default)]
    pub s2: Option<TypeWeights>,
}

fn read_json<T: de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("cannot parse {}: {e}", path.display())))
}

/// A deterministic dataset plus whether float mode is in effect.
pub fn load_deterministic(path: &Path) -> Result<(DeterministicDataset, bool), CliError> {
    let input: DeterministicInput = read_json(path)?;
    let from_float = input
        .budget1
        .iter()
        .chain(&input.budget2)
        .chain(&input.choice1)
        .chain(&input.choice2)
        .any(|n| n.from_float);
    let tolerance = if from_float {
        Tolerance::float_input()
    } else {
        Tolerance::exact()
    };
    let budget = |p: &[ExactNumber; 2]| Budget::new(p[0].value.clone(), p[1].value.clone());
    let bundle = |x: &[ExactNumber; 2]| Bundle::new(x[0].value.clone(), x[1].value.clone());
    let pair = BudgetPair::new(budget(&input.budget1)?, budget(&input.budget2)?)?;
    let dataset = DeterministicDataset::with_tolerance(
        pair,
        bundle(&input.choice1)?,
        bundle(&input.choice2)?,
        tolerance,
    )?;
    Ok((dataset, from_float))
}

/// Normalizes a probability block whose sum must be within 1e-9 of one, so
/// float-derived inputs satisfy the exact simplex invariant downstream.
fn normalize_block(values: &mut [Rat], what: &str) -> Result<(), CliError> {
    if let Some(bad) = values.iter().find(|v| v.is_negative()) {
        return Err(CliError::invalid(format!("{what} has negative entry {bad}")));
    }
    let total: Rat = values.iter().sum();
    let slack = rat(1, 1_000_000_000);
    if (&total - rat(1, 1)).abs() > slack {
        return Err(CliError::invalid(format!(
            "{what} sums to {total}, further than 1e-9 from 1"
        )));
    }
    for value in values.iter_mut() {
        *value /= &total;
    }
    Ok(())
}

pub fn load_choice_probabilities(path: &Path) -> Result<ChoiceProbabilities, CliError> {
    let input: StochasticInput = read_json(path)?;
    let mut pi: [Rat; 6] = std::array::from_fn(|i| input.pi[i].value.clone());
    normalize_block(&mut pi[0..3], "budget-1 probabilities")?;
    normalize_block(&mut pi[3..6], "budget-2 probabilities")?;
    ChoiceProbabilities::new(pi).map_err(CliError::from)
}

pub fn population_from_weights(weights: &TypeWeights) -> Result<PopulationDistribution, CliError> {
    let (mut nu, _) = weights.resolve()?;
    normalize_block(&mut nu, "population distribution")?;
    PopulationDistribution::new(nu).map_err(CliError::from)
}

pub fn load_population(path: &Path) -> Result<PopulationDistribution, CliError> {
    let input: PopulationInput = read_json(path)?;
    population_from_weights(&input.nu)
}

pub fn load_sample(path: &Path) -> Result<SampleInput, CliError> {
    read_json(path)
}

/// Sample weights validated against the population they are drawn from.
pub fn sample_weights(
    nu: &PopulationDistribution,
    weights: &TypeWeights,
) -> Result<SampleWeights, CliError> {
    let (s, _) = weights.resolve()?;
    SampleWeights::drawn_from(nu, s).map_err(CliError::from)
}

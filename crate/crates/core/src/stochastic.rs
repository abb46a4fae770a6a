//! Stochastic rationalizability of region-choice probabilities.
//!
//! A stochastic dataset on the two-budget geometry reduces to the six-vector
//! of region choice probabilities. It is stochastically rationalizable when
//! those probabilities are a mixture of the six rationalizable demand types,
//! which holds exactly when a small linear system has a nonnegative solution,
//! and equivalently when a single closed-form inequality on the six
//! probabilities is satisfied. Both routes are implemented; their agreement
//! is the central invariant of this module.

use std::fmt;

use num::traits::{One, Signed, Zero};

use crate::error::Error;
use crate::geometry::{DemandType, Observation, Region};
use crate::rational::Rat;
use crate::simplex;

/// Region choice probabilities, one 3-simplex per budget, stored in the order
/// `(pi_1|1, pi_2|1, pi_3|1, pi_1|2, pi_2|2, pi_3|2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceProbabilities {
    pi: [Rat; 6],
}

impl ChoiceProbabilities {
    pub fn new(pi: [Rat; 6]) -> Result<Self, Error> {
        for t in Observation::BOTH {
            let triple = &pi[3 * t.index()..3 * t.index() + 3];
            let bad = triple.iter().any(|p| p.is_negative())
                || triple.iter().sum::<Rat>() != Rat::one();
            if bad {
                return Err(Error::NotAProbabilityVector {
                    observation: t.number(),
                });
            }
        }
        Ok(ChoiceProbabilities { pi })
    }

    /// Assembles the six-vector from one region triple per budget.
    pub fn from_regions(budget1: [Rat; 3], budget2: [Rat; 3]) -> Result<Self, Error> {
        let [a, b, c] = budget1;
        let [d, e, f] = budget2;
        Self::new([a, b, c, d, e, f])
    }

    /// Probability of choosing region `r` on budget `t`.
    pub fn probability(&self, r: Region, t: Observation) -> &Rat {
        &self.pi[3 * t.index() + (r.index() as usize - 1)]
    }

    pub fn as_array(&self) -> &[Rat; 6] {
        &self.pi
    }

    /// Left-hand side of the rationalizability inequality:
    /// `pi_2|1 + pi_1|2 + pi_3|1 + pi_3|2 - min(pi_3|1, pi_3|2)`.
    pub fn axiom_lhs(&self) -> Rat {
        let p21 = self.probability(Region::Two, Observation::One);
        let p12 = self.probability(Region::One, Observation::Two);
        let p31 = self.probability(Region::Three, Observation::One);
        let p32 = self.probability(Region::Three, Observation::Two);
        p21 + p12 + p31 + p32 - p31.min(p32)
    }

    /// The closed-form stochastic rationalizability test: `axiom_lhs() <= 1`.
    pub fn axiom_check(&self) -> bool {
        self.axiom_lhs() <= Rat::one()
    }

    /// Searches for a distribution over rationalizable types generating these
    /// probabilities, solving the region system exactly.
    ///
    /// Returns the first basic feasible solution under a fixed pivot rule, so
    /// the answer is deterministic per input; the feasible point is generally
    /// not unique and need not match the population that produced the data.
    /// `None` means the system has no nonnegative solution.
    pub fn solve_mixture(&self) -> Option<RationalMixture> {
        let a: Vec<Vec<Rat>> = (0..6)
            .map(|row| {
                DemandType::RATIONALIZABLE
                    .iter()
                    .map(|ty| {
                        if mixture_matrix_entry(row, *ty) {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mu = simplex::feasible_point(&a, &self.pi)?;
        let mu: [Rat; 6] = mu.try_into().expect("six rationalizable types");
        Some(
            RationalMixture::new(mu)
                .expect("feasible point of the region system is a distribution"),
        )
    }
}

/// Whether rationalizable type `ty` contributes to row `row` of the region
/// system (rows 0..3 are budget-1 regions 1..3, rows 3..6 budget-2 regions).
fn mixture_matrix_entry(row: usize, ty: DemandType) -> bool {
    let (t, r) = if row < 3 {
        (Observation::One, row as u8 + 1)
    } else {
        (Observation::Two, row as u8 - 2)
    };
    ty.region(t).index() == r
}

/// A probability distribution over the six rationalizable demand types,
/// stored in the order of [`DemandType::RATIONALIZABLE`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMixture {
    mu: [Rat; 6],
}

impl RationalMixture {
    pub fn new(mu: [Rat; 6]) -> Result<Self, Error> {
        if mu.iter().any(|w| w.is_negative()) || mu.iter().sum::<Rat>() != Rat::one() {
            return Err(Error::NotADistribution);
        }
        Ok(RationalMixture { mu })
    }

    /// All mass on a single rationalizable type.
    pub fn point_mass(ty: DemandType) -> Result<Self, Error> {
        let position = DemandType::RATIONALIZABLE.iter().position(|t| *t == ty);
        let Some(position) = position else {
            return Err(Error::NotADistribution);
        };
        let mut mu: [Rat; 6] = std::array::from_fn(|_| Rat::zero());
        mu[position] = Rat::one();
        Ok(RationalMixture { mu })
    }

    /// Weight on a type; `None` for the three non-rationalizable types.
    pub fn weight(&self, ty: DemandType) -> Option<&Rat> {
        DemandType::RATIONALIZABLE
            .iter()
            .position(|t| *t == ty)
            .map(|i| &self.mu[i])
    }

    pub fn as_array(&self) -> &[Rat; 6] {
        &self.mu
    }

    /// Independent check that this mixture generates `pi`: substitutes the
    /// weights into all six region equations and compares exactly.
    pub fn verify(&self, pi: &ChoiceProbabilities) -> bool {
        (0..6).all(|row| {
            let generated: Rat = DemandType::RATIONALIZABLE
                .iter()
                .zip(&self.mu)
                .filter(|(ty, _)| mixture_matrix_entry(row, **ty))
                .map(|(_, w)| w.clone())
                .sum();
            generated == pi.pi[row]
        })
    }
}

impl fmt::Display for RationalMixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (ty, w) in DemandType::RATIONALIZABLE.iter().zip(&self.mu) {
            if !w.is_zero() {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "mu{ty}={w}")?;
                first = false;
            }
        }
        if first {
            write!(f, "empty")?;
        }
        Ok(())
    }
}

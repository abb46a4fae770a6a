//! Property suite for the acceptance-probability computations.

mod common;

use common::population_region3_free;
use num::bigint::BigInt;
use num::traits::{One, ToPrimitive};
use proptest::prelude::*;

use revpref::power::{power_brute_force_exact, power_closed_form, power_monte_carlo};
use revpref::rational::{rat, Rat};
use revpref::{ErrorRate, PopulationDistribution, Seed};

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(1 + C(2n, n) / 4^n) / 2`, evaluated exactly and then rounded once.
fn symmetric_reference(n: u64) -> f64 {
    let central = Rat::new(
        factorial(2 * n),
        factorial(n) * factorial(n) * num::pow(BigInt::from(4), n as usize),
    );
    ((Rat::one() + central) / rat(2, 1)).to_f64().unwrap()
}

proptest! {
    /// The O(n) closed form matches exact enumeration on small instances.
    #[test]
    fn closed_form_agrees_with_enumeration(
        nu in population_region3_free(8),
        n in 1..=6u64,
    ) {
        let closed = power_closed_form(&nu, n).unwrap().acceptance_probability;
        let exact = power_brute_force_exact(&nu, n).unwrap().to_f64().unwrap();
        prop_assert!(
            (closed - exact).abs() <= 1e-10,
            "closed {closed} vs exact {exact} at n = {n}"
        );
    }

    /// Populations with balanced region-1 shares collapse to the symmetric
    /// binomial identity.
    #[test]
    fn balanced_shares_match_the_symmetric_identity(
        a in 0..=8u32,
        n in prop::sample::select(vec![1u64, 2, 3, 5, 10, 25, 50]),
    ) {
        // nu(1,1) = nu(2,2) = a/16 and nu(1,2) = nu(2,1) = (8-a)/16 gives
        // region-1 share exactly 1/2 on both budgets.
        let corner = rat(i64::from(a), 16);
        let off = rat(i64::from(8 - a), 16);
        let nu = PopulationDistribution::from_weights(&[
            (common::ty(1, 1), corner.clone()),
            (common::ty(2, 2), corner),
            (common::ty(1, 2), off.clone()),
            (common::ty(2, 1), off),
        ])
        .unwrap();
        let closed = power_closed_form(&nu, n).unwrap().acceptance_probability;
        prop_assert!((closed - symmetric_reference(n)).abs() <= 1e-10);
    }

    /// The interpretation label is consistent with the raw probability.
    #[test]
    fn error_rate_label_is_consistent(nu in population_region3_free(8), n in 1..=30u64) {
        let result = power_closed_form(&nu, n).unwrap();
        let crossing_share = nu.weight(common::ty(2, 1));
        match result.error_rate {
            ErrorRate::FalseAcceptance { probability } => {
                prop_assert!(crossing_share > &rat(0, 1));
                prop_assert_eq!(probability, result.acceptance_probability);
            }
            ErrorRate::FalseRejection { probability } => {
                prop_assert_eq!(crossing_share, &rat(0, 1));
                prop_assert_eq!(probability, 1.0 - result.acceptance_probability);
            }
        }
    }
}

/// The symmetric identity regenerates the uniform benchmark row.
#[test]
fn uniform_benchmark_row_equals_symmetric_identity() {
    let nu = PopulationDistribution::benchmark_uniform();
    for n in revpref::TABLE2_SIZES {
        let closed = power_closed_form(&nu, n).unwrap().acceptance_probability;
        let reference = symmetric_reference(n);
        assert!(
            (closed - reference).abs() <= 1e-10,
            "n = {n}: closed {closed} vs identity {reference}"
        );
    }
}

/// A moderately sized Monte Carlo run lands near the closed form.
#[test]
fn monte_carlo_tracks_the_closed_form() {
    let nu = PopulationDistribution::benchmark_uniform();
    let closed = power_closed_form(&nu, 10).unwrap().acceptance_probability;
    let estimate = power_monte_carlo(&nu, 10, 20_000, Seed(314));
    let se = estimate.standard_error.unwrap();
    assert!(
        (estimate.acceptance_probability - closed).abs() <= 4.0 * se,
        "estimate {} too far from {closed} (se {se})",
        estimate.acceptance_probability
    );
}

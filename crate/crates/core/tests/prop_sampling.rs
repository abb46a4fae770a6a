//! Property suite for the sampling schemes.

mod common;

use common::ty;
use num::traits::Zero;
use proptest::prelude::*;

use revpref::rational::{rat, Rat};
use revpref::sampling::{
    cross_section_probabilities, multinomial_draw_replication, panel_probabilities,
};
use revpref::{
    DemandType, PopulationDistribution, RationalMixture, SampleWeights, Seed,
};

/// A population on the given support plus a nonempty sub-sample of it.
fn sampled_population(
    support: &'static [DemandType],
) -> impl Strategy<Value = (PopulationDistribution, SampleWeights)> {
    let k = support.len();
    (
        proptest::collection::vec(0..=8u32, k),
        proptest::collection::vec(0..=8u32, k),
    )
        .prop_filter_map("need population and sample mass", move |(raw, fractions)| {
            let total: i64 = raw.iter().map(|v| i64::from(*v)).sum();
            if total == 0 {
                return None;
            }
            let shares: Vec<(DemandType, Rat)> = support
                .iter()
                .zip(&raw)
                .map(|(t, w)| (*t, rat(i64::from(*w), total)))
                .collect();
            let nu = PopulationDistribution::from_weights(&shares).ok()?;
            let mut s: [Rat; 9] = std::array::from_fn(|_| Rat::zero());
            for ((t, share), f) in shares.iter().zip(&fractions) {
                s[t.index()] = share * rat(i64::from(*f), 8);
            }
            if s.iter().sum::<Rat>().is_zero() {
                return None;
            }
            let weights = SampleWeights::drawn_from(&nu, s).ok()?;
            Some((nu, weights))
        })
}

proptest! {
    /// Panel samples of purely non-rationalizable populations always fail
    /// the rationalizability test, whatever fraction of each type is reached.
    #[test]
    fn panels_of_non_rationalizable_populations_reject(
        (_nu, s) in sampled_population(&DemandType::NON_RATIONALIZABLE),
    ) {
        let observed = panel_probabilities(&s).unwrap();
        prop_assert!(!observed.axiom_check());
    }

    /// Panel samples of rationalizable populations always pass, and the
    /// sample shares themselves are a generating mixture.
    #[test]
    fn panels_of_rationalizable_populations_accept(
        (_nu, s) in sampled_population(&DemandType::RATIONALIZABLE),
    ) {
        let observed = panel_probabilities(&s).unwrap();
        prop_assert!(observed.axiom_check());

        let total = s.total_mass();
        let mu: [Rat; 6] = std::array::from_fn(|i| {
            s.weight(DemandType::RATIONALIZABLE[i]) / &total
        });
        let mixture = RationalMixture::new(mu).unwrap();
        prop_assert!(mixture.verify(&observed));
    }

    /// Identical seeds reproduce multinomial replications exactly.
    #[test]
    fn multinomial_replications_are_deterministic(
        seed in any::<u64>(),
        replication in 0..1000u64,
        n in 1..200u64,
    ) {
        let nu = PopulationDistribution::benchmark_proportional();
        let first = multinomial_draw_replication(&nu, n, Seed(seed), replication);
        let second = multinomial_draw_replication(&nu, n, Seed(seed), replication);
        prop_assert_eq!(first, second);
    }
}

/// The vanishing-rational-share constructions: a population almost entirely
/// of crossing types still yields an accepted sample when only its type
/// (1,2) sliver is reached, under both cross-section and panel sampling.
#[test]
fn sliver_witnesses_accept_across_epsilon() {
    for epsilon in [rat(1, 2), rat(1, 10), rat(1, 100), rat(1, 1000)] {
        let nu = PopulationDistribution::from_weights(&[
            (ty(1, 2), epsilon.clone()),
            (ty(2, 1), rat(1, 1) - &epsilon),
        ])
        .unwrap();

        let mut s: [Rat; 9] = std::array::from_fn(|_| Rat::zero());
        s[ty(1, 2).index()] = epsilon.clone();
        let sliver = SampleWeights::drawn_from(&nu, s).unwrap();

        let cross = cross_section_probabilities(&sliver, &sliver).unwrap();
        assert!(cross.axiom_check(), "epsilon = {epsilon}");
        let panel = panel_probabilities(&sliver).unwrap();
        assert!(panel.axiom_check(), "epsilon = {epsilon}");
        assert_eq!(panel.as_array()[0], rat(1, 1), "all mass in region 1|1");
        assert_eq!(panel.as_array()[4], rat(1, 1), "all mass in region 2|2");
    }
}

/// Observations inside one replication use different streams.
#[test]
fn observations_draw_independent_streams() {
    let nu = PopulationDistribution::benchmark_uniform();
    let (c1, c2) = multinomial_draw_replication(&nu, 1000, Seed(99), 0);
    assert_ne!(c1, c2);
    let (d1, _) = multinomial_draw_replication(&nu, 1000, Seed(99), 1);
    assert_ne!(c1, d1, "replications use different streams");
}

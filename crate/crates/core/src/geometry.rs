//! Budget-set geometry, demand regions, demand types, and the deterministic
//! revealed-preference test.
//!
//! Two overlapping budget lines cut each other at a single strictly positive
//! bundle. That crossing splits each line into three demand regions, numbered
//! as in the standard picture:
//!
//! * budget 1 — region 1 is the segment unaffordable under budget 2
//!   (`p2·x > 1`), region 2 the strictly affordable segment (`p2·x < 1`);
//! * budget 2 — region 1 is the segment strictly affordable under budget 1
//!   (`p1·x < 1`), region 2 the unaffordable segment (`p1·x > 1`);
//! * region 3 on either line is the crossing itself.
//!
//! Under this numbering a type `(2,1)` individual chooses inside the other
//! budget in both observations, the mutual-revealed-preference violation, and
//! the six rationalizable types of the taxonomy are exactly the ones whose
//! canonical choices pass the revealed-preference test below.

use std::cmp::Ordering;
use std::fmt;

use num::traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::Rat;

/// Observation index: which of the two budgets a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observation {
    One,
    Two,
}

impl Observation {
    pub const BOTH: [Observation; 2] = [Observation::One, Observation::Two];

    /// Zero-based position, for indexing.
    pub fn index(self) -> usize {
        match self {
            Observation::One => 0,
            Observation::Two => 1,
        }
    }

    /// One-based label, for messages.
    pub fn number(self) -> usize {
        self.index() + 1
    }

    pub fn other(self) -> Observation {
        match self {
            Observation::One => Observation::Two,
            Observation::Two => Observation::One,
        }
    }
}

/// One of the three demand regions on a budget line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    One,
    Two,
    Three,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::One, Region::Two, Region::Three];

    /// One-based index as used in the taxonomy labels.
    pub fn index(self) -> u8 {
        match self {
            Region::One => 1,
            Region::Two => 2,
            Region::Three => 3,
        }
    }

    pub fn from_index(i: u8) -> Option<Region> {
        match i {
            1 => Some(Region::One),
            2 => Some(Region::Two),
            3 => Some(Region::Three),
            _ => None,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Comparison slack for inputs that arrived as floats.
///
/// `Tolerance::exact()` compares rationals exactly. A relative tolerance
/// treats `a` and `b` as equal when `|a - b| <= tol * max(1, |a|, |b|)`;
/// the quantities compared here are normalized expenditures near one, so
/// this behaves as the declared relative slack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tolerance(Rat);

impl Tolerance {
    pub fn exact() -> Tolerance {
        Tolerance(Rat::zero())
    }

    /// The boundary tolerance for float-derived inputs: 1e-9 relative.
    pub fn float_input() -> Tolerance {
        Tolerance(Rat::new(1.into(), 1_000_000_000.into()))
    }

    pub fn new(slack: Rat) -> Result<Tolerance, Error> {
        if slack.is_negative() {
            return Err(Error::NonFiniteNumber);
        }
        Ok(Tolerance(slack))
    }

    pub fn is_exact(&self) -> bool {
        self.0.is_zero()
    }

    /// Three-way comparison collapsing near-ties to `Equal`.
    pub fn cmp(&self, a: &Rat, b: &Rat) -> Ordering {
        if self.0.is_zero() {
            return a.cmp(b);
        }
        let scale = Rat::one().max(a.abs()).max(b.abs());
        if (a - b).abs() <= &self.0 * scale {
            Ordering::Equal
        } else {
            a.cmp(b)
        }
    }

    fn eq(&self, a: &Rat, b: &Rat) -> bool {
        self.cmp(a, b) == Ordering::Equal
    }

    fn le(&self, a: &Rat, b: &Rat) -> bool {
        self.cmp(a, b) != Ordering::Greater
    }

    fn lt(&self, a: &Rat, b: &Rat) -> bool {
        self.cmp(a, b) == Ordering::Less
    }
}

/// A normalized budget: strictly positive prices with total expenditure one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    prices: [Rat; 2],
}

impl Budget {
    pub fn new(p1: Rat, p2: Rat) -> Result<Budget, Error> {
        if !p1.is_positive() || !p2.is_positive() {
            return Err(Error::NonpositivePrice);
        }
        Ok(Budget { prices: [p1, p2] })
    }

    pub fn prices(&self) -> &[Rat; 2] {
        &self.prices
    }

    /// Expenditure `p·x` at these prices.
    pub fn cost(&self, x: &Bundle) -> Rat {
        &self.prices[0] * &x.quantities[0] + &self.prices[1] * &x.quantities[1]
    }

    /// The two axis intercepts of the budget line, `(1/p1, 0)` and `(0, 1/p2)`.
    pub fn intercepts(&self) -> (Bundle, Bundle) {
        let on_good1 = Bundle {
            quantities: [self.prices[0].recip(), Rat::zero()],
        };
        let on_good2 = Bundle {
            quantities: [Rat::zero(), self.prices[1].recip()],
        };
        (on_good1, on_good2)
    }
}

/// A consumption bundle in the nonnegative orthant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    quantities: [Rat; 2],
}

impl Bundle {
    pub fn new(x1: Rat, x2: Rat) -> Result<Bundle, Error> {
        if x1.is_negative() || x2.is_negative() {
            return Err(Error::NegativeQuantity);
        }
        Ok(Bundle {
            quantities: [x1, x2],
        })
    }

    pub fn quantities(&self) -> &[Rat; 2] {
        &self.quantities
    }

    fn midpoint(&self, other: &Bundle) -> Bundle {
        let half = Rat::new(1.into(), 2.into());
        Bundle {
            quantities: [
                (&self.quantities[0] + &other.quantities[0]) * &half,
                (&self.quantities[1] + &other.quantities[1]) * &half,
            ],
        }
    }
}

/// Two budgets whose lines cross in the strictly positive orthant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetPair {
    budgets: [Budget; 2],
    crossing: Bundle,
}

impl BudgetPair {
    /// Validates overlap by solving `p1·x = 1`, `p2·x = 1`.
    pub fn new(budget1: Budget, budget2: Budget) -> Result<BudgetPair, Error> {
        let crossing = intersection(&budget1, &budget2)?;
        Ok(BudgetPair {
            budgets: [budget1, budget2],
            crossing,
        })
    }

    pub fn budget(&self, t: Observation) -> &Budget {
        &self.budgets[t.index()]
    }

    /// The unique bundle on both budget lines.
    pub fn intersection_bundle(&self) -> &Bundle {
        &self.crossing
    }

    /// Region of a bundle on budget line `t`, exact arithmetic.
    pub fn classify_region(&self, t: Observation, x: &Bundle) -> Result<Region, Error> {
        self.classify_region_with(t, x, &Tolerance::exact())
    }

    /// Region of a bundle on budget line `t` under a comparison tolerance.
    ///
    /// The bundle must lie on the line (`p_t·x = 1` up to the tolerance).
    /// Writing `e` for the other budget's expenditure at `x`: on budget 1,
    /// region 1 means `e > 1` and region 2 means `e < 1`; on budget 2 the
    /// numbering flips (region 1 means `e < 1`); `e = 1` is region 3, the
    /// crossing, on either line.
    pub fn classify_region_with(
        &self,
        t: Observation,
        x: &Bundle,
        tol: &Tolerance,
    ) -> Result<Region, Error> {
        let own_cost = self.budget(t).cost(x);
        if !tol.eq(&own_cost, &Rat::one()) {
            return Err(Error::OffBudgetLine {
                observation: t.number(),
            });
        }
        let other_cost = self.budget(t.other()).cost(x);
        let region = match (t, tol.cmp(&other_cost, &Rat::one())) {
            (_, Ordering::Equal) => Region::Three,
            (Observation::One, Ordering::Greater) => Region::One,
            (Observation::One, Ordering::Less) => Region::Two,
            (Observation::Two, Ordering::Less) => Region::One,
            (Observation::Two, Ordering::Greater) => Region::Two,
        };
        Ok(region)
    }

    /// Demand type of a choice pair, exact arithmetic.
    pub fn demand_type_of(&self, x1: &Bundle, x2: &Bundle) -> Result<DemandType, Error> {
        self.demand_type_of_with(x1, x2, &Tolerance::exact())
    }

    pub fn demand_type_of_with(
        &self,
        x1: &Bundle,
        x2: &Bundle,
        tol: &Tolerance,
    ) -> Result<DemandType, Error> {
        let j = self.classify_region_with(Observation::One, x1, tol)?;
        let k = self.classify_region_with(Observation::Two, x2, tol)?;
        Ok(DemandType::new(j, k))
    }

    /// A representative bundle in region `r` of budget line `t`: the segment
    /// midpoint for regions 1 and 2, the crossing for region 3.
    pub fn canonical_bundle(&self, r: Region, t: Observation) -> Bundle {
        if r == Region::Three {
            return self.crossing.clone();
        }
        let (on_good1, on_good2) = self.budget(t).intercepts();
        let other = self.budget(t.other());
        // The crossing splits the line; exactly one intercept sits on each side.
        let good1_outside = other.cost(&on_good1) > Rat::one();
        let outside_end = if good1_outside { &on_good1 } else { &on_good2 };
        let inside_end = if good1_outside { &on_good2 } else { &on_good1 };
        let endpoint = match (t, r) {
            (Observation::One, Region::One) | (Observation::Two, Region::Two) => outside_end,
            (Observation::One, Region::Two) | (Observation::Two, Region::One) => inside_end,
            (_, Region::Three) => unreachable!(),
        };
        self.crossing.midpoint(endpoint)
    }
}

fn intersection(budget1: &Budget, budget2: &Budget) -> Result<Bundle, Error> {
    let [a, b] = budget1.prices();
    let [c, d] = budget2.prices();
    let det = a * d - b * c;
    if det.is_zero() {
        return Err(Error::NonOverlappingBudgets);
    }
    let x1 = (d - b) / &det;
    let x2 = (a - c) / &det;
    if !x1.is_positive() || !x2.is_positive() {
        return Err(Error::NonOverlappingBudgets);
    }
    Ok(Bundle {
        quantities: [x1, x2],
    })
}

/// A pair of demand regions, one per budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DemandType {
    /// Region chosen on budget 1.
    pub budget1: Region,
    /// Region chosen on budget 2.
    pub budget2: Region,
}

impl DemandType {
    /// All nine types in lexicographic order of `(budget1, budget2)`.
    pub const ALL: [DemandType; 9] = [
        DemandType::of(Region::One, Region::One),
        DemandType::of(Region::One, Region::Two),
        DemandType::of(Region::One, Region::Three),
        DemandType::of(Region::Two, Region::One),
        DemandType::of(Region::Two, Region::Two),
        DemandType::of(Region::Two, Region::Three),
        DemandType::of(Region::Three, Region::One),
        DemandType::of(Region::Three, Region::Two),
        DemandType::of(Region::Three, Region::Three),
    ];

    /// The six rationalizable types, in the column order of the mixture system.
    pub const RATIONALIZABLE: [DemandType; 6] = [
        DemandType::of(Region::One, Region::One),
        DemandType::of(Region::One, Region::Two),
        DemandType::of(Region::Two, Region::Two),
        DemandType::of(Region::One, Region::Three),
        DemandType::of(Region::Three, Region::Two),
        DemandType::of(Region::Three, Region::Three),
    ];

    /// The three types no single preference ordering can generate.
    pub const NON_RATIONALIZABLE: [DemandType; 3] = [
        DemandType::of(Region::Two, Region::One),
        DemandType::of(Region::Two, Region::Three),
        DemandType::of(Region::Three, Region::One),
    ];

    pub const fn of(budget1: Region, budget2: Region) -> DemandType {
        DemandType { budget1, budget2 }
    }

    pub fn new(budget1: Region, budget2: Region) -> DemandType {
        DemandType { budget1, budget2 }
    }

    /// Position in [`DemandType::ALL`].
    pub fn index(self) -> usize {
        (self.budget1.index() as usize - 1) * 3 + (self.budget2.index() as usize - 1)
    }

    /// Region chosen on the given budget.
    pub fn region(self, t: Observation) -> Region {
        match t {
            Observation::One => self.budget1,
            Observation::Two => self.budget2,
        }
    }

    /// Whether one locally non-satiated utility function can generate the pair.
    pub fn is_rationalizable(self) -> bool {
        !matches!(
            (self.budget1, self.budget2),
            (Region::Two, Region::One) | (Region::Two, Region::Three) | (Region::Three, Region::One)
        )
    }
}

impl fmt::Display for DemandType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.budget1, self.budget2)
    }
}

/// Two observed price-choice pairs, each choice on its budget line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicDataset {
    pair: BudgetPair,
    choices: [Bundle; 2],
    tolerance: Tolerance,
}

/// A revealed-preference violation: the `first` bundle is revealed preferred
/// to the `second` (the second is affordable when the first is chosen), yet
/// the second observation does not make the first strictly more expensive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SarpViolation {
    pub first: Observation,
    pub second: Observation,
}

impl DeterministicDataset {
    pub fn new(pair: BudgetPair, choice1: Bundle, choice2: Bundle) -> Result<Self, Error> {
        Self::with_tolerance(pair, choice1, choice2, Tolerance::exact())
    }

    pub fn with_tolerance(
        pair: BudgetPair,
        choice1: Bundle,
        choice2: Bundle,
        tolerance: Tolerance,
    ) -> Result<Self, Error> {
        for (t, x) in Observation::BOTH.iter().zip([&choice1, &choice2]) {
            let cost = pair.budget(*t).cost(x);
            if !tolerance.eq(&cost, &Rat::one()) {
                return Err(Error::OffBudgetLine {
                    observation: t.number(),
                });
            }
        }
        Ok(DeterministicDataset {
            pair,
            choices: [choice1, choice2],
            tolerance,
        })
    }

    pub fn budgets(&self) -> &BudgetPair {
        &self.pair
    }

    pub fn choice(&self, t: Observation) -> &Bundle {
        &self.choices[t.index()]
    }

    /// The demand type of the observed choice pair.
    pub fn demand_type(&self) -> DemandType {
        self.pair
            .demand_type_of_with(&self.choices[0], &self.choices[1], &self.tolerance)
            .expect("choices validated on their budget lines at construction")
    }

    /// Strong axiom of revealed preference for two observations: whenever the
    /// bundles are distinct and `p_s·x_t <= p_s·x_s`, require `p_t·x_t < p_t·x_s`.
    pub fn check_sarp(&self) -> bool {
        self.sarp_violations().is_empty()
    }

    /// The observation pairs at which the axiom fails; empty means consistent.
    pub fn sarp_violations(&self) -> Vec<SarpViolation> {
        let tol = &self.tolerance;
        let mut violations = Vec::new();
        for (s, t) in [
            (Observation::One, Observation::Two),
            (Observation::Two, Observation::One),
        ] {
            let xs = self.choice(s);
            let xt = self.choice(t);
            let distinct = !(tol.eq(&xs.quantities[0], &xt.quantities[0])
                && tol.eq(&xs.quantities[1], &xt.quantities[1]));
            let ps = self.pair.budget(s);
            let pt = self.pair.budget(t);
            let revealed_preferred = distinct && tol.le(&ps.cost(xt), &ps.cost(xs));
            if revealed_preferred && !tol.lt(&pt.cost(xt), &pt.cost(xs)) {
                violations.push(SarpViolation { first: s, second: t });
            }
        }
        violations
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn budget(p1: (i64, i64), p2: (i64, i64)) -> Budget {
        Budget::new(rat(p1.0, p1.1), rat(p2.0, p2.1)).unwrap()
    }

    /// The worked pair used throughout: p1 = (2,1), p2 = (1,2).
    fn example_pair() -> BudgetPair {
        BudgetPair::new(budget((2, 1), (1, 1)), budget((1, 1), (2, 1))).unwrap()
    }

    fn bundle(x1: (i64, i64), x2: (i64, i64)) -> Bundle {
        Bundle::new(rat(x1.0, x1.1), rat(x2.0, x2.1)).unwrap()
    }

    #[test]
    fn intersection_of_symmetric_pair() {
        let pair = example_pair();
        assert_eq!(
            pair.intersection_bundle(),
            &bundle((1, 3), (1, 3)),
            "2x+y=1 and x+2y=1 cross at (1/3, 1/3)"
        );
    }

    #[test]
    fn proportional_prices_do_not_overlap() {
        let err = BudgetPair::new(budget((1, 1), (1, 1)), budget((1, 1), (1, 1))).unwrap_err();
        assert_eq!(err, Error::NonOverlappingBudgets);
    }

    #[test]
    fn steeper_symmetric_pair_crosses_at_one_quarter() {
        let pair = BudgetPair::new(budget((3, 1), (1, 1)), budget((1, 1), (3, 1))).unwrap();
        assert_eq!(pair.intersection_bundle(), &bundle((1, 4), (1, 4)));
    }

    #[test]
    fn crossing_inside_one_budget_is_rejected() {
        // Lines x + y = 1 and x/2 + y/4 = 1 meet at (-1, 2).
        let err = BudgetPair::new(budget((1, 1), (1, 1)), budget((1, 2), (1, 4))).unwrap_err();
        assert_eq!(err, Error::NonOverlappingBudgets);
    }

    #[test]
    fn classify_region_on_budget_one() {
        let pair = example_pair();
        let t = Observation::One;
        assert_eq!(
            pair.classify_region(t, &bundle((0, 1), (1, 1))).unwrap(),
            Region::One,
            "(0,1) costs 2 under budget 2"
        );
        assert_eq!(
            pair.classify_region(t, &bundle((1, 3), (1, 3))).unwrap(),
            Region::Three
        );
        assert_eq!(
            pair.classify_region(t, &bundle((1, 2), (0, 1))).unwrap(),
            Region::Two,
            "(1/2,0) costs 1/2 under budget 2"
        );
    }

    #[test]
    fn classify_region_on_budget_two_flips_orientation() {
        let pair = example_pair();
        let t = Observation::Two;
        // (0,1/2) on line 2 costs 1/2 under budget 1: affordable, region 1.
        assert_eq!(
            pair.classify_region(t, &bundle((0, 1), (1, 2))).unwrap(),
            Region::One
        );
        // (1,0) on line 2 costs 2 under budget 1: unaffordable, region 2.
        assert_eq!(
            pair.classify_region(t, &bundle((1, 1), (0, 1))).unwrap(),
            Region::Two
        );
        assert_eq!(
            pair.classify_region(t, &bundle((1, 3), (1, 3))).unwrap(),
            Region::Three
        );
    }

    #[test]
    fn off_line_bundle_is_rejected() {
        let pair = example_pair();
        let err = pair
            .classify_region(Observation::One, &bundle((1, 1), (1, 1)))
            .unwrap_err();
        assert_eq!(err, Error::OffBudgetLine { observation: 1 });
    }

    #[test]
    fn tolerance_classifies_near_crossing_as_region_three() {
        let pair = example_pair();
        let tol = Tolerance::float_input();
        let eps = Rat::new(1.into(), 10_000_000_000u64.into()); // 1e-10
        // Exactly on line 1, a hair above the crossing: p2-cost is 1 + 3e-10.
        let x = Bundle::new(rat(1, 3) - &eps, rat(1, 3) + rat(2, 1) * &eps).unwrap();
        assert_eq!(
            pair.classify_region(Observation::One, &x).unwrap(),
            Region::One,
            "exact arithmetic resolves the knife edge"
        );
        assert_eq!(
            pair.classify_region_with(Observation::One, &x, &tol).unwrap(),
            Region::Three,
            "float-input tolerance snaps to the crossing"
        );
    }

    #[test]
    fn demand_type_examples() {
        let pair = example_pair();
        assert_eq!(
            pair.demand_type_of(&bundle((0, 1), (1, 1)), &bundle((1, 1), (0, 1)))
                .unwrap(),
            DemandType::of(Region::One, Region::Two)
        );
        let z = bundle((1, 3), (1, 3));
        assert_eq!(
            pair.demand_type_of(&z, &z).unwrap(),
            DemandType::of(Region::Three, Region::Three)
        );
        assert_eq!(
            pair.demand_type_of(&bundle((1, 2), (0, 1)), &bundle((0, 1), (1, 2)))
                .unwrap(),
            DemandType::of(Region::Two, Region::One)
        );
    }

    #[test]
    fn taxonomy_counts_and_membership() {
        assert_eq!(DemandType::ALL.len(), 9);
        assert_eq!(DemandType::RATIONALIZABLE.len(), 6);
        assert_eq!(DemandType::NON_RATIONALIZABLE.len(), 3);
        for t in DemandType::RATIONALIZABLE {
            assert!(t.is_rationalizable());
        }
        for t in DemandType::NON_RATIONALIZABLE {
            assert!(!t.is_rationalizable());
        }
        assert!(DemandType::of(Region::One, Region::Two).is_rationalizable());
        assert!(!DemandType::of(Region::Two, Region::One).is_rationalizable());
        assert!(DemandType::of(Region::Three, Region::Three).is_rationalizable());
        // Index covers 0..9 in order.
        for (i, t) in DemandType::ALL.iter().enumerate() {
            assert_eq!(t.index(), i);
        }
    }

    #[test]
    fn sarp_examples() {
        let pair = example_pair();
        let unrelated = DeterministicDataset::new(
            pair.clone(),
            bundle((0, 1), (1, 1)),
            bundle((1, 1), (0, 1)),
        )
        .unwrap();
        assert!(unrelated.check_sarp(), "no revealed comparison at all");

        let crossing_violation = DeterministicDataset::new(
            pair.clone(),
            bundle((1, 2), (0, 1)),
            bundle((0, 1), (1, 2)),
        )
        .unwrap();
        assert!(!crossing_violation.check_sarp());
        assert!(!crossing_violation.sarp_violations().is_empty());

        let z = bundle((1, 3), (1, 3));
        let same_bundle = DeterministicDataset::new(pair, z.clone(), z).unwrap();
        assert!(same_bundle.check_sarp(), "identical bundles never violate");
    }

    #[test]
    fn canonical_bundles_on_budget_one() {
        let pair = example_pair();
        assert_eq!(
            pair.canonical_bundle(Region::Three, Observation::One),
            bundle((1, 3), (1, 3))
        );
        assert_eq!(
            pair.canonical_bundle(Region::One, Observation::One),
            bundle((1, 6), (2, 3)),
            "midpoint of (0,1) and the crossing"
        );
        assert_eq!(
            pair.canonical_bundle(Region::Two, Observation::One),
            bundle((5, 12), (1, 6)),
            "midpoint of the crossing and (1/2,0)"
        );
    }

    #[test]
    fn canonical_bundles_classify_back_to_their_region() {
        let pair = BudgetPair::new(budget((3, 2), (2, 5)), budget((1, 2), (5, 4))).unwrap();
        for t in Observation::BOTH {
            for r in Region::ALL {
                let x = pair.canonical_bundle(r, t);
                assert_eq!(pair.classify_region(t, &x).unwrap(), r);
            }
        }
    }

    /// Taxonomy consistency: the revealed-preference verdict on canonical
    /// choices matches the rationalizability column for all nine types.
    #[test]
    fn sarp_on_canonical_bundles_matches_taxonomy() {
        let pair = example_pair();
        for ty in DemandType::ALL {
            let x1 = pair.canonical_bundle(ty.budget1, Observation::One);
            let x2 = pair.canonical_bundle(ty.budget2, Observation::Two);
            let data = DeterministicDataset::new(pair.clone(), x1, x2).unwrap();
            assert_eq!(data.demand_type(), ty);
            assert_eq!(
                data.check_sarp(),
                ty.is_rationalizable(),
                "type {ty} disagrees with the taxonomy"
            );
        }
    }
}

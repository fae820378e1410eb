//! Exhaustive reference implementations.
//!
//! Everything here enumerates complete allocations directly and touches the
//! cost functions only through value queries, so it shares no code path with
//! the matroid-based solvers it is used to check.

use std::collections::HashMap;

use crate::chores::ChoreSet;
use crate::costs::{Cost, CostOracle};
use crate::error::{Error, Result};
use crate::fairness::SortedCostProfile;
use crate::model::{Allocation, Instance};

/// Default cap on the number of enumerated allocations, `n^m <= 2^20`.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 20;

fn allocation_count(n: usize, m: usize) -> u128 {
    (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX)
}

/// Streams all `n^m` complete allocations, in lexicographic order of the
/// assignment vector (chore 0 most significant).
pub fn enumerate_allocations(n: usize, m: usize, bound: u128) -> Result<Allocations> {
    if n == 0 {
        return Err(Error::InvalidParameter("at least one agent is needed".into()));
    }
    let count = allocation_count(n, m);
    if count > bound {
        return Err(Error::TooLargeForExhaustiveCheck { what: "allocation count n^m", size: count, bound });
    }
    let mut bundles = vec![ChoreSet::EMPTY; n];
    bundles[0] = ChoreSet::full(m);
    Ok(Allocations { n, assignment: vec![0; m], bundles, done: false })
}

pub struct Allocations {
    n: usize,
    assignment: Vec<usize>,
    bundles: Vec<ChoreSet>,
    done: bool,
}

impl Allocations {
    /// Current assignment vector (valid after `next` returned `Some`).
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    fn advance(&mut self) {
        for chore in (0..self.assignment.len()).rev() {
            let agent = self.assignment[chore];
            self.bundles[agent].remove(chore);
            if agent + 1 < self.n {
                self.assignment[chore] = agent + 1;
                self.bundles[agent + 1].insert(chore);
                return;
            }
            self.assignment[chore] = 0;
            self.bundles[0].insert(chore);
        }
        self.done = true;
    }
}

impl Iterator for Allocations {
    type Item = Allocation;

    fn next(&mut self) -> Option<Allocation> {
        if self.done {
            return None;
        }
        let current = Allocation::new(self.bundles.clone());
        self.advance();
        Some(current)
    }
}

/// Brute-force answers to the questions the fast algorithms address.
#[derive(Debug, Clone, Copy)]
pub struct BruteForce {
    bound: u128,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce { bound: DEFAULT_ENUMERATION_BOUND }
    }
}

impl BruteForce {
    pub fn with_bound(bound: u128) -> Self {
        BruteForce { bound }
    }

    pub fn bound(&self) -> u128 {
        self.bound
    }

    pub fn within_bound(&self, inst: &Instance) -> bool {
        allocation_count(inst.num_agents(), inst.num_chores()) <= self.bound
    }

    pub fn allocations(&self, inst: &Instance) -> Result<Allocations> {
        enumerate_allocations(inst.num_agents(), inst.num_chores(), self.bound)
    }

    /// Minimum social cost and the first allocation attaining it.
    pub fn min_social_cost(&self, inst: &Instance) -> Result<(u64, Allocation)> {
        let mut best: Option<(u64, Allocation)> = None;
        for alloc in self.allocations(inst)? {
            let sc: u64 = alloc.cost_profile(inst).iter().map(|&c| c as u64).sum();
            if best.as_ref().is_none_or(|(b, _)| sc < *b) {
                best = Some((sc, alloc));
            }
        }
        Ok(best.expect("at least one allocation"))
    }

    /// `τ_i = min over complete allocations of max_j c_i(X_j)`.
    pub fn minimax_share(&self, inst: &Instance, agent: usize) -> Result<Cost> {
        if agent >= inst.num_agents() {
            return Err(Error::InvalidParameter(format!("no agent {agent}")));
        }
        let oracle = inst.oracle(agent);
        let share = self
            .allocations(inst)?
            .map(|a| a.bundles().iter().map(|b| oracle.cost(*b)).max().unwrap_or(0))
            .min()
            .expect("at least one allocation");
        Ok(share)
    }

    pub fn minimax_shares(&self, inst: &Instance) -> Result<Vec<Cost>> {
        (0..inst.num_agents()).map(|i| self.minimax_share(inst, i)).collect()
    }

    /// True iff no complete allocation is weakly better for everyone and
    /// strictly better for someone.
    pub fn is_pareto_efficient(&self, inst: &Instance, alloc: &Allocation) -> Result<bool> {
        alloc.validate_complete(inst)?;
        let base = alloc.cost_profile(inst);
        for other in self.allocations(inst)? {
            let costs = other.cost_profile(inst);
            if costs.iter().zip(&base).all(|(x, y)| x <= y) && costs != base {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// An allocation whose sorted profile has prefix sums no larger than any
    /// other allocation's, if one exists.
    pub fn lorenz_dominating(&self, inst: &Instance) -> Result<Option<Allocation>> {
        // Pointwise minimum of the prefix sums over all allocations; a
        // dominating allocation must attain it at every position.
        let mut profiles: HashMap<SortedCostProfile, Allocation> = HashMap::new();
        for alloc in self.allocations(inst)? {
            profiles.entry(SortedCostProfile::of(inst, &alloc)).or_insert(alloc);
        }
        let mut floor = vec![u64::MAX; inst.num_agents()];
        for p in profiles.keys() {
            for (f, s) in floor.iter_mut().zip(p.prefix_sums()) {
                *f = (*f).min(s);
            }
        }
        let mut winners: Vec<_> = profiles
            .into_iter()
            .filter(|(p, _)| p.prefix_sums() == floor)
            .map(|(_, a)| a)
            .collect();
        debug_assert!(winners.len() <= 1, "prefix sums determine a sorted profile");
        Ok(winners.pop())
    }

    /// Prefix sums every complete allocation's sorted profile is bounded
    /// below by.
    pub fn lorenz_floor(&self, inst: &Instance) -> Result<Vec<u64>> {
        let mut floor = vec![u64::MAX; inst.num_agents()];
        for alloc in self.allocations(inst)? {
            for (f, s) in floor.iter_mut().zip(SortedCostProfile::of(inst, &alloc).prefix_sums()) {
                *f = (*f).min(s);
            }
        }
        Ok(floor)
    }

    /// leximax- allocation for identical costs: maximizes the smallest
    /// (cost, size) bundle tuple, then the second smallest, and so on. Ties
    /// go to the first allocation in enumeration order.
    pub fn leximax_minus(&self, inst: &Instance) -> Result<Allocation> {
        inst.require_identical_costs()?;
        let oracle = inst.oracle(0);
        let key = |a: &Allocation| {
            let mut tuples: Vec<(Cost, usize)> = a.bundles().iter().map(|b| (oracle.cost(*b), b.len())).collect();
            tuples.sort_unstable();
            tuples
        };
        let mut best: Option<(Vec<(Cost, usize)>, Allocation)> = None;
        for alloc in self.allocations(inst)? {
            let k = key(&alloc);
            if best.as_ref().is_none_or(|(b, _)| k > *b) {
                best = Some((k, alloc));
            }
        }
        Ok(best.expect("at least one allocation").1)
    }
}

/// Lowest-index chore whose removal lowers the cost of `set` by exactly one.
///
/// Such a chore always exists for binary supermodular costs when the cost of
/// `set` is positive; failing to find one shows the oracle is not binary
/// supermodular.
pub fn find_decrement_chore(oracle: &CostOracle, set: ChoreSet) -> Result<usize> {
    let cost = oracle.eval(set)?;
    if cost == 0 {
        return Err(Error::InvalidParameter(format!("{set} has zero cost; nothing to decrement")));
    }
    set.iter()
        .find(|&a| oracle.cost(set.without(a)) + 1 == cost)
        .ok_or(Error::NoDecrementFound)
}

/// Rebalances a social-cost-minimizing allocation under identical binary
/// supermodular costs until bundle costs differ by at most one.
///
/// Repeatedly moves a cost-decrementing chore from a most expensive bundle to
/// a cheapest one. Each move keeps the social cost and strictly lowers
/// `Σ c(A_p)^2`, so at most `n·m²` moves happen.
pub fn balance_scm_identical(inst: &Instance, alloc: &Allocation) -> Result<Allocation> {
    inst.require_identical_costs()?;
    inst.require_certified_supermodular()?;
    alloc.validate_complete(inst)?;
    let oracle = inst.oracle(0);
    let brute = BruteForce::default();
    let social = |a: &Allocation| a.cost_profile(inst).iter().map(|&c| c as u64).sum::<u64>();
    let found = social(alloc);
    if brute.within_bound(inst) {
        let (minimum, _) = brute.min_social_cost(inst)?;
        if found != minimum {
            return Err(Error::InputNotScm { found, minimum });
        }
    }

    let (n, m) = (inst.num_agents(), inst.num_chores());
    let max_transfers = n * m * m;
    let mut bundles = alloc.bundles().to_vec();
    for _ in 0..=max_transfers {
        let costs: Vec<Cost> = bundles.iter().map(|b| oracle.cost(*b)).collect();
        let hi = (0..n).max_by_key(|&p| (costs[p], std::cmp::Reverse(p))).expect("n >= 1");
        let lo = (0..n).min_by_key(|&p| costs[p]).expect("n >= 1");
        if costs[hi] <= costs[lo] + 1 {
            let out = Allocation::new(bundles);
            debug_assert_eq!(social(&out), found);
            return Ok(out);
        }
        let t = find_decrement_chore(oracle, bundles[hi])?;
        bundles[hi].remove(t);
        bundles[lo].insert(t);
    }
    Err(Error::InternalInvariantViolation(format!(
        "rebalancing did not finish within {max_transfers} transfers"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::{Block, CostSpec};

    fn pairs(k: usize) -> Instance {
        let mut blocks: Vec<Block> = (0..k)
            .map(|p| Block { chores: ChoreSet::from([2 * p, 2 * p + 1]), cap: 1 })
            .collect();
        blocks.push(Block { chores: ChoreSet::singleton(2 * k), cap: 0 });
        let spec = CostSpec::PartitionComplement { blocks };
        Instance::from_specs(2 * k + 1, [spec.clone(), spec]).unwrap()
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_allocations(2, 3, DEFAULT_ENUMERATION_BOUND).unwrap().count(), 8);
        assert_eq!(enumerate_allocations(3, 11, DEFAULT_ENUMERATION_BOUND).unwrap().count(), 177_147);
        assert_eq!(enumerate_allocations(1, 5, DEFAULT_ENUMERATION_BOUND).unwrap().count(), 1);
        assert_eq!(enumerate_allocations(4, 0, DEFAULT_ENUMERATION_BOUND).unwrap().count(), 1);
        assert!(enumerate_allocations(2, 21, DEFAULT_ENUMERATION_BOUND).is_err());

        let all: Vec<_> = enumerate_allocations(2, 2, 4).unwrap().collect();
        let expected: Vec<_> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|a| Allocation::from_assignment(2, a))
            .collect();
        assert_eq!(all, expected);
    }

    #[test]
    fn pair_instance_brute_values() {
        let (c, _) = BruteForce::default().min_social_cost(&pairs(2)).unwrap();
        assert_eq!(c, 1);
        let inst = pairs(1);
        let split = Allocation::new(vec![ChoreSet::from([0, 2]), ChoreSet::from([1])]);
        let together = Allocation::new(vec![ChoreSet::from([0, 1]), ChoreSet::from([2])]);
        let brute = BruteForce::default();
        assert!(brute.is_pareto_efficient(&inst, &split).unwrap());
        assert!(!brute.is_pareto_efficient(&inst, &together).unwrap());
    }

    #[test]
    fn single_agent_share_is_total_cost() {
        let inst = Instance::new(vec![CostOracle::threshold(6, 2)]).unwrap();
        assert_eq!(BruteForce::default().minimax_share(&inst, 0).unwrap(), 4);
        let lex = BruteForce::default().leximax_minus(&inst).unwrap();
        assert_eq!(lex.bundle(0), ChoreSet::full(6));
    }

    #[test]
    fn leximax_minus_on_cardinality() {
        let inst = Instance::new(vec![CostOracle::cardinality(4); 2]).unwrap();
        let a = BruteForce::default().leximax_minus(&inst).unwrap();
        assert_eq!(a.cost_profile(&inst), vec![2, 2]);
        let mixed = Instance::new(vec![CostOracle::cardinality(4), CostOracle::threshold(4, 1)]).unwrap();
        assert!(BruteForce::default().leximax_minus(&mixed).is_err());
    }

    #[test]
    fn lorenz_oracle_zero_cost() {
        let inst = Instance::new(vec![CostOracle::threshold(4, 4); 3]).unwrap();
        let a = BruteForce::default().lorenz_dominating(&inst).unwrap().unwrap();
        assert_eq!(a.cost_profile(&inst), vec![0, 0, 0]);
    }

    #[test]
    fn lorenz_oracle_reports_absence() {
        // Profiles (3,0) and (2,2) have prefix sums (3,3) and (2,4); neither
        // dominates and nothing else is possible.
        let spec = CostSpec::Table { values: vec![0, 2, 2, 3] };
        let inst = Instance::from_specs(2, [spec.clone(), spec]).unwrap();
        let brute = BruteForce::default();
        assert_eq!(brute.lorenz_floor(&inst).unwrap(), vec![2, 3]);
        assert_eq!(brute.lorenz_dominating(&inst).unwrap(), None);
    }

    #[test]
    fn decrement_chore_examples() {
        let t = CostOracle::threshold(8, 3);
        assert_eq!(find_decrement_chore(&t, ChoreSet::from([1, 3, 4, 6, 7])).unwrap(), 1);
        let inst = pairs(1);
        assert_eq!(find_decrement_chore(inst.oracle(0), ChoreSet::from([0, 1])).unwrap(), 0);
        let cover = CostOracle::new(
            CostSpec::CoverageMax { sets: vec![ChoreSet::from([0, 1]), ChoreSet::from([2, 3])] },
            4,
        )
        .unwrap();
        assert_eq!(find_decrement_chore(&cover, ChoreSet::full(4)), Err(Error::NoDecrementFound));
        assert!(find_decrement_chore(&t, ChoreSet::from([0, 1])).is_err());
    }

    #[test]
    fn balancing_examples() {
        let card = Instance::new(vec![CostOracle::cardinality(7); 3]).unwrap();
        let skewed = Allocation::new(vec![ChoreSet::range(0, 5), ChoreSet::from([5]), ChoreSet::from([6])]);
        let out = balance_scm_identical(&card, &skewed).unwrap();
        assert_eq!(SortedCostProfile::of(&card, &out).values(), &[3, 2, 2]);

        let balanced = Allocation::new(vec![ChoreSet::range(0, 3), ChoreSet::range(3, 2), ChoreSet::range(5, 2)]);
        assert_eq!(balance_scm_identical(&card, &balanced).unwrap(), balanced);

        let thr = Instance::new(vec![CostOracle::threshold(6, 2); 2]).unwrap();
        let input = Allocation::new(vec![ChoreSet::range(0, 4), ChoreSet::range(4, 2)]);
        assert_eq!(input.cost_profile(&thr), vec![2, 0]);
        let out = balance_scm_identical(&thr, &input).unwrap();
        assert_eq!(out.cost_profile(&thr), vec![1, 1]);

        let wasteful = Allocation::new(vec![ChoreSet::full(6), ChoreSet::EMPTY]);
        assert_eq!(
            balance_scm_identical(&thr, &wasteful),
            Err(Error::InputNotScm { found: 4, minimum: 2 })
        );
    }
}

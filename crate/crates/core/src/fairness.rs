//! Fairness predicates and cost-profile utilities.
//!
//! Every predicate returns a [`FairnessWitness`]; a negative verdict carries a
//! concrete [`Violation`] that can be re-checked on its own.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::chores::ChoreSet;
use crate::costs::Cost;
use crate::error::{Error, Result};
use crate::model::{Allocation, Instance};

/// Largest number of removal sets enumerated per (envier, bundle) pair.
pub const MAX_REMOVAL_SETS: u128 = 1 << 20;

/// `SC(A) = Σ_i c_i(A_i)`.
pub fn social_cost(inst: &Instance, alloc: &Allocation) -> Result<u64> {
    alloc.validate(inst)?;
    Ok(alloc.cost_profile(inst).iter().map(|&c| c as u64).sum())
}

/// Exact rational envy-scaling factor in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Beta {
    num: u64,
    den: u64,
}

impl Beta {
    pub const ONE: Beta = Beta { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Beta> {
        if num == 0 || den == 0 || num > den {
            return Err(Error::InvalidParameter(format!("beta = {num}/{den} is not in (0, 1]")));
        }
        Ok(Beta { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `β · lhs <= rhs`, evaluated without rounding.
    fn scaled_le(&self, lhs: Cost, rhs: Cost) -> bool {
        self.num as u128 * lhs as u128 <= self.den as u128 * rhs as u128
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Beta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Beta> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidParameter(format!("cannot parse beta `{s}`; expected NUM/DEN")))
        };
        match s.split_once('/') {
            Some((n, d)) => Beta::new(parse(n)?, parse(d)?),
            None => Beta::new(parse(s)?, 1),
        }
    }
}

/// A concrete reason a fairness predicate failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `envier` still envies `envied` after removing any single chore.
    Envy { envier: usize, envied: usize, bundle: ChoreSet },
    /// Removing `removed` from the envier's bundle leaves
    /// `β · c(A_envier \ removed) > c(A_envied)`.
    ScaledEnvy { envier: usize, envied: usize, removed: ChoreSet, beta: Beta },
    /// `c_agent(A_agent) > share`.
    AboveShare { agent: usize, cost: Cost, share: Cost },
}

impl Violation {
    /// Re-validates the violation against `alloc` from scratch.
    pub fn holds(&self, inst: &Instance, alloc: &Allocation) -> bool {
        match *self {
            Violation::Envy { envier, envied, bundle } => {
                let own = alloc.bundle(envier);
                let other = inst.cost(envier, alloc.bundle(envied));
                bundle == own
                    && !own.is_empty()
                    && own.iter().all(|t| inst.cost(envier, own.without(t)) > other)
            }
            Violation::ScaledEnvy { envier, envied, removed, beta } => {
                let own = alloc.bundle(envier);
                removed.is_subset(own)
                    && !beta.scaled_le(
                        inst.cost(envier, own.difference(removed)),
                        inst.cost(envier, alloc.bundle(envied)),
                    )
            }
            Violation::AboveShare { agent, cost, share } => {
                inst.cost(agent, alloc.bundle(agent)) == cost && cost > share
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Envy { envier, envied, bundle } => write!(
                f,
                "agent {envier} envies agent {envied} after removing any chore of {bundle}"
            ),
            Violation::ScaledEnvy { envier, envied, removed, beta } => write!(
                f,
                "agent {envier} envies agent {envied} (beta {beta}) after removing {removed}"
            ),
            Violation::AboveShare { agent, cost, share } => {
                write!(f, "agent {agent} has cost {cost} above its share {share}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FairnessWitness {
    pub verdict: bool,
    pub violation: Option<Violation>,
}

impl FairnessWitness {
    fn pass() -> Self {
        FairnessWitness { verdict: true, violation: None }
    }

    fn fail(v: Violation) -> Self {
        FairnessWitness { verdict: false, violation: Some(v) }
    }

    fn first_failure(mut checks: impl Iterator<Item = Result<Option<Violation>>>) -> Result<Self> {
        checks
            .find_map(|r| r.transpose())
            .transpose()
            .map(|v| v.map_or_else(FairnessWitness::pass, FairnessWitness::fail))
    }
}

fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// Envy-freeness up to one chore. Agents with empty bundles are never envious.
pub fn is_ef1(inst: &Instance, alloc: &Allocation) -> Result<FairnessWitness> {
    alloc.validate(inst)?;
    FairnessWitness::first_failure(ordered_pairs(inst.num_agents()).map(|(i, j)| {
        let own = alloc.bundle(i);
        if own.is_empty() {
            return Ok(None);
        }
        let other = inst.cost(i, alloc.bundle(j));
        let fine = own.iter().any(|t| inst.cost(i, own.without(t)) <= other);
        Ok((!fine).then_some(Violation::Envy { envier: i, envied: j, bundle: own }))
    }))
}

/// β-EFkX: for all `i != j` with `|A_i| >= k` and every `k`-subset `T` of
/// `A_i`, `β · c_i(A_i \ T) <= c_i(A_j)`.
pub fn is_beta_efkx(inst: &Instance, alloc: &Allocation, beta: Beta, k: usize) -> Result<FairnessWitness> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    alloc.validate(inst)?;
    FairnessWitness::first_failure(ordered_pairs(inst.num_agents()).map(|(i, j)| {
        let own = alloc.bundle(i);
        if own.len() < k {
            return Ok(None);
        }
        let count = own.count_subsets_of_size(k);
        if count > MAX_REMOVAL_SETS {
            return Err(Error::TooLargeForExhaustiveCheck {
                what: "removal subsets",
                size: count,
                bound: MAX_REMOVAL_SETS,
            });
        }
        let other = inst.cost(i, alloc.bundle(j));
        Ok(own
            .subsets_of_size(k)
            .find(|t| !beta.scaled_le(inst.cost(i, own.difference(*t)), other))
            .map(|removed| Violation::ScaledEnvy { envier: i, envied: j, removed, beta }))
    }))
}

/// Envy-freeness up to any chore (β = 1, k = 1).
pub fn is_efx(inst: &Instance, alloc: &Allocation) -> Result<FairnessWitness> {
    is_beta_efkx(inst, alloc, Beta::ONE, 1)
}

/// `c_i(A_i) <= τ_i` for every agent.
pub fn is_mms_fair(inst: &Instance, alloc: &Allocation, shares: &[Cost]) -> Result<FairnessWitness> {
    alloc.validate(inst)?;
    if shares.len() != inst.num_agents() {
        return Err(Error::InvalidParameter(format!(
            "{} shares for {} agents",
            shares.len(),
            inst.num_agents()
        )));
    }
    FairnessWitness::first_failure(shares.iter().enumerate().map(|(agent, &share)| {
        let cost = inst.cost(agent, alloc.bundle(agent));
        Ok((cost > share).then_some(Violation::AboveShare { agent, cost, share }))
    }))
}

/// Cost profile sorted in nonincreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SortedCostProfile(Vec<Cost>);

impl SortedCostProfile {
    pub fn new(mut costs: Vec<Cost>) -> Self {
        costs.sort_unstable_by(|a, b| b.cmp(a));
        SortedCostProfile(costs)
    }

    pub fn of(inst: &Instance, alloc: &Allocation) -> Self {
        Self::new(alloc.cost_profile(inst))
    }

    pub fn values(&self) -> &[Cost] {
        &self.0
    }

    pub fn prefix_sums(&self) -> Vec<u64> {
        self.0
            .iter()
            .scan(0u64, |acc, &c| {
                *acc += c as u64;
                Some(*acc)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LorenzOrder {
    Dominates,
    DominatedBy,
    Equal,
    Incomparable,
}

/// Compares prefix sums of two sorted cost profiles; smaller is better.
pub fn lorenz_compare(p: &SortedCostProfile, q: &SortedCostProfile) -> Result<LorenzOrder> {
    if p.0.len() != q.0.len() {
        return Err(Error::InvalidParameter(format!(
            "profiles have lengths {} and {}",
            p.0.len(),
            q.0.len()
        )));
    }
    if p == q {
        return Ok(LorenzOrder::Equal);
    }
    let (mut le, mut ge) = (true, true);
    for (a, b) in p.prefix_sums().into_iter().zip(q.prefix_sums()) {
        match a.cmp(&b) {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
    }
    Ok(match (le, ge) {
        (true, _) => LorenzOrder::Dominates,
        (false, true) => LorenzOrder::DominatedBy,
        (false, false) => LorenzOrder::Incomparable,
    })
}

//! Chore division instances and allocations.

use crate::chores::ChoreSet;
use crate::costs::{
    validate_binary_marginals, validate_supermodular, Cost, CostOracle, CostSpec,
    DEFAULT_VALIDATION_BOUND,
};
use crate::error::{Error, Result};

/// What is known about one agent's cost function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Certificate {
    pub binary_marginals: bool,
    pub supermodular: bool,
}

impl Certificate {
    /// Certificate for `oracle`: structural families are certified by
    /// construction, the rest by exhaustive validation when `m` is small
    /// enough. Oracles too large to validate stay uncertified.
    pub fn for_oracle(oracle: &CostOracle) -> Certificate {
        let spec = oracle.spec();
        if spec.is_structurally_supermodular() {
            return Certificate { binary_marginals: true, supermodular: true };
        }
        if oracle.num_chores() > DEFAULT_VALIDATION_BOUND {
            return Certificate {
                binary_marginals: spec.has_structural_binary_marginals(),
                supermodular: false,
            };
        }
        let binary_marginals = spec.has_structural_binary_marginals()
            || validate_binary_marginals(oracle).unwrap_or(false);
        let supermodular = binary_marginals && validate_supermodular(oracle).unwrap_or(false);
        Certificate { binary_marginals, supermodular }
    }

    pub fn binary_supermodular(&self) -> bool {
        self.binary_marginals && self.supermodular
    }
}

/// `n` agents, `m` chores and one cost oracle per agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    m: usize,
    costs: Vec<CostOracle>,
    certificates: Vec<Certificate>,
}

impl Instance {
    pub fn new(costs: Vec<CostOracle>) -> Result<Self> {
        let certificates = costs.iter().map(Certificate::for_oracle).collect();
        Self::with_certificates(costs, certificates)
    }

    /// Builds an instance from cost specs over `m` chores.
    pub fn from_specs(m: usize, specs: impl IntoIterator<Item = CostSpec>) -> Result<Self> {
        let costs = specs
            .into_iter()
            .map(|s| CostOracle::new(s, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(costs)
    }

    pub(crate) fn with_certificates(costs: Vec<CostOracle>, certificates: Vec<Certificate>) -> Result<Self> {
        let first = costs
            .first()
            .ok_or_else(|| Error::InvalidParameter("an instance needs at least one agent".into()))?;
        let m = first.num_chores();
        if let Some(i) = costs.iter().position(|c| c.num_chores() != m) {
            return Err(Error::InvalidParameter(format!(
                "agent {i} has {} chores, agent 0 has {m}",
                costs[i].num_chores()
            )));
        }
        Ok(Instance { m, costs, certificates })
    }

    pub fn num_agents(&self) -> usize {
        self.costs.len()
    }

    pub fn num_chores(&self) -> usize {
        self.m
    }

    pub fn ground(&self) -> ChoreSet {
        ChoreSet::full(self.m)
    }

    pub fn oracle(&self, agent: usize) -> &CostOracle {
        &self.costs[agent]
    }

    pub fn oracles(&self) -> &[CostOracle] {
        &self.costs
    }

    pub fn certificate(&self, agent: usize) -> Certificate {
        self.certificates[agent]
    }

    /// `c_agent(set)`.
    pub fn cost(&self, agent: usize, set: ChoreSet) -> Cost {
        self.costs[agent].cost(set)
    }

    pub fn is_certified_supermodular(&self) -> bool {
        self.certificates.iter().all(Certificate::binary_supermodular)
    }

    pub fn require_certified_supermodular(&self) -> Result<()> {
        match self.certificates.iter().position(|c| !c.binary_supermodular()) {
            Some(agent) => Err(Error::UncertifiedCosts { agent }),
            None => Ok(()),
        }
    }

    /// Identical costs means every agent carries the same spec.
    pub fn require_identical_costs(&self) -> Result<()> {
        let first = self.costs[0].spec();
        match self.costs.iter().position(|c| c.spec() != first) {
            Some(agent) => Err(Error::NotIdenticalCosts { agent }),
            None => Ok(()),
        }
    }

    pub fn has_identical_costs(&self) -> bool {
        self.require_identical_costs().is_ok()
    }
}

/// One bundle of chores per agent. Bundles are disjoint; the allocation is
/// complete when they cover every chore.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    bundles: Vec<ChoreSet>,
}

impl Allocation {
    pub fn new(bundles: Vec<ChoreSet>) -> Self {
        Allocation { bundles }
    }

    pub fn empty(n: usize) -> Self {
        Allocation { bundles: vec![ChoreSet::EMPTY; n] }
    }

    /// Allocation giving chore `j` to agent `assignment[j]`.
    pub fn from_assignment(n: usize, assignment: &[usize]) -> Self {
        let mut bundles = vec![ChoreSet::EMPTY; n];
        for (chore, &agent) in assignment.iter().enumerate() {
            bundles[agent].insert(chore);
        }
        Allocation { bundles }
    }

    pub fn num_agents(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundle(&self, agent: usize) -> ChoreSet {
        self.bundles[agent]
    }

    pub fn bundles(&self) -> &[ChoreSet] {
        &self.bundles
    }

    pub fn into_bundles(self) -> Vec<ChoreSet> {
        self.bundles
    }

    pub fn assign(&mut self, agent: usize, chore: usize) {
        self.bundles[agent].insert(chore);
    }

    pub fn unassign(&mut self, agent: usize, chore: usize) {
        self.bundles[agent].remove(chore);
    }

    pub fn assigned(&self) -> ChoreSet {
        self.bundles.iter().fold(ChoreSet::EMPTY, |acc, b| acc.union(*b))
    }

    pub fn is_complete(&self, m: usize) -> bool {
        self.assigned() == ChoreSet::full(m)
    }

    /// Checks that the allocation has one bundle per agent, its bundles are
    /// disjoint, and every chore exists in the instance.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        if self.bundles.len() != inst.num_agents() {
            return Err(Error::InvalidAllocation(format!(
                "{} bundles for {} agents",
                self.bundles.len(),
                inst.num_agents()
            )));
        }
        let mut seen = ChoreSet::EMPTY;
        for (i, b) in self.bundles.iter().enumerate() {
            if !b.is_subset(inst.ground()) {
                return Err(Error::InvalidAllocation(format!(
                    "bundle {i} contains a chore outside [0, {})",
                    inst.num_chores()
                )));
            }
            if let Some(c) = b.intersection(seen).first() {
                return Err(Error::InvalidAllocation(format!("chore {c} appears in two bundles")));
            }
            seen = seen.union(*b);
        }
        Ok(())
    }

    pub fn validate_complete(&self, inst: &Instance) -> Result<()> {
        self.validate(inst)?;
        if !self.is_complete(inst.num_chores()) {
            let missing = inst.ground().difference(self.assigned());
            return Err(Error::InvalidAllocation(format!("chores {missing} are not allocated")));
        }
        Ok(())
    }

    /// `c_i(A_i)` for every agent.
    pub fn cost_profile(&self, inst: &Instance) -> Vec<Cost> {
        self.bundles.iter().enumerate().map(|(i, b)| inst.cost(i, *b)).collect()
    }
}

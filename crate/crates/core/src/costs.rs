//! Cost-function value oracles and their structural validators.
//!
//! A cost function maps every chore set to a nonnegative integer. The library
//! works with *binary supermodular* costs: adding a chore raises the cost by 0
//! or 1, and the marginal cost of a chore never shrinks as the bundle grows.

use serde::{Deserialize, Serialize};

use crate::chores::{ChoreSet, MAX_CHORES};
use crate::error::{Error, Result};

pub type Cost = u32;

/// Default largest `m` for which the exhaustive validators run.
pub const DEFAULT_VALIDATION_BOUND: usize = 16;

/// Largest `m` accepted for an explicit value table (`2^m` entries).
pub const MAX_TABLE_CHORES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Block {
    pub chores: ChoreSet,
    pub cap: usize,
}

/// Declared structural family of a cost function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CostSpec {
    /// `c(S) = |S|`.
    Cardinality,
    /// `c(S) = max(0, |S| - k)`.
    Threshold { k: usize },
    /// `c(S) = |S| - Σ_j min(|S ∩ B_j|, cap_j)` over a partition `{B_j}` of the chores.
    PartitionComplement { blocks: Vec<Block> },
    /// `c(S) = max_F |S ∩ F|`, or 0 without sets.
    CoverageMax { sets: Vec<ChoreSet> },
    /// Explicit values indexed by the bitmask of the set (bit `j` = chore `j`).
    Table { values: Vec<Cost> },
}

impl CostSpec {
    /// True for the families that are binary supermodular by construction.
    pub fn is_structurally_supermodular(&self) -> bool {
        matches!(
            self,
            CostSpec::Cardinality | CostSpec::Threshold { .. } | CostSpec::PartitionComplement { .. }
        )
    }

    /// True for the families whose marginals are in {0,1} by construction.
    pub fn has_structural_binary_marginals(&self) -> bool {
        !matches!(self, CostSpec::Table { .. })
    }

    fn check(&self, m: usize) -> Result<()> {
        let ground = ChoreSet::full(m);
        match self {
            CostSpec::Cardinality | CostSpec::Threshold { .. } => Ok(()),
            CostSpec::PartitionComplement { blocks } => {
                let mut covered = ChoreSet::EMPTY;
                for (j, b) in blocks.iter().enumerate() {
                    if !b.chores.is_subset(ground) {
                        return Err(Error::InvalidCostSpec(format!(
                            "block {j} contains a chore outside [0, {m})"
                        )));
                    }
                    if !b.chores.is_disjoint(covered) {
                        return Err(Error::InvalidCostSpec(format!(
                            "block {j} overlaps an earlier block"
                        )));
                    }
                    if b.cap > b.chores.len() {
                        return Err(Error::InvalidCostSpec(format!(
                            "block {j} has cap {} above its size {}",
                            b.cap,
                            b.chores.len()
                        )));
                    }
                    covered = covered.union(b.chores);
                }
                if covered != ground {
                    return Err(Error::InvalidCostSpec(format!(
                        "blocks cover {} of {m} chores",
                        covered.len()
                    )));
                }
                Ok(())
            }
            CostSpec::CoverageMax { sets } => match sets.iter().position(|f| !f.is_subset(ground)) {
                Some(j) => Err(Error::InvalidCostSpec(format!(
                    "set {j} contains a chore outside [0, {m})"
                ))),
                None => Ok(()),
            },
            CostSpec::Table { values } => {
                if m > MAX_TABLE_CHORES {
                    return Err(Error::InvalidCostSpec(format!(
                        "table costs support at most {MAX_TABLE_CHORES} chores"
                    )));
                }
                if values.len() != 1usize << m {
                    return Err(Error::InvalidCostSpec(format!(
                        "table has {} entries, expected 2^{m} = {}",
                        values.len(),
                        1usize << m
                    )));
                }
                if values[0] != 0 {
                    return Err(Error::InvalidCostSpec("table value of the empty set must be 0".into()));
                }
                Ok(())
            }
        }
    }
}

/// Value oracle for one agent's cost function over `m` chores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostOracle {
    spec: CostSpec,
    m: usize,
}

impl CostOracle {
    pub fn new(spec: CostSpec, m: usize) -> Result<Self> {
        if m > MAX_CHORES {
            return Err(Error::InvalidCostSpec(format!("at most {MAX_CHORES} chores are supported")));
        }
        spec.check(m)?;
        Ok(CostOracle { spec, m })
    }

    pub fn cardinality(m: usize) -> Self {
        CostOracle { spec: CostSpec::Cardinality, m }
    }

    pub fn threshold(m: usize, k: usize) -> Self {
        CostOracle { spec: CostSpec::Threshold { k }, m }
    }

    pub fn spec(&self) -> &CostSpec {
        &self.spec
    }

    pub fn num_chores(&self) -> usize {
        self.m
    }

    pub fn ground(&self) -> ChoreSet {
        ChoreSet::full(self.m)
    }

    /// Cost of `set`, rejecting chores outside `[0, m)`.
    pub fn eval(&self, set: ChoreSet) -> Result<Cost> {
        self.check_subset(set)?;
        Ok(self.cost(set))
    }

    /// Cost of `set`, which must lie inside the ground set.
    pub fn cost(&self, set: ChoreSet) -> Cost {
        debug_assert!(set.is_subset(self.ground()), "{set} is not a subset of [0, {})", self.m);
        match &self.spec {
            CostSpec::Cardinality => set.len() as Cost,
            CostSpec::Threshold { k } => set.len().saturating_sub(*k) as Cost,
            CostSpec::PartitionComplement { blocks } => {
                let kept: usize = blocks
                    .iter()
                    .map(|b| set.intersection(b.chores).len().min(b.cap))
                    .sum();
                (set.len() - kept) as Cost
            }
            CostSpec::CoverageMax { sets } => sets
                .iter()
                .map(|f| set.intersection(*f).len() as Cost)
                .max()
                .unwrap_or(0),
            CostSpec::Table { values } => values[set.bits() as usize],
        }
    }

    /// `c(set + chore) - c(set)`.
    pub fn marginal(&self, set: ChoreSet, chore: usize) -> Result<i64> {
        self.check_subset(set)?;
        if chore >= self.m {
            return Err(Error::InvalidChore { chore, m: self.m });
        }
        if set.contains(chore) {
            return Err(Error::ChoreAlreadyPresent(chore));
        }
        Ok(self.cost(set.with(chore)) as i64 - self.cost(set) as i64)
    }

    fn check_subset(&self, set: ChoreSet) -> Result<()> {
        match set.difference(self.ground()).first() {
            Some(chore) => Err(Error::InvalidChore { chore, m: self.m }),
            None => Ok(()),
        }
    }

    fn check_bound(&self, bound: usize) -> Result<()> {
        if self.m > bound {
            return Err(Error::TooLargeForExhaustiveCheck {
                what: "chore count",
                size: self.m as u128,
                bound: bound as u128,
            });
        }
        Ok(())
    }
}

/// Exhaustively checks `c(∅) = 0` and that every marginal is 0 or 1.
pub fn validate_binary_marginals(oracle: &CostOracle) -> Result<bool> {
    validate_binary_marginals_within(oracle, DEFAULT_VALIDATION_BOUND)
}

pub fn validate_binary_marginals_within(oracle: &CostOracle, bound: usize) -> Result<bool> {
    oracle.check_bound(bound)?;
    let ground = oracle.ground();
    if oracle.cost(ChoreSet::EMPTY) != 0 {
        return Ok(false);
    }
    let ok = ground.subsets().all(|s| {
        let base = oracle.cost(s);
        ground
            .difference(s)
            .iter()
            .all(|a| matches!(oracle.cost(s.with(a)).checked_sub(base), Some(0 | 1)))
    });
    Ok(ok)
}

/// Exhaustively checks the local exchange form of supermodularity:
/// `c(S+a+b) - c(S+b) >= c(S+a) - c(S)` for all `S` and distinct `a, b ∉ S`.
///
/// Binary marginals are not checked here; run [`validate_binary_marginals`]
/// first.
pub fn validate_supermodular(oracle: &CostOracle) -> Result<bool> {
    validate_supermodular_within(oracle, DEFAULT_VALIDATION_BOUND)
}

pub fn validate_supermodular_within(oracle: &CostOracle, bound: usize) -> Result<bool> {
    Ok(find_supermodularity_violation(oracle, bound)?.is_none())
}

/// First `(S, a, b)` violating the exchange inequality, in subset order.
pub fn find_supermodularity_violation(
    oracle: &CostOracle,
    bound: usize,
) -> Result<Option<(ChoreSet, usize, usize)>> {
    oracle.check_bound(bound)?;
    let ground = oracle.ground();
    for s in ground.subsets() {
        let cs = oracle.cost(s) as i64;
        let outside = ground.difference(s);
        for a in outside {
            let csa = oracle.cost(s.with(a)) as i64;
            for b in outside.iter().filter(|&b| b > a) {
                let csb = oracle.cost(s.with(b)) as i64;
                let csab = oracle.cost(s.with(a).with(b)) as i64;
                if csab + cs < csa + csb {
                    return Ok(Some((s, a, b)));
                }
            }
        }
    }
    Ok(None)
}

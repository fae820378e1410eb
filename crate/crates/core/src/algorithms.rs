//! Fair and efficient allocation algorithms.
//!
//! The efficient solvers share one first step: split a maximum-size set of
//! chores among the agents so that every agent's bundle costs nothing
//! ([`cost_min_partial_alloc`]). Any way of handing out the remaining chores
//! then yields a social-cost-minimizing allocation, and each solver picks the
//! completion that delivers its fairness guarantee.
//!
//! All choices are deterministic: chores are taken lowest index first and ties
//! between agents go to the lowest index.

use log::warn;

use crate::chores::ChoreSet;
use crate::costs::Cost;
use crate::fairness::{is_ef1, is_efx, is_mms_fair};
use crate::matroid::{kfold_union_rank, matroid_partition, MatroidView};
use crate::model::{Allocation, Instance};
use crate::error::{Error, Result};

fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InternalInvariantViolation(what()))
    }
}

/// Zero-cost partial allocation covering a basis of the union matroid.
///
/// Exactly `c*` chores are left unassigned, where `c*` is the minimum social
/// cost of the instance.
pub fn cost_min_partial_alloc(inst: &Instance) -> Result<Allocation> {
    inst.require_certified_supermodular()?;
    if inst.num_chores() == 0 {
        return Ok(Allocation::empty(inst.num_agents()));
    }
    let views: Vec<_> = inst.oracles().iter().map(MatroidView::new).collect();
    let partition = matroid_partition(&views, inst.ground());
    Ok(Allocation::new(partition.bundles))
}

/// Returns the unique allocation for one agent or no chores, if applicable.
fn degenerate(inst: &Instance) -> Option<Allocation> {
    if inst.num_chores() == 0 {
        Some(Allocation::empty(inst.num_agents()))
    } else if inst.num_agents() == 1 {
        Some(Allocation::new(vec![inst.ground()]))
    } else {
        None
    }
}

/// Extends the zero-cost partial allocation; returns it together with the
/// unassigned chores.
fn efficient_start(inst: &Instance) -> Result<(Allocation, ChoreSet)> {
    let partial = cost_min_partial_alloc(inst)?;
    let unassigned = inst.ground().difference(partial.assigned());
    if cfg!(debug_assertions) {
        for (i, b) in partial.bundles().iter().enumerate() {
            invariant(inst.cost(i, *b) == 0, || format!("partial bundle of agent {i} has nonzero cost"))?;
        }
    }
    Ok((partial, unassigned))
}

fn check_social_cost(inst: &Instance, alloc: &Allocation, expected: usize) -> Result<()> {
    if cfg!(debug_assertions) {
        invariant(alloc.is_complete(inst.num_chores()), || "output is not complete".into())?;
        let sc: u64 = alloc.cost_profile(inst).iter().map(|&c| c as u64).sum();
        invariant(sc == expected as u64, || {
            format!("social cost {sc} differs from the minimum {expected}")
        })?;
    }
    Ok(())
}

/// Social-cost-minimizing complete allocation.
pub fn social_cost_min(inst: &Instance) -> Result<Allocation> {
    inst.require_certified_supermodular()?;
    if let Some(a) = degenerate(inst) {
        return Ok(a);
    }
    let (mut alloc, unassigned) = efficient_start(inst)?;
    for t in unassigned {
        alloc.assign(0, t);
    }
    check_social_cost(inst, &alloc, unassigned.len())?;
    Ok(alloc)
}

/// Complete allocation that is EF1 and social-cost minimizing.
pub fn ef1_and_efficient(inst: &Instance) -> Result<Allocation> {
    ef1_and_efficient_observed(inst, |_| {})
}

/// [`ef1_and_efficient`], calling `observe` on the partial allocation before
/// every chore assignment and once on the final allocation.
pub fn ef1_and_efficient_observed(inst: &Instance, mut observe: impl FnMut(&Allocation)) -> Result<Allocation> {
    inst.require_certified_supermodular()?;
    if let Some(a) = degenerate(inst) {
        observe(&a);
        return Ok(a);
    }
    let n = inst.num_agents();
    let (mut alloc, unassigned) = efficient_start(inst)?;
    for t in unassigned {
        observe(&alloc);
        // An agent who envies no one always exists; otherwise an envy cycle
        // could be rotated to push the social cost below the minimum.
        let agent = (0..n)
            .find(|&l| {
                let own = inst.cost(l, alloc.bundle(l));
                (0..n).all(|j| own <= inst.cost(l, alloc.bundle(j)))
            })
            .ok_or_else(|| Error::InternalInvariantViolation("every agent envies someone".into()))?;
        alloc.assign(agent, t);
    }
    observe(&alloc);
    check_social_cost(inst, &alloc, unassigned.len())?;
    if cfg!(debug_assertions) {
        invariant(is_ef1(inst, &alloc)?.verdict, || "output is not EF1".into())?;
    }
    Ok(alloc)
}

/// Minimax share `τ_i = ⌈(m - r_{i×n}([m])) / n⌉`, where `r_{i×n}` is the
/// rank of the `n`-fold union of agent `i`'s matroid.
pub fn minimax_share(inst: &Instance, agent: usize) -> Result<Cost> {
    if agent >= inst.num_agents() {
        return Err(Error::InvalidParameter(format!("no agent {agent}")));
    }
    if !inst.certificate(agent).binary_supermodular() {
        return Err(Error::UncertifiedCosts { agent });
    }
    let (n, m) = (inst.num_agents(), inst.num_chores());
    if m == 0 {
        return Ok(0);
    }
    let rank = kfold_union_rank(MatroidView::new(inst.oracle(agent)), n, inst.ground());
    Ok((m - rank).div_ceil(n) as Cost)
}

pub fn minimax_shares(inst: &Instance) -> Result<Vec<Cost>> {
    (0..inst.num_agents()).map(|i| minimax_share(inst, i)).collect()
}

/// Complete allocation that is MMS-fair and social-cost minimizing.
///
/// Agents are topped up in index order until their cost reaches their share.
pub fn mms_and_efficient(inst: &Instance) -> Result<Allocation> {
    inst.require_certified_supermodular()?;
    if let Some(a) = degenerate(inst) {
        return Ok(a);
    }
    let (mut alloc, mut unassigned) = efficient_start(inst)?;
    let c_star = unassigned.len();
    let shares = minimax_shares(inst)?;
    for (agent, &share) in shares.iter().enumerate() {
        while let Some(t) = unassigned.first() {
            if inst.cost(agent, alloc.bundle(agent)) >= share {
                break;
            }
            alloc.assign(agent, t);
            unassigned.remove(t);
        }
    }
    invariant(unassigned.is_empty(), || {
        format!("{} chores left after every agent reached its share", unassigned.len())
    })?;
    check_social_cost(inst, &alloc, c_star)?;
    if cfg!(debug_assertions) {
        invariant(is_mms_fair(inst, &alloc, &shares)?.verdict, || "output is not MMS-fair".into())?;
    }
    Ok(alloc)
}

/// Lorenz-dominating complete allocation: the chores left over after the
/// zero-cost step are split as evenly as possible, the first
/// `|U| mod n` agents taking one extra.
pub fn lorenz_dominating(inst: &Instance) -> Result<Allocation> {
    inst.require_certified_supermodular()?;
    if let Some(a) = degenerate(inst) {
        return Ok(a);
    }
    let n = inst.num_agents();
    let (mut alloc, mut unassigned) = efficient_start(inst)?;
    let targets = even_split(unassigned.len(), n);
    for (agent, &count) in targets.iter().enumerate() {
        let take = unassigned.lowest(count);
        for t in take {
            alloc.assign(agent, t);
        }
        unassigned = unassigned.difference(take);
    }
    check_social_cost(inst, &alloc, targets.iter().sum())?;
    if cfg!(debug_assertions) {
        invariant(alloc.cost_profile(inst).iter().zip(&targets).all(|(&c, &t)| c as usize == t), || {
            "an agent's cost differs from its even-split target".into()
        })?;
    }
    Ok(alloc)
}

/// Per-agent counts splitting `total` as evenly as possible, larger counts
/// first.
pub fn even_split(total: usize, n: usize) -> Vec<usize> {
    let (q, h) = (total / n, total % n);
    (0..n).map(|i| if i < h { q + 1 } else { q }).collect()
}

/// EFX allocation for agents with identical monotone costs.
pub fn add_and_fix(inst: &Instance) -> Result<Allocation> {
    add_and_fix_observed(inst, |_| {})
}

/// [`add_and_fix`], calling `observe` on the partial allocation at the top of
/// every outer iteration.
///
/// Each outer iteration gives the lowest-index unassigned chore to a
/// cheapest agent `l`, then hands chores back from `l`'s bundle while
/// `l` would still envy the second-cheapest agent `s` without them.
pub fn add_and_fix_observed(inst: &Instance, mut observe: impl FnMut(&Allocation)) -> Result<Allocation> {
    inst.require_identical_costs()?;
    if !inst.certificate(0).binary_marginals {
        warn!("identical costs lack a binary-marginals certificate; Add-and-Fix may take pseudo-polynomial time");
    }
    let (n, m) = (inst.num_agents(), inst.num_chores());
    if let Some(a) = degenerate(inst) {
        return Ok(a);
    }
    let cost = |s: ChoreSet| inst.cost(0, s);

    // Outer iterations either strictly raise the social cost (at most
    // n·c([m]) times for monotone costs) or shrink the unassigned set
    // (at most m times in a row).
    let budget = (n as u128 * cost(inst.ground()) as u128 + 1) * (m as u128 + 1);
    let mut alloc = Allocation::empty(n);
    let mut unassigned = inst.ground();
    let mut iterations: u128 = 0;

    while let Some(t) = unassigned.first() {
        observe(&alloc);
        iterations += 1;
        invariant(iterations <= budget, || {
            format!("Add-and-Fix exceeded {budget} iterations; is the cost monotone?")
        })?;
        let costs = alloc.cost_profile(inst);
        let cheapest = argmin(&costs, None);
        let second = argmin(&costs, Some(cheapest));
        let target = costs[second];

        alloc.assign(cheapest, t);
        unassigned.remove(t);
        loop {
            let bundle = alloc.bundle(cheapest);
            match bundle.iter().find(|&q| cost(bundle.without(q)) > target) {
                Some(q) => {
                    alloc.unassign(cheapest, q);
                    unassigned.insert(q);
                }
                None => break,
            }
        }
    }
    if cfg!(debug_assertions) {
        invariant(is_efx(inst, &alloc)?.verdict, || "output is not EFX".into())?;
    }
    Ok(alloc)
}

fn argmin(costs: &[Cost], skip: Option<usize>) -> usize {
    (0..costs.len())
        .filter(|&k| Some(k) != skip)
        .min_by_key(|&k| costs[k])
        .expect("at least two agents")
}

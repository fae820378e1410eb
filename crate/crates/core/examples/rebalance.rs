//! Balancing an efficient allocation under identical costs by moving
//! cost-decrementing chores from the most to the least expensive bundle.

use chore_division::oracles::{balance_scm_identical, find_decrement_chore, BruteForce};
use chore_division::{CostSpec, Instance};

fn main() -> chore_division::Result<()> {
    let inst = Instance::from_specs(7, vec![CostSpec::Threshold { k: 1 }; 3])?;
    let brute = BruteForce::default();
    let (c_star, lopsided) = brute.min_social_cost(&inst)?;
    println!("first minimizer {:?} costs {:?} (social cost {c_star})", lopsided.bundles(), lopsided.cost_profile(&inst));

    let heavy = lopsided.bundles().iter().max_by_key(|b| inst.cost(0, **b)).copied().unwrap_or_default();
    if inst.cost(0, heavy) > 0 {
        println!("removing chore {} lowers {heavy} by one", find_decrement_chore(inst.oracle(0), heavy)?);
    }
    let balanced = balance_scm_identical(&inst, &lopsided)?;
    println!("balanced {:?} costs {:?}", balanced.bundles(), balanced.cost_profile(&inst));
    Ok(())
}

//! Minimum social cost through matroid union, checked against enumeration.
//!
//! Run with `cargo run --example social_cost`.

use chore_division::algorithms::{cost_min_partial_alloc, social_cost_min};
use chore_division::fairness::social_cost;
use chore_division::io::Builtin;
use chore_division::oracles::BruteForce;

fn main() -> chore_division::Result<()> {
    let inst = Builtin::Incomparable1.instance();

    // Zero-cost partial allocation: everything outside `unassigned` is free.
    let partial = cost_min_partial_alloc(&inst)?;
    let unassigned = inst.ground().difference(partial.assigned());
    println!("zero-cost bundles: {:?}", partial.bundles());
    println!("chores left over:  {unassigned}");

    let alloc = social_cost_min(&inst)?;
    let (brute, _) = BruteForce::default().min_social_cost(&inst)?;
    println!("allocation {:?}", alloc.bundles());
    println!("social cost {} (enumeration says {brute})", social_cost(&inst, &alloc)?);
    Ok(())
}

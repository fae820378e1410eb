//! Lorenz dominating allocation versus a plain social-cost minimizer.

use chore_division::algorithms::{lorenz_dominating, social_cost_min};
use chore_division::fairness::{lorenz_compare, SortedCostProfile};
use chore_division::io::Builtin;

fn main() -> chore_division::Result<()> {
    let inst = Builtin::Incomparable1.instance();
    let lorenz = SortedCostProfile::of(&inst, &lorenz_dominating(&inst)?);
    let scm = SortedCostProfile::of(&inst, &social_cost_min(&inst)?);
    println!("Lorenz dominating profile {:?}, prefix sums {:?}", lorenz.values(), lorenz.prefix_sums());
    println!("plain minimizer profile   {:?}, prefix sums {:?}", scm.values(), scm.prefix_sums());
    println!("comparison: {:?}", lorenz_compare(&lorenz, &scm)?);
    Ok(())
}

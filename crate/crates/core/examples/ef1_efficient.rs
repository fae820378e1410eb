//! EF1 and social-cost-minimizing allocation, with every intermediate
//! partial allocation printed.

use chore_division::algorithms::ef1_and_efficient_observed;
use chore_division::fairness::{is_ef1, social_cost};
use chore_division::io::Builtin;

fn main() -> chore_division::Result<()> {
    let inst = Builtin::Incomparable2.instance();
    let alloc = ef1_and_efficient_observed(&inst, |partial| {
        println!("  {:?} costs {:?}", partial.bundles(), partial.cost_profile(&inst));
    })?;
    println!("result {:?}", alloc.bundles());
    println!("EF1: {}", is_ef1(&inst, &alloc)?.verdict);
    println!("social cost: {}", social_cost(&inst, &alloc)?);
    Ok(())
}

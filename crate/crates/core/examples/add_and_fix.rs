//! EFX for identical costs, including a coverage cost that is not
//! supermodular.

use chore_division::algorithms::add_and_fix_observed;
use chore_division::fairness::is_efx;
use chore_division::{ChoreSet, CostSpec, Instance};

fn main() -> chore_division::Result<()> {
    // Cost = number of listed sets the bundle touches.
    let spec = CostSpec::CoverageMax {
        sets: vec![ChoreSet::from([0, 1, 2]), ChoreSet::from([2, 3]), ChoreSet::from([4, 5, 6, 7])],
    };
    let inst = Instance::from_specs(8, vec![spec; 3])?;
    println!("certificate: {:?}", inst.certificate(0));

    let mut iterations = 0;
    let alloc = add_and_fix_observed(&inst, |partial| {
        iterations += 1;
        println!("  iteration {iterations}: {:?}", partial.bundles());
    })?;
    println!("result {:?} costs {:?}", alloc.bundles(), alloc.cost_profile(&inst));
    println!("EFX: {} after {iterations} iterations", is_efx(&inst, &alloc)?.verdict);
    Ok(())
}

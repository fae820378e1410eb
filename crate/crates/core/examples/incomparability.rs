//! EF1 and MMS fairness are incomparable: each of two efficient allocations
//! has exactly one of the properties.

use chore_division::algorithms::minimax_shares;
use chore_division::fairness::{is_ef1, is_mms_fair};
use chore_division::io::Builtin;
use chore_division::{Allocation, ChoreSet};

fn main() -> chore_division::Result<()> {
    let inst = Builtin::Incomparable2.instance();
    let shares = minimax_shares(&inst)?;
    let a = Allocation::new(vec![ChoreSet::from([3, 4, 5]), ChoreSet::from([6, 7, 8, 9]), ChoreSet::from([0, 1, 2])]);
    let b = Allocation::new(vec![ChoreSet::from([0, 1, 4]), ChoreSet::from([5, 7, 9]), ChoreSet::from([2, 3, 6, 8])]);
    println!("shares {shares:?}");
    for (name, alloc) in [("A", &a), ("B", &b)] {
        let ef1 = is_ef1(&inst, alloc)?;
        let mms = is_mms_fair(&inst, alloc, &shares)?;
        println!("{name}: costs {:?}", alloc.cost_profile(&inst));
        println!("  EF1 {}{}", ef1.verdict, ef1.violation.map(|v| format!(" ({v})")).unwrap_or_default());
        println!("  MMS {}{}", mms.verdict, mms.violation.map(|v| format!(" ({v})")).unwrap_or_default());
    }
    Ok(())
}

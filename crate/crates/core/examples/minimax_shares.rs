//! Minimax shares from k-fold matroid union and an MMS-fair, efficient
//! allocation that respects them.

use chore_division::algorithms::{minimax_shares, mms_and_efficient};
use chore_division::fairness::is_mms_fair;
use chore_division::io::Builtin;
use chore_division::oracles::BruteForce;

fn main() -> chore_division::Result<()> {
    for builtin in [Builtin::Incomparable1, Builtin::Incomparable2] {
        let inst = builtin.instance();
        let shares = minimax_shares(&inst)?;
        let brute = BruteForce::default().minimax_shares(&inst)?;
        let alloc = mms_and_efficient(&inst)?;
        println!("{builtin}: shares {shares:?} (enumeration {brute:?})");
        println!("  allocation {:?} costs {:?}", alloc.bundles(), alloc.cost_profile(&inst));
        println!("  MMS-fair: {}", is_mms_fair(&inst, &alloc, &shares)?.verdict);
    }
    Ok(())
}

//! No allocation of the paired-chores instance is both Pareto efficient and
//! β-EFkX, for any of the listed β.
//!
//! Pass `k` as the first argument (default 1).

use chore_division::fairness::{is_beta_efkx, Beta};
use chore_division::io::Builtin;
use chore_division::oracles::BruteForce;

fn main() -> chore_division::Result<()> {
    let k: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let inst = Builtin::NoPoEfx(k).instance();
    let brute = BruteForce::default();
    let betas = [Beta::new(1, 100)?, Beta::new(1, 2)?, Beta::ONE];
    let mut found = 0;
    for alloc in brute.allocations(&inst)? {
        if !brute.is_pareto_efficient(&inst, &alloc)? {
            continue;
        }
        print!("PO {:?} costs {:?}:", alloc.bundles(), alloc.cost_profile(&inst));
        for beta in betas {
            let fair = is_beta_efkx(&inst, &alloc, beta, k)?.verdict;
            found += usize::from(fair);
            print!(" {beta}-EF{k}X={fair}");
        }
        println!();
    }
    println!("PO and fair allocations: {found}");
    Ok(())
}

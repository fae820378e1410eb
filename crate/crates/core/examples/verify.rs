//! Cross-check every solver against brute force on a few random instances.

use chore_division::generate::random_certified_instance;
use chore_division::oracles::BruteForce;
use chore_division::verify::verify_instance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> chore_division::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for round in 0..3 {
        let inst = random_certified_instance(&mut rng, 3, 8)?;
        println!("instance {round}");
        println!("{}", verify_instance(&inst, BruteForce::default())?);
    }
    Ok(())
}

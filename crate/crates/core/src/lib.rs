//! Fair division of indivisible chores among agents with binary supermodular
//! costs.
//!
//! Under binary supermodular costs every agent's zero-cost bundles form the
//! independent sets of a matroid, so a matroid union computation splits as
//! many chores as possible at zero cost. Completing that split in different
//! ways yields allocations that minimize social cost and are additionally EF1
//! ([`algorithms::ef1_and_efficient`]), MMS-fair
//! ([`algorithms::mms_and_efficient`]) or Lorenz dominating
//! ([`algorithms::lorenz_dominating`]). For identical costs,
//! [`algorithms::add_and_fix`] finds an EFX allocation.
//!
//! The [`oracles`] module contains exhaustive reference implementations used
//! to cross-check all of the above on small instances.

pub mod algorithms;
pub mod chores;
pub mod cli;
pub mod costs;
pub mod error;
pub mod fairness;
pub mod generate;
pub mod io;
pub mod matroid;
pub mod model;
pub mod oracles;
pub mod verify;

pub use chores::ChoreSet;
pub use costs::{Cost, CostOracle, CostSpec};
pub use error::{Error, Result};
pub use model::{Allocation, Certificate, Instance};

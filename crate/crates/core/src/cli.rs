//! Command implementations behind the `chore-division` binary.
//!
//! Instances are named by an [`InstanceSource`]: a file path,
//! `builtin:<name>`, or `random:n=<n>,m=<m>[,identical]` (seeded by `--seed`).
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict or a
//! failed verification, 2 for usage and validation errors.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algorithms::{
    add_and_fix, ef1_and_efficient, lorenz_dominating, minimax_shares, mms_and_efficient, social_cost_min,
};
use crate::costs::Cost;
use crate::error::{Error, Result};
use crate::fairness::{is_beta_efkx, is_ef1, is_efx, is_mms_fair, lorenz_compare, Beta, LorenzOrder, SortedCostProfile, Violation};
use crate::generate::{random_certified_instance, random_identical_instance};
use crate::io::{parse_allocation, parse_instance_with, serialize_instance, AllocationDocument, Builtin, ParseOptions};
use crate::model::{Allocation, Instance};
use crate::oracles::{BruteForce, DEFAULT_ENUMERATION_BOUND};
use crate::verify::{verify_instance, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    /// Social-cost minimizing.
    Scm,
    /// EF1 and social-cost minimizing.
    Ef1Po,
    /// MMS-fair and social-cost minimizing.
    MmsPo,
    /// Lorenz dominating.
    Lorenz,
    /// EFX for identical costs (Add-and-Fix).
    EfxIdentical,
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algo> {
        Ok(match s {
            "scm" => Algo::Scm,
            "ef1po" => Algo::Ef1Po,
            "mmspo" => Algo::MmsPo,
            "lorenz" => Algo::Lorenz,
            "efx-identical" => Algo::EfxIdentical,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown algorithm `{s}` (expected scm, ef1po, mmspo, lorenz or efx-identical)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Property {
    Ef1,
    Efx,
    /// β-EFkX with β and k taken from the command-line flags.
    BetaEfkx,
    Mms,
    Po,
    /// Weak Lorenz domination over the allocation stored at the path.
    LorenzVs(PathBuf),
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property> {
        let lorenz_path = s
            .strip_prefix("lorenz-vs:")
            .or_else(|| s.strip_prefix("lorenz-vs(").and_then(|r| r.strip_suffix(')')));
        if let Some(path) = lorenz_path {
            return Ok(Property::LorenzVs(PathBuf::from(path)));
        }
        Ok(match s {
            "ef1" => Property::Ef1,
            "efx" => Property::Efx,
            "befkx" => Property::BetaEfkx,
            "mms" => Property::Mms,
            "po" => Property::Po,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown property `{s}` (expected ef1, efx, befkx, mms, po or lorenz-vs:<path>)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSource {
    Path(PathBuf),
    Builtin(Builtin),
    Random { n: usize, m: usize, identical: bool },
}

impl FromStr for InstanceSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<InstanceSource> {
        if let Some(name) = s.strip_prefix("builtin:") {
            return Ok(InstanceSource::Builtin(name.parse()?));
        }
        let Some(params) = s.strip_prefix("random:") else {
            return Ok(InstanceSource::Path(PathBuf::from(s)));
        };
        let bad = || Error::InvalidParameter(format!("cannot parse `{s}`; expected random:n=<n>,m=<m>[,identical]"));
        let (mut n, mut m, mut identical) = (None, None, false);
        for part in params.split(',') {
            match part.split_once('=') {
                Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|_| bad())?),
                Some(("m", v)) => m = Some(v.parse::<usize>().map_err(|_| bad())?),
                None if part == "identical" => identical = true,
                _ => return Err(bad()),
            }
        }
        match (n, m) {
            (Some(n), Some(m)) if n >= 1 && m <= 16 => Ok(InstanceSource::Random { n, m, identical }),
            _ => Err(bad()),
        }
    }
}

impl InstanceSource {
    /// Loads the instance. Table costs that fail validation load uncertified
    /// so the solvers can report which requirement is missing.
    pub fn load(&self, seed: u64) -> Result<Instance> {
        match self {
            InstanceSource::Path(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                parse_instance_with(&text, ParseOptions { require_certified_tables: false })
            }
            InstanceSource::Builtin(b) => Ok(b.instance()),
            InstanceSource::Random { n, m, identical } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                if *identical {
                    random_identical_instance(&mut rng, *n, *m)
                } else {
                    random_certified_instance(&mut rng, *n, *m)
                }
            }
        }
    }
}

pub fn solve(inst: &Instance, algo: Algo) -> Result<AllocationDocument> {
    let alloc = match algo {
        Algo::Scm => social_cost_min(inst)?,
        Algo::Ef1Po => ef1_and_efficient(inst)?,
        Algo::MmsPo => mms_and_efficient(inst)?,
        Algo::Lorenz => lorenz_dominating(inst)?,
        Algo::EfxIdentical => add_and_fix(inst)?,
    };
    Ok(AllocationDocument::new(inst, &alloc))
}

pub fn shares(inst: &Instance) -> Result<Vec<Cost>> {
    minimax_shares(inst)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub property: String,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<String>,
}

impl CheckOutcome {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("check outcomes always serialize")
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict {
            EXIT_OK
        } else {
            EXIT_FALSE
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub beta: Beta,
    pub k: usize,
    pub bound: u128,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { beta: Beta::ONE, k: 1, bound: DEFAULT_ENUMERATION_BOUND }
    }
}

pub fn check(inst: &Instance, alloc: &Allocation, property: &Property, opts: CheckOptions) -> Result<CheckOutcome> {
    let witness = |name: String, w: crate::fairness::FairnessWitness| CheckOutcome {
        property: name,
        verdict: w.verdict,
        violation: w.violation,
        comparison: None,
    };
    Ok(match property {
        Property::Ef1 => witness("ef1".into(), is_ef1(inst, alloc)?),
        Property::Efx => witness("efx".into(), is_efx(inst, alloc)?),
        Property::BetaEfkx => witness(
            format!("befkx(beta={},k={})", opts.beta, opts.k),
            is_beta_efkx(inst, alloc, opts.beta, opts.k)?,
        ),
        Property::Mms => witness("mms".into(), is_mms_fair(inst, alloc, &minimax_shares(inst)?)?),
        Property::Po => CheckOutcome {
            property: "po".into(),
            verdict: BruteForce::with_bound(opts.bound).is_pareto_efficient(inst, alloc)?,
            violation: None,
            comparison: None,
        },
        Property::LorenzVs(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let other = parse_allocation(&text, inst)?;
            alloc.validate_complete(inst)?;
            other.validate_complete(inst)?;
            let order = lorenz_compare(&SortedCostProfile::of(inst, alloc), &SortedCostProfile::of(inst, &other))?;
            CheckOutcome {
                property: "lorenz-vs".into(),
                verdict: matches!(order, LorenzOrder::Dominates | LorenzOrder::Equal),
                violation: None,
                comparison: Some(format!("{order:?}").to_lowercase()),
            }
        }
    })
}

pub fn verify(inst: &Instance, bound: u128) -> Result<VerifyReport> {
    verify_instance(inst, BruteForce::with_bound(bound))
}

/// Serialized instance document for `gen`.
pub fn generate(source: &InstanceSource, seed: u64) -> Result<String> {
    Ok(serialize_instance(&source.load(seed)?))
}

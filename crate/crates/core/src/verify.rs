//! Cross-checks every solver against the exhaustive oracles on one instance.

use std::fmt;

use crate::algorithms::{
    add_and_fix_observed, cost_min_partial_alloc, ef1_and_efficient, lorenz_dominating, minimax_shares,
    mms_and_efficient, social_cost_min,
};
use crate::costs::{
    find_supermodularity_violation, validate_binary_marginals, CostSpec, DEFAULT_VALIDATION_BOUND,
};
use crate::error::Result;
use crate::fairness::{is_ef1, is_efx, is_mms_fair, SortedCostProfile};
use crate::model::{Allocation, Instance};
use crate::oracles::BruteForce;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), status, detail: detail.into() });
    }

    fn record(&mut self, name: &str, outcome: Result<(bool, String)>) {
        match outcome {
            Ok((ok, detail)) => self.push(name, if ok { Status::Pass } else { Status::Fail }, detail),
            Err(e) => self.push(name, Status::Fail, format!("error: {e}")),
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}  {:<28} {}", c.status, c.name, c.detail)?;
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        write!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

fn sum(alloc: &Allocation, inst: &Instance) -> u64 {
    alloc.cost_profile(inst).iter().map(|&c| c as u64).sum()
}

/// Runs all applicable cross-checks. Instances outside the enumeration bound
/// are rejected.
pub fn verify_instance(inst: &Instance, brute: BruteForce) -> Result<VerifyReport> {
    if !brute.within_bound(inst) {
        // Surfaces the bound error with sizes filled in.
        brute.allocations(inst)?;
    }
    let mut report = VerifyReport::default();
    let (n, m) = (inst.num_agents(), inst.num_chores());

    // Certification.
    let mut binary = true;
    let mut supermodular = true;
    for (i, oracle) in inst.oracles().iter().enumerate() {
        if m > DEFAULT_VALIDATION_BOUND {
            report.push(&format!("certification agent {i}"), Status::Skip, "too many chores to validate");
            binary = binary && inst.certificate(i).binary_marginals;
            supermodular = supermodular && inst.certificate(i).supermodular;
            continue;
        }
        let has_binary = validate_binary_marginals(oracle)?;
        let violation = find_supermodularity_violation(oracle, DEFAULT_VALIDATION_BOUND)?;
        binary &= has_binary;
        supermodular &= has_binary && violation.is_none();
        let name = format!("certification agent {i}");
        match (has_binary, violation) {
            (false, _) => report.push(&name, Status::Fail, "marginals outside {0, 1}"),
            (true, None) => report.push(&name, Status::Pass, "binary supermodular"),
            // Coverage costs never claim supermodularity.
            (true, Some((s, a, b))) if matches!(oracle.spec(), CostSpec::CoverageMax { .. }) => report.push(
                &name,
                Status::Skip,
                format!("binary marginals, not supermodular (S = {s}, chores {a}, {b})"),
            ),
            (true, Some((s, a, b))) => report.push(
                &name,
                Status::Fail,
                format!("not supermodular (S = {s}, chores {a}, {b})"),
            ),
        }
    }

    const EFFICIENT: [&str; 6] =
        ["minimum social cost", "minimax shares", "sum of shares >= c*", "EF1 and efficient", "MMS and efficient", "Lorenz dominating"];
    if supermodular && inst.is_certified_supermodular() {
        let (c_star, _) = brute.min_social_cost(inst)?;
        let brute_shares = brute.minimax_shares(inst)?;

        report.record(EFFICIENT[0], (|| {
            let partial = cost_min_partial_alloc(inst)?;
            let via_union = (m - partial.assigned().len()) as u64;
            let solved = sum(&social_cost_min(inst)?, inst);
            Ok((
                via_union == c_star && solved == c_star,
                format!("brute force {c_star}, m - union rank {via_union}, solver {solved}"),
            ))
        })());
        report.record(EFFICIENT[1], (|| {
            let fast = minimax_shares(inst)?;
            Ok((fast == brute_shares, format!("union rank {fast:?}, brute force {brute_shares:?}")))
        })());
        let total: u64 = brute_shares.iter().map(|&t| t as u64).sum();
        report.push(
            EFFICIENT[2],
            if total >= c_star { Status::Pass } else { Status::Fail },
            format!("{total} >= {c_star}"),
        );
        report.record(EFFICIENT[3], (|| {
            let a = ef1_and_efficient(inst)?;
            let (ef1, sc) = (is_ef1(inst, &a)?.verdict, sum(&a, inst));
            Ok((ef1 && sc == c_star, format!("EF1 {ef1}, social cost {sc}")))
        })());
        report.record(EFFICIENT[4], (|| {
            let a = mms_and_efficient(inst)?;
            let (mms, sc) = (is_mms_fair(inst, &a, &brute_shares)?.verdict, sum(&a, inst));
            Ok((mms && sc == c_star, format!("MMS {mms}, social cost {sc}")))
        })());
        report.record(EFFICIENT[5], (|| {
            let a = lorenz_dominating(inst)?;
            let floor = brute.lorenz_floor(inst)?;
            let profile = SortedCostProfile::of(inst, &a);
            Ok((
                profile.prefix_sums() == floor,
                format!("profile {:?}, best prefix sums {floor:?}", profile.values()),
            ))
        })());
    } else {
        for name in EFFICIENT {
            report.push(name, Status::Skip, "costs not certified binary supermodular");
        }
    }

    if inst.has_identical_costs() && binary {
        report.record("Add-and-Fix EFX", (|| {
            let mut iterations = 0usize;
            let a = add_and_fix_observed(inst, |_| iterations += 1)?;
            let efx = is_efx(inst, &a)?.verdict;
            let complete = a.is_complete(m);
            Ok((
                efx && complete && iterations <= m * m,
                format!("EFX {efx}, complete {complete}, {iterations} iterations (m^2 = {})", m * m),
            ))
        })());
        report.record("leximax- is EFX", (|| {
            let a = brute.leximax_minus(inst)?;
            let efx = is_efx(inst, &a)?.verdict;
            Ok((efx, format!("EFX {efx}")))
        })());
    } else {
        let why = if n > 1 && !inst.has_identical_costs() { "costs not identical" } else { "no binary marginals" };
        report.push("Add-and-Fix EFX", Status::Skip, why);
        report.push("leximax- is EFX", Status::Skip, why);
    }
    Ok(report)
}

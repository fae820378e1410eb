//! JSON instance and allocation documents, plus the built-in instances.
//!
//! An instance file looks like
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": 2,
//!   "m": 3,
//!   "agents": [
//!     { "kind": "cardinality" },
//!     { "kind": "partition-complement",
//!       "blocks": [ { "chores": [0, 1], "cap": 1 }, { "chores": [2], "cap": 0 } ] }
//!   ]
//! }
//! ```
//!
//! Other kinds are `threshold` (field `k`), `coverage-max` (field `sets`) and
//! `table` (field `values`, listed in binary-counter subset order where bit
//! `j` stands for chore `j`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chores::{ChoreSet, MAX_CHORES};
use crate::costs::{
    find_supermodularity_violation, validate_binary_marginals, Block, Cost, CostOracle, CostSpec,
    DEFAULT_VALIDATION_BOUND,
};
use crate::error::{Error, Result};
use crate::model::{Allocation, Certificate, Instance};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub n: usize,
    pub m: usize,
    pub agents: Vec<CostSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject table costs that fail the exhaustive binary-marginal or
    /// supermodularity check instead of loading them uncertified.
    pub require_certified_tables: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { require_certified_tables: true }
    }
}

fn schema(context: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { context: context.into(), message: message.into() }
}

/// Parses an instance document, rejecting table costs that are not binary
/// supermodular.
pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_with(text, ParseOptions::default())
}

pub fn parse_instance_with(text: &str, options: ParseOptions) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| schema(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    instance_from_file(file, options)
}

pub fn instance_from_file(file: InstanceFile, options: ParseOptions) -> Result<Instance> {
    if file.version != FORMAT_VERSION {
        return Err(schema("version", format!("unsupported version {}, expected {FORMAT_VERSION}", file.version)));
    }
    if file.n == 0 {
        return Err(schema("n", "at least one agent is required"));
    }
    if file.m > MAX_CHORES {
        return Err(schema("m", format!("at most {MAX_CHORES} chores are supported")));
    }
    if file.agents.len() != file.n {
        return Err(schema("agents", format!("{} cost specs for n = {}", file.agents.len(), file.n)));
    }
    let mut costs = Vec::with_capacity(file.n);
    let mut certificates = Vec::with_capacity(file.n);
    for (i, spec) in file.agents.into_iter().enumerate() {
        let oracle = CostOracle::new(spec, file.m).map_err(|e| schema(format!("agents[{i}]"), e.to_string()))?;
        let cert = Certificate::for_oracle(&oracle);
        if options.require_certified_tables && matches!(oracle.spec(), CostSpec::Table { .. }) {
            check_table(i, &oracle)?;
        }
        costs.push(oracle);
        certificates.push(cert);
    }
    Instance::with_certificates(costs, certificates)
}

fn check_table(agent: usize, oracle: &CostOracle) -> Result<()> {
    if oracle.num_chores() > DEFAULT_VALIDATION_BOUND {
        return Ok(());
    }
    if !validate_binary_marginals(oracle)? {
        return Err(Error::Validation(format!("agents[{agent}]: table costs do not have binary marginals")));
    }
    if let Some((s, a, b)) = find_supermodularity_violation(oracle, DEFAULT_VALIDATION_BOUND)? {
        return Err(Error::Validation(format!(
            "agents[{agent}]: table costs are not supermodular (S = {s}, chores {a} and {b})"
        )));
    }
    Ok(())
}

pub fn instance_to_file(inst: &Instance) -> InstanceFile {
    InstanceFile {
        version: FORMAT_VERSION,
        n: inst.num_agents(),
        m: inst.num_chores(),
        agents: inst.oracles().iter().map(|o| o.spec().clone()).collect(),
    }
}

/// Instance document with one agent per line.
pub fn serialize_instance(inst: &Instance) -> String {
    let file = instance_to_file(inst);
    let agents: Vec<String> = file
        .agents
        .iter()
        .map(|spec| format!("    {}", serde_json::to_string(spec).expect("cost specs always serialize")))
        .collect();
    format!(
        "{{\n  \"version\": {},\n  \"n\": {},\n  \"m\": {},\n  \"agents\": [\n{}\n  ]\n}}",
        file.version,
        file.n,
        file.m,
        agents.join(",\n")
    )
}

/// Allocation together with its per-agent costs and social cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllocationDocument {
    pub bundles: Vec<ChoreSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_profile: Option<Vec<Cost>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub social_cost: Option<u64>,
}

impl AllocationDocument {
    pub fn new(inst: &Instance, alloc: &Allocation) -> Self {
        let profile = alloc.cost_profile(inst);
        AllocationDocument {
            bundles: alloc.bundles().to_vec(),
            social_cost: Some(profile.iter().map(|&c| c as u64).sum()),
            cost_profile: Some(profile),
        }
    }

    pub fn allocation(&self) -> Allocation {
        Allocation::new(self.bundles.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("allocation documents always serialize")
    }
}

/// Parses an allocation document; only `bundles` is required. Recorded costs,
/// when present, must match the instance.
pub fn parse_allocation(text: &str, inst: &Instance) -> Result<Allocation> {
    let doc: AllocationDocument = serde_json::from_str(text)
        .map_err(|e| schema(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let alloc = doc.allocation();
    alloc.validate(inst)?;
    let actual = AllocationDocument::new(inst, &alloc);
    if doc.cost_profile.as_ref().is_some_and(|p| Some(p) != actual.cost_profile.as_ref()) {
        return Err(schema("cost_profile", "recorded costs do not match the instance"));
    }
    if doc.social_cost.is_some_and(|s| Some(s) != actual.social_cost) {
        return Err(schema("social_cost", "recorded social cost does not match the instance"));
    }
    Ok(alloc)
}

/// Instances used throughout the literature's counterexamples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// n = 3, m = 11: one cardinality agent and two `max(0, |S| - 3)` agents.
    Incomparable1,
    /// n = 3, m = 10: two cardinality agents and one agent that sees three
    /// pairs of chores as complements.
    Incomparable2,
    /// n = 2, m = 2k+1: identical costs with `k` complementary pairs and one
    /// ordinary chore.
    NoPoEfx(usize),
    /// n = 2, m = 6: identical coverage costs over the triples {0,1,2} and
    /// {3,4,5}.
    Exact3CoverDemo,
}

impl Builtin {
    pub const NAMES: [&'static str; 4] = ["incomparable-1", "incomparable-2", "no-po-efx(k)", "exact3cover-demo"];

    pub fn instance(self) -> Instance {
        let (m, specs) = self.specs();
        Instance::from_specs(m, specs).expect("builtin instances are well formed")
    }

    fn specs(self) -> (usize, Vec<CostSpec>) {
        match self {
            Builtin::Incomparable1 => (
                11,
                vec![CostSpec::Cardinality, CostSpec::Threshold { k: 3 }, CostSpec::Threshold { k: 3 }],
            ),
            Builtin::Incomparable2 => {
                let mut blocks: Vec<Block> =
                    (0..4).map(|c| Block { chores: ChoreSet::singleton(c), cap: 0 }).collect();
                blocks.extend([[4, 5], [6, 7], [8, 9]].map(|p| Block { chores: ChoreSet::from(p), cap: 1 }));
                (
                    10,
                    vec![CostSpec::Cardinality, CostSpec::Cardinality, CostSpec::PartitionComplement { blocks }],
                )
            }
            Builtin::NoPoEfx(k) => {
                let mut blocks: Vec<Block> = (0..k)
                    .map(|p| Block { chores: ChoreSet::from([2 * p, 2 * p + 1]), cap: 1 })
                    .collect();
                blocks.push(Block { chores: ChoreSet::singleton(2 * k), cap: 0 });
                let spec = CostSpec::PartitionComplement { blocks };
                (2 * k + 1, vec![spec.clone(), spec])
            }
            Builtin::Exact3CoverDemo => {
                let spec = CostSpec::CoverageMax { sets: vec![ChoreSet::from([0, 1, 2]), ChoreSet::from([3, 4, 5])] };
                (6, vec![spec.clone(), spec])
            }
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Builtin> {
        match s {
            "incomparable-1" => return Ok(Builtin::Incomparable1),
            "incomparable-2" => return Ok(Builtin::Incomparable2),
            "exact3cover-demo" => return Ok(Builtin::Exact3CoverDemo),
            "no-po-efx" => return Ok(Builtin::NoPoEfx(1)),
            _ => {}
        }
        let k = s
            .strip_prefix("no-po-efx(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("no-po-efx:"))
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1 && 2 * k < MAX_CHORES);
        k.map(Builtin::NoPoEfx).ok_or_else(|| Error::UnknownBuiltin(s.to_string()))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Incomparable1 => write!(f, "incomparable-1"),
            Builtin::Incomparable2 => write!(f, "incomparable-2"),
            Builtin::NoPoEfx(k) => write!(f, "no-po-efx({k})"),
            Builtin::Exact3CoverDemo => write!(f, "exact3cover-demo"),
        }
    }
}

/// Looks up a builtin instance by name, e.g. `incomparable-1` or `no-po-efx(2)`.
pub fn builtin_instance(name: &str) -> Result<Instance> {
    Ok(name.parse::<Builtin>()?.instance())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shapes() {
        let a = builtin_instance("incomparable-1").unwrap();
        assert_eq!((a.num_agents(), a.num_chores()), (3, 11));
        assert!(a.is_certified_supermodular());
        let b = builtin_instance("incomparable-2").unwrap();
        assert_eq!((b.num_agents(), b.num_chores()), (3, 10));
        let c = builtin_instance("no-po-efx(3)").unwrap();
        assert_eq!((c.num_agents(), c.num_chores()), (2, 7));
        assert!(c.has_identical_costs());
        assert_eq!(builtin_instance("no-po-efx").unwrap().num_chores(), 3);
        let d = builtin_instance("exact3cover-demo").unwrap();
        assert!(d.has_identical_costs() && d.certificate(0).binary_marginals);
        assert!(matches!(builtin_instance("no-po-efx(0)"), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin_instance("nope"), Err(Error::UnknownBuiltin(_))));
        for name in ["incomparable-1", "incomparable-2", "no-po-efx(4)", "exact3cover-demo"] {
            assert_eq!(name.parse::<Builtin>().unwrap().to_string(), name);
        }
    }

    #[test]
    fn parses_structural_instance() {
        let text = serialize_instance(&builtin_instance("incomparable-1").unwrap());
        let inst = parse_instance(&text).unwrap();
        assert_eq!(inst.num_agents(), 3);
        assert_eq!(inst.num_chores(), 11);
        assert!(inst.is_certified_supermodular());
        assert!(text.contains("\"kind\":\"threshold\""));
    }

    #[test]
    fn rejects_tables_with_large_marginals() {
        let text = r#"{"version":1,"n":1,"m":2,"agents":[{"kind":"table","values":[0,1,1,3]}]}"#;
        assert!(matches!(parse_instance(text), Err(Error::Validation(_))));
        let lenient = parse_instance_with(text, ParseOptions { require_certified_tables: false }).unwrap();
        assert!(!lenient.certificate(0).binary_marginals);
    }

    #[test]
    fn rejects_non_supermodular_tables() {
        // c = max(|S ∩ {0,1}|, |S ∩ {1,2}|) as a table.
        let values: Vec<String> = (0u64..8)
            .map(|b| ((b & 3).count_ones().max((b & 6).count_ones())).to_string())
            .collect();
        let text = format!(
            r#"{{"version":1,"n":1,"m":3,"agents":[{{"kind":"table","values":[{}]}}]}}"#,
            values.join(",")
        );
        let err = parse_instance(&text).unwrap_err();
        assert!(matches!(err, Error::Validation(ref msg) if msg.contains("supermodular")), "{err}");
    }

    #[test]
    fn schema_errors_carry_context() {
        let empty = r#"{"version":1,"n":0,"m":3,"agents":[]}"#;
        assert!(matches!(parse_instance(empty), Err(Error::Schema { ref context, .. }) if context == "n"));
        let short = r#"{"version":1,"n":2,"m":3,"agents":[{"kind":"cardinality"}]}"#;
        assert!(matches!(parse_instance(short), Err(Error::Schema { ref context, .. }) if context == "agents"));
        let bad_block = r#"{"version":1,"n":1,"m":3,"agents":[{"kind":"partition-complement","blocks":[{"chores":[0,1],"cap":1}]}]}"#;
        assert!(matches!(parse_instance(bad_block), Err(Error::Schema { ref context, .. }) if context == "agents[0]"));
        let typo = "{\"version\":1,\n\"n\":1,\"m\":3,\"agents\":[{\"kind\":\"cardinalty\"}]}";
        match parse_instance(typo) {
            Err(Error::Schema { context, .. }) => assert!(context.starts_with("line 2"), "{context}"),
            other => panic!("unexpected {other:?}"),
        }
        let version = r#"{"version":2,"n":1,"m":0,"agents":[{"kind":"cardinality"}]}"#;
        assert!(parse_instance(version).is_err());
    }

    #[test]
    fn allocation_documents() {
        let inst = builtin_instance("no-po-efx(1)").unwrap();
        let alloc = Allocation::new(vec![ChoreSet::from([0, 2]), ChoreSet::from([1])]);
        let doc = AllocationDocument::new(&inst, &alloc);
        assert_eq!(doc.to_json(), r#"{"bundles":[[0,2],[1]],"cost_profile":[1,0],"social_cost":1}"#);
        assert_eq!(parse_allocation(&doc.to_json(), &inst).unwrap(), alloc);
        assert_eq!(parse_allocation(r#"{"bundles":[[0,2],[1]]}"#, &inst).unwrap(), alloc);
        assert!(parse_allocation(r#"{"bundles":[[0,2],[1]],"social_cost":7}"#, &inst).is_err());
        assert!(parse_allocation(r#"{"bundles":[[0,2],[2]]}"#, &inst).is_err());
    }
}

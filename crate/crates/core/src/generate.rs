//! Random instance generators for fuzzing and cross-validation.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::chores::ChoreSet;
use crate::costs::{Block, Cost, CostSpec, DEFAULT_VALIDATION_BOUND};
use crate::error::Result;
use crate::model::Instance;

/// Random partition of the chores into blocks, each with a cap of at most
/// half its size (rounded up).
pub fn random_partition_complement<R: Rng + ?Sized>(rng: &mut R, m: usize) -> CostSpec {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut blocks = Vec::new();
    let mut rest = &order[..];
    while !rest.is_empty() {
        let size = rng.random_range(1..=rest.len().min(4));
        let (head, tail) = rest.split_at(size);
        let chores: ChoreSet = head.iter().copied().collect();
        blocks.push(Block { chores, cap: rng.random_range(0..=size.div_ceil(2)) });
        rest = tail;
    }
    blocks.sort_by_key(|b| b.chores.first());
    CostSpec::PartitionComplement { blocks }
}

/// Table of `c(S) = |S| - r(S)` for the graphic matroid of a random
/// multigraph whose edges are the chores.
pub fn random_graphic_table<R: Rng + ?Sized>(rng: &mut R, m: usize) -> CostSpec {
    assert!(m <= DEFAULT_VALIDATION_BOUND, "graphic tables are limited to small m");
    let vertices = rng.random_range(2..=m / 2 + 2);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| (rng.random_range(0..vertices), rng.random_range(0..vertices)))
        .collect();
    let values = (0..1u64 << m)
        .map(|bits| {
            let set = ChoreSet::from_bits(bits);
            (set.len() - forest_size(vertices, set.iter().map(|e| edges[e]))) as Cost
        })
        .collect();
    CostSpec::Table { values }
}

fn forest_size(vertices: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut size = 0;
    for (u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            size += 1;
        }
    }
    size
}

/// Random family of subsets for a coverage cost.
pub fn random_coverage<R: Rng + ?Sized>(rng: &mut R, m: usize) -> CostSpec {
    let count = rng.random_range(0..=4);
    let sets = (0..count)
        .map(|_| (0..m).filter(|_| rng.random_bool(0.4)).collect())
        .collect();
    CostSpec::CoverageMax { sets }
}

/// One random binary supermodular cost.
pub fn random_supermodular_spec<R: Rng + ?Sized>(rng: &mut R, m: usize) -> CostSpec {
    match rng.random_range(0..10) {
        0 => CostSpec::Cardinality,
        1 | 2 => CostSpec::Threshold { k: rng.random_range(0..=m / 2) },
        3..=6 => random_partition_complement(rng, m),
        _ if m <= DEFAULT_VALIDATION_BOUND => random_graphic_table(rng, m),
        _ => random_partition_complement(rng, m),
    }
}

/// Instance whose agents all have certified binary supermodular costs.
pub fn random_certified_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Result<Instance> {
    let specs: Vec<_> = (0..n).map(|_| random_supermodular_spec(rng, m)).collect();
    Instance::from_specs(m, specs)
}

/// Instance in which every agent shares one random binary-marginal cost,
/// which need not be supermodular.
pub fn random_identical_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Result<Instance> {
    let spec = if rng.random_bool(0.5) {
        random_coverage(rng, m)
    } else {
        random_supermodular_spec(rng, m)
    };
    Instance::from_specs(m, vec![spec; n])
}

/// Instance in which every agent shares one random binary supermodular cost.
pub fn random_identical_supermodular_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Result<Instance> {
    let spec = random_supermodular_spec(rng, m);
    Instance::from_specs(m, vec![spec; n])
}

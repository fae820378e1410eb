//! The matroid union engine on its own: zero-cost bundles under three
//! partition-complement costs and the k-fold rank of a threshold cost.

use chore_division::costs::{Block, CostOracle};
use chore_division::matroid::{kfold_union_rank, matroid_partition, MatroidView};
use chore_division::{ChoreSet, CostSpec};

fn main() -> chore_division::Result<()> {
    let m = 9;
    // Cost counts all but one chore of each triple {0,1,2}, {3,4,5}, {6,7,8}.
    let triples = CostSpec::PartitionComplement {
        blocks: (0..m).step_by(3).map(|start| Block { chores: ChoreSet::range(start, 3), cap: 1 }).collect(),
    };
    let oracles: Vec<CostOracle> = [triples, CostSpec::Threshold { k: 2 }, CostSpec::Cardinality]
        .into_iter()
        .map(|spec| CostOracle::new(spec, m))
        .collect::<Result<_, _>>()?;
    let views: Vec<MatroidView> = oracles.iter().map(MatroidView::new).collect();

    let part = matroid_partition(&views, ChoreSet::full(m));
    for (i, bundle) in part.bundles.iter().enumerate() {
        println!("agent {i}: {bundle} (cost {})", oracles[i].cost(*bundle));
    }
    println!("unassigned: {} of {m}", part.unassigned.len());

    let threshold = CostOracle::threshold(11, 3);
    for k in 1..=4 {
        println!("{k}-fold rank of max(0, |S| - 3) on 11 chores: {}", kfold_union_rank(MatroidView::new(&threshold), k, threshold.ground()));
    }
    Ok(())
}

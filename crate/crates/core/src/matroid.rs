//! Matroid view of binary supermodular costs and the matroid partition
//! algorithm.
//!
//! For a binary supermodular cost `c`, the function `r(S) = |S| - c(S)` is a
//! matroid rank function whose independent sets are exactly the zero-cost
//! bundles. The union of the agents' matroids therefore measures how many
//! chores can be handed out at zero total cost.

use std::collections::{HashMap, VecDeque};

use crate::chores::ChoreSet;
use crate::costs::CostOracle;

/// Rank-function view `r(S) = |S| - c(S)` of a cost oracle.
#[derive(Debug, Clone, Copy)]
pub struct MatroidView<'a> {
    oracle: &'a CostOracle,
}

impl<'a> MatroidView<'a> {
    pub fn new(oracle: &'a CostOracle) -> Self {
        MatroidView { oracle }
    }

    pub fn oracle(&self) -> &'a CostOracle {
        self.oracle
    }

    pub fn num_chores(&self) -> usize {
        self.oracle.num_chores()
    }

    pub fn rank(&self, set: ChoreSet) -> usize {
        set.len() - self.oracle.cost(set) as usize
    }

    pub fn is_independent(&self, set: ChoreSet) -> bool {
        self.oracle.cost(set) == 0
    }
}

/// Partition of a maximum independent set of the union matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionPartition {
    pub bundles: Vec<ChoreSet>,
    pub unassigned: ChoreSet,
}

impl UnionPartition {
    /// Size of the union basis, i.e. the union rank of the ground set.
    pub fn basis_size(&self) -> usize {
        self.bundles.iter().map(|b| b.len()).sum()
    }

    pub fn basis(&self) -> ChoreSet {
        self.bundles.iter().fold(ChoreSet::EMPTY, |acc, b| acc.union(*b))
    }
}

/// Independence queries against the current bundles, memoised for the
/// duration of one augmentation.
struct Exchange<'v, 'a> {
    views: &'v [MatroidView<'a>],
    memo: HashMap<(usize, ChoreSet), bool>,
}

impl Exchange<'_, '_> {
    fn independent(&mut self, matroid: usize, set: ChoreSet) -> bool {
        let views = self.views;
        *self
            .memo
            .entry((matroid, set))
            .or_insert_with(|| views[matroid].is_independent(set))
    }
}

/// Splits a maximum-size independent subset of `ground` in the union of the
/// given matroids into one independent bundle per matroid.
///
/// Chores are inserted in ascending order. Each insertion searches the
/// exchange graph breadth-first for a shortest augmenting path; a chore that
/// cannot be inserted stays unassigned for good, since the span of the union
/// only grows.
pub fn matroid_partition(views: &[MatroidView<'_>], ground: ChoreSet) -> UnionPartition {
    if let Some(first) = views.first() {
        debug_assert!(views.iter().all(|v| v.num_chores() == first.num_chores()));
        debug_assert!(ground.is_subset(ChoreSet::full(first.num_chores())));
    }
    let mut bundles = vec![ChoreSet::EMPTY; views.len()];
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut unassigned = ChoreSet::EMPTY;

    for z in ground {
        if !augment(views, &mut bundles, &mut owner, z) {
            unassigned.insert(z);
        }
    }

    debug_assert!(bundles.iter().zip(views).all(|(b, v)| v.is_independent(*b)));
    UnionPartition { bundles, unassigned }
}

fn augment(
    views: &[MatroidView<'_>],
    bundles: &mut [ChoreSet],
    owner: &mut HashMap<usize, usize>,
    z: usize,
) -> bool {
    let mut ex = Exchange { views, memo: HashMap::new() };
    // parent[v] = u means the path reaches v from u; v then leaves its bundle
    // and u takes its place.
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut seen = ChoreSet::singleton(z);
    let mut queue = VecDeque::from([z]);

    while let Some(u) = queue.pop_front() {
        let current = owner.get(&u).copied();
        let terminal = (0..views.len())
            .find(|&i| current != Some(i) && ex.independent(i, bundles[i].with(u)));
        if let Some(i) = terminal {
            apply_path(bundles, owner, &parent, u, i);
            return true;
        }
        for (i, &bundle) in bundles.iter().enumerate() {
            if current == Some(i) {
                continue;
            }
            for v in bundle.difference(seen) {
                if ex.independent(i, bundle.with(u).without(v)) {
                    seen.insert(v);
                    parent.insert(v, u);
                    queue.push_back(v);
                }
            }
        }
    }
    false
}

fn apply_path(
    bundles: &mut [ChoreSet],
    owner: &mut HashMap<usize, usize>,
    parent: &HashMap<usize, usize>,
    end: usize,
    end_matroid: usize,
) {
    // Walk back from the terminal: `end` joins `end_matroid`, then each
    // predecessor replaces the element that moved forward.
    let mut node = end;
    let mut target = end_matroid;
    loop {
        let previous = owner.insert(node, target);
        if let Some(old) = previous {
            bundles[old].remove(node);
        }
        bundles[target].insert(node);
        match (parent.get(&node), previous) {
            (Some(&pred), Some(old)) => {
                node = pred;
                target = old;
            }
            (None, None) => break,
            _ => unreachable!("augmenting path is inconsistent"),
        }
    }
}

/// Rank of `ground` in the `k`-fold union of `view` with itself.
pub fn kfold_union_rank(view: MatroidView<'_>, k: usize, ground: ChoreSet) -> usize {
    assert!(k >= 1, "k-fold union needs k >= 1");
    matroid_partition(&vec![view; k], ground).basis_size()
}

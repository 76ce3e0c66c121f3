//! Exact comparison of many graphs at once.
//!
//! All anchor tuples of all graphs are refined level by level through one
//! interner, so equal ids mean equal labels across the whole batch. After
//! each level the nested aggregates are interned again (per level, per
//! depth) and compared. Refinement stops at the last column, when the
//! partition of all (graph, tuple, node) triples stops splitting (later
//! levels are then a fixed function of the current one, identical for
//! every graph), or, with early exit, once all graphs are told apart.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::aggregate::{fold_s, fold_t, tuple_count, tuples, Fold};
use super::interner::{Interner, LabelId};
use super::refine::step_key;
use super::Family;

/// Per-depth interning of sorted member lists.
struct FoldTables {
    tables: Vec<HashMap<Vec<u32>, u32>>,
}

impl FoldTables {
    fn new(depths: usize) -> Self {
        FoldTables {
            tables: (0..depths).map(|_| HashMap::new()).collect(),
        }
    }
}

impl Fold for FoldTables {
    type V = u32;

    fn fold(&mut self, depth: usize, members: &mut Vec<u32>) -> u32 {
        members.sort_unstable();
        let table = &mut self.tables[depth];
        if let Some(&id) = table.get(members.as_slice()) {
            return id;
        }
        let id = table.len() as u32;
        table.insert(members.clone(), id);
        id
    }
}

/// Options for [`classes`].
#[derive(Clone, Copy, Debug)]
pub(crate) struct ExactRun {
    pub(crate) family: Family,
    pub(crate) k: usize,
    /// Label columns to refine; `None` means `n + 1`.
    pub(crate) columns: Option<usize>,
    pub(crate) stop_when_stable: bool,
    pub(crate) early_exit: bool,
}

/// Equivalence classes of `graphs`: two graphs get the same class id iff
/// their aggregates agree. Ids are dense in order of first appearance.
pub(crate) fn classes(graphs: &[&Graph], run: ExactRun) -> Result<Vec<usize>> {
    let mut by_n: Vec<(usize, Vec<usize>)> = Vec::new();
    for (idx, g) in graphs.iter().enumerate() {
        match by_n.iter_mut().find(|(n, _)| *n == g.n()) {
            Some((_, members)) => members.push(idx),
            None => by_n.push((g.n(), vec![idx])),
        }
    }
    let mut raw = vec![(0usize, 0u32); graphs.len()];
    for (group, (_, members)) in by_n.iter().enumerate() {
        let gs: Vec<&Graph> = members.iter().map(|&i| graphs[i]).collect();
        let (tops, _) = group_run(&gs, run)?;
        for (&i, top) in members.iter().zip(tops) {
            raw[i] = (group, top);
        }
    }
    let mut dense: HashMap<(usize, u32), usize> = HashMap::new();
    Ok(raw
        .into_iter()
        .map(|key| {
            let next = dense.len();
            *dense.entry(key).or_insert(next)
        })
        .collect())
}

fn all_distinct(tops: &[u32]) -> bool {
    let mut v = tops.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

/// Refines one group of equally sized graphs; returns the top aggregates
/// and the labels of the last level computed.
fn group_run(graphs: &[&Graph], run: ExactRun) -> Result<(Vec<u32>, Vec<Vec<LabelId>>)> {
    let n = graphs[0].n();
    let k = run.k;
    if k > n {
        return Err(Error::InvalidArgument(format!("{k} anchors on a graph with {n} nodes")));
    }
    let columns = run.columns.unwrap_or(n + 1);
    if columns == 0 {
        return Err(Error::InvalidArgument("at least one label column is required".into()));
    }
    let count = tuple_count(n, k);
    let flat = tuples(n, k);
    let mut seed_row = vec![0 as LabelId; count * n];
    for t in 0..count {
        for (q, &node) in flat[t * k..(t + 1) * k].iter().enumerate() {
            seed_row[t * n + node] = (q + 1) as LabelId;
        }
    }
    let mut labels: Vec<Vec<LabelId>> = vec![seed_row; graphs.len()];
    let mut classes = {
        let mut seen: Vec<LabelId> = labels[0].clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    };
    let mut tops = aggregate(&labels, n, run);
    let mut interner = Interner::new(k);
    let mut key = Vec::new();
    let mut next: Vec<LabelId> = Vec::new();
    for _level in 1..columns {
        if run.early_exit && all_distinct(&tops) {
            break;
        }
        interner.retire();
        let before = interner.issued();
        for (g, row) in graphs.iter().zip(labels.iter_mut()) {
            next.clear();
            for t in 0..count {
                let prev = &row[t * n..(t + 1) * n];
                for i in 0..n {
                    step_key(g, prev, i, &mut key);
                    next.push(interner.intern_slice(&key));
                }
            }
            std::mem::swap(row, &mut next);
        }
        let now = interner.issued() - before;
        tops = aggregate(&labels, n, run);
        if run.stop_when_stable && now == classes {
            break;
        }
        classes = now;
    }
    Ok((tops, labels))
}

/// Records the members of the root fold, in node order, before delegating.
struct RootCapture<'a> {
    inner: &'a mut FoldTables,
    members: Vec<u32>,
}

impl Fold for RootCapture<'_> {
    type V = u32;

    fn fold(&mut self, depth: usize, members: &mut Vec<u32>) -> u32 {
        if depth == 0 {
            self.members = members.clone();
        }
        self.inner.fold(depth, members)
    }
}

/// Node-level aggregates: for node `i`, the fold over all tuples whose first
/// anchor is `i`. Ids are shared by all graphs (of any size) in the batch.
pub(crate) fn node_classes(graphs: &[&Graph], k: usize) -> Result<Vec<Vec<usize>>> {
    let run = ExactRun {
        family: Family::S,
        k,
        columns: None,
        stop_when_stable: true,
        early_exit: false,
    };
    let mut out = vec![Vec::new(); graphs.len()];
    let mut dense: HashMap<(usize, u32), usize> = HashMap::new();
    let mut sizes: Vec<usize> = graphs.iter().map(|g| g.n()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    for n in sizes {
        let members: Vec<usize> = (0..graphs.len()).filter(|&i| graphs[i].n() == n).collect();
        let gs: Vec<&Graph> = members.iter().map(|&i| graphs[i]).collect();
        let (_, labels) = group_run(&gs, run)?;
        let mut tables = FoldTables::new(k + 2);
        for (&gi, row) in members.iter().zip(&labels) {
            let leaves = leaf_ids(row, n, k, &mut tables);
            let mut capture = RootCapture {
                inner: &mut tables,
                members: Vec::new(),
            };
            fold_s(n, k, &leaves, &mut capture);
            out[gi] = capture
                .members
                .into_iter()
                .map(|id| {
                    let next = dense.len();
                    *dense.entry((n, id)).or_insert(next)
                })
                .collect();
        }
    }
    Ok(out)
}

fn leaf_ids(row: &[LabelId], n: usize, k: usize, tables: &mut FoldTables) -> Vec<u32> {
    let count = tuple_count(n, k);
    let mut members = Vec::with_capacity(n);
    (0..count)
        .map(|t| {
            members.clear();
            members.extend_from_slice(&row[t * n..(t + 1) * n]);
            tables.fold(k, &mut members)
        })
        .collect()
}

fn aggregate(labels: &[Vec<LabelId>], n: usize, run: ExactRun) -> Vec<u32> {
    let k = run.k;
    let mut tables = FoldTables::new(k + 2);
    labels
        .iter()
        .map(|row| match run.family {
            Family::S => {
                let leaves = leaf_ids(row, n, k, &mut tables);
                fold_s(n, k, &leaves, &mut tables)
            }
            Family::T => fold_t(n, k, row, &mut tables),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn run(family: Family, k: usize) -> ExactRun {
        ExactRun {
            family,
            k,
            columns: None,
            stop_when_stable: false,
            early_exit: false,
        }
    }

    #[test]
    fn srg_pair() {
        let a = fixtures::shrikhande();
        let b = fixtures::rook_4x4();
        assert_eq!(classes(&[&a, &b], run(Family::S, 1)).unwrap(), vec![0, 0]);
        assert_eq!(classes(&[&a, &b], run(Family::S, 2)).unwrap(), vec![0, 1]);
    }

    #[test]
    fn mixed_sizes_and_duplicates() {
        let p3 = fixtures::path(3);
        let k3 = fixtures::complete(3);
        let p4 = fixtures::path(4);
        let perm = p4.permute(&[2, 0, 3, 1]).unwrap();
        let got = classes(&[&p3, &p4, &k3, &perm], run(Family::S, 1)).unwrap();
        assert_eq!(got, vec![0, 1, 2, 1]);
        let t = classes(&[&p3, &p4, &k3, &perm], run(Family::T, 1)).unwrap();
        assert_eq!(t, vec![0, 1, 2, 1]);
    }

    #[test]
    fn stopping_rules_agree() {
        let f = fixtures::figure1();
        let g = f.permute(&[3, 1, 4, 0, 2, 5, 7, 6, 9, 10, 8]).unwrap();
        let c6 = fixtures::cycle(6);
        let tt = fixtures::two_triangles();
        for family in [Family::S, Family::T] {
            for k in 0..=2 {
                let full = run(family, k);
                let fast = ExactRun {
                    stop_when_stable: true,
                    early_exit: true,
                    ..full
                };
                assert_eq!(classes(&[&f, &g], full).unwrap(), classes(&[&f, &g], fast).unwrap());
                assert_eq!(classes(&[&c6, &tt], full).unwrap(), classes(&[&c6, &tt], fast).unwrap());
            }
        }
        assert_eq!(classes(&[&c6, &tt], run(Family::S, 0)).unwrap(), vec![0, 0]);
        assert_eq!(classes(&[&c6, &tt], run(Family::S, 1)).unwrap(), vec![0, 1]);
    }

    #[test]
    fn node_level_aggregates() {
        let p4 = fixtures::path(4);
        let c4 = fixtures::cycle(4);
        let got = node_classes(&[&p4, &c4], 1).unwrap();
        assert_eq!(got[0][0], got[0][3]);
        assert_eq!(got[0][1], got[0][2]);
        assert_ne!(got[0][0], got[0][1]);
        assert!(got[1].iter().all(|&c| c == got[1][0] && c != got[0][0] && c != got[0][1]));
    }

    #[test]
    fn too_many_anchors() {
        let g = fixtures::path(2);
        assert!(classes(&[&g], run(Family::S, 3)).is_err());
        let e = Graph::empty(0);
        assert_eq!(classes(&[&e, &e], run(Family::S, 0)).unwrap(), vec![0, 0]);
    }
}

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::hash::{DigestKind, HashVersion, Hasher, Narrow};
use super::interner::{Interner, LabelId};
use super::AnchorTuple;

/// Labels of all nodes at one refinement level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeLabelColumn(Vec<LabelId>);

impl NodeLabelColumn {
    pub fn labels(&self) -> &[LabelId] {
        &self.0
    }

    /// Number of distinct labels, i.e. classes of the induced partition.
    pub fn class_count(&self) -> usize {
        distinct(&self.0)
    }
}

fn distinct<T: Ord + Copy>(xs: &[T]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Writes the interning key of node `i` (`[own, sorted neighbor labels…]`) into `key`.
pub(crate) fn step_key(g: &Graph, prev: &[LabelId], i: usize, key: &mut Vec<LabelId>) {
    key.clear();
    key.push(prev[i]);
    key.extend(g.neighbors(i).iter().map(|&j| prev[j]));
    if g.has_loop(i) {
        key.push(prev[i]);
    }
    key[1..].sort_unstable();
}

/// Exact label columns `0..iters` of `g` under `anchors`. A loop feeds the
/// node's own previous label once into its neighbor multiset.
pub fn refine(g: &Graph, anchors: &AnchorTuple, iters: usize, interner: &mut Interner) -> Result<Vec<NodeLabelColumn>> {
    if iters == 0 {
        return Err(Error::InvalidArgument("at least one label column is required".into()));
    }
    if anchors.len() > interner.max_anchors() {
        return Err(Error::InvalidArgument(format!(
            "{} anchors but the interner is seeded for {}",
            anchors.len(),
            interner.max_anchors()
        )));
    }
    let seeds = anchors.seed_values(g.n())?;
    let mut columns = Vec::with_capacity(iters);
    columns.push(NodeLabelColumn(seeds.iter().map(|&q| q as LabelId).collect()));
    let mut key = Vec::new();
    for _ in 1..iters {
        let prev = &columns.last().expect("nonempty").0;
        let next = (0..g.n())
            .map(|i| {
                step_key(g, prev, i, &mut key);
                interner.intern_slice(&key)
            })
            .collect();
        columns.push(NodeLabelColumn(next));
    }
    Ok(columns)
}

/// First level after which the partition stops splitting: the smallest `l`
/// with as many classes at `l + 1` as at `l`. Returns the last index if no
/// such level is materialized.
pub fn stabilization_hint(columns: &[NodeLabelColumn]) -> usize {
    let counts: Vec<usize> = columns.iter().map(NodeLabelColumn::class_count).collect();
    counts
        .windows(2)
        .position(|w| w[0] == w[1])
        .unwrap_or(columns.len().saturating_sub(1))
}

/// How [`tuple_label`] represents its result.
pub enum LabelMode<'a> {
    /// Sorted label ids from an interner shared by everything compared.
    Exact(&'a mut Interner),
    Hashed(HashVersion),
}

/// Canonical value of the label matrix of one anchor tuple: the multiset of
/// final-column labels. Every label nests its own history, so equal final
/// multisets mean row-permutation-equal matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TupleLabel {
    Exact(Vec<LabelId>),
    Hashed(u64),
}

/// Tuple label over `n + 1` columns.
pub fn tuple_label(g: &Graph, anchors: &AnchorTuple, mode: LabelMode<'_>) -> Result<TupleLabel> {
    let columns = g.n() + 1;
    match mode {
        LabelMode::Exact(interner) => {
            let cols = refine(g, anchors, columns, interner)?;
            let mut last = cols.last().expect("nonempty").0.clone();
            last.sort_unstable();
            Ok(TupleLabel::Exact(last))
        }
        LabelMode::Hashed(version) => {
            let seeds = anchors.seed_values(g.n())?;
            let mut h = Hasher::<Narrow>::new(version);
            let mut run = refine_hashed(g, &seeds, columns, false, &mut h);
            Ok(TupleLabel::Hashed(run.leaf(&mut h, anchors.len())))
        }
    }
}

/// Node digests after structural-hash refinement of one tuple.
pub(crate) struct HashedRun<D> {
    pub(crate) nodes: Vec<D>,
    /// Set when refinement stopped early: the level at which the partition
    /// settled. `nodes` then holds the level after it.
    pub(crate) stage: Option<usize>,
}

impl<D: Copy> HashedRun<D> {
    /// The tuple's value in the `s` aggregation (folded at depth `k`).
    pub(crate) fn leaf<K: DigestKind<D = D>>(&mut self, h: &mut Hasher<K>, k: usize) -> D {
        let mut members = self.nodes.clone();
        match self.stage {
            Some(stage) => h.stable_leaf(stage, &mut members),
            None => h.fold(super::FAMILY_S, k, &mut members),
        }
    }
}

/// Hashes `columns` levels of refinement from the given seed values. With
/// `stop_when_stable` the run ends one level after the partition settles.
pub(crate) fn refine_hashed<K: DigestKind>(
    g: &Graph,
    seeds: &[usize],
    columns: usize,
    stop_when_stable: bool,
    h: &mut Hasher<K>,
) -> HashedRun<K::D> {
    let n = g.n();
    let mut cur: Vec<K::D> = seeds.iter().map(|&q| h.seed(q)).collect();
    let mut classes = distinct(&cur);
    let mut next = Vec::with_capacity(n);
    for level in 1..columns {
        next.clear();
        for i in 0..n {
            let own = cur[i];
            let looped = g.has_loop(i).then_some(own);
            let d = h.step(own, g.neighbors(i).iter().map(|&j| cur[j]).chain(looped));
            next.push(d);
        }
        std::mem::swap(&mut cur, &mut next);
        if stop_when_stable {
            let c = distinct(&cur);
            if c == classes {
                return HashedRun {
                    nodes: cur,
                    stage: Some(level - 1),
                };
            }
            classes = c;
        }
    }
    HashedRun { nodes: cur, stage: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn anchors(v: &[usize]) -> AnchorTuple {
        AnchorTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn k3_unanchored_is_uniform() {
        let g = fixtures::complete(3);
        let mut it = Interner::new(0);
        let cols = refine(&g, &AnchorTuple::empty(), 4, &mut it).unwrap();
        for c in &cols {
            assert_eq!(c.class_count(), 1);
        }
        assert_eq!(stabilization_hint(&cols), 0);
    }

    #[test]
    fn p3_endpoints() {
        let g = fixtures::path(3);
        let mut it = Interner::new(0);
        let cols = refine(&g, &AnchorTuple::empty(), 4, &mut it).unwrap();
        assert_eq!(cols[0].class_count(), 1);
        for c in &cols[1..] {
            let l = c.labels();
            assert_eq!(l[0], l[2]);
            assert_ne!(l[0], l[1]);
        }
        assert_eq!(stabilization_hint(&cols), 1);
        let c6 = refine(&fixtures::cycle(6), &AnchorTuple::empty(), 7, &mut Interner::new(0)).unwrap();
        assert_eq!(stabilization_hint(&c6), 0);
    }

    #[test]
    fn partitions_nest() {
        let g = fixtures::figure1();
        let mut it = Interner::new(2);
        let cols = refine(&g, &anchors(&[3, 9]), 12, &mut it).unwrap();
        for w in cols.windows(2) {
            let (a, b) = (w[0].labels(), w[1].labels());
            for i in 0..g.n() {
                for j in 0..g.n() {
                    if b[i] == b[j] {
                        assert_eq!(a[i], a[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn figure1_anchors_differ() {
        let g = fixtures::figure1();
        let mut it = Interner::new(1);
        let a = refine(&g, &anchors(&[0]), 12, &mut it).unwrap();
        let b = refine(&g, &anchors(&[4]), 12, &mut it).unwrap();
        let sorted = |c: &NodeLabelColumn| {
            let mut v = c.labels().to_vec();
            v.sort();
            v
        };
        assert_ne!(sorted(a.last().unwrap()), sorted(b.last().unwrap()));
        let ta = tuple_label(&g, &anchors(&[0]), LabelMode::Hashed(HashVersion::V1)).unwrap();
        let tb = tuple_label(&g, &anchors(&[4]), LabelMode::Hashed(HashVersion::V1)).unwrap();
        assert_ne!(ta, tb);
    }

    #[test]
    fn tuple_labels_of_p3() {
        let g = fixtures::path(3);
        let mut it = Interner::new(1);
        let end = tuple_label(&g, &anchors(&[0]), LabelMode::Exact(&mut it)).unwrap();
        let end2 = tuple_label(&g, &anchors(&[2]), LabelMode::Exact(&mut it)).unwrap();
        let mid = tuple_label(&g, &anchors(&[1]), LabelMode::Exact(&mut it)).unwrap();
        assert_eq!(end, end2);
        assert_ne!(end, mid);
    }

    #[test]
    fn loops_count_once() {
        let plain = fixtures::path(2);
        let looped = Graph::from_edges(2, &[(0, 1), (0, 0)]).unwrap();
        let mut it = Interner::new(0);
        let a = refine(&plain, &AnchorTuple::empty(), 3, &mut it).unwrap();
        let b = refine(&looped, &AnchorTuple::empty(), 3, &mut it).unwrap();
        assert_eq!(a[1].class_count(), 1);
        assert_eq!(b[1].class_count(), 2);
        assert_ne!(b[1].labels()[0], a[1].labels()[0]);
        assert_eq!(b[1].labels()[1], a[1].labels()[1]);
    }

    #[test]
    fn argument_errors() {
        let g = fixtures::path(3);
        let mut it = Interner::new(1);
        assert!(refine(&g, &AnchorTuple::empty(), 0, &mut it).is_err());
        assert!(refine(&g, &anchors(&[5]), 2, &mut it).is_err());
        assert!(refine(&g, &anchors(&[0, 1]), 2, &mut it).is_err());
        assert!(AnchorTuple::new(vec![1, 1]).is_err());
    }
}

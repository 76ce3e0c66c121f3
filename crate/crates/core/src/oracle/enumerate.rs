use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{complement, Graph};

use super::iso::brute_force_isomorphic;

/// Largest node count [`enumerate_graphs`] accepts.
pub const ENUMERATION_BOUND: usize = 7;

/// Number of isomorphism classes of simple graphs on `n = 0..=7` nodes.
pub const KNOWN_CLASS_COUNTS: [usize; 8] = [1, 1, 2, 4, 11, 34, 156, 1044];

/// Isomorphism invariant used to bucket candidates: edge count, then per
/// node (degree, sorted neighbor degrees, triangles through the node),
/// sorted.
type BucketKey = (usize, Vec<(usize, Vec<usize>, usize)>);

fn bucket_key(g: &Graph) -> BucketKey {
    let mut nodes: Vec<(usize, Vec<usize>, usize)> = (0..g.n())
        .map(|i| {
            let nb = g.neighbors(i);
            let mut degrees: Vec<usize> = nb.iter().map(|&j| g.degree(j)).collect();
            degrees.sort_unstable();
            let triangles = nb
                .iter()
                .enumerate()
                .map(|(a, &x)| nb[a + 1..].iter().filter(|&&y| g.has_edge(x, y)).count())
                .sum();
            (g.degree(i), degrees, triangles)
        })
        .collect();
    nodes.sort();
    (g.edge_count(), nodes)
}

#[derive(Default)]
struct Classes {
    buckets: HashMap<BucketKey, Vec<usize>>,
    reps: Vec<Graph>,
}

impl Classes {
    fn insert(&mut self, g: Graph) -> Result<()> {
        let bucket = self.buckets.entry(bucket_key(&g)).or_default();
        for &r in bucket.iter() {
            if brute_force_isomorphic(&self.reps[r], &g)?.isomorphic {
                return Ok(());
            }
        }
        bucket.push(self.reps.len());
        self.reps.push(g);
        Ok(())
    }
}

/// One loop-free graph per isomorphism class on `n` nodes.
///
/// Class representatives on `n - 1` nodes are extended by a new node in
/// every possible way. Only candidates with at most half of all possible
/// edges are deduplicated (by bucketing on an invariant and brute-force
/// isomorphism within a bucket); the denser classes are the complements of
/// the strictly sparser ones.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded(format!(
            "exhaustive enumeration is limited to {ENUMERATION_BOUND} nodes"
        )));
    }
    if n == 0 {
        return Ok(vec![Graph::empty(0)]);
    }
    let smaller = enumerate_graphs(n - 1)?;
    let pairs = n * (n - 1) / 2;
    let mut classes = Classes::default();
    for base in &smaller {
        let edges: Vec<(usize, usize)> = base.edges().collect();
        for mask in 0u32..(1 << (n - 1)) {
            if 2 * (edges.len() + mask.count_ones() as usize) > pairs {
                continue;
            }
            let mut g = Graph::empty(n);
            for &(a, b) in &edges {
                g.add_edge(a, b)?;
            }
            for j in 0..n - 1 {
                if mask >> j & 1 == 1 {
                    g.add_edge(j, n - 1)?;
                }
            }
            classes.insert(g)?;
        }
    }
    let mut reps = classes.reps;
    let dense: Vec<Graph> = reps.iter().filter(|g| 2 * g.edge_count() < pairs).map(complement).collect();
    reps.extend(dense);
    reps.sort_by_cached_key(|g| (g.edge_count(), bucket_key(g)));
    Ok(reps)
}

/// Index of the representative isomorphic to `g`, if any.
pub fn find_class(reps: &[Graph], g: &Graph) -> Result<Option<usize>> {
    let key = bucket_key(g);
    for (i, r) in reps.iter().enumerate() {
        if r.edge_count() == g.edge_count() && bucket_key(r) == key && brute_force_isomorphic(r, g)?.isomorphic {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

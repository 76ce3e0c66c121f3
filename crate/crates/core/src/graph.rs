//! Undirected graphs with optional loops, plus the structural utilities the
//! invariants are checked against: complements, gluing, distances,
//! separators, connectivity and strongly regular parameters.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// An undirected graph on nodes `0..n` with at most one edge per node pair
/// and an optional loop on each node.
///
/// Neighbor lists are sorted and never contain the node itself; loops are
/// kept as a separate flag.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    loops: Vec<bool>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        let loops: Vec<_> = (0..self.n()).filter(|&i| self.loops[i]).collect();
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &edges)
            .field("loops", &loops)
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            loops: vec![false; n],
        }
    }

    /// Builds a graph from an edge list. A pair `(i, i)` sets a loop.
    /// Repeated pairs collapse to a single edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric 0/1 matrix; diagonal ones become loops.
    pub fn from_adjacency(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Graph::empty(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "adjacency row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 if j >= i => {
                        g.add_edge(i, j)?;
                    }
                    1 => {}
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "adjacency entry ({i},{j}) is {x}"
                        )))
                    }
                }
                if rows[j].get(i) != Some(&x) {
                    return Err(Error::InvalidArgument(format!(
                        "adjacency matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Inserts an edge (or a loop when `i == j`). Returns whether the edge was new.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<bool> {
        let n = self.n();
        for node in [i, j] {
            if node >= n {
                return Err(Error::NodeOutOfRange { node, n });
            }
        }
        if i == j {
            let fresh = !self.loops[i];
            self.loops[i] = true;
            return Ok(fresh);
        }
        match self.adj[i].binary_search(&j) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[i].insert(pos, j);
                let pos = self.adj[j].binary_search(&i).unwrap_err();
                self.adj[j].insert(pos, i);
                Ok(true)
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Sorted neighbors of `i`, excluding `i` itself even when it has a loop.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.loops[i]
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|&l| l)
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l).count()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            self.loops[i]
        } else {
            self.adj[i].binary_search(&j).is_ok()
        }
    }

    /// Number of distinct neighbors, loops not counted.
    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Number of non-loop edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Non-loop edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, nb)| nb.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node < self.n() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node, n: self.n() })
        }
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument("not a permutation of the node set".into()));
        }
        let mut g = Graph::empty(n);
        for (i, j) in self.edges() {
            g.add_edge(perm[i], perm[j])?;
        }
        for (i, &p) in perm.iter().enumerate() {
            g.loops[p] = self.loops[i];
        }
        Ok(g)
    }

    /// Subgraph induced by the nodes not flagged in `removed`, renumbered in
    /// increasing order.
    pub fn without_nodes(&self, removed: &[bool]) -> Self {
        let mut map = vec![usize::MAX; self.n()];
        let mut next = 0;
        for i in 0..self.n() {
            if !removed[i] {
                map[i] = next;
                next += 1;
            }
        }
        let mut g = Graph::empty(next);
        for (i, j) in self.edges() {
            if !removed[i] && !removed[j] {
                g.add_edge(map[i], map[j]).expect("renumbered ids are in range");
            }
        }
        for i in 0..self.n() {
            if !removed[i] && self.loops[i] {
                g.loops[map[i]] = true;
            }
        }
        g
    }

    /// Degree sequence sorted nondecreasingly.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|i| self.degree(i)).collect();
        d.sort_unstable();
        d
    }
}

/// A graph with an identifier and a provenance string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub graph: Graph,
    pub id: String,
    pub source: String,
}

/// Complement on the off-diagonal pairs; loops are left as they are.
pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut out = Graph::empty(n);
    for i in 0..n {
        let mut nb = g.neighbors(i).iter().peekable();
        for j in 0..n {
            if j == i {
                continue;
            }
            if nb.peek() == Some(&&j) {
                nb.next();
            } else {
                out.adj[i].push(j);
            }
        }
        out.loops[i] = g.loops[i];
    }
    out
}

/// Glues two copies of `g` at the node pair `(u, v)`.
///
/// The first output identifies `u' = u''` and `v' = v''`; the second
/// identifies `u' = v''` and `v' = u''`. Copy-one nodes keep their ids, the
/// remaining copy-two nodes follow in increasing order, and coincident edges
/// collapse to one.
pub fn glue_pair(g: &Graph, u: usize, v: usize) -> Result<(Graph, Graph)> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Err(Error::InvalidArgument("glue nodes must be distinct".into()));
    }
    let n = g.n();
    let mut shifted = vec![0; n];
    let mut next = n;
    for (i, slot) in shifted.iter_mut().enumerate() {
        if i != u && i != v {
            *slot = next;
            next += 1;
        }
    }
    let build = |u_to: usize, v_to: usize| -> Result<Graph> {
        let map2 = |i: usize| {
            if i == u {
                u_to
            } else if i == v {
                v_to
            } else {
                shifted[i]
            }
        };
        let mut out = Graph::empty(2 * n - 2);
        for (i, j) in g.edges() {
            out.add_edge(i, j)?;
            out.add_edge(map2(i), map2(j))?;
        }
        for i in (0..n).filter(|&i| g.has_loop(i)) {
            out.add_edge(i, i)?;
            out.add_edge(map2(i), map2(i))?;
        }
        Ok(out)
    };
    Ok((build(u, v)?, build(v, u)?))
}

/// Hop distances from `source`; `None` marks unreachable nodes.
pub fn distances(g: &Graph, source: usize) -> Result<Vec<Option<usize>>> {
    g.check_node(source)?;
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap() + 1;
        for &y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(d);
                queue.push_back(y);
            }
        }
    }
    Ok(dist)
}

/// Largest distance from `source`, `None` if some node is unreachable.
pub fn eccentricity(g: &Graph, source: usize) -> Result<Option<usize>> {
    let dist = distances(g, source)?;
    Ok(dist.iter().try_fold(0, |acc, d| d.map(|d| acc.max(d))))
}

/// Diameter, `None` when the graph is disconnected. The empty graph on zero
/// nodes has diameter 0.
pub fn diameter(g: &Graph) -> Option<usize> {
    (0..g.n()).try_fold(0, |acc, i| {
        eccentricity(g, i).expect("node in range").map(|e| acc.max(e))
    })
}

/// Number of connected components among the nodes not flagged in `removed`.
pub fn component_count(g: &Graph, removed: &[bool]) -> usize {
    let n = g.n();
    let mut seen = removed.to_vec();
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

pub fn is_connected(g: &Graph) -> bool {
    component_count(g, &vec![false; g.n()]) <= 1
}

/// Every node set `X` with `1 <= |X| <= k` whose deletion leaves more
/// connected components than `g` has. Exhaustive; meant for small `k`.
/// Subsets are returned sorted, in lexicographic order.
pub fn find_separators(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let base = component_count(g, &vec![false; n]);
    let mut out = Vec::new();
    let mut removed = vec![false; n];
    let mut subset = Vec::new();
    fn rec(
        g: &Graph,
        k: usize,
        start: usize,
        base: usize,
        removed: &mut [bool],
        subset: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !subset.is_empty() && component_count(g, removed) > base {
            out.push(subset.clone());
        }
        if subset.len() == k {
            return;
        }
        for x in start..g.n() {
            removed[x] = true;
            subset.push(x);
            rec(g, k, x + 1, base, removed, subset, out);
            subset.pop();
            removed[x] = false;
        }
    }
    rec(g, k.min(n), 0, base, &mut removed, &mut subset, &mut out);
    out.sort();
    out
}

/// Nodes belonging to at least one separator of size at most `k`.
pub fn separator_members(g: &Graph, k: usize) -> BTreeSet<usize> {
    find_separators(g, k).into_iter().flatten().collect()
}

/// `g` has more than `k` nodes, is connected, and no set of fewer than `k`
/// nodes separates it.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if g.n() <= k || !is_connected(g) {
        return false;
    }
    k == 0 || find_separators(g, k - 1).is_empty()
}

/// Parameters of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SrgParameters {
    pub n: usize,
    pub degree: usize,
    pub lambda: usize,
    pub mu: usize,
}

/// `(n, d, λ, μ)` when `g` is strongly regular. Graphs with loops, complete
/// graphs and edgeless graphs are not reported (one of λ, μ is undefined).
pub fn srg_parameters(g: &Graph) -> Option<SrgParameters> {
    let n = g.n();
    if n < 2 || g.has_loops() {
        return None;
    }
    let degree = g.degree(0);
    if (0..n).any(|i| g.degree(i) != degree) {
        return None;
    }
    let mut lambda = None;
    let mut mu = None;
    let mut mark = vec![false; n];
    for i in 0..n {
        for &x in g.neighbors(i) {
            mark[x] = true;
        }
        for j in i + 1..n {
            let common = g.neighbors(j).iter().filter(|&&x| mark[x]).count();
            let slot = if g.has_edge(i, j) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(c) if c == common => {}
                Some(_) => return None,
            }
        }
        for &x in g.neighbors(i) {
            mark[x] = false;
        }
    }
    Some(SrgParameters {
        n,
        degree,
        lambda: lambda?,
        mu: mu?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn path(n: usize) -> Graph {
        fixtures::path(n)
    }

    #[test]
    fn complement_basics() {
        assert_eq!(complement(&Graph::empty(4)), fixtures::complete(4));
        let k2_loop = Graph::from_edges(2, &[(0, 1), (0, 0)]).unwrap();
        let c = complement(&k2_loop);
        assert_eq!(c.edge_count(), 0);
        assert!(c.has_loop(0) && !c.has_loop(1));
    }

    #[test]
    fn glue_small_cases() {
        let k2 = fixtures::complete(2);
        let (g1, g2) = glue_pair(&k2, 0, 1).unwrap();
        assert_eq!(g1, k2);
        assert_eq!(g2, k2);
        assert!(glue_pair(&k2, 1, 1).is_err());
        // P3 glued at its endpoints gives C4 both ways.
        let (g1, g2) = glue_pair(&path(3), 0, 2).unwrap();
        for g in [g1, g2] {
            assert_eq!(g.n(), 4);
            assert_eq!(g.edge_count(), 4);
            assert!((0..4).all(|i| g.degree(i) == 2));
            assert!(is_connected(&g));
        }
    }

    #[test]
    fn distance_examples() {
        let k3 = fixtures::complete(3);
        assert_eq!(distances(&k3, 0).unwrap(), vec![Some(0), Some(1), Some(1)]);
        assert_eq!(
            distances(&path(4), 0).unwrap(),
            vec![Some(0), Some(1), Some(2), Some(3)]
        );
        let two_triangles = fixtures::two_triangles();
        assert_eq!(
            distances(&two_triangles, 0).unwrap(),
            vec![Some(0), Some(1), Some(1), None, None, None]
        );
        assert!(distances(&k3, 3).is_err());
        assert_eq!(diameter(&fixtures::cycle(6)), Some(3));
        assert_eq!(diameter(&fixtures::complete(5)), Some(1));
        assert_eq!(diameter(&two_triangles), None);
    }

    #[test]
    fn separator_examples() {
        assert_eq!(find_separators(&path(3), 1), vec![vec![1]]);
        assert!(find_separators(&fixtures::complete(4), 3).is_empty());
        assert_eq!(
            find_separators(&fixtures::cycle(4), 2),
            vec![vec![0, 2], vec![1, 3]]
        );
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_k_connected(&fixtures::cycle(5), 2));
        assert!(!is_k_connected(&path(4), 2));
        assert!(is_k_connected(&fixtures::complete(4), 3));
        assert!(!is_k_connected(&fixtures::complete(4), 4));
    }

    #[test]
    fn srg_examples() {
        let rook = fixtures::rook_4x4();
        let expect = SrgParameters { n: 16, degree: 6, lambda: 2, mu: 2 };
        assert_eq!(srg_parameters(&rook), Some(expect));
        assert_eq!(srg_parameters(&fixtures::shrikhande()), Some(expect));
        assert_eq!(srg_parameters(&path(4)), None);
        let (appendix, _, _) = fixtures::appendix_srg();
        assert_eq!(
            srg_parameters(&appendix),
            Some(SrgParameters { n: 35, degree: 18, lambda: 9, mu: 9 })
        );
    }

    #[test]
    fn appendix_glue_degrees() {
        let (g, u, v) = fixtures::appendix_srg();
        let (g1, g2) = glue_pair(&g, u, v).unwrap();
        for h in [&g1, &g2] {
            assert_eq!(h.n(), 68);
            for i in 0..68 {
                let expect = if i == u || i == v { 35 } else { 18 };
                assert_eq!(h.degree(i), expect, "node {i}");
            }
        }
    }

    #[test]
    fn permute_rejects_non_permutations() {
        let g = path(3);
        assert!(g.permute(&[0, 0, 1]).is_err());
        assert!(g.permute(&[0, 1]).is_err());
        let p = g.permute(&[2, 0, 1]).unwrap();
        assert!(p.has_edge(2, 0) && p.has_edge(0, 1) && !p.has_edge(2, 1));
    }
}

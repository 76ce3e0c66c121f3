use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest node count [`brute_force_isomorphic`] accepts.
pub const BRUTE_FORCE_BOUND: usize = 24;

/// Result of an isomorphism check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// `witness[i]` is the image of node `i` of the first graph.
    pub witness: Option<Vec<usize>>,
}

impl IsoVerdict {
    fn no() -> Self {
        IsoVerdict {
            isomorphic: false,
            witness: None,
        }
    }
}

/// Plain color refinement run on both graphs at once, used only to prune
/// the search: nodes of different colors can never correspond.
fn joint_colors(g1: &Graph, g2: &Graph) -> (Vec<u32>, Vec<u32>) {
    let graphs = [g1, g2];
    let mut colors: [Vec<u32>; 2] = std::array::from_fn(|s| (0..graphs[s].n()).map(|i| u32::from(graphs[s].has_loop(i))).collect());
    let mut classes = usize::MAX;
    loop {
        let mut table: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
        let mut next: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
        // assign ids in sorted key order so both graphs see the same numbering
        let mut keys: Vec<(usize, usize, (u32, Vec<u32>))> = Vec::new();
        for s in 0..2 {
            for i in 0..graphs[s].n() {
                let mut nb: Vec<u32> = graphs[s].neighbors(i).iter().map(|&j| colors[s][j]).collect();
                nb.sort_unstable();
                keys.push((s, i, (colors[s][i], nb)));
            }
        }
        let mut distinct: Vec<&(u32, Vec<u32>)> = keys.iter().map(|(_, _, k)| k).collect();
        distinct.sort();
        distinct.dedup();
        for (id, k) in distinct.iter().enumerate() {
            table.insert((*k).clone(), id as u32);
        }
        for s in 0..2 {
            next[s] = vec![0; graphs[s].n()];
        }
        for (s, i, k) in &keys {
            next[*s][*i] = table[k];
        }
        let now = table.len();
        colors = next;
        if now == classes {
            break;
        }
        classes = now;
    }
    let [a, b] = colors;
    (a, b)
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for &j in g.neighbors(i) {
            row[j] = true;
        }
        row[i] = g.has_loop(i);
    }
    m
}

/// Breadth-first order covering every component, each started at a node
/// of highest degree.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&i| std::cmp::Reverse(g.degree(i)));
    for &start in &by_degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

/// Exact isomorphism test by backtracking over color-compatible
/// assignments. Any witness returned has been checked edge by edge.
pub fn brute_force_isomorphic(g1: &Graph, g2: &Graph) -> Result<IsoVerdict> {
    let n = g1.n();
    if n.max(g2.n()) > BRUTE_FORCE_BOUND {
        return Err(Error::BoundExceeded(format!(
            "brute-force isomorphism is limited to {BRUTE_FORCE_BOUND} nodes"
        )));
    }
    if n != g2.n() || g1.edge_count() != g2.edge_count() || g1.loop_count() != g2.loop_count() {
        return Ok(IsoVerdict::no());
    }
    let (c1, c2) = joint_colors(g1, g2);
    let mut s1 = c1.clone();
    let mut s2 = c2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(IsoVerdict::no());
    }
    let a1 = adjacency(g1);
    let a2 = adjacency(g2);
    let order = search_order(g1);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let found = extend(0, &order, g1, g2, &a1, &a2, &c1, &c2, &mut map, &mut used);
    if !found {
        return Ok(IsoVerdict::no());
    }
    assert!(verify_witness(g1, g2, &map), "backtracking produced an invalid witness");
    Ok(IsoVerdict {
        isomorphic: true,
        witness: Some(map),
    })
}

#[allow(clippy::too_many_arguments)]
fn extend(
    t: usize,
    order: &[usize],
    g1: &Graph,
    g2: &Graph,
    a1: &[Vec<bool>],
    a2: &[Vec<bool>],
    c1: &[u32],
    c2: &[u32],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if t == order.len() {
        return true;
    }
    let u = order[t];
    let anchor = g1.neighbors(u).iter().copied().find(|&p| map[p] != usize::MAX);
    let candidates: Vec<usize> = match anchor {
        Some(p) => g2.neighbors(map[p]).to_vec(),
        None => (0..g2.n()).collect(),
    };
    for v in candidates {
        if used[v] || c1[u] != c2[v] {
            continue;
        }
        let consistent = order[..t].iter().all(|&w| a1[u][w] == a2[v][map[w]]);
        if !consistent {
            continue;
        }
        map[u] = v;
        used[v] = true;
        if extend(t + 1, order, g1, g2, a1, a2, c1, c2, map, used) {
            return true;
        }
        map[u] = usize::MAX;
        used[v] = false;
    }
    false
}

/// Whether `map` is a bijection carrying edges and loops of `g1` exactly
/// onto those of `g2`.
pub fn verify_witness(g1: &Graph, g2: &Graph, map: &[usize]) -> bool {
    let n = g1.n();
    if n != g2.n() || map.len() != n || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut hit = vec![false; n];
    for &v in map {
        if v >= n || std::mem::replace(&mut hit[v], true) {
            return false;
        }
    }
    (0..n).all(|i| g1.has_loop(i) == g2.has_loop(map[i]) && g1.neighbors(i).iter().all(|&j| g2.has_edge(map[i], map[j])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn spec_examples() {
        assert!(!brute_force_isomorphic(&fixtures::cycle(6), &fixtures::two_triangles()).unwrap().isomorphic);
        let f = fixtures::figure1();
        let perm = [5, 3, 9, 0, 1, 10, 2, 4, 6, 8, 7];
        let v = brute_force_isomorphic(&f, &f.permute(&perm).unwrap()).unwrap();
        assert!(v.isomorphic);
        assert!(verify_witness(&f, &f.permute(&perm).unwrap(), v.witness.as_ref().unwrap()));
        assert!(!brute_force_isomorphic(&fixtures::shrikhande(), &fixtures::rook_4x4()).unwrap().isomorphic);
    }

    #[test]
    fn loops_and_bounds() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 0)]).unwrap();
        let b = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 2)]).unwrap();
        let c = Graph::from_edges(3, &[(0, 1), (1, 2), (1, 1)]).unwrap();
        assert!(brute_force_isomorphic(&a, &b).unwrap().isomorphic);
        assert!(!brute_force_isomorphic(&a, &c).unwrap().isomorphic);
        let (g1, g2) = fixtures::glued_pair();
        assert!(brute_force_isomorphic(&g1, &g2).is_err());
    }

    #[test]
    fn regular_self_matches() {
        let ico = fixtures::icosahedron();
        let perm: Vec<usize> = (0..12).map(|i| (i * 5 + 7) % 12).collect();
        assert!(brute_force_isomorphic(&ico, &ico.permute(&perm).unwrap()).unwrap().isomorphic);
        assert!(!brute_force_isomorphic(&fixtures::prism(4), &fixtures::antiprism(4)).unwrap().isomorphic);
    }
}

//! Seeded random graphs. Every generator takes the RNG explicitly; suites
//! derive one stream per case from a recorded 64-bit seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{is_connected, Graph};

/// Edge probabilities used for random graphs.
pub const EDGE_PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

/// The RNG for case `case` of a run seeded with `seed`.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// G(n, p).
pub fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j).expect("in range");
            }
        }
    }
    g
}

/// G(n, p) with `p` drawn from [`EDGE_PROBABILITIES`].
pub fn random_graph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let p = *EDGE_PROBABILITIES.choose(rng).expect("nonempty");
    erdos_renyi(n, p, rng)
}

/// Random connected graph: G(n, p) redrawn until connected.
pub fn random_connected<R: Rng>(n: usize, rng: &mut R) -> Graph {
    loop {
        let g = random_graph(n, rng);
        if is_connected(&g) {
            return g;
        }
    }
}

/// Random tree from a random parent array (node `i` attaches to a uniform
/// earlier node), then randomly relabeled.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for i in 1..n {
        let p = rng.gen_range(0..i);
        g.add_edge(p, i).expect("in range");
    }
    let perm = random_permutation(n, rng);
    g.permute(&perm).expect("valid permutation")
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// `g` with its nodes shuffled.
pub fn relabeled<R: Rng>(g: &Graph, rng: &mut R) -> Graph {
    g.permute(&random_permutation(g.n(), rng)).expect("valid permutation")
}

/// Applies up to `swaps` degree-preserving double edge swaps
/// `{a,b},{c,d} -> {a,d},{c,b}`.
pub fn edge_switched<R: Rng>(g: &Graph, swaps: usize, rng: &mut R) -> Graph {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut h = g.clone();
    if edges.len() < 2 {
        return h;
    }
    for _ in 0..swaps * 10 {
        let x = rng.gen_range(0..edges.len());
        let y = rng.gen_range(0..edges.len());
        let (a, b) = edges[x];
        let (c, d) = if rng.gen_bool(0.5) { edges[y] } else { (edges[y].1, edges[y].0) };
        let distinct = a != c && a != d && b != c && b != d;
        if !distinct || h.has_edge(a, d) || h.has_edge(c, b) {
            continue;
        }
        edges[x] = (a.min(d), a.max(d));
        edges[y] = (c.min(b), c.max(b));
        let mut next = Graph::empty(g.n());
        for &(i, j) in &edges {
            next.add_edge(i, j).expect("in range");
        }
        h = next;
    }
    h
}

/// A pair of loop-free graphs on the same node count drawn from
/// `min_n..=max_n`: a relabeled copy, a degree-preserving rewiring, or an
/// independent draw, in equal proportion.
pub fn random_pair<R: Rng>(min_n: usize, max_n: usize, rng: &mut R) -> (Graph, Graph) {
    let n = rng.gen_range(min_n..=max_n);
    let g = random_graph(n, rng);
    let h = match rng.gen_range(0..3) {
        0 => relabeled(&g, rng),
        1 => {
            let swapped = edge_switched(&g, 2, rng);
            relabeled(&swapped, rng)
        }
        _ => random_graph(n, rng),
    };
    (g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_connected;

    #[test]
    fn reproducible() {
        let a = random_graph(8, &mut case_rng(7, 3));
        let b = random_graph(8, &mut case_rng(7, 3));
        assert_eq!(a, b);
        let c = random_tree(12, &mut case_rng(1, 0));
        assert_eq!(c.edge_count(), 11);
        assert!(is_connected(&c));
    }

    #[test]
    fn switches_keep_degrees() {
        let mut rng = case_rng(3, 9);
        let g = erdos_renyi(10, 0.5, &mut rng);
        let h = edge_switched(&g, 5, &mut rng);
        assert_eq!(g.degree_sequence(), h.degree_sequence());
        assert_eq!(g.edge_count(), h.edge_count());
    }
}

//! Named graphs used throughout the tests, the verification suites and the
//! CLI: paths, cycles, C6 and 2×K3, the 11-node example
//! where walk counts fail to separate two nodes, the (16,6,2,2) strongly
//! regular pair, the (35,18,9,9) graph with its two marked nodes, the glued
//! pair built from it, and 3-connected planar polyhedra with one face each.

use crate::graph::{glue_pair, Graph};

const APPENDIX_SRG: &str = include_str!("../data/appendix_srg.txt");

/// One catalog entry.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    /// A distinguished node pair, where the construction has one.
    pub marked: Option<(usize, usize)>,
    /// Three nodes on a common face, for the planar fixtures.
    pub face: Option<[usize; 3]>,
}

impl Fixture {
    fn plain(name: impl Into<String>, graph: Graph) -> Self {
        Fixture {
            name: name.into(),
            graph,
            marked: None,
            face: None,
        }
    }

    fn planar(name: impl Into<String>, graph: Graph, face: [usize; 3]) -> Self {
        Fixture {
            face: Some(face),
            ..Fixture::plain(name, graph)
        }
    }
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let mut g = Graph::empty(n);
    for (i, j) in edges {
        g.add_edge(i, j).expect("fixture edge in range");
    }
    g
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

/// Path on `n` nodes with a loop on node `n - 1`; node 0 stays loop-free.
pub fn path_with_loop(n: usize) -> Graph {
    let mut g = path(n);
    g.add_edge(n - 1, n - 1).expect("in range");
    g
}

pub fn cycle(n: usize) -> Graph {
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

/// Two disjoint triangles.
pub fn two_triangles() -> Graph {
    build(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
}

/// The 11-node graph whose nodes `v1` and `v5` (ids 0 and 4) have
/// permutation-equal walk matrices but different aggregation labels.
pub fn figure1() -> Graph {
    let v = |i: usize| i - 1;
    let mut edges: Vec<(usize, usize)> = (2..=8).map(|c| (v(c), v(c - 1))).collect();
    edges.push((v(1), v(8)));
    for c in [1, 2, 5, 6, 7, 9] {
        edges.push((v(c), v(10)));
    }
    edges.extend([(v(2), v(11)), (v(4), v(11))]);
    build(11, edges)
}

/// Cayley graph on Z4 × Z4 with connection set ±(1,0), ±(0,1), ±(1,1).
pub fn shrikhande() -> Graph {
    let id = |a: usize, b: usize| 4 * (a % 4) + (b % 4);
    let mut edges = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for (da, db) in [(1, 0), (0, 1), (1, 1)] {
                edges.push((id(a, b), id(a + da, b + db)));
            }
        }
    }
    build(16, edges)
}

/// The 4×4 rook's graph K4 □ K4.
pub fn rook_4x4() -> Graph {
    let mut edges = Vec::new();
    for x in 0..16usize {
        for y in x + 1..16 {
            if (x / 4 == y / 4) != (x % 4 == y % 4) {
                edges.push((x, y));
            }
        }
    }
    build(16, edges)
}

/// The bundled (35,18,9,9) strongly regular graph and its marked nodes `u`, `v`.
pub fn appendix_srg() -> (Graph, usize, usize) {
    parse_appendix(APPENDIX_SRG).expect("bundled matrix is well formed")
}

fn parse_appendix(text: &str) -> Option<(Graph, usize, usize)> {
    let mut lines = text.lines();
    let header = lines.next()?;
    let mut u = None;
    let mut v = None;
    for field in header.split_whitespace() {
        let (key, val) = field.split_once('=')?;
        match key {
            "u" => u = val.parse().ok(),
            "v" => v = val.parse().ok(),
            _ => return None,
        }
    }
    let rows: Vec<Vec<u8>> = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|x| x.parse().ok()).collect::<Option<Vec<u8>>>())
        .collect::<Option<_>>()?;
    let g = Graph::from_adjacency(&rows).ok()?;
    Some((g, u?, v?))
}

/// The two 68-node graphs obtained by gluing two copies of the (35,18,9,9)
/// graph at `u`, `v` straight and crossed.
pub fn glued_pair() -> (Graph, Graph) {
    let (g, u, v) = appendix_srg();
    glue_pair(&g, u, v).expect("marked nodes are distinct")
}

/// Prism over a `k`-gon: rims `0..k` and `k..2k`.
pub fn prism(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        let j = (i + 1) % k;
        edges.extend([(i, j), (k + i, k + j), (i, k + i)]);
    }
    build(2 * k, edges)
}

/// Antiprism over a `k`-gon.
pub fn antiprism(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        let j = (i + 1) % k;
        edges.extend([(i, j), (k + i, k + j), (i, k + i), (i, k + j)]);
    }
    build(2 * k, edges)
}

/// Wheel: hub 0 joined to a rim cycle `1..=k`.
pub fn wheel(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((0, 1 + i));
        edges.push((1 + i, 1 + (i + 1) % k));
    }
    build(k + 1, edges)
}

pub fn octahedron() -> Graph {
    // opposite vertex pairs (0,1), (2,3), (4,5)
    let mut edges = Vec::new();
    for i in 0..6usize {
        for j in i + 1..6 {
            if i / 2 != j / 2 {
                edges.push((i, j));
            }
        }
    }
    build(6, edges)
}

pub fn dodecahedron() -> Graph {
    // outer pentagon 0..5, middle 10-cycle 5..15, inner pentagon 15..20
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((15 + i, 15 + (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((15 + i, 5 + 2 * i + 1));
    }
    for j in 0..10 {
        edges.push((5 + j, 5 + (j + 1) % 10));
    }
    build(20, edges)
}

pub fn icosahedron() -> Graph {
    // apex 0, upper ring 1..6, lower ring 6..11, apex 11
    let mut edges = Vec::new();
    for i in 0..5 {
        let (a, a1) = (1 + i, 1 + (i + 1) % 5);
        let (b, b1) = (6 + i, 6 + (i + 1) % 5);
        edges.extend([(0, a), (a, a1), (a, b), (a, b1), (b, b1), (11, b)]);
    }
    build(12, edges)
}

/// 3-connected planar graphs, each with three nodes sharing a face.
pub fn polyhedra() -> Vec<Fixture> {
    vec![
        Fixture::planar("tetrahedron", complete(4), [0, 1, 2]),
        Fixture::planar("square-pyramid", wheel(4), [0, 1, 2]),
        Fixture::planar("triangular-prism", prism(3), [0, 1, 2]),
        Fixture::planar("octahedron", octahedron(), [0, 2, 4]),
        Fixture::planar("wheel-5", wheel(5), [0, 1, 2]),
        Fixture::planar("wheel-6", wheel(6), [0, 1, 2]),
        Fixture::planar("cube", prism(4), [0, 1, 2]),
        Fixture::planar("square-antiprism", antiprism(4), [0, 1, 5]),
        Fixture::planar("wheel-7", wheel(7), [0, 1, 2]),
        Fixture::planar("pentagonal-prism", prism(5), [0, 1, 2]),
        Fixture::planar("pentagonal-antiprism", antiprism(5), [0, 1, 6]),
        Fixture::planar("hexagonal-prism", prism(6), [0, 1, 2]),
        Fixture::planar("icosahedron", icosahedron(), [0, 1, 2]),
        Fixture::planar("dodecahedron", dodecahedron(), [0, 1, 2]),
    ]
}

/// The full named catalog, in a fixed order.
pub fn catalog() -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in 3..=8 {
        out.push(Fixture::plain(format!("path-{n}"), path(n)));
        out.push(Fixture::plain(format!("path-{n}-loop"), path_with_loop(n)));
    }
    out.push(Fixture::plain("c6", cycle(6)));
    out.push(Fixture::plain("2k3", two_triangles()));
    out.push(Fixture {
        marked: Some((0, 4)),
        ..Fixture::plain("figure1", figure1())
    });
    out.push(Fixture::plain("shrikhande", shrikhande()));
    out.push(Fixture::plain("rook-4x4", rook_4x4()));
    let (srg, u, v) = appendix_srg();
    out.push(Fixture {
        marked: Some((u, v)),
        ..Fixture::plain("appendix-srg", srg)
    });
    let (g1, g2) = glued_pair();
    out.push(Fixture {
        marked: Some((u, v)),
        ..Fixture::plain("glued-g1", g1)
    });
    out.push(Fixture {
        marked: Some((u, v)),
        ..Fixture::plain("glued-g2", g2)
    });
    out.extend(polyhedra());
    out
}

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<Fixture> {
    catalog().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_k_connected, srg_parameters};

    #[test]
    fn appendix_counts() {
        let (g, u, v) = appendix_srg();
        assert_eq!(g.n(), 35);
        assert_eq!(g.edge_count(), 35 * 18 / 2);
        let ones: usize = APPENDIX_SRG
            .lines()
            .skip(1)
            .flat_map(|l| l.split_whitespace())
            .filter(|&x| x == "1")
            .count();
        assert_eq!(ones, 2 * 315);
        assert_eq!((u, v), (23, 24));
        assert!(g.has_edge(u, v));
    }

    #[test]
    fn figure1_shape() {
        let f = by_name("figure1").unwrap();
        assert_eq!(f.graph.n(), 11);
        assert_eq!(f.marked, Some((0, 4)));
        assert_eq!(f.graph.edge_count(), 16);
    }

    #[test]
    fn shrikhande_is_srg() {
        assert!(srg_parameters(&shrikhande()).is_some());
    }

    #[test]
    fn polyhedra_are_3_connected_and_planar_sized() {
        for f in polyhedra() {
            let g = &f.graph;
            assert!(is_k_connected(g, 3), "{}", f.name);
            // Euler: a simple planar graph has at most 3n - 6 edges
            assert!(g.edge_count() <= 3 * g.n() - 6, "{}", f.name);
            let [a, b, c] = f.face.unwrap();
            assert!(a != b && b != c && a != c);
        }
        let d = dodecahedron();
        assert_eq!((d.n(), d.edge_count()), (20, 30));
        assert!((0..20).all(|i| d.degree(i) == 3));
        let ico = icosahedron();
        assert_eq!((ico.n(), ico.edge_count()), (12, 30));
        assert!((0..12).all(|i| ico.degree(i) == 5));
    }

    #[test]
    fn catalog_names_unique() {
        let cat = catalog();
        let mut names: Vec<_> = cat.iter().map(|f| f.name.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), cat.len());
    }
}

use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph};

fn encode(g: &Graph, v: usize, parent: Option<usize>, out: &mut Vec<u8>) {
    let mut children: Vec<Vec<u8>> = g
        .neighbors(v)
        .iter()
        .filter(|&&c| Some(c) != parent)
        .map(|&c| {
            let mut s = Vec::new();
            encode(g, c, Some(v), &mut s);
            s
        })
        .collect();
    children.sort();
    out.push(b'(');
    for c in children {
        out.extend(c);
    }
    out.push(b')');
}

fn centers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&i| degree[i] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &p in g.neighbors(leaf) {
                degree[p] -= 1;
                if degree[p] == 1 {
                    next.push(p);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Canonical parenthesis encoding of a tree rooted at its center; two
/// trees get equal strings iff they are isomorphic. With two centers the
/// encodings of both halves are combined in sorted order.
pub fn tree_canonical(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n == 0 || g.has_loops() || g.edge_count() + 1 != n || !is_connected(g) {
        return Err(Error::InvalidArgument("not a tree".into()));
    }
    let c = centers(g);
    let mut out = Vec::new();
    match c[..] {
        [root] => encode(g, root, None, &mut out),
        [a, b] => {
            let mut left = Vec::new();
            let mut right = Vec::new();
            encode(g, a, Some(b), &mut left);
            encode(g, b, Some(a), &mut right);
            let (lo, hi) = if left <= right { (left, right) } else { (right, left) };
            out.push(b'[');
            out.extend(lo);
            out.extend(hi);
            out.push(b']');
        }
        _ => unreachable!("a tree has one or two centers"),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn examples() {
        let p4 = fixtures::path(4);
        let q = p4.permute(&[2, 0, 3, 1]).unwrap();
        assert_eq!(tree_canonical(&p4).unwrap(), tree_canonical(&q).unwrap());
        assert_ne!(tree_canonical(&fixtures::star(3)).unwrap(), tree_canonical(&p4).unwrap());
        // spider with legs 2,1,1 vs P5
        let spider = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 3), (0, 4)]).unwrap();
        assert_ne!(tree_canonical(&spider).unwrap(), tree_canonical(&fixtures::path(5)).unwrap());
        assert_eq!(tree_canonical(&Graph::empty(1)).unwrap(), b"()".to_vec());
        assert_eq!(tree_canonical(&fixtures::path(2)).unwrap(), b"[()()]".to_vec());
    }

    #[test]
    fn rejects_non_trees() {
        assert!(tree_canonical(&fixtures::cycle(4)).is_err());
        assert!(tree_canonical(&Graph::empty(2)).is_err());
        assert!(tree_canonical(&Graph::empty(0)).is_err());
    }
}

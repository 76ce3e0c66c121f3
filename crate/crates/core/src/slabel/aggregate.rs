//! Nested multiset aggregation over ordered tuples of distinct nodes.
//!
//! Tuples are always visited in the same depth-first order (first entry
//! ascending, then second, …), which is also the order of [`tuples`].

/// All ordered `k`-tuples of distinct nodes of `0..n`, flattened with stride `k`.
pub(crate) fn tuples(n: usize, k: usize) -> Vec<usize> {
    fn rec(n: usize, k: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<usize>) {
        if cur.len() == k {
            out.extend_from_slice(cur);
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, k, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, &mut vec![false; n], &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Number of ordered `k`-tuples of distinct nodes out of `n`.
pub(crate) fn tuple_count(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (n - k + 1..=n).product()
}

/// Combines the members of one aggregation node into a value.
pub(crate) trait Fold {
    type V: Copy;
    /// `members` may be reordered.
    fn fold(&mut self, depth: usize, members: &mut Vec<Self::V>) -> Self::V;
}

/// `s` aggregation: `leaves[t]` is the value of the `t`-th tuple; a prefix
/// of length `q` folds the values of its extensions at depth `q`.
pub(crate) fn fold_s<F: Fold>(n: usize, k: usize, leaves: &[F::V], f: &mut F) -> F::V {
    fn rec<F: Fold>(n: usize, k: usize, depth: usize, used: &mut [bool], cursor: &mut usize, leaves: &[F::V], f: &mut F) -> F::V {
        if depth == k {
            let v = leaves[*cursor];
            *cursor += 1;
            return v;
        }
        let mut members = Vec::with_capacity(n - depth);
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                members.push(rec(n, k, depth + 1, used, cursor, leaves, f));
                used[i] = false;
            }
        }
        f.fold(depth, &mut members)
    }
    debug_assert_eq!(leaves.len(), tuple_count(n, k));
    rec(n, k, 0, &mut vec![false; n], &mut 0, leaves, f)
}

/// `t` aggregation: `nodes[t * n + i]` is the label of node `i` under the
/// `t`-th tuple. For a focal node `i` a prefix folds, at its depth, the
/// values of the extensions by nodes other than `i`; at full length the
/// value is the node label itself. The per-node results are folded at
/// depth `k + 1`.
pub(crate) fn fold_t<F: Fold>(n: usize, k: usize, nodes: &[F::V], f: &mut F) -> F::V {
    fn rec<F: Fold>(n: usize, k: usize, depth: usize, used: &mut [bool], cursor: &mut usize, nodes: &[F::V], f: &mut F) -> Vec<Option<F::V>> {
        if depth == k {
            let row = &nodes[*cursor * n..(*cursor + 1) * n];
            *cursor += 1;
            return (0..n).map(|i| (!used[i]).then_some(row[i])).collect();
        }
        let mut children: Vec<(usize, Vec<Option<F::V>>)> = Vec::with_capacity(n - depth);
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                children.push((j, rec(n, k, depth + 1, used, cursor, nodes, f)));
                used[j] = false;
            }
        }
        let mut members = Vec::with_capacity(children.len());
        (0..n)
            .map(|i| {
                if used[i] {
                    return None;
                }
                members.clear();
                members.extend(children.iter().filter(|(j, _)| *j != i).map(|(_, c)| c[i].expect("focal node unused")));
                Some(f.fold(depth, &mut members))
            })
            .collect()
    }
    debug_assert_eq!(nodes.len(), tuple_count(n, k) * n);
    let per_node = rec(n, k, 0, &mut vec![false; n], &mut 0, nodes, f);
    let mut members: Vec<F::V> = per_node.into_iter().map(|v| v.expect("root prefix is empty")).collect();
    f.fold(k + 1, &mut members)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Folds into a readable nested string.
    struct Show;

    impl Fold for Show {
        type V = &'static str;
        fn fold(&mut self, depth: usize, members: &mut Vec<&'static str>) -> &'static str {
            members.sort();
            Box::leak(format!("{depth}{{{}}}", members.join(",")).into_boxed_str())
        }
    }

    #[test]
    fn tuple_order() {
        assert_eq!(tuples(3, 2), vec![0, 1, 0, 2, 1, 0, 1, 2, 2, 0, 2, 1]);
        assert_eq!(tuples(3, 0), Vec::<usize>::new());
        assert_eq!(tuple_count(3, 0), 1);
        assert_eq!(tuple_count(5, 3), 60);
        assert_eq!(tuple_count(2, 3), 0);
        assert_eq!(tuples(4, 3).len(), 3 * tuple_count(4, 3));
    }

    #[test]
    fn s_nesting() {
        let leaves = ["a", "b", "c"];
        assert_eq!(fold_s(3, 1, &leaves, &mut Show), "0{a,b,c}");
        assert_eq!(fold_s(3, 0, &["x"], &mut Show), "x");
    }

    #[test]
    fn t_nesting() {
        // k = 1, n = 3: under tuple (j) node i is labeled "ji"
        let labels: Vec<&'static str> = (0..3)
            .flat_map(|j| (0..3).map(move |i| &*Box::leak(format!("{j}{i}").into_boxed_str())))
            .collect();
        let t = fold_t(3, 1, &labels, &mut Show);
        assert_eq!(t, "2{0{01,21},0{02,12},0{10,20}}");
        let t0 = fold_t(3, 0, &["x", "y", "x"], &mut Show);
        assert_eq!(t0, "1{x,x,y}");
    }
}

//! Walk-count labels.
//!
//! The label of node `i` is the matrix whose column `l` is `A^l e_i`: entry
//! `(j, l)` counts walks of length `l` between `i` and `j`. Two labels are
//! compared up to a permutation of their rows. Only the first `n + 1`
//! columns matter, and a label can be cut further right after its first
//! linearly dependent column.
//!
//! Everything here is exact integer arithmetic.

mod power;
mod rank;

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use rank::{bareiss_rank, IntegerEchelon};
pub(crate) use power::PowerMatrix;

/// Walk counts from a source node: `columns[l][j]` is the number of walks of
/// length `l` between the source and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrix {
    source: usize,
    columns: Vec<Vec<BigUint>>,
}

impl WalkMatrix {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn columns(&self) -> &[Vec<BigUint>] {
        &self.columns
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn n(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    /// Row `j` across all materialized columns.
    pub fn row(&self, j: usize) -> Vec<BigUint> {
        self.columns.iter().map(|c| c[j].clone()).collect()
    }
}

/// `A · x` for the adjacency matrix of `g` (a loop adds `x_j` to entry `j`).
fn apply_adjacency(g: &Graph, x: &[BigUint]) -> Vec<BigUint> {
    (0..g.n())
        .map(|j| {
            let mut s: BigUint = g.neighbors(j).iter().map(|&k| &x[k]).sum();
            if g.has_loop(j) {
                s += &x[j];
            }
            s
        })
        .collect()
}

fn indicator(n: usize, i: usize) -> Vec<BigUint> {
    let mut v = vec![BigUint::zero(); n];
    v[i] = BigUint::one();
    v
}

/// The first `cols` columns of the walk matrix of `i`; `1 <= cols <= n + 1`.
pub fn walk_matrix(g: &Graph, i: usize, cols: usize) -> Result<WalkMatrix> {
    g.check_node(i)?;
    if cols == 0 || cols > g.n() + 1 {
        return Err(Error::InvalidArgument(format!(
            "column count {cols} outside 1..={}",
            g.n() + 1
        )));
    }
    let mut columns = Vec::with_capacity(cols);
    columns.push(indicator(g.n(), i));
    while columns.len() < cols {
        let next = apply_adjacency(g, columns.last().unwrap());
        columns.push(next);
    }
    Ok(WalkMatrix { source: i, columns })
}

/// Walk columns `0..cols` of node `i` with no upper bound on `cols`. Used
/// to check that columns beyond `n` add nothing.
pub fn walk_matrix_extended(g: &Graph, i: usize, cols: usize) -> Result<WalkMatrix> {
    g.check_node(i)?;
    if cols == 0 {
        return Err(Error::InvalidArgument("at least one column is required".into()));
    }
    let mut columns = vec![indicator(g.n(), i)];
    while columns.len() < cols {
        let next = apply_adjacency(g, columns.last().unwrap());
        columns.push(next);
    }
    Ok(WalkMatrix { source: i, columns })
}

/// Rows of the first `cols` columns of `w`, sorted.
pub fn sorted_prefix_rows(w: &WalkMatrix, cols: usize) -> Vec<Vec<BigUint>> {
    sorted_rows(w, cols.min(w.column_count()))
}

fn to_signed(col: &[BigUint]) -> Vec<BigInt> {
    col.iter().map(|x| BigInt::from(x.clone())).collect()
}

/// Rank of the materialized columns of `w`, found by inserting columns one
/// at a time and stopping at the first one that depends on its predecessors.
/// Every later column of a walk matrix is dependent as well.
pub fn walk_rank(w: &WalkMatrix) -> usize {
    let mut echelon = IntegerEchelon::new();
    for col in w.columns() {
        if !echelon.insert(to_signed(col)) {
            break;
        }
    }
    echelon.rank()
}

/// Rank of the full walk matrix of node `i`, generating columns only until
/// the first dependent one.
pub fn node_walk_rank(g: &Graph, i: usize) -> Result<usize> {
    g.check_node(i)?;
    let mut echelon = IntegerEchelon::new();
    let mut col = indicator(g.n(), i);
    while echelon.insert(to_signed(&col)) {
        col = apply_adjacency(g, &col);
    }
    Ok(echelon.rank())
}

/// How many columns a canonical label keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truncation {
    /// The first `n + 1` columns.
    NPlus1,
    /// The first `rank + 1` columns.
    RankBased,
}

/// Rows of a truncated walk matrix in sorted order: a canonical
/// representative of its row-permutation class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalWalkLabel {
    truncation: TruncationTag,
    rank: Option<usize>,
    rows: Vec<Vec<BigUint>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum TruncationTag {
    NPlus1,
    RankBased,
}

impl CanonicalWalkLabel {
    pub fn truncation(&self) -> Truncation {
        match self.truncation {
            TruncationTag::NPlus1 => Truncation::NPlus1,
            TruncationTag::RankBased => Truncation::RankBased,
        }
    }

    /// Rank of the underlying walk matrix, recorded for rank-based labels.
    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    pub fn column_count(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Permutation-equality of the underlying matrices. Labels built with
    /// different truncation modes cannot be compared; rank-based labels of
    /// different ranks are unequal.
    pub fn matches(&self, other: &CanonicalWalkLabel) -> Result<bool> {
        if self.truncation != other.truncation {
            return Err(Error::InvalidArgument(
                "walk labels with different truncation modes are not comparable".into(),
            ));
        }
        Ok(self.rank == other.rank && self.rows == other.rows)
    }

    /// Length-prefixed big-endian row stream: row count and column count as
    /// `u32`, then per entry a `u32` byte length and the magnitude bytes
    /// (zero has length 0).
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend((self.rows.len() as u32).to_be_bytes());
        out.extend((self.column_count() as u32).to_be_bytes());
        for row in &self.rows {
            for x in row {
                let bytes = if x.is_zero() { Vec::new() } else { x.to_bytes_be() };
                out.extend((bytes.len() as u32).to_be_bytes());
                out.extend(bytes);
            }
        }
        out
    }
}

fn sorted_rows(w: &WalkMatrix, cols: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = (0..w.n())
        .map(|j| w.columns[..cols].iter().map(|c| c[j].clone()).collect())
        .collect();
    rows.sort();
    rows
}

pub fn canonical_w_label(g: &Graph, i: usize, truncation: Truncation) -> Result<CanonicalWalkLabel> {
    let w = walk_matrix(g, i, g.n() + 1)?;
    Ok(match truncation {
        Truncation::NPlus1 => CanonicalWalkLabel {
            truncation: TruncationTag::NPlus1,
            rank: None,
            rows: sorted_rows(&w, w.column_count()),
        },
        Truncation::RankBased => {
            let r = walk_rank(&w);
            CanonicalWalkLabel {
                truncation: TruncationTag::RankBased,
                rank: Some(r),
                rows: sorted_rows(&w, r + 1),
            }
        }
    })
}

/// Decides walk equivalence by comparing the sorted lists of canonical
/// labels of both graphs. Straightforward but memory-hungry; see
/// [`w_equivalent`] for the streaming version.
pub fn w_equivalent_by_labels(g1: &Graph, g2: &Graph, truncation: Truncation) -> Result<bool> {
    if g1.n() != g2.n() {
        return Ok(false);
    }
    let labels = |g: &Graph| -> Result<Vec<CanonicalWalkLabel>> {
        let mut v = (0..g.n())
            .map(|i| canonical_w_label(g, i, truncation))
            .collect::<Result<Vec<_>>>()?;
        v.sort();
        Ok(v)
    };
    Ok(labels(g1)? == labels(g2)?)
}

/// Interns keys into dense ids, one table per column.
#[derive(Default)]
struct ColumnTable<K> {
    ids: HashMap<K, u32>,
}

impl<K: std::hash::Hash + Eq> ColumnTable<K> {
    fn id<Q>(&mut self, key: &Q) -> u32
    where
        K: std::borrow::Borrow<Q>,
        Q: std::hash::Hash + Eq + ToOwned<Owned = K> + ?Sized,
    {
        if let Some(&id) = self.ids.get(key) {
            return id;
        }
        let id = self.ids.len() as u32;
        self.ids.insert(key.to_owned(), id);
        id
    }
}

/// Whether some node bijection maps every walk label of `g1` to a
/// permutation-equal label of `g2`.
///
/// Both graphs are processed column by column in lockstep. Each node pair
/// `(i, j)` carries an id for its row prefix `(A^0_ij, …, A^l_ij)`, issued by
/// a table shared by both graphs; a node's truncated label is then the
/// multiset of its pair ids, interned again. The first column at which the
/// two graphs' multisets of node labels differ ends the comparison.
/// `O(n²m + n³ log n)` big-integer steps.
///
/// As soon as the node labels of `g1` are pairwise distinct the matching
/// of equal labels is the only candidate bijection; if it preserves
/// adjacency the graphs are isomorphic, hence equivalent, and the remaining
/// columns are skipped.
pub fn w_equivalent(g1: &Graph, g2: &Graph) -> bool {
    compare_columns(g1, g2, true)
}

/// [`w_equivalent`] without the isomorphism shortcut: every column is
/// compared unless a difference shows up first.
pub fn w_equivalent_all_columns(g1: &Graph, g2: &Graph) -> bool {
    compare_columns(g1, g2, false)
}

/// Whether mapping node `i` to `sigma[i]` carries `g1` onto `g2`.
fn is_isomorphism(g1: &Graph, g2: &Graph, sigma: &[usize]) -> bool {
    g1.edge_count() == g2.edge_count()
        && (0..g1.n()).all(|i| {
            g1.has_loop(i) == g2.has_loop(sigma[i]) && g1.neighbors(i).iter().all(|&j| g2.has_edge(sigma[i], sigma[j]))
        })
}

fn compare_columns(g1: &Graph, g2: &Graph, certificate: bool) -> bool {
    let n = g1.n();
    if n != g2.n() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let graphs = [g1, g2];
    let mut powers = [PowerMatrix::identity(n), PowerMatrix::identity(n)];
    let mut spare = PowerMatrix::identity(n);
    // column 0 is the identity for both graphs: pair ids 1 on the diagonal, 0 elsewhere
    let mut pair_ids: [Vec<u32>; 2] = std::array::from_fn(|_| {
        let mut v = vec![0u32; n * n];
        for i in 0..n {
            v[i * n + i] = 1;
        }
        v
    });
    let mut key = Vec::new();
    let mut label = Vec::with_capacity(n);
    let mut node_labels: [Vec<u32>; 2] = [Vec::with_capacity(n), Vec::with_capacity(n)];
    for _col in 1..=n {
        let mut pair_table: ColumnTable<Vec<u64>> = ColumnTable::default();
        let mut node_table: ColumnTable<Vec<u32>> = ColumnTable::default();
        for side in 0..2 {
            powers[side].multiply_adjacency(graphs[side], &mut spare);
            std::mem::swap(&mut powers[side], &mut spare);
            let m = &powers[side];
            let ids = &mut pair_ids[side];
            for i in 0..n {
                for j in i..n {
                    key.clear();
                    key.push(u64::from(ids[i * n + j]));
                    key.extend_from_slice(m.limbs(i, j));
                    let id = pair_table.id(key.as_slice());
                    ids[i * n + j] = id;
                    ids[j * n + i] = id;
                }
            }
            node_labels[side].clear();
            for i in 0..n {
                label.clear();
                label.extend_from_slice(&ids[i * n..(i + 1) * n]);
                label.sort_unstable();
                node_labels[side].push(node_table.id(label.as_slice()));
            }
        }
        let sorted = |v: &Vec<u32>| {
            let mut s = v.clone();
            s.sort_unstable();
            s
        };
        let first = sorted(&node_labels[0]);
        if first != sorted(&node_labels[1]) {
            return false;
        }
        if certificate && first.windows(2).all(|w| w[0] != w[1]) {
            let mut owner = vec![0usize; node_table.ids.len()];
            for (j, &l) in node_labels[1].iter().enumerate() {
                owner[l as usize] = j;
            }
            let sigma: Vec<usize> = node_labels[0].iter().map(|&l| owner[l as usize]).collect();
            if is_isomorphism(g1, g2, &sigma) {
                return true;
            }
        }
    }
    true
}

/// `trace(A^l)` for `l = 1..=n`: the number of closed walks of each length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceVector {
    traces: Vec<BigUint>,
}

impl TraceVector {
    /// Entry for walk length `l` (1-based).
    pub fn get(&self, l: usize) -> Option<&BigUint> {
        l.checked_sub(1).and_then(|i| self.traces.get(i))
    }

    pub fn as_slice(&self) -> &[BigUint] {
        &self.traces
    }
}

pub fn trace_vector(g: &Graph) -> TraceVector {
    let n = g.n();
    let mut power = PowerMatrix::identity(n);
    let mut spare = PowerMatrix::identity(n);
    let mut traces = Vec::with_capacity(n);
    for _ in 0..n {
        power.multiply_adjacency(g, &mut spare);
        std::mem::swap(&mut power, &mut spare);
        traces.push(power.trace());
    }
    TraceVector { traces }
}

/// Equal adjacency spectra, decided exactly: the power sums
/// `trace(A^1..A^n)` fix the characteristic polynomial through Newton's
/// identities.
pub fn cospectral(g1: &Graph, g2: &Graph) -> bool {
    g1.n() == g2.n() && trace_vector(g1) == trace_vector(g2)
}

/// Closed walks of each length `0..=n` starting at `i`.
pub fn closed_walk_counts(g: &Graph, i: usize) -> Result<Vec<BigUint>> {
    let w = walk_matrix(g, i, g.n() + 1)?;
    Ok(w.columns().iter().map(|c| c[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn col(v: &[u32]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn walk_matrix_k3() {
        let w = walk_matrix(&fixtures::complete(3), 0, 4).unwrap();
        assert_eq!(
            w.columns(),
            &[col(&[1, 0, 0]), col(&[0, 1, 1]), col(&[2, 1, 1]), col(&[2, 3, 3])]
        );
        assert_eq!(w.row(1), col(&[0, 1, 1, 3]));
    }

    #[test]
    fn walk_matrix_p2() {
        let w = walk_matrix(&fixtures::path(2), 0, 3).unwrap();
        assert_eq!(w.columns(), &[col(&[1, 0]), col(&[0, 1]), col(&[1, 0])]);
    }

    #[test]
    fn walk_matrix_arguments() {
        let g = fixtures::path(3);
        assert!(walk_matrix(&g, 3, 2).is_err());
        assert!(walk_matrix(&g, 0, 0).is_err());
        assert!(walk_matrix(&g, 0, 5).is_err());
        assert!(walk_matrix(&g, 0, 4).is_ok());
    }

    #[test]
    fn loop_path_tightness_n3() {
        // endpoint 0 of P3 vs the loop-free endpoint 0 of P3 with a loop on node 2
        let a = walk_matrix(&fixtures::path(3), 0, 4).unwrap();
        let b = walk_matrix(&fixtures::path_with_loop(3), 0, 4).unwrap();
        assert_eq!(sorted_rows(&a, 3), sorted_rows(&b, 3));
        assert_ne!(sorted_rows(&a, 4), sorted_rows(&b, 4));
        // hand DP: P3 from 0: (1,0,0) (0,1,0) (1,0,1) (0,2,0)
        //          loop:      (1,0,0) (0,1,0) (1,0,1) (0,2,1)
        assert_eq!(b.columns()[3], col(&[0, 2, 1]));
    }

    #[test]
    fn ranks() {
        let k3 = fixtures::complete(3);
        for i in 0..3 {
            assert_eq!(walk_rank(&walk_matrix(&k3, i, 4).unwrap()), 2);
            assert_eq!(node_walk_rank(&k3, i).unwrap(), 2);
        }
        let c6 = fixtures::cycle(6);
        assert_eq!(node_walk_rank(&c6, 0).unwrap(), 4);
        let single = Graph::from_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(walk_rank(&walk_matrix(&single, 0, 2).unwrap()), 1);
    }

    #[test]
    fn canonical_labels() {
        let k3 = fixtures::complete(3);
        let l0 = canonical_w_label(&k3, 0, Truncation::NPlus1).unwrap();
        for i in 1..3 {
            assert_eq!(canonical_w_label(&k3, i, Truncation::NPlus1).unwrap(), l0);
        }
        let f = fixtures::figure1();
        for t in [Truncation::NPlus1, Truncation::RankBased] {
            let a = canonical_w_label(&f, 0, t).unwrap();
            let b = canonical_w_label(&f, 4, t).unwrap();
            assert!(a.matches(&b).unwrap());
        }
        let p4 = fixtures::path(4);
        let end = canonical_w_label(&p4, 0, Truncation::NPlus1).unwrap();
        let inner = canonical_w_label(&p4, 1, Truncation::NPlus1).unwrap();
        assert!(!end.matches(&inner).unwrap());
        let rb = canonical_w_label(&p4, 0, Truncation::RankBased).unwrap();
        assert!(end.matches(&rb).is_err());
    }

    #[test]
    fn label_bytes_layout() {
        let l = canonical_w_label(&fixtures::path(2), 0, Truncation::NPlus1).unwrap();
        // rows sorted: (0,1,0) < (1,0,1)
        let bytes = l.to_bytes();
        assert_eq!(&bytes[..8], &[0, 0, 0, 2, 0, 0, 0, 3]);
        assert_eq!(&bytes[8..12], &[0, 0, 0, 0]);
        assert_eq!(&bytes[12..17], &[0, 0, 0, 1, 1]);
    }

    #[test]
    fn cospectral_pair() {
        let c6 = fixtures::cycle(6);
        let tt = fixtures::two_triangles();
        // spectra {2,1,1,-1,-1,-2} and {2,2,-1,-1,-1,-1}: triangles show up in trace(A^3)
        assert!(!cospectral(&c6, &tt));
        assert_eq!(trace_vector(&tt).get(3), Some(&BigUint::from(12u32)));
        assert!(!w_equivalent(&c6, &tt));
        assert!(!w_equivalent_by_labels(&c6, &tt, Truncation::NPlus1).unwrap());
        assert!(!cospectral(&fixtures::path(3), &fixtures::complete(3)));
        // K1,4 and C4 + K1 share the spectrum {2,0,0,0,-2}
        let c4k1 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let star = fixtures::star(4);
        assert!(cospectral(&star, &c4k1));
        assert!(!w_equivalent(&star, &c4k1));
    }

    #[test]
    fn traces_k3_and_edgeless() {
        let t = trace_vector(&fixtures::complete(3));
        assert_eq!(t.as_slice(), &col(&[0, 6, 6])[..]);
        assert_eq!(t.get(2), Some(&BigUint::from(6u32)));
        assert!(trace_vector(&Graph::empty(4)).as_slice().iter().all(Zero::is_zero));
        let p3 = trace_vector(&fixtures::path(3));
        assert_eq!(p3.get(2), Some(&BigUint::from(4u32)));
    }

    #[test]
    fn figure1_is_w_equivalent_to_itself_permuted() {
        let f = fixtures::figure1();
        let perm: Vec<usize> = (0..11).map(|i| (i * 7 + 3) % 11).collect();
        let g = f.permute(&perm).unwrap();
        assert!(w_equivalent(&f, &g));
        assert!(w_equivalent_all_columns(&f, &g));
        let p = fixtures::path(5);
        assert!(w_equivalent(&p, &p.permute(&[4, 3, 2, 1, 0]).unwrap()));
        assert!(!w_equivalent(&p, &fixtures::star(4)));
    }
}

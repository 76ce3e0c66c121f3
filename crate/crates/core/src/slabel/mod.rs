//! Anchored neighborhood refinement and the nested `s`/`t` fingerprints.
//!
//! For an ordered tuple of `k` distinct anchor nodes every node starts with
//! seed `q` if it is the `q`-th anchor and `0` otherwise. Each step pairs a
//! node's previous label with the multiset of its neighbors' previous
//! labels. The label matrix of a tuple is represented by the multiset of its
//! final-column labels.
//!
//! The `s^k` fingerprint folds tuple values over all ordered tuples, from
//! the longest prefix down to the empty one. The `t^k` fingerprint fixes a
//! focal node, folds over anchor tuples avoiding it and reads the focal
//! node's own label at the leaves, then folds over all focal nodes.
//!
//! Two representations are available: exact interned ids shared by
//! everything being compared, and structural digests that need no shared
//! state.

mod aggregate;
mod exact;
mod hash;
mod interner;
mod pattern;
mod refine;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use hash::HashVersion;
pub use interner::{Interner, LabelId};
pub use pattern::pattern_walk_count;
pub use refine::{refine, stabilization_hint, tuple_label, LabelMode, NodeLabelColumn, TupleLabel};

use aggregate::{fold_s, fold_t, tuple_count, tuples, Fold};
use hash::{DigestKind, Hasher, Narrow, Wide};
use refine::refine_hashed;

pub(crate) const FAMILY_S: u8 = b's';
pub(crate) const FAMILY_T: u8 = b't';

/// Ordered anchor nodes, pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AnchorTuple(Vec<usize>);

impl AnchorTuple {
    pub fn new(nodes: Vec<usize>) -> Result<Self> {
        for (a, &x) in nodes.iter().enumerate() {
            if nodes[..a].contains(&x) {
                return Err(Error::InvalidArgument(format!("anchor {x} repeated")));
            }
        }
        Ok(AnchorTuple(nodes))
    }

    pub fn empty() -> Self {
        AnchorTuple(Vec::new())
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Seed value of every node of an `n`-node graph.
    pub fn seed_values(&self, n: usize) -> Result<Vec<usize>> {
        let mut seeds = vec![0; n];
        for (q, &node) in self.0.iter().enumerate() {
            if node >= n {
                return Err(Error::NodeOutOfRange { node, n });
            }
            seeds[node] = q + 1;
        }
        Ok(seeds)
    }

    /// The tuple after relabeling node `i` as `perm[i]`.
    pub fn mapped(&self, perm: &[usize]) -> Self {
        AnchorTuple(self.0.iter().map(|&i| perm[i]).collect())
    }
}

/// Which nested aggregation a fingerprint uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    S,
    T,
}

impl Family {
    pub fn token(self) -> &'static str {
        match self {
            Family::S => "s",
            Family::T => "t",
        }
    }

    fn tag(self) -> u8 {
        match self {
            Family::S => FAMILY_S,
            Family::T => FAMILY_T,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(Family::S),
            "t" => Ok(Family::T),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Hashed,
}

impl Mode {
    pub fn token(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Hashed => "hashed",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "hashed" => Ok(Mode::Hashed),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

/// Refinement budget per anchor tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Iterations {
    /// Columns `0..=n`.
    #[default]
    Full,
    /// Stop one level after the tuple's partition settles. Gives the same
    /// equalities as `Full` for the `s` family; not defined for `t` in
    /// hashed mode.
    Stable,
    /// A fixed number of columns (at least one).
    Columns(usize),
}

impl Iterations {
    pub fn token(self) -> String {
        match self {
            Iterations::Full => "full".into(),
            Iterations::Stable => "stable".into(),
            Iterations::Columns(c) => c.to_string(),
        }
    }
}

impl FromStr for Iterations {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Iterations::Full),
            "stable" => Ok(Iterations::Stable),
            _ => match s.parse::<usize>() {
                Ok(c) if c >= 1 => Ok(Iterations::Columns(c)),
                _ => Err(Error::InvalidArgument(format!("bad iteration budget {s:?}"))),
            },
        }
    }
}

/// Everything that determines a fingerprint besides the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Method {
    pub family: Family,
    pub k: usize,
    pub iters: Iterations,
    pub mode: Mode,
    pub version: HashVersion,
}

impl Method {
    pub fn new(family: Family, k: usize, mode: Mode) -> Self {
        Method {
            family,
            k,
            iters: Iterations::Full,
            mode,
            version: HashVersion::V1,
        }
    }

    /// `family k iters mode hashver`
    pub fn descriptor(&self) -> String {
        format!(
            "{} {} {} {} {}",
            self.family.token(),
            self.k,
            self.iters.token(),
            self.mode.token(),
            self.version
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// Digest of a nested aggregation together with the method that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub method: Method,
    pub digest: u64,
    pub wide: Option<[u8; 32]>,
}

impl Fingerprint {
    /// `family k iters mode hashver digest64hex [widehex]`
    pub fn to_line(&self) -> String {
        let mut line = format!("{} {:016x}", self.method, self.digest);
        if let Some(w) = &self.wide {
            line.push(' ');
            line.push_str(&hex::encode(w));
        }
        line
    }

    /// Equal digests under the same method. Wide digests are compared when
    /// both sides carry one.
    pub fn matches(&self, other: &Fingerprint) -> bool {
        self.method == other.method
            && self.digest == other.digest
            && match (&self.wide, &other.wide) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl FromStr for Fingerprint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::InvalidArgument(format!("fingerprint line {s:?}: {what}"));
        let fields: Vec<&str> = s.split_whitespace().collect();
        if fields.len() != 6 && fields.len() != 7 {
            return Err(bad("expected 6 or 7 fields"));
        }
        let method = Method {
            family: fields[0].parse()?,
            k: fields[1].parse().map_err(|_| bad("bad k"))?,
            iters: fields[2].parse()?,
            mode: fields[3].parse()?,
            version: fields[4].parse()?,
        };
        if fields[5].len() != 16 {
            return Err(bad("digest must be 16 hex digits"));
        }
        let digest = u64::from_str_radix(fields[5], 16).map_err(|_| bad("bad digest"))?;
        let wide = match fields.get(6) {
            Some(w) => {
                let bytes = hex::decode(w).map_err(|_| bad("bad wide digest"))?;
                Some(<[u8; 32]>::try_from(bytes.as_slice()).map_err(|_| bad("wide digest must be 32 bytes"))?)
            }
            None => None,
        };
        Ok(Fingerprint { method, digest, wide })
    }
}

struct HashFold<K: DigestKind> {
    h: Hasher<K>,
    family: u8,
}

impl<K: DigestKind> Fold for HashFold<K> {
    type V = K::D;

    fn fold(&mut self, depth: usize, members: &mut Vec<K::D>) -> K::D {
        self.h.fold(self.family, depth, members)
    }
}

fn seeds_of(tuple: &[usize], n: usize) -> Vec<usize> {
    let mut seeds = vec![0; n];
    for (q, &node) in tuple.iter().enumerate() {
        seeds[node] = q + 1;
    }
    seeds
}

fn check_method(g: &Graph, m: &Method) -> Result<usize> {
    if m.k > g.n() {
        return Err(Error::InvalidArgument(format!("{} anchors on a graph with {} nodes", m.k, g.n())));
    }
    match m.iters {
        Iterations::Full | Iterations::Stable => Ok(g.n() + 1),
        Iterations::Columns(0) => Err(Error::InvalidArgument("at least one label column is required".into())),
        Iterations::Columns(c) => Ok(c),
    }
}

/// Structural digest of the aggregation. Tuples are refined in parallel on
/// the current rayon pool and collected in tuple order, so the result does
/// not depend on scheduling.
fn hashed_digest<K: DigestKind>(g: &Graph, m: &Method) -> Result<K::D>
where
    K::D: Send,
{
    let columns = check_method(g, m)?;
    let stable = m.iters == Iterations::Stable;
    if stable && m.family == Family::T {
        return Err(Error::Unsupported("the stable budget applies to the s family only".into()));
    }
    let (n, k) = (g.n(), m.k);
    let flat = tuples(n, k);
    let count = tuple_count(n, k);
    let tuple = |t: usize| if k == 0 { &[][..] } else { &flat[t * k..(t + 1) * k] };
    let version = m.version;
    let mut folder = HashFold::<K> {
        h: Hasher::new(version),
        family: m.family.tag(),
    };
    Ok(match m.family {
        Family::S => {
            let leaves: Vec<K::D> = (0..count)
                .into_par_iter()
                .map_init(
                    || Hasher::<K>::new(version),
                    |h, t| refine_hashed(g, &seeds_of(tuple(t), n), columns, stable, h).leaf(h, k),
                )
                .collect();
            fold_s(n, k, &leaves, &mut folder)
        }
        Family::T => {
            let rows: Vec<Vec<K::D>> = (0..count)
                .into_par_iter()
                .map_init(
                    || Hasher::<K>::new(version),
                    |h, t| refine_hashed(g, &seeds_of(tuple(t), n), columns, false, h).nodes,
                )
                .collect();
            let nodes: Vec<K::D> = rows.into_iter().flatten().collect();
            fold_t(n, k, &nodes, &mut folder)
        }
    })
}

/// Fingerprint of `g` under `m`, with the 256-bit digest if `wide` is set
/// (always included in exact mode).
pub fn fingerprint(g: &Graph, m: &Method, wide: bool) -> Result<Fingerprint> {
    let digest = hashed_digest::<Narrow>(g, m)?;
    let wide = if wide || m.mode == Mode::Exact {
        Some(hashed_digest::<Wide>(g, m)?)
    } else {
        None
    };
    Ok(Fingerprint { method: *m, digest, wide })
}

/// `s^k` fingerprint with the full budget.
pub fn fingerprint_s(g: &Graph, k: usize, mode: Mode) -> Result<Fingerprint> {
    fingerprint(g, &Method::new(Family::S, k, mode), false)
}

/// `t^k` fingerprint with the full budget.
pub fn fingerprint_t(g: &Graph, k: usize, mode: Mode) -> Result<Fingerprint> {
    fingerprint(g, &Method::new(Family::T, k, mode), false)
}

/// Exact equivalence classes of a batch under one family and `k`: equal ids
/// iff the nested aggregations agree. Graphs of different sizes are never
/// equivalent.
pub fn exact_classes(graphs: &[&Graph], family: Family, k: usize, iters: Iterations) -> Result<Vec<usize>> {
    let columns = match iters {
        Iterations::Full | Iterations::Stable => None,
        Iterations::Columns(c) => Some(c),
    };
    exact::classes(
        graphs,
        exact::ExactRun {
            family,
            k,
            columns,
            stop_when_stable: iters == Iterations::Stable,
            early_exit: false,
        },
    )
}

/// Exact comparison through a shared interner only, level by level with
/// early exit.
pub fn equivalent_exact(g1: &Graph, g2: &Graph, family: Family, k: usize) -> Result<bool> {
    if g1.n() != g2.n() {
        return Ok(false);
    }
    let c = exact::classes(
        &[g1, g2],
        exact::ExactRun {
            family,
            k,
            columns: None,
            stop_when_stable: true,
            early_exit: true,
        },
    )?;
    Ok(c[0] == c[1])
}

/// Exact equivalence. For the `s` family a 64-bit digest is computed first:
/// different digests settle the answer (equal structures always hash
/// alike), equal digests are confirmed through the shared interner.
pub fn equivalent(g1: &Graph, g2: &Graph, family: Family, k: usize) -> Result<bool> {
    if g1.n() != g2.n() {
        return Ok(false);
    }
    if family == Family::S {
        let m = Method {
            iters: Iterations::Stable,
            ..Method::new(family, k, Mode::Hashed)
        };
        let (a, b) = (hashed_digest::<Narrow>(g1, &m)?, hashed_digest::<Narrow>(g2, &m)?);
        if a != b {
            return Ok(false);
        }
        let same = equivalent_exact(g1, g2, family, k)?;
        if !same {
            log::warn!("64-bit digest collision between inequivalent graphs under {m}: {a:016x}");
        }
        return Ok(same);
    }
    equivalent_exact(g1, g2, family, k)
}

/// Whether the `s^k` aggregations of `g1` and `g2` coincide.
pub fn s_equivalent(g1: &Graph, g2: &Graph, k: usize) -> Result<bool> {
    equivalent(g1, g2, Family::S, k)
}

/// Whether the `t^k` aggregations of `g1` and `g2` coincide.
pub fn t_equivalent(g1: &Graph, g2: &Graph, k: usize) -> Result<bool> {
    equivalent(g1, g2, Family::T, k)
}

/// Node-level aggregates `s^k_G(i)`: for each node `i`, the fold over all
/// ordered tuples that start with `i`. Exact ids shared across `graphs`;
/// `result[g][i]` is comparable between graphs. Requires `k >= 1`.
pub fn node_aggregates(graphs: &[&Graph], k: usize) -> Result<Vec<Vec<usize>>> {
    if k == 0 {
        return Err(Error::InvalidArgument("node aggregates need at least one anchor".into()));
    }
    exact::node_classes(graphs, k)
}

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::AnchorTuple;

/// Number of walks `h_1, …, h_p` with `h_p = end` whose seed values under
/// `anchors` read `pattern` (the seed of a node is `q` if it is the `q`-th
/// anchor, else 0). A loop is a step from a node to itself.
pub fn pattern_walk_count(g: &Graph, anchors: &AnchorTuple, pattern: &[usize], end: usize) -> Result<BigUint> {
    g.check_node(end)?;
    let seeds = anchors.seed_values(g.n())?;
    if pattern.is_empty() {
        return Err(Error::InvalidArgument("empty walk pattern".into()));
    }
    if let Some(&bad) = pattern.iter().find(|&&p| p > anchors.len()) {
        return Err(Error::InvalidArgument(format!(
            "pattern value {bad} exceeds the anchor count {}",
            anchors.len()
        )));
    }
    let matches = |v: usize, step: usize| seeds[v] == pattern[step];
    let mut counts: Vec<BigUint> = (0..g.n())
        .map(|v| if matches(v, 0) { BigUint::one() } else { BigUint::zero() })
        .collect();
    for step in 1..pattern.len() {
        counts = (0..g.n())
            .map(|v| {
                if !matches(v, step) {
                    return BigUint::zero();
                }
                let mut s: BigUint = g.neighbors(v).iter().map(|&u| &counts[u]).sum();
                if g.has_loop(v) {
                    s += &counts[v];
                }
                s
            })
            .collect();
    }
    Ok(counts.swap_remove(end))
}

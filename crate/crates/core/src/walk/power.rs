//! Dense powers of the adjacency matrix with fixed-width multi-limb entries.
//!
//! All entries of one power share a limb count, chosen large enough that
//! the next multiplication by the adjacency matrix cannot overflow. Loops
//! contribute one to the diagonal.

use num_bigint::BigUint;

use crate::graph::Graph;

#[derive(Clone, Debug)]
pub(crate) struct PowerMatrix {
    n: usize,
    width: usize,
    data: Vec<u64>,
}

fn bit_len(x: u64) -> usize {
    64 - x.leading_zeros() as usize
}

impl PowerMatrix {
    pub(crate) fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        PowerMatrix { n, width: 1, data }
    }

    fn entry_range(&self, i: usize, j: usize) -> std::ops::Range<usize> {
        let start = (i * self.n + j) * self.width;
        start..start + self.width
    }

    /// Limbs of entry `(i, j)`, least significant first, without leading zero limbs.
    pub(crate) fn limbs(&self, i: usize, j: usize) -> &[u64] {
        let limbs = &self.data[self.entry_range(i, j)];
        let used = limbs.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        &limbs[..used]
    }

    pub(crate) fn entry(&self, i: usize, j: usize) -> BigUint {
        let mut words = Vec::with_capacity(self.width * 2);
        for &limb in self.limbs(i, j) {
            words.push(limb as u32);
            words.push((limb >> 32) as u32);
        }
        BigUint::new(words)
    }

    fn max_bits(&self) -> usize {
        let w = self.width;
        self.data
            .chunks_exact(w)
            .map(|e| match e.iter().rposition(|&x| x != 0) {
                Some(p) => p * 64 + bit_len(e[p]),
                None => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Computes `A · self` into `out`, resizing it as needed.
    pub(crate) fn multiply_adjacency(&self, g: &Graph, out: &mut PowerMatrix) {
        let n = self.n;
        let max_row_weight = (0..n)
            .map(|i| g.degree(i) + usize::from(g.has_loop(i)))
            .max()
            .unwrap_or(0);
        let bits = self.max_bits() + bit_len(max_row_weight as u64);
        let width = bits.div_ceil(64).max(1);
        out.n = n;
        out.width = width;
        out.data.clear();
        out.data.resize(n * n * width, 0);
        let w_in = self.width;
        for i in 0..n {
            let dst_row = &mut out.data[i * n * width..(i + 1) * n * width];
            let loop_row = g.has_loop(i).then_some(i);
            for &k in g.neighbors(i).iter().chain(loop_row.iter()) {
                let src_row = &self.data[k * n * w_in..(k + 1) * n * w_in];
                for (dst, src) in dst_row.chunks_exact_mut(width).zip(src_row.chunks_exact(w_in)) {
                    add_into(dst, src);
                }
            }
        }
    }

    /// Sum of the diagonal entries.
    pub(crate) fn trace(&self) -> BigUint {
        (0..self.n).map(|i| self.entry(i, i)).sum()
    }
}

#[inline]
fn add_into(dst: &mut [u64], src: &[u64]) {
    let mut carry = false;
    for (d, &s) in dst.iter_mut().zip(src) {
        let (a, c1) = d.overflowing_add(s);
        let (b, c2) = a.overflowing_add(u64::from(carry));
        *d = b;
        carry = c1 || c2;
    }
    let mut t = src.len();
    while carry {
        let (a, c) = dst[t].overflowing_add(1);
        dst[t] = a;
        carry = c;
        t += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn carries_across_limbs() {
        let mut d = [u64::MAX, u64::MAX, 0];
        add_into(&mut d, &[1]);
        assert_eq!(d, [0, 0, 1]);
    }

    #[test]
    fn large_powers_match_bigint_dp() {
        let g = fixtures::complete(6);
        let mut m = PowerMatrix::identity(6);
        let mut next = PowerMatrix::identity(6);
        for _ in 0..60 {
            m.multiply_adjacency(&g, &mut next);
            std::mem::swap(&mut m, &mut next);
        }
        // A^l for K_n: off-diagonal ((n-1)^l - (-1)^l)/n, diagonal that plus (-1)^l
        let five = BigUint::from(5u32);
        let off = (five.pow(60) - BigUint::from(1u32)) / BigUint::from(6u32);
        assert_eq!(m.entry(0, 1), off);
        assert_eq!(m.entry(2, 2), off + BigUint::from(1u32));
        assert!(m.width >= 3);
    }
}

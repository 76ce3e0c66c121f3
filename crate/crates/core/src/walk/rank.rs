//! Exact rank over the rationals using integer-only elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank of an integer matrix (given as rows) by Bareiss fraction-free
/// elimination. Every intermediate entry stays an integer because each
/// update is divided exactly by the previous pivot.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..width {
        if rank == height {
            break;
        }
        let Some(p) = (rank..height).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for c in col + 1..width {
                let v = pivot * &row[c] - &factor * &pivot_row[c];
                row[c] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Row-echelon basis grown one vector at a time with integer arithmetic.
///
/// Each inserted vector is reduced against the stored pivots by
/// cross-multiplication and then divided by the gcd of its entries, so
/// entries stay integral and small.
#[derive(Clone, Debug, Default)]
pub struct IntegerEchelon {
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl IntegerEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds `v` to the basis. Returns `false` (and leaves the basis
    /// unchanged) when `v` lies in the span of the vectors already inserted.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        for (pivot, b) in &self.basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let bp = &b[*pivot];
            let vp = v[*pivot].clone();
            let g = bp.gcd(&vp);
            let (mb, mv) = (bp / &g, &vp / &g);
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x * &mb - y * &mv;
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let content = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !content.is_one() {
            for x in v.iter_mut() {
                *x /= &content;
            }
        }
        if v[pivot].is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        self.basis.push((pivot, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(bareiss_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])), 3);
        assert_eq!(bareiss_rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(bareiss_rank(Vec::new()), 0);
        assert_eq!(bareiss_rank(m(&[&[1, 0, 2], &[0, 1, 1], &[1, 1, 3]])), 2);
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = IntegerEchelon::new();
        let rows = m(&[&[1, 0, 0], &[0, 1, 1], &[2, 1, 1], &[2, 3, 3]]);
        assert!(e.insert(rows[0].clone()));
        assert!(e.insert(rows[1].clone()));
        assert!(!e.insert(rows[2].clone()));
        assert!(!e.insert(rows[3].clone()));
        assert_eq!(e.rank(), 2);
    }
}

use std::collections::HashMap;

/// Small-integer stand-in for a nested label.
pub type LabelId = u32;

/// Assigns consecutive integers to structurally distinct labels.
///
/// Ids `0..=k` are reserved for the seeds (`0` for unanchored nodes, `q` for
/// the `q`-th anchor); fresh ids start at `k + 1` and are never reissued.
/// A label is keyed by its own previous id and the sorted ids of its
/// neighbors. Keys of one refinement level mention only ids issued at the
/// level before, so entries of finished levels can be dropped with
/// [`Interner::retire`] without changing any later answer.
#[derive(Clone, Debug)]
pub struct Interner {
    seeds: u32,
    next: LabelId,
    table: HashMap<Vec<LabelId>, LabelId>,
}

impl Interner {
    /// An interner for anchor tuples of length up to `k`.
    pub fn new(k: usize) -> Self {
        let seeds = u32::try_from(k + 1).expect("anchor count fits in u32");
        Interner {
            seeds,
            next: seeds,
            table: HashMap::new(),
        }
    }

    /// The id of seed value `q`.
    pub fn seed(&self, q: usize) -> Option<LabelId> {
        u32::try_from(q).ok().filter(|&q| q < self.seeds)
    }

    /// Largest anchor count this interner was seeded for.
    pub fn max_anchors(&self) -> usize {
        self.seeds as usize - 1
    }

    /// Id for the pair (own previous label, neighbor multiset). `neighbors`
    /// must be sorted.
    pub fn intern(&mut self, own: LabelId, neighbors: &[LabelId]) -> LabelId {
        debug_assert!(neighbors.windows(2).all(|w| w[0] <= w[1]));
        let mut key = Vec::with_capacity(neighbors.len() + 1);
        key.push(own);
        key.extend_from_slice(neighbors);
        self.intern_key(key)
    }

    /// Same as [`Interner::intern`] with the key already laid out as
    /// `[own, sorted neighbors…]`.
    pub(crate) fn intern_slice(&mut self, key: &[LabelId]) -> LabelId {
        if let Some(&id) = self.table.get(key) {
            return id;
        }
        self.intern_key(key.to_vec())
    }

    fn intern_key(&mut self, key: Vec<LabelId>) -> LabelId {
        let next = &mut self.next;
        *self.table.entry(key).or_insert_with(|| {
            let id = *next;
            *next = next.checked_add(1).expect("label id space exhausted");
            id
        })
    }

    /// Number of ids issued so far, seeds included.
    pub fn issued(&self) -> usize {
        self.next as usize
    }

    /// Number of keys currently held.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Drops every stored key. Ids already issued stay unique.
    pub fn retire(&mut self) {
        self.table = HashMap::new();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_and_fresh_ids() {
        let mut it = Interner::new(2);
        assert_eq!(it.seed(0), Some(0));
        assert_eq!(it.seed(2), Some(2));
        assert_eq!(it.seed(3), None);
        let a = it.intern(0, &[0, 1]);
        assert_eq!(a, 3);
        assert_eq!(it.intern(0, &[0, 1]), a);
        assert_eq!(it.intern(1, &[0, 0]), 4);
        assert_eq!(it.intern_slice(&[0, 0, 1]), a);
        assert_eq!(it.len(), 2);
        it.retire();
        assert!(it.is_empty());
        assert_eq!(it.intern(7, &[]), 5);
        assert_eq!(it.issued(), 6);
    }
}

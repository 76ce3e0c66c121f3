//! Structural hashing of labels.
//!
//! Every digest is a hash of a tagged byte string:
//!
//! * seed: `SEED ‖ q`
//! * refinement step: `STEP ‖ own ‖ count ‖ sorted neighbor digests`
//! * fold at aggregation depth `d`: `FOLD ‖ family ‖ d ‖ count ‖ sorted members`
//! * stabilized tuple: `STABLE ‖ stage ‖ count ‖ sorted node digests`
//!
//! Integers are little-endian `u32`. The same byte strings feed the 64-bit
//! digest and the 256-bit one.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use sha2::{Digest as _, Sha256};
use xxhash_rust::xxh3::xxh3_64;

use crate::error::{Error, Result};

const SEED: u8 = 0x01;
const STEP: u8 = 0x02;
const FOLD: u8 = 0x03;
const STABLE: u8 = 0x04;

/// Version of the digest byte layout, recorded in every fingerprint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum HashVersion {
    #[default]
    V1,
    /// Folds members as a set, dropping multiplicities. Exists to check that
    /// the verification suites catch a defective hash.
    #[doc(hidden)]
    V1SetFold,
}

impl HashVersion {
    pub fn token(self) -> &'static str {
        match self {
            HashVersion::V1 => "h1",
            HashVersion::V1SetFold => "h1-set",
        }
    }

    fn folds_as_set(self) -> bool {
        self == HashVersion::V1SetFold
    }
}

impl fmt::Display for HashVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for HashVersion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h1" => Ok(HashVersion::V1),
            "h1-set" => Ok(HashVersion::V1SetFold),
            _ => Err(Error::InvalidArgument(format!("unknown hash version {s:?}"))),
        }
    }
}

/// A digest function over tagged byte strings.
pub(crate) trait DigestKind {
    type D: Copy + Ord + Hash + Send + Sync + fmt::Debug;
    fn hash(bytes: &[u8]) -> Self::D;
    fn write(d: &Self::D, out: &mut Vec<u8>);
}

pub(crate) struct Narrow;
pub(crate) struct Wide;

impl DigestKind for Narrow {
    type D = u64;

    fn hash(bytes: &[u8]) -> u64 {
        xxh3_64(bytes)
    }

    fn write(d: &u64, out: &mut Vec<u8>) {
        out.extend_from_slice(&d.to_le_bytes());
    }
}

impl DigestKind for Wide {
    type D = [u8; 32];

    fn hash(bytes: &[u8]) -> [u8; 32] {
        Sha256::digest(bytes).into()
    }

    fn write(d: &[u8; 32], out: &mut Vec<u8>) {
        out.extend_from_slice(d);
    }
}

fn push_u32(out: &mut Vec<u8>, x: usize) {
    out.extend_from_slice(&u32::try_from(x).expect("fits in u32").to_le_bytes());
}

/// Stateless hashing helpers bound to one version; `buf` is scratch space.
pub(crate) struct Hasher<K: DigestKind> {
    version: HashVersion,
    buf: Vec<u8>,
    members: Vec<K::D>,
}

impl<K: DigestKind> Hasher<K> {
    pub(crate) fn new(version: HashVersion) -> Self {
        Hasher {
            version,
            buf: Vec::new(),
            members: Vec::new(),
        }
    }

    pub(crate) fn seed(&mut self, q: usize) -> K::D {
        self.buf.clear();
        self.buf.push(SEED);
        push_u32(&mut self.buf, q);
        K::hash(&self.buf)
    }

    /// One refinement step; `neighbors` is consumed in any order.
    pub(crate) fn step(&mut self, own: K::D, neighbors: impl Iterator<Item = K::D>) -> K::D {
        self.members.clear();
        self.members.extend(neighbors);
        self.members.sort_unstable();
        self.buf.clear();
        self.buf.push(STEP);
        K::write(&own, &mut self.buf);
        push_u32(&mut self.buf, self.members.len());
        for d in &self.members {
            K::write(d, &mut self.buf);
        }
        K::hash(&self.buf)
    }

    fn multiset(&mut self, header: &[u8], members: &mut Vec<K::D>) -> K::D {
        members.sort_unstable();
        if self.version.folds_as_set() {
            members.dedup();
        }
        self.buf.clear();
        self.buf.extend_from_slice(header);
        push_u32(&mut self.buf, members.len());
        for d in members.iter() {
            K::write(d, &mut self.buf);
        }
        K::hash(&self.buf)
    }

    /// Multiset fold at aggregation depth `depth` for the given family tag.
    pub(crate) fn fold(&mut self, family: u8, depth: usize, members: &mut Vec<K::D>) -> K::D {
        let mut header = vec![FOLD, family];
        push_u32(&mut header, depth);
        self.multiset(&header, members)
    }

    /// Tuple value when refinement stopped after the partition settled at
    /// `stage`: the stage together with the node multiset one level later.
    pub(crate) fn stable_leaf(&mut self, stage: usize, members: &mut Vec<K::D>) -> K::D {
        let mut header = vec![STABLE];
        push_u32(&mut header, stage);
        self.multiset(&header, members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_separate_domains() {
        let mut h = Hasher::<Narrow>::new(HashVersion::V1);
        let s0 = h.seed(0);
        let s1 = h.seed(1);
        assert_ne!(s0, s1);
        let a = h.fold(b's', 0, &mut vec![s0, s1]);
        let b = h.fold(b't', 0, &mut vec![s0, s1]);
        let c = h.fold(b's', 1, &mut vec![s0, s1]);
        assert!(a != b && a != c && b != c);
        assert_eq!(h.fold(b's', 0, &mut vec![s1, s0]), a);
        assert_eq!(h.step(s0, [s1, s0].into_iter()), h.step(s0, [s0, s1].into_iter()));
    }

    #[test]
    fn set_fold_loses_multiplicity() {
        let mut good = Hasher::<Narrow>::new(HashVersion::V1);
        let mut bad = Hasher::<Narrow>::new(HashVersion::V1SetFold);
        let x = good.seed(3);
        assert_ne!(good.fold(b's', 0, &mut vec![x]), good.fold(b's', 0, &mut vec![x, x]));
        assert_eq!(bad.fold(b's', 0, &mut vec![x]), bad.fold(b's', 0, &mut vec![x, x]));
    }

    #[test]
    fn wide_digest_is_sha256_of_layout() {
        let mut h = Hasher::<Wide>::new(HashVersion::V1);
        let d = h.seed(0);
        let expected: [u8; 32] = Sha256::digest([SEED, 0, 0, 0, 0]).into();
        assert_eq!(d, expected);
        assert_eq!("h1".parse::<HashVersion>().unwrap(), HashVersion::V1);
        assert!("h2".parse::<HashVersion>().is_err());
    }
}

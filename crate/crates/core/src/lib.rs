//! Graph isomorphism invariants built from walk counts and from iterated
//! neighborhood aggregation, with exact and hashed comparison modes, a
//! fingerprint index for database pre-filtering, and brute-force oracles
//! used to verify the invariants' guarantees at small scale.
//!
//! * [`walk`]: walk-count matrices per node, exact rank truncation,
//!   canonical forms and walk equivalence; closed-walk traces.
//! * [`slabel`]: anchored refinement, interning, structural hashing and the
//!   nested `s`/`t` fingerprints.
//! * [`oracle`]: brute-force isomorphism, tree canonical forms, small-graph
//!   enumeration and the verification suites.
//! * [`index`]: the on-disk fingerprint store.
//! * [`cli`]: the `graphprint` command-line tool.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod index;
pub mod oracle;
pub mod slabel;
pub mod walk;

pub use error::{Error, Result};
pub use format::{parse_graph, serialize_graph, Format};
pub use graph::{Graph, NamedGraph};

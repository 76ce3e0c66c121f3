//! Independent reference implementations and the verification suites that
//! check the label invariants against them.

mod enumerate;
mod iso;
pub mod random;
mod suites;
mod tree;

pub use enumerate::{enumerate_graphs, find_class, ENUMERATION_BOUND, KNOWN_CLASS_COUNTS};
pub use iso::{brute_force_isomorphic, verify_witness, IsoVerdict, BRUTE_FORCE_BOUND};
pub use suites::{run_suite, SuiteFailure, SuiteParams, SuiteReport, SUITES};
pub use tree::tree_canonical;

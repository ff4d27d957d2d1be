//! Helpers shared by the integration tests: seeded generators, brute-force
//! oracles written independently of the library, and the derivation corpus.
#![allow(dead_code)]

pub mod checks;
pub mod corpus;
pub mod gen;

use relsem::formula::parse;
use relsem::{Formula, Sequent};

pub fn f(text: &str) -> Formula {
    parse(text).unwrap_or_else(|e| panic!("bad formula {text:?}: {e}"))
}

pub fn seq(text: &str) -> Sequent {
    Sequent::parse(text).unwrap_or_else(|e| panic!("bad sequent {text:?}: {e}"))
}

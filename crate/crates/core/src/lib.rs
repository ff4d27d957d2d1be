//! Finite relational semantics for the `{⊥, ∧, →}` language with strict
//! implication.
//!
//! A single notion of *proposition* (a world set `X` with
//! `R[X] ∩ R□(R[X]) ⊆ X`) restricts valuations uniformly; on transitive
//! frames it means upward closure, on reflexive symmetric frames
//! bi-orthogonal closure. On top of that the crate provides eight sequent
//! systems with a derivation checker, bounded semantic consequence with
//! countermodel search, bounded proof search and (reflexive) unravelling.

pub mod classes;
pub mod consequence;
pub mod formula;
pub mod kripke;
pub mod search;
pub mod sequents;
pub mod unravel;

pub use classes::ModelClass;
pub use consequence::Verdict;
pub use formula::{Formula, ModalFormula};
pub use kripke::{Frame, FrameCondition, Model, PointedModel, WorldSet};
pub use search::SearchConfig;
pub use sequents::{Derivation, ProofSystem, Rule, RuleName, Sequent};

//! Truth and validity of sequents, bounded semantic consequence over the
//! enumerated classes, and the soundness audit for derivations.

use std::sync::Arc;

use thiserror::Error;

use crate::classes::{enumerate_class, ClassError, ModelClass, MAX_ENUM_WORLDS};
use crate::kripke::{KripkeError, Model, WorldSet};
use crate::sequents::{check_derivation, CheckError, Derivation, ProofSystem, Sequent};

/// Outcome of a bounded consequence check. `ValidUpTo(n)` only says that no
/// class member with at most `n` worlds refutes the sequent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    ValidUpTo(usize),
    Countermodel { model: Model, point: usize },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::ValidUpTo(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsequenceError {
    #[error("max_worlds must be in 1..={max}, got {got}")]
    WorldCap { got: usize, max: usize },
    #[error("atom list does not cover `{0}` from the sequent")]
    AtomCoverage(String),
    #[error(transparent)]
    Class(#[from] ClassError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("derivation does not check: {0}")]
    Check(#[from] CheckError),
    #[error(transparent)]
    Consequence(#[from] ConsequenceError),
    #[error("soundness violation: conclusion refuted at world {point} of {model:?}")]
    Unsound { model: Model, point: usize },
}

/// Worlds where every context formula holds but the goal fails.
fn refuting_worlds(m: &Model, s: &Sequent) -> WorldSet {
    let mut ctx = m.frame().full_set();
    for f in &s.context {
        ctx = ctx.intersection(&m.extension(f));
    }
    ctx.intersection(&m.extension(&s.goal).complement())
}

pub fn sequent_true_at(m: &Model, w: usize, s: &Sequent) -> Result<bool, KripkeError> {
    if w >= m.size() {
        return Err(KripkeError::WorldOutOfRange {
            world: w,
            size: m.size(),
        });
    }
    Ok(!refuting_worlds(m, s).contains(w))
}

pub fn sequent_valid_in_model(m: &Model, s: &Sequent) -> bool {
    refuting_worlds(m, s).is_empty()
}

/// Searches the members of `class` with `1..=max_worlds` worlds, interpreting
/// exactly `atoms`, for a refutation of `s`. The first refuting (model, point)
/// in enumeration order is returned.
pub fn semantic_consequence(
    s: &Sequent,
    class: ModelClass,
    max_worlds: usize,
    atoms: &[Arc<str>],
) -> Result<Verdict, ConsequenceError> {
    if max_worlds == 0 || max_worlds > MAX_ENUM_WORLDS {
        return Err(ConsequenceError::WorldCap {
            got: max_worlds,
            max: MAX_ENUM_WORLDS,
        });
    }
    if let Some(missing) = s.atoms().into_iter().find(|a| !atoms.contains(a)) {
        return Err(ConsequenceError::AtomCoverage(missing.to_string()));
    }
    for n in 1..=max_worlds {
        for model in enumerate_class(class, n, atoms)? {
            if let Some(point) = refuting_worlds(&model, s).iter().next() {
                return Ok(Verdict::Countermodel { model, point });
            }
        }
    }
    Ok(Verdict::ValidUpTo(max_worlds))
}

/// [`semantic_consequence`] over exactly the atoms occurring in `s`.
pub fn consequence_over_own_atoms(
    s: &Sequent,
    class: ModelClass,
    max_worlds: usize,
) -> Result<Verdict, ConsequenceError> {
    let atoms: Vec<Arc<str>> = s.atoms().into_iter().collect();
    semantic_consequence(s, class, max_worlds, &atoms)
}

/// Checks `d` in `system`, then confirms its conclusion is valid over the
/// system's class up to `max_worlds`. A countermodel here means a bug.
pub fn soundness_audit(
    d: &Derivation,
    system: ProofSystem,
    max_worlds: usize,
) -> Result<(), AuditError> {
    check_derivation(d, system)?;
    match consequence_over_own_atoms(&d.conclusion, system.class(), max_worlds)? {
        Verdict::ValidUpTo(_) => Ok(()),
        Verdict::Countermodel { model, point } => Err(AuditError::Unsound { model, point }),
    }
}

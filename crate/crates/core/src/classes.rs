//! The eight interpretation classes, `D_{P−}` and `D_{re}`, with membership
//! tests and exhaustive enumeration at small sizes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::is_identifier;
use crate::kripke::{Frame, FrameCondition, Model, WorldSet};

/// Largest frame [`enumerate_class`] accepts.
pub const MAX_ENUM_WORLDS: usize = 4;
/// Largest atom list [`enumerate_class`] accepts.
pub const MAX_ENUM_ATOMS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("enumeration supports 1..={max} worlds, got {got}")]
    WorldCap { got: usize, max: usize },
    #[error("enumeration supports at most {max} atoms, got {got}")]
    AtomCap { got: usize, max: usize },
    #[error("atom `{0}` listed twice")]
    DuplicateAtom(String),
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("unknown class tag `{0}` (expected kp, tp, bp, v, kb4p, i, o, c, p- or re)")]
    UnknownTag(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelClass {
    Kp,
    Tp,
    Bp,
    V,
    KB4p,
    I,
    O,
    C,
    Pminus,
    Re,
}

/// What a class demands of the valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationCondition {
    /// Every `V(p)` is a proposition.
    Interpretation,
    /// Every `V(p) ⊆ R□(−R□(∅) ∪ V(p))`.
    PMinus,
    Unrestricted,
}

impl ModelClass {
    pub const ALL: [ModelClass; 10] = [
        ModelClass::Kp,
        ModelClass::Tp,
        ModelClass::Bp,
        ModelClass::V,
        ModelClass::KB4p,
        ModelClass::I,
        ModelClass::O,
        ModelClass::C,
        ModelClass::Pminus,
        ModelClass::Re,
    ];

    /// The eight classes of interpretations.
    pub const INTERPRETATIONS: [ModelClass; 8] = [
        ModelClass::Kp,
        ModelClass::Tp,
        ModelClass::Bp,
        ModelClass::V,
        ModelClass::KB4p,
        ModelClass::I,
        ModelClass::O,
        ModelClass::C,
    ];

    pub fn frame_conditions(self) -> &'static [FrameCondition] {
        use FrameCondition::*;
        match self {
            ModelClass::Kp | ModelClass::Pminus => &[],
            ModelClass::Tp | ModelClass::Re => &[Reflexive],
            ModelClass::Bp => &[Symmetric],
            ModelClass::V => &[Transitive],
            ModelClass::KB4p => &[Symmetric, Transitive],
            ModelClass::I => &[Reflexive, Transitive],
            ModelClass::O => &[Reflexive, Symmetric],
            ModelClass::C => &[Reflexive, Symmetric, Transitive],
        }
    }

    pub fn valuation_condition(self) -> ValuationCondition {
        match self {
            ModelClass::Pminus => ValuationCondition::PMinus,
            ModelClass::Re => ValuationCondition::Unrestricted,
            _ => ValuationCondition::Interpretation,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ModelClass::Kp => "kp",
            ModelClass::Tp => "tp",
            ModelClass::Bp => "bp",
            ModelClass::V => "v",
            ModelClass::KB4p => "kb4p",
            ModelClass::I => "i",
            ModelClass::O => "o",
            ModelClass::C => "c",
            ModelClass::Pminus => "p-",
            ModelClass::Re => "re",
        }
    }

    pub fn frame_admits(self, frame: &Frame) -> bool {
        self.frame_conditions().iter().all(|&c| frame.has(c))
    }

    /// Whether `x` may be assigned to an atom in a member built on `frame`.
    pub fn admits_value(self, frame: &Frame, x: &WorldSet) -> bool {
        match self.valuation_condition() {
            ValuationCondition::Interpretation => frame.proposition_unchecked(x),
            ValuationCondition::PMinus => frame.p_minus_unchecked(x),
            ValuationCondition::Unrestricted => true,
        }
    }

    /// Admissible values for an atom over `frame`, ascending by bitmask.
    pub fn value_candidates(self, frame: &Frame) -> Vec<WorldSet> {
        assert!(
            frame.size() < 64,
            "value enumeration needs fewer than 64 worlds"
        );
        (0..1u64 << frame.size())
            .map(|mask| WorldSet::from_mask(frame.size(), mask))
            .filter(|x| self.admits_value(frame, x))
            .collect()
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ModelClass {
    type Err = ClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelClass::ALL
            .into_iter()
            .find(|c| c.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| ClassError::UnknownTag(s.to_string()))
    }
}

/// Frame conditions plus the class's valuation condition on every mapped
/// atom (unmapped atoms denote `∅`, which every class admits).
pub fn class_member(m: &Model, class: ModelClass) -> bool {
    class.frame_admits(m.frame())
        && m.valuation()
            .values()
            .all(|x| class.admits_value(m.frame(), x))
}

/// Frames on `n` worlds satisfying the class's frame conditions, ascending by
/// relation bitmask (bit `s * n + t` encodes the pair `(s, t)`).
pub fn class_frames(class: ModelClass, n: usize) -> impl Iterator<Item = Frame> {
    assert!((1..=8).contains(&n), "relation masks need 1..=8 worlds");
    let bits = n * n;
    let count = if bits == 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    };
    (0..=count)
        .map(move |mask| Frame::from_relation_mask(n, mask))
        .filter(move |fr| class.frame_admits(fr))
}

/// Every member of `class` on exactly `n_worlds` worlds interpreting exactly
/// `atoms`. Order: relation bitmask, then the tuple of valuation sets with the
/// first atom most significant and each coordinate ascending by bitmask.
pub fn enumerate_class(
    class: ModelClass,
    n_worlds: usize,
    atoms: &[Arc<str>],
) -> Result<ClassModels, ClassError> {
    if n_worlds == 0 || n_worlds > MAX_ENUM_WORLDS {
        return Err(ClassError::WorldCap {
            got: n_worlds,
            max: MAX_ENUM_WORLDS,
        });
    }
    if atoms.len() > MAX_ENUM_ATOMS {
        return Err(ClassError::AtomCap {
            got: atoms.len(),
            max: MAX_ENUM_ATOMS,
        });
    }
    for (i, a) in atoms.iter().enumerate() {
        if !is_identifier(a) {
            return Err(ClassError::InvalidAtom(a.to_string()));
        }
        if atoms[..i].contains(a) {
            return Err(ClassError::DuplicateAtom(a.to_string()));
        }
    }
    Ok(ClassModels {
        class,
        atoms: atoms.to_vec(),
        frames: Box::new(class_frames(class, n_worlds)),
        current: None,
    })
}

struct FrameCursor {
    frame: Frame,
    candidates: Vec<WorldSet>,
    // Odometer over `candidates`, one digit per atom; `None` once exhausted.
    digits: Option<Vec<usize>>,
}

/// Pull-based stream of class members; see [`enumerate_class`].
pub struct ClassModels {
    class: ModelClass,
    atoms: Vec<Arc<str>>,
    frames: Box<dyn Iterator<Item = Frame>>,
    current: Option<FrameCursor>,
}

impl Iterator for ClassModels {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        loop {
            if let Some(cur) = &mut self.current {
                if let Some(digits) = &mut cur.digits {
                    let valuation: BTreeMap<_, _> = self
                        .atoms
                        .iter()
                        .zip(digits.iter())
                        .map(|(a, &d)| (a.clone(), cur.candidates[d].clone()))
                        .collect();
                    let model = Model::new(cur.frame.clone(), valuation).expect("sizes agree");
                    // advance, last atom fastest
                    let mut i = digits.len();
                    loop {
                        if i == 0 {
                            cur.digits = None;
                            break;
                        }
                        i -= 1;
                        digits[i] += 1;
                        if digits[i] < cur.candidates.len() {
                            break;
                        }
                        digits[i] = 0;
                    }
                    return Some(model);
                }
            }
            let frame = self.frames.next()?;
            let candidates = self.class.value_candidates(&frame);
            self.current = Some(FrameCursor {
                frame,
                candidates,
                digits: Some(vec![0; self.atoms.len()]),
            });
        }
    }
}
